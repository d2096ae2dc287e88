#ifndef CHOQUARD_BUBBLES_HPP
#define CHOQUARD_BUBBLES_HPP

#include <optional>
#include <utility>
#include <vector>

#include "choquard/functional.hpp"
#include "choquard/grid.hpp"
#include "choquard/params.hpp"
#include "choquard/riesz.hpp"

namespace choquard {

// Bubble parameters: U_eps = eps^{(2-N)/2} U(x/eps); sigma > 0 selects the
// flattened profile with tail exponent (N-2+sigma)/2 used for N = 4.
struct BubbleSpec {
  int dim = 5;
  double eps = 1.0;
  double sigma = 0.0;

  void validate() const;
};

// U(x) = [N(N-2)]^{(N-2)/4} (1+|x|^2)^{-(N-2)/2}, the Sobolev extremal.
RadialField instanton(const GridPtr& grid);

// Closed-form sampling of U_eps^sigma (no grid dilation, so small eps
// stays exact at the nodes).
RadialField bubble(const GridPtr& grid, const BubbleSpec& spec);

struct ScanRow {
  double eps = 0.0;
  double sigma = 0.0;
  EnergyBreakdown breakdown;
};

// Full energy breakdown along a decreasing eps list; for N = 4 with an
// s-exponent, sigma = eps^s (requires 4-q < s < q-2).
std::vector<ScanRow> bubble_scan(const GridPtr& grid, const KernelMatrix& kernel,
                                 const ProblemParams& params,
                                 const std::vector<double>& eps_list,
                                 std::optional<double> s_exponent = std::nullopt);

struct SlopeFit {
  double slope = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares in log-log coordinates; needs >= 3 positive points.
SlopeFit slope_fit(const std::vector<std::pair<double, double>>& points);

struct SigmaPerturbationRow {
  double sigma = 0.0;
  double da = 0.0;          // A(U) - A(U^sigma) (>= 0)
  double db = 0.0;          // B(U) - B(U^sigma) (>= 0)
  double ratio_excess = 0.0;  // A(U^s)^p/B(U^s) - A(U)^p/B(U)
};

struct SigmaPerturbationReport {
  std::vector<SigmaPerturbationRow> rows;
  SlopeFit slope_a;
  SlopeFit slope_b;
  double empirical_c = 0.0;  // max ratio_excess / sigma
};

// First-order flattening response of the N = 4 extremal: both energy
// differences are O(sigma), and the peak ratio obeys
// A(U^s)^p/B(U^s) <= A(U)^p/B(U) + C sigma with the fitted C reported.
SigmaPerturbationReport sigma_perturbation_check(const GridPtr& grid,
                                                 const KernelMatrix& kernel,
                                                 const ProblemParams& params,
                                                 const std::vector<double>& sigma_list);

}  // namespace choquard

#endif
