#ifndef CHOQUARD_FUNCTIONAL_HPP
#define CHOQUARD_FUNCTIONAL_HPP

#include <utility>
#include <vector>

#include "choquard/grid.hpp"
#include "choquard/params.hpp"
#include "choquard/riesz.hpp"

namespace choquard {

// The four integrals of the energy plus the derived functionals:
//   I = (A+D)/2 - B/(2p) - C/q      (action)
//   J = A + D - B - C               (Nehari constraint <I'(u),u>)
//   H = B/(2p) + C/q - D/2          (constraint-manifold functional)
//   T = A/2                         (half Dirichlet energy)
struct EnergyBreakdown {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  double action_i = 0.0;
  double nehari_j = 0.0;
  double constraint_h = 0.0;
  double half_dirichlet_t = 0.0;
};

EnergyBreakdown breakdown_from_parts(double a, double b, double c, double d,
                                     const ProblemParams& params);
EnergyBreakdown energy_breakdown(const RadialField& u, const KernelMatrix& kernel,
                                 const ProblemParams& params);

// --- scalar fibering helpers on a fixed breakdown -------------------------
// J(tu) = t^2(A+D) - t^{2p} B - t^q C and g(t) = d/dt J(tu) / t.
double ray_action(double t, const EnergyBreakdown& e, const ProblemParams& params);
double ray_nehari(double t, const EnergyBreakdown& e, const ProblemParams& params);
double ray_g(double t, const EnergyBreakdown& e, const ProblemParams& params);

// Unique positive root of J(t u) = 0 (the Nehari time; maximizes I along
// the ray). Bracketed bisection then Newton polish to 1e-12 residual.
double fibering_time(const EnergyBreakdown& e, const ProblemParams& params);

struct FiberingResult {
  double t_root = 0.0;      // Nehari time t_u
  double t_sign_change = 0.0;  // unique sign change of g
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::vector<std::pair<double, double>> g_samples;
};

FiberingResult fibering_root(const RadialField& u, const KernelMatrix& kernel,
                             const ProblemParams& params);

// t_u * u with |J(t_u u)| <= 1e-10 (A+D)(t_u u)
RadialField nehari_project(const RadialField& u, const KernelMatrix& kernel,
                           const ProblemParams& params);

// max_{t>=0} (t^2 a / 2 - t^{2p} b / (2p)) = (p-1)/(2p) (a^p/b)^{1/(p-1)}
double peak_two_term(double a, double b, double p);

// Dilation onto the constraint manifold: solves
//   sigma^{N+alpha} B/(2p) + sigma^N (C/q - D/2) = 1
// and dilates, re-solving on the dilated field until |H - 1| <= 1e-8.
struct ConstraintScaling {
  double sigma = 1.0;     // accumulated dilation factor
  RadialField field;
};
ConstraintScaling constraint_scale(const RadialField& u, const KernelMatrix& kernel,
                                   const ProblemParams& params);

// Discrete H^1 bilinear form on a grid: banded stiffness L (consistent
// with dirichlet_energy: u' L u = A(u)) plus the diagonal mass matrix,
// with a Cholesky factorization of L + M for preconditioning and dual
// norms. Bandwidth 4 from the 5-point derivative stencils.
class H1Operator {
public:
  explicit H1Operator(GridPtr grid);

  const GridPtr& grid() const { return grid_; }
  const std::vector<double>& mass() const { return mass_; }

  std::vector<double> apply_stiffness(const std::vector<double>& u) const;
  double stiffness_energy(const std::vector<double>& u) const;  // u' L u
  double mass_energy(const std::vector<double>& u) const;       // u' M u

  // x = (L + M)^{-1} rhs
  std::vector<double> solve(const std::vector<double>& rhs) const;

private:
  GridPtr grid_;
  std::vector<double> mass_;
  std::vector<double> band_;  // L, lower band storage [i][k] = L(i, i-k)
  std::vector<double> chol_;  // Cholesky factor of L + M, same layout
  static constexpr int kBand = 4;
};

// Euclidean partial derivatives dI/du_i of the discrete action; the L^2
// gradient representation divides out the quadrature mass.
std::vector<double> action_partials(const RadialField& u, const KernelMatrix& kernel,
                                    const ProblemParams& params, const H1Operator& op);

// L^2(r^{N-1}) representation of I'(u):
//   -Lap u + u - (I_alpha*|u|^p)|u|^{p-2}u - |u|^{q-2}u
// discretized so the finite-difference chain rule holds exactly.
RadialField action_gradient(const RadialField& u, const KernelMatrix& kernel,
                            const ProblemParams& params);

struct Residual {
  double value = 0.0;
  bool trivial = false;  // set when u == 0
};

// Scale-free Euler-Lagrange residual: H^{-1} dual norm of I'(u) divided
// by ||u||_{H^1}; zero means u solves the discretized equation.
Residual el_residual(const RadialField& u, const KernelMatrix& kernel,
                     const ProblemParams& params);
Residual el_residual(const RadialField& u, const KernelMatrix& kernel,
                     const ProblemParams& params, const H1Operator& op);

}  // namespace choquard

#endif
