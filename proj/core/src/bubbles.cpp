#include "choquard/bubbles.hpp"

#include <cmath>
#include <string>

#include "choquard/errors.hpp"

namespace choquard {

void BubbleSpec::validate() const {
  if (dim < 3) throw config_error("bubble dimension must be >= 3");
  if (!(eps > 0.0)) throw config_error("bubble eps must be positive");
  if (!(sigma >= 0.0)) throw config_error("bubble sigma must be nonnegative");
}

RadialField instanton(const GridPtr& grid) {
  return bubble(grid, BubbleSpec{grid->dim, 1.0, 0.0});
}

RadialField bubble(const GridPtr& grid, const BubbleSpec& spec) {
  spec.validate();
  if (spec.dim != grid->dim)
    throw config_error("bubble dimension does not match the grid");
  const double n = spec.dim;
  const double amp = std::pow(n * (n - 2.0), 0.25 * (n - 2.0)) *
                     std::pow(spec.eps, 0.5 * (2.0 - n));
  const double expo = -0.5 * (n - 2.0 + spec.sigma);
  const double inv_eps2 = 1.0 / (spec.eps * spec.eps);
  return sample(grid, [&](double r) {
    return amp * std::pow(1.0 + r * r * inv_eps2, expo);
  });
}

namespace {

double sigma_for(double eps, int dim, const ProblemParams& params,
                 const std::optional<double>& s_exponent) {
  if (!s_exponent) return 0.0;
  if (dim != 4)
    throw config_error("the sigma = eps^s family applies to N = 4 only");
  const double s = *s_exponent;
  const double q = params.q();
  if (!(s > 4.0 - q && s < q - 2.0))
    throw config_error("s exponent must lie in (4-q, q-2) = (" +
                       std::to_string(4.0 - q) + ", " + std::to_string(q - 2.0) + ")");
  return std::pow(eps, s);
}

}  // namespace

std::vector<ScanRow> bubble_scan(const GridPtr& grid, const KernelMatrix& kernel,
                                 const ProblemParams& params,
                                 const std::vector<double>& eps_list,
                                 std::optional<double> s_exponent) {
  if (eps_list.size() < 3) throw config_error("bubble scan needs at least 3 eps values");
  for (std::size_t i = 1; i < eps_list.size(); ++i)
    if (!(eps_list[i] < eps_list[i - 1]))
      throw config_error("bubble scan eps list must be strictly decreasing");

  std::vector<ScanRow> rows;
  rows.reserve(eps_list.size());
  for (double eps : eps_list) {
    ScanRow row;
    row.eps = eps;
    row.sigma = sigma_for(eps, grid->dim, params, s_exponent);
    const RadialField u = bubble(grid, BubbleSpec{grid->dim, eps, row.sigma});
    row.breakdown = energy_breakdown(u, kernel, params);
    rows.push_back(row);
  }
  return rows;
}

SlopeFit slope_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw data_error("slope fit needs at least 3 points");
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0 && y > 0.0)) throw data_error("slope fit needs positive coordinates");
    sx += std::log(x);
    sy += std::log(y);
  }
  const double n = static_cast<double>(points.size());
  sx /= n;
  sy /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - sx, dy = std::log(y) - sy;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.r_squared = (syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

SigmaPerturbationReport sigma_perturbation_check(const GridPtr& grid,
                                                 const KernelMatrix& kernel,
                                                 const ProblemParams& params,
                                                 const std::vector<double>& sigma_list) {
  if (grid->dim != 4 || params.dim() != 4)
    throw config_error("the sigma perturbation analysis is an N = 4 check");
  if (sigma_list.empty()) throw config_error("sigma list is empty");

  const double p = params.p();
  const RadialField u0 = instanton(grid);
  const double a0 = dirichlet_energy(u0);
  const double b0 = choquard_energy(kernel, u0, p);
  const double ratio0 = std::pow(a0, p) / b0;

  SigmaPerturbationReport rep;
  std::vector<std::pair<double, double>> pa, pb;
  for (double sigma : sigma_list) {
    const RadialField us = bubble(grid, BubbleSpec{4, 1.0, sigma});
    const double as = dirichlet_energy(us);
    const double bs = choquard_energy(kernel, us, p);
    SigmaPerturbationRow row;
    row.sigma = sigma;
    row.da = a0 - as;
    row.db = b0 - bs;
    row.ratio_excess = std::pow(as, p) / bs - ratio0;
    rep.rows.push_back(row);
    pa.emplace_back(sigma, std::abs(row.da));
    pb.emplace_back(sigma, std::abs(row.db));
    rep.empirical_c = std::max(rep.empirical_c, row.ratio_excess / sigma);
  }
  rep.slope_a = slope_fit(pa);
  rep.slope_b = slope_fit(pb);
  return rep;
}

}  // namespace choquard
