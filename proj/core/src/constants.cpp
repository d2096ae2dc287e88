#include "choquard/constants.hpp"

#include <cmath>
#include <string>

#include "choquard/errors.hpp"
#include "choquard/grid.hpp"
#include "choquard/special.hpp"

namespace choquard {

static void check_exponent(int dim, double a, const char* name) {
  if (!(a > 0.0 && a < dim))
    throw std::domain_error(std::string(name) + " must lie in (0, N), got " +
                            std::to_string(a) + " with N=" + std::to_string(dim));
}

double riesz_normalization(int dim, double alpha) {
  check_exponent(dim, alpha, "alpha");
  return gamma_fn(0.5 * (dim - alpha)) /
         (gamma_fn(0.5 * alpha) * std::pow(M_PI, 0.5 * dim) * std::pow(2.0, alpha));
}

double hls_sharp_constant(int dim, double lambda) {
  check_exponent(dim, lambda, "lambda");
  return std::pow(M_PI, 0.5 * lambda) * gamma_fn(0.5 * (dim - lambda)) /
         gamma_fn(0.5 * (2.0 * dim - lambda)) *
         std::pow(gamma_fn(0.5 * dim) / gamma_fn(dim), -(dim - lambda) / dim);
}

double choquard_constant(int dim, double alpha) {
  check_exponent(dim, alpha, "alpha");
  return std::pow(4.0 * M_PI, -0.5 * alpha) * gamma_fn(0.5 * (dim - alpha)) /
         gamma_fn(0.5 * (dim + alpha)) *
         std::pow(gamma_fn(0.5 * dim) / gamma_fn(dim), -alpha / dim);
}

double sobolev_constant(int dim) {
  if (dim < 3) throw std::domain_error("sobolev_constant requires N >= 3");
  const double closed =
      M_PI * dim * (dim - 2) * std::pow(gamma_fn(0.5 * dim) / gamma_fn(dim), 2.0 / dim);

  // cross-check: the extremal U = [N(N-2)]^{(N-2)/4} (1+r^2)^{-(N-2)/2}
  // satisfies ||grad U||_2^2 = S^{N/2}
  const auto g = make_grid(dim, 1e-6, 1e6, 4096);
  const double amp = std::pow(dim * (dim - 2.0), 0.25 * (dim - 2));
  const auto u = sample(g, [&](double r) {
    return amp * std::pow(1.0 + r * r, -0.5 * (dim - 2));
  });
  const double quad = std::pow(dirichlet_energy(u), 2.0 / dim);
  if (std::abs(quad - closed) > 1e-4 * closed)
    throw convergence_error(
        "Sobolev constant cross-check failed: closed form " + std::to_string(closed) +
        " vs quadrature " + std::to_string(quad));
  return closed;
}

double nehari_level_bound(const ProblemParams& params) {
  const double p = params.p();
  const double c0 = choquard_constant(params.dim(), params.alpha());
  const double s = sobolev_constant(params.dim());
  return (p - 1.0) / (2.0 * p) * std::pow(c0, -1.0 / (p - 1.0)) *
         std::pow(s, p / (p - 1.0));
}

double constraint_level_bound(const ProblemParams& params) {
  const double p = params.p();
  const double c0 = choquard_constant(params.dim(), params.alpha());
  const double s = sobolev_constant(params.dim());
  return 0.5 * s * std::pow(2.0 * p / c0, 1.0 / p);
}

ConstantsReport constants_report(const ProblemParams& params) {
  ConstantsReport rep{};
  rep.riesz_norm = riesz_normalization(params.dim(), params.alpha());
  rep.hls_sharp = hls_sharp_constant(params.dim(), params.dim() - params.alpha());
  rep.choquard_c0 = choquard_constant(params.dim(), params.alpha());
  rep.sobolev_s = sobolev_constant(params.dim());
  rep.nehari_bound = nehari_level_bound(params);
  rep.constraint_bound = constraint_level_bound(params);
  return rep;
}

}  // namespace choquard
