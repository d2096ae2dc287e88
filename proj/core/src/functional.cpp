#include "choquard/functional.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "choquard/errors.hpp"

namespace choquard {

EnergyBreakdown breakdown_from_parts(double a, double b, double c, double d,
                                     const ProblemParams& params) {
  EnergyBreakdown e;
  e.a = a;
  e.b = b;
  e.c = c;
  e.d = d;
  const double p = params.p(), q = params.q();
  e.action_i = 0.5 * (a + d) - b / (2.0 * p) - c / q;
  e.nehari_j = a + d - b - c;
  e.constraint_h = b / (2.0 * p) + c / q - 0.5 * d;
  e.half_dirichlet_t = 0.5 * a;
  return e;
}

EnergyBreakdown energy_breakdown(const RadialField& u, const KernelMatrix& kernel,
                                 const ProblemParams& params) {
  const double a = dirichlet_energy(u);
  const double b = choquard_energy(kernel, u, params.p());
  const double c = lebesgue_q_norm(u, params.q());
  const double d = mass_norm(u);
  return breakdown_from_parts(a, b, c, d, params);
}

double ray_action(double t, const EnergyBreakdown& e, const ProblemParams& params) {
  const double p = params.p(), q = params.q();
  return 0.5 * t * t * (e.a + e.d) - std::pow(t, 2.0 * p) / (2.0 * p) * e.b -
         std::pow(t, q) / q * e.c;
}

double ray_nehari(double t, const EnergyBreakdown& e, const ProblemParams& params) {
  const double p = params.p(), q = params.q();
  return t * t * (e.a + e.d) - std::pow(t, 2.0 * p) * e.b - std::pow(t, q) * e.c;
}

double ray_g(double t, const EnergyBreakdown& e, const ProblemParams& params) {
  const double p = params.p(), q = params.q();
  return 2.0 * (e.a + e.d) - 2.0 * p * std::pow(t, 2.0 * p - 2.0) * e.b -
         q * std::pow(t, q - 2.0) * e.c;
}

namespace {

constexpr double kBracketLo = 1e-8;
constexpr double kBracketHi = 1e8;

void require_nondegenerate(const EnergyBreakdown& e) {
  if (!(e.b > 0.0 || e.c > 0.0) || !(e.a + e.d > 0.0))
    throw data_error("degenerate input: the fibering map needs a nonzero field");
}

// Bisect a (log-scale) monotone predicate on [lo, hi], then Newton-polish.
template <typename F, typename DF>
double solve_increasing(F f, DF df, double lo, double hi) {
  if (!(f(lo) < 0.0 && f(hi) > 0.0))
    throw convergence_error("no sign change in the root bracket [1e-8, 1e8]");
  for (int it = 0; it < 120 && hi / lo > 1.0 + 1e-6; ++it) {
    const double mid = std::sqrt(lo * hi);
    (f(mid) > 0.0 ? hi : lo) = mid;
  }
  double t = std::sqrt(lo * hi);
  for (int it = 0; it < 12; ++it) {
    const double ft = f(t), dft = df(t);
    if (!(std::abs(dft) > 0.0)) break;
    const double step = ft / dft;
    t -= step;
    t = std::clamp(t, lo * 0.5, hi * 2.0);
    if (std::abs(step) <= 1e-15 * t) break;
  }
  return t;
}

}  // namespace

double fibering_time(const EnergyBreakdown& e, const ProblemParams& params) {
  require_nondegenerate(e);
  const double p = params.p(), q = params.q();
  // J(tu)/t^2 = (A+D) - t^{2p-2} B - t^{q-2} C: strictly decreasing in t
  auto f = [&](double t) {
    return std::pow(t, 2.0 * p - 2.0) * e.b + std::pow(t, q - 2.0) * e.c - (e.a + e.d);
  };
  auto df = [&](double t) {
    return (2.0 * p - 2.0) * std::pow(t, 2.0 * p - 3.0) * e.b +
           (q - 2.0) * std::pow(t, q - 3.0) * e.c;
  };
  return solve_increasing(f, df, kBracketLo, kBracketHi);
}

FiberingResult fibering_root(const RadialField& u, const KernelMatrix& kernel,
                             const ProblemParams& params) {
  const EnergyBreakdown e = energy_breakdown(u, kernel, params);
  require_nondegenerate(e);

  FiberingResult out;
  out.t_root = fibering_time(e, params);
  // g is strictly decreasing: negate to reuse the increasing solver
  auto f = [&](double t) { return -ray_g(t, e, params); };
  const double p = params.p(), q = params.q();
  auto df = [&](double t) {
    return 2.0 * p * (2.0 * p - 2.0) * std::pow(t, 2.0 * p - 3.0) * e.b +
           q * (q - 2.0) * std::pow(t, q - 3.0) * e.c;
  };
  out.t_sign_change = solve_increasing(f, df, kBracketLo, kBracketHi);

  out.bracket_lo = out.t_sign_change * (1.0 - 1e-4);
  out.bracket_hi = out.t_sign_change * (1.0 + 1e-4);

  const double lo = out.t_sign_change * 1e-2, hi = out.t_sign_change * 1e2;
  const int samples = 64;
  out.g_samples.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    const double t = lo * std::pow(hi / lo, k / double(samples - 1));
    out.g_samples.emplace_back(t, ray_g(t, e, params));
  }
  return out;
}

RadialField nehari_project(const RadialField& u, const KernelMatrix& kernel,
                           const ProblemParams& params) {
  const EnergyBreakdown e = energy_breakdown(u, kernel, params);
  require_nondegenerate(e);
  const double t = fibering_time(e, params);
  RadialField out(u.grid);
  for (std::size_t i = 0; i < u.size(); ++i) out.values[i] = t * u.values[i];
  return out;
}

double peak_two_term(double a, double b, double p) {
  if (!(a > 0.0 && b > 0.0)) throw std::domain_error("peak_two_term needs a, b > 0");
  if (!(p > 1.0)) throw std::domain_error("peak_two_term needs p > 1");
  return (p - 1.0) / (2.0 * p) * std::pow(std::pow(a, p) / b, 1.0 / (p - 1.0));
}

ConstraintScaling constraint_scale(const RadialField& u, const KernelMatrix& kernel,
                                   const ProblemParams& params) {
  const int dim = params.dim();
  const double p = params.p(), q = params.q(), alpha = params.alpha();

  ConstraintScaling result;
  result.field = u;
  for (int round = 0; round < 16; ++round) {
    const EnergyBreakdown e = energy_breakdown(result.field, kernel, params);
    if (std::abs(e.constraint_h - 1.0) <= 1e-9) return result;

    const double beta = e.b / (2.0 * p);
    const double gam = e.c / q - 0.5 * e.d;
    if (!(beta > 0.0) && !(gam > 0.0))
      throw infeasible_error("no dilation reaches the constraint manifold: "
                             "B = 0 and C/q <= D/2");
    auto f = [&](double s) {
      return beta * std::pow(s, dim + alpha) + gam * std::pow(s, dim) - 1.0;
    };
    auto df = [&](double s) {
      return (dim + alpha) * beta * std::pow(s, dim + alpha - 1.0) +
             dim * gam * std::pow(s, dim - 1.0);
    };
    // f(s) > 0 is monotone in s: unique crossing on the increasing branch
    double sigma;
    try {
      sigma = solve_increasing(f, df, kBracketLo, kBracketHi);
    } catch (const convergence_error&) {
      throw infeasible_error("no positive dilation factor solves H(u_sigma) = 1");
    }
    result.field = dilate(result.field, sigma);
    result.sigma *= sigma;
  }
  const EnergyBreakdown e = energy_breakdown(result.field, kernel, params);
  if (std::abs(e.constraint_h - 1.0) > 1e-8)
    throw convergence_error("constraint scaling did not reach |H-1| <= 1e-8");
  return result;
}

// ---------------------------------------------------------------------------

H1Operator::H1Operator(GridPtr grid) : grid_(std::move(grid)) {
  const auto& g = *grid_;
  const std::size_t m = g.size();
  if (m < 5) throw data_error("H1 operator needs at least 5 nodes");
  const double h = g.log_step;

  mass_.resize(m);
  for (std::size_t i = 0; i < m; ++i) mass_[i] = g.sphere * g.weights[i];

  // derivative stencil rows (du/dr), same as radial_derivative
  struct Row {
    std::size_t first;
    double c[5];
  };
  std::vector<Row> rows(m);
  const double c0[5] = {-25.0, 48.0, -36.0, 16.0, -3.0};
  const double c1[5] = {-3.0, -10.0, 18.0, -6.0, 1.0};
  const double ci[5] = {1.0, -8.0, 0.0, 8.0, -1.0};
  for (std::size_t i = 0; i < m; ++i) {
    const double s = 1.0 / (12.0 * h * g.nodes[i]);
    Row& row = rows[i];
    if (i == 0) {
      row.first = 0;
      for (int k = 0; k < 5; ++k) row.c[k] = c0[k] * s;
    } else if (i == 1) {
      row.first = 0;
      for (int k = 0; k < 5; ++k) row.c[k] = c1[k] * s;
    } else if (i == m - 2) {
      row.first = m - 5;
      for (int k = 0; k < 5; ++k) row.c[k] = -c1[4 - k] * s;
    } else if (i == m - 1) {
      row.first = m - 5;
      for (int k = 0; k < 5; ++k) row.c[k] = -c0[4 - k] * s;
    } else {
      row.first = i - 2;
      for (int k = 0; k < 5; ++k) row.c[k] = ci[k] * s;
    }
  }

  // L = D' W D, lower band storage band_[i*(kBand+1)+k] = L(i, i-k)
  band_.assign(m * (kBand + 1), 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const Row& row = rows[i];
    const double wi = mass_[i];
    for (int a = 0; a < 5; ++a) {
      if (row.c[a] == 0.0) continue;
      for (int b = 0; b <= a; ++b) {
        if (row.c[b] == 0.0) continue;
        const std::size_t ja = row.first + a, jb = row.first + b;
        band_[ja * (kBand + 1) + (ja - jb)] += wi * row.c[a] * row.c[b];
      }
    }
  }

  // Cholesky of L + M
  chol_ = band_;
  for (std::size_t i = 0; i < m; ++i) chol_[i * (kBand + 1)] += mass_[i];
  for (std::size_t j = 0; j < m; ++j) {
    double diag = chol_[j * (kBand + 1)];
    const std::size_t lo = (j >= kBand) ? j - kBand : 0;
    for (std::size_t l = lo; l < j; ++l) {
      const double v = chol_[j * (kBand + 1) + (j - l)];
      diag -= v * v;
    }
    if (!(diag > 0.0)) throw convergence_error("H1 operator lost positive definiteness");
    const double dj = std::sqrt(diag);
    chol_[j * (kBand + 1)] = dj;
    const std::size_t iend = std::min(m, j + kBand + 1);
    for (std::size_t i = j + 1; i < iend; ++i) {
      double sum = chol_[i * (kBand + 1) + (i - j)];
      const std::size_t lstart = std::max((i >= kBand) ? i - kBand : 0, lo);
      for (std::size_t l = lstart; l < j; ++l)
        sum -= chol_[i * (kBand + 1) + (i - l)] * chol_[j * (kBand + 1) + (j - l)];
      chol_[i * (kBand + 1) + (i - j)] = sum / dj;
    }
  }
}

std::vector<double> H1Operator::apply_stiffness(const std::vector<double>& u) const {
  const std::size_t m = mass_.size();
  std::vector<double> out(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double* bi = band_.data() + i * (kBand + 1);
    double acc = bi[0] * u[i];
    const int kmax = static_cast<int>(std::min<std::size_t>(kBand, i));
    for (int k = 1; k <= kmax; ++k) {
      acc += bi[k] * u[i - k];
      out[i - k] += bi[k] * u[i];
    }
    out[i] += acc;
  }
  return out;
}

double H1Operator::stiffness_energy(const std::vector<double>& u) const {
  const auto lu = apply_stiffness(u);
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * lu[i];
  return acc;
}

double H1Operator::mass_energy(const std::vector<double>& u) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += mass_[i] * u[i] * u[i];
  return acc;
}

std::vector<double> H1Operator::solve(const std::vector<double>& rhs) const {
  const std::size_t m = mass_.size();
  std::vector<double> x(rhs);
  // forward: G y = rhs
  for (std::size_t i = 0; i < m; ++i) {
    double sum = x[i];
    const int kmax = static_cast<int>(std::min<std::size_t>(kBand, i));
    for (int k = 1; k <= kmax; ++k) sum -= chol_[i * (kBand + 1) + k] * x[i - k];
    x[i] = sum / chol_[i * (kBand + 1)];
  }
  // backward: G' x = y
  for (std::size_t i = m; i-- > 0;) {
    double sum = x[i];
    const std::size_t jend = std::min(m, i + kBand + 1);
    for (std::size_t j = i + 1; j < jend; ++j)
      sum -= chol_[j * (kBand + 1) + (j - i)] * x[j];
    x[i] = sum / chol_[i * (kBand + 1)];
  }
  return x;
}

std::vector<double> action_partials(const RadialField& u, const KernelMatrix& kernel,
                                    const ProblemParams& params, const H1Operator& op) {
  const double p = params.p(), q = params.q();
  const std::size_t m = u.size();

  RadialField f(u.grid);
  for (std::size_t i = 0; i < m; ++i)
    f.values[i] = std::pow(std::abs(u.values[i]), p);
  const RadialField conv = apply_riesz(kernel, f);

  std::vector<double> out = op.apply_stiffness(u.values);
  const auto& w = op.mass();
  for (std::size_t i = 0; i < m; ++i) {
    const double v = u.values[i];
    const double sgn = (v > 0.0) - (v < 0.0);
    const double av = std::abs(v);
    out[i] += w[i] * (v - conv.values[i] * sgn * std::pow(av, p - 1.0) -
                      sgn * std::pow(av, q - 1.0));
  }
  return out;
}

RadialField action_gradient(const RadialField& u, const KernelMatrix& kernel,
                            const ProblemParams& params) {
  const H1Operator op(u.grid);
  const auto partials = action_partials(u, kernel, params, op);
  RadialField out(u.grid);
  for (std::size_t i = 0; i < u.size(); ++i)
    out.values[i] = partials[i] / op.mass()[i];
  return out;
}

Residual el_residual(const RadialField& u, const KernelMatrix& kernel,
                     const ProblemParams& params, const H1Operator& op) {
  bool zero = true;
  for (double v : u.values)
    if (v != 0.0) {
      zero = false;
      break;
    }
  if (zero) return {0.0, true};

  const auto partials = action_partials(u, kernel, params, op);
  const auto dual = op.solve(partials);
  double num = 0.0;
  for (std::size_t i = 0; i < partials.size(); ++i) num += partials[i] * dual[i];
  const double den = op.stiffness_energy(u.values) + op.mass_energy(u.values);
  return {std::sqrt(std::max(num, 0.0) / den), false};
}

Residual el_residual(const RadialField& u, const KernelMatrix& kernel,
                     const ProblemParams& params) {
  return el_residual(u, kernel, params, H1Operator(u.grid));
}

}  // namespace choquard
