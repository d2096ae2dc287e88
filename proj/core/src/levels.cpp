#include "choquard/levels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "choquard/bubbles.hpp"
#include "choquard/constants.hpp"
#include "choquard/errors.hpp"

namespace choquard {

namespace {

bool is_zero_field(const RadialField& u) {
  for (double v : u.values)
    if (v != 0.0) return false;
  return true;
}

EnergyBreakdown scale_breakdown(const EnergyBreakdown& e, double t,
                                const ProblemParams& params) {
  return breakdown_from_parts(t * t * e.a, std::pow(t, 2.0 * params.p()) * e.b,
                              std::pow(t, params.q()) * e.c, t * t * e.d, params);
}

double default_s_exponent(const ProblemParams& params, std::optional<double> s) {
  if (s) return *s;
  return 1.0;  // midpoint of (4-q, q-2)
}

}  // namespace

std::pair<double, double> max_energy_along_ray(const RadialField& u,
                                               const KernelMatrix& kernel,
                                               const ProblemParams& params) {
  const EnergyBreakdown e = energy_breakdown(u, kernel, params);
  const double t = fibering_time(e, params);
  return {t, ray_action(t, e, params)};
}

LevelReport verify_nehari_level(const ProblemParams& params, const GridPtr& grid,
                                const KernelMatrix& kernel,
                                const std::vector<double>& eps_list,
                                std::optional<double> s_exponent) {
  params.require_theorem_regime();
  if (eps_list.empty()) throw config_error("nehari level scan needs eps values");

  LevelReport rep;
  rep.bound = nehari_level_bound(params);
  rep.level = std::numeric_limits<double>::infinity();
  const bool perturbed = params.dim() == 4;
  const double s = default_s_exponent(params, s_exponent);
  for (double eps : eps_list) {
    const double sigma = perturbed ? std::pow(eps, s) : 0.0;
    const RadialField u = bubble(grid, BubbleSpec{grid->dim, eps, sigma});
    const EnergyBreakdown e = energy_breakdown(u, kernel, params);
    const double t = fibering_time(e, params);
    const double value = ray_action(t, e, params);
    if (value < rep.level) {
      rep.level = value;
      rep.eps_used = eps;
      rep.breakdown = scale_breakdown(e, t, params);
    }
    ++rep.iterations;
  }
  rep.margin = rep.bound - rep.level;
  rep.pass = rep.margin > 1e-4 * rep.bound;
  return rep;
}

std::pair<RadialField, LevelReport> minimize_nehari(const ProblemParams& params,
                                                    const GridPtr& grid,
                                                    const KernelMatrix& kernel,
                                                    const RadialField& start,
                                                    const SolverOptions& opts) {
  params.require_theorem_regime();
  if (is_zero_field(start)) throw data_error("minimization start must be nonzero");

  const H1Operator op(grid);
  const double coercivity =
      0.5 - std::max(1.0 / (2.0 * params.p()), 1.0 / params.q());

  auto project = [&](const RadialField& u, EnergyBreakdown& e_out) {
    const EnergyBreakdown e = energy_breakdown(u, kernel, params);
    const double t = fibering_time(e, params);
    RadialField v(u.grid);
    for (std::size_t i = 0; i < u.size(); ++i) v.values[i] = t * u.values[i];
    e_out = scale_breakdown(e, t, params);
    return v;
  };

  EnergyBreakdown e;
  RadialField u = project(start, e);
  double action = e.action_i;

  LevelReport rep;
  rep.bound = nehari_level_bound(params);
  double eta = opts.eta0;
  double last_delta = std::numeric_limits<double>::infinity();
  std::vector<double> prev_u, prev_dir;
  double residual = std::numeric_limits<double>::infinity();

  int it = 0;
  for (; it < opts.max_iter; ++it) {
    const auto partials = action_partials(u, kernel, params, op);
    const auto dir = op.solve(partials);
    double dual = 0.0;
    for (std::size_t i = 0; i < dir.size(); ++i) dual += partials[i] * dir[i];
    const double norm_sq = e.a + e.d;
    residual = std::sqrt(std::max(dual, 0.0) / norm_sq);
    rep.norm_monitor =
        std::max(rep.norm_monitor, norm_sq * coercivity / (action + 1.0));

    if (residual < opts.tol_residual && last_delta < opts.tol_action * std::abs(action))
      break;

    if (!prev_u.empty()) {
      double ss = 0.0, sy = 0.0;
      for (std::size_t i = 0; i < dir.size(); ++i) {
        const double su = u.values[i] - prev_u[i];
        ss += su * su;
        sy += su * (dir[i] - prev_dir[i]);
      }
      if (sy > 0.0) eta = std::clamp(ss / sy, 1e-3, 50.0);
    }
    prev_u = u.values;
    prev_dir = dir;

    bool accepted = false;
    while (eta >= 1e-12) {
      RadialField trial(u.grid);
      for (std::size_t i = 0; i < u.size(); ++i)
        trial.values[i] = u.values[i] - eta * dir[i];
      if (is_zero_field(trial)) {
        eta *= 0.5;
        continue;
      }
      EnergyBreakdown et;
      RadialField projected = project(trial, et);
      if (et.action_i <= action + 1e-14 * std::abs(action)) {
        last_delta = std::abs(action - et.action_i);
        u = std::move(projected);
        e = et;
        action = et.action_i;
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted)
      throw convergence_error("nehari descent stalled: no step decreases I "
                              "(iteration " + std::to_string(it) + ", residual " +
                              std::to_string(residual) + ")");
  }
  if (it >= opts.max_iter)
    throw convergence_error("nehari descent did not converge in " +
                            std::to_string(opts.max_iter) + " iterations (residual " +
                            std::to_string(residual) + ")");

  rep.level = action;
  rep.margin = rep.bound - action;
  rep.iterations = it;
  rep.residual = residual;
  rep.breakdown = e;
  rep.pass = rep.margin > 0.0 && residual < opts.tol_residual;
  return {std::move(u), rep};
}

ConstraintLevelReport verify_constraint_level(const ProblemParams& params,
                                              const GridPtr& grid,
                                              const KernelMatrix& kernel,
                                              const std::vector<double>& eps_list,
                                              std::optional<double> s_exponent) {
  params.require_theorem_regime();
  if (eps_list.empty()) throw config_error("constraint level scan needs eps values");

  const double p = params.p(), q = params.q();
  const double c0 = choquard_constant(params.dim(), params.alpha());

  ConstraintLevelReport out;
  out.bracket_lo = std::pow(p / c0, 1.0 / (2.0 * p));
  out.bracket_hi = std::pow(2.0 * p / c0, 1.0 / (2.0 * p));
  out.report.bound = constraint_level_bound(params);
  out.report.level = std::numeric_limits<double>::infinity();

  const bool perturbed = params.dim() == 4;
  const double s = default_s_exponent(params, s_exponent);

  for (double eps : eps_list) {
    ConstraintProbe probe;
    probe.eps = eps;
    const double sigma = perturbed ? std::pow(eps, s) : 0.0;
    RadialField u = bubble(grid, BubbleSpec{grid->dim, eps, sigma});
    const double nrm = critical_norm(u);
    for (double& v : u.values) v /= nrm;
    const EnergyBreakdown e = energy_breakdown(u, kernel, params);
    probe.t_of_v = e.half_dirichlet_t;
    probe.b_of_v = e.b;

    // H(t v) = t^{2p} B/(2p) + t^q C/q - t^2 D/2, increasing on the bracket
    auto h_of = [&](double t) {
      return std::pow(t, 2.0 * p) / (2.0 * p) * e.b + std::pow(t, q) / q * e.c -
             0.5 * t * t * e.d;
    };
    const double h_lo = h_of(out.bracket_lo), h_hi = h_of(out.bracket_hi);
    probe.feasible = h_lo < 1.0 && h_hi > 1.0;
    if (probe.feasible) {
      double lo = out.bracket_lo, hi = out.bracket_hi;
      for (int k = 0; k < 200 && hi - lo > 1e-15 * hi; ++k) {
        const double mid = 0.5 * (lo + hi);
        (h_of(mid) > 1.0 ? hi : lo) = mid;
      }
      probe.t_eps = 0.5 * (lo + hi);
      probe.level = probe.t_eps * probe.t_eps * e.half_dirichlet_t;
      if (probe.level < out.report.level) {
        out.report.level = probe.level;
        out.report.eps_used = eps;
        out.report.breakdown = scale_breakdown(e, probe.t_eps, params);
      }
    }
    out.probes.push_back(probe);
    ++out.report.iterations;
  }
  out.report.margin = out.report.bound - out.report.level;
  out.report.pass = std::isfinite(out.report.level) && out.report.margin > 0.0;
  return out;
}

std::pair<RadialField, LevelReport> minimize_constraint(const ProblemParams& params,
                                                        const GridPtr& grid,
                                                        const KernelMatrix& kernel,
                                                        const RadialField& start,
                                                        const SolverOptions& opts) {
  params.require_theorem_regime();
  if (is_zero_field(start)) throw data_error("minimization start must be nonzero");

  const H1Operator op(grid);
  const double s = sobolev_constant(params.dim());
  const double e1 = (params.dim() + params.alpha()) / (params.dim() - 2.0);
  const double e2 = params.dim() / (params.dim() - 2.0);

  auto lemma_ratio = [&](const EnergyBreakdown& e) {
    const double cap = std::pow(s, -e1) * std::pow(e.a, e1) +
                       std::pow(s, -e2) * std::pow(e.a, e2);
    return e.d / cap;
  };

  RadialField u = constraint_scale(start, kernel, params).field;
  EnergyBreakdown e = energy_breakdown(u, kernel, params);
  double level = e.half_dirichlet_t;

  LevelReport rep;
  rep.bound = constraint_level_bound(params);
  rep.monitor_c = lemma_ratio(e);

  double eta = opts.eta0;
  double delta = std::numeric_limits<double>::infinity();
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    const auto dir = op.solve(op.apply_stiffness(u.values));
    bool accepted = false;
    while (eta >= 1e-12) {
      RadialField trial(u.grid);
      for (std::size_t i = 0; i < u.size(); ++i)
        trial.values[i] = std::abs(u.values[i] - eta * dir[i]);
      if (is_zero_field(trial)) {
        eta *= 0.5;
        continue;
      }
      RadialField candidate =
          constraint_scale(schwarz_rearrange(trial), kernel, params).field;
      const EnergyBreakdown ec = energy_breakdown(candidate, kernel, params);
      if (ec.half_dirichlet_t <= level * (1.0 + 1e-14)) {
        delta = level - ec.half_dirichlet_t;
        u = std::move(candidate);
        e = ec;
        level = ec.half_dirichlet_t;
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) {
      // no descent step works; the projection alone must not raise T
      RadialField fixed = constraint_scale(schwarz_rearrange(u), kernel, params).field;
      const EnergyBreakdown ef = energy_breakdown(fixed, kernel, params);
      if (ef.half_dirichlet_t > level * (1.0 + 1e-9))
        throw convergence_error(
            "constrained descent stagnated: rearrangement + scaling raised T from " +
            std::to_string(level) + " to " + std::to_string(ef.half_dirichlet_t));
      break;
    }
    rep.monitor_c = std::max(rep.monitor_c, lemma_ratio(e));
    if (delta < opts.tol_action * level) break;
    eta = std::min(eta * 1.5, 2.0);
  }

  rep.level = level;
  rep.margin = rep.bound - level;
  rep.iterations = it;
  rep.residual = (level > 0.0) ? delta / level : 0.0;
  rep.breakdown = e;
  rep.pass = rep.margin > 0.0 && std::abs(e.constraint_h - 1.0) <= 1e-8;
  return {std::move(u), rep};
}

BrezisLiebReport brezis_lieb_check(const ProblemParams& params, const GridPtr& grid,
                                   const KernelMatrix& kernel, const RadialField& u0,
                                   const std::vector<double>& eps_list) {
  if (eps_list.size() < 2) throw config_error("splitting check needs >= 2 eps values");
  for (std::size_t i = 1; i < eps_list.size(); ++i)
    if (!(eps_list[i] < eps_list[i - 1]))
      throw config_error("splitting check eps list must be strictly decreasing");

  const double p = params.p();
  BrezisLiebReport rep;
  rep.b_u0 = is_zero_field(u0) ? 0.0 : choquard_energy(kernel, u0, p);

  for (double eps : eps_list) {
    RadialField bump = bubble(grid, BubbleSpec{grid->dim, eps, 0.0});
    const double nrm = critical_norm(bump);
    for (double& v : bump.values) v /= nrm;
    RadialField sum(u0.grid);
    for (std::size_t i = 0; i < sum.size(); ++i)
      sum.values[i] = u0.values[i] + bump.values[i];
    const double delta = std::abs(choquard_energy(kernel, sum, p) -
                                  choquard_energy(kernel, bump, p) - rep.b_u0);
    rep.rows.emplace_back(eps, delta);
  }

  rep.decreasing = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (rep.rows[i].second > rep.rows[i - 1].second) rep.decreasing = false;
  rep.small_tail = rep.rows.back().second <= 0.05 * rep.b_u0;
  rep.pass = rep.decreasing && rep.small_tail;
  return rep;
}

double subadditivity_gap(double lambda, int dim) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::domain_error("subadditivity gap needs lambda in [0, 1]");
  const double e = (dim - 2.0) / dim;
  return std::pow(lambda, e) + std::pow(1.0 - lambda, e) - 1.0;
}

double contradiction_level(const ProblemParams& params) {
  const double p = params.p();
  const double c0 = choquard_constant(params.dim(), params.alpha());
  const double s = sobolev_constant(params.dim());
  const double k = c0 * std::pow(s, -p);

  // positive root of k l^p = l, found by bisection + Newton on k l^{p-1} - 1
  auto f = [&](double l) { return k * std::pow(l, p - 1.0) - 1.0; };
  auto df = [&](double l) { return k * (p - 1.0) * std::pow(l, p - 2.0); };
  double lo = 1e-12, hi = 1e12;
  for (int it = 0; it < 160; ++it) {
    const double mid = std::sqrt(lo * hi);
    (f(mid) > 0.0 ? hi : lo) = mid;
  }
  double l = std::sqrt(lo * hi);
  for (int it = 0; it < 8; ++it) l -= f(l) / df(l);
  return (p - 1.0) / (2.0 * p) * l;
}

}  // namespace choquard
