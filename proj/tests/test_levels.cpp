#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "choquard/bubbles.hpp"
#include "choquard/constants.hpp"
#include "choquard/errors.hpp"
#include "choquard/levels.hpp"
#include "support/oracles.hpp"

using namespace choquard;

namespace {

struct Fixture {
  GridPtr grid = make_grid(5, 1e-6, 1e4, 1024);
  ProblemParams params{5, 2.0, 3.0};
  KernelMatrix kernel = build_kernel(grid, 2.0);
};

const Fixture& fix() {
  static Fixture f;
  return f;
}

}  // namespace

TEST_CASE("max energy along the ray") {
  const auto& f = fix();
  const auto u = bubble(f.grid, BubbleSpec{5, 0.1, 0.0});
  const auto [t_star, value] = max_energy_along_ray(u, f.kernel, f.params);
  const EnergyBreakdown e = energy_breakdown(u, f.kernel, f.params);
  CHECK(value == doctest::Approx(ray_action(t_star, e, f.params)).epsilon(1e-12));
  for (int s = 1; s <= 100; ++s)
    CHECK(value >= ray_action(0.031 * s * t_star, e, f.params) * (1.0 - 1e-12));

  // the two-term peak bounds the paper's decomposition of the ray value
  const double peak = peak_two_term(e.a, e.b, f.params.p());
  const double rest = 0.5 * t_star * t_star * e.d -
                      std::pow(t_star, f.params.q()) / f.params.q() * e.c;
  CHECK(value <= peak + rest + 1e-8 * std::abs(value));

  // enlarging the subcritical term lowers the peak
  EnergyBreakdown boosted =
      breakdown_from_parts(e.a, e.b, 2.0 * e.c, e.d, f.params);
  const double t2 = fibering_time(boosted, f.params);
  CHECK(ray_action(t2, boosted, f.params) < value);
}

TEST_CASE("nehari level verification (N=5)") {
  const auto& f = fix();
  const LevelReport rep =
      verify_nehari_level(f.params, f.grid, f.kernel, {0.1, 0.05, 0.025});
  CHECK(rep.pass);
  CHECK(rep.margin > 1e-4 * rep.bound);
  CHECK(rep.level < rep.bound);
  CHECK(rep.eps_used == 0.1);  // widest bubble gives the smallest ray maximum
  CHECK(rep.bound == doctest::Approx(nehari_level_bound(f.params)).epsilon(1e-14));
}

TEST_CASE("nehari level verification (N=4 flattened family)") {
  const auto g = make_grid(4, 1e-6, 1e4, 1024);
  const KernelMatrix k = build_kernel(g, 2.0);
  const ProblemParams params(4, 2.0, 3.5);
  const LevelReport rep = verify_nehari_level(params, g, k, {0.1, 0.05, 0.025}, 0.75);
  CHECK(rep.pass);
  CHECK(rep.margin > 1e-4 * rep.bound);

  // outside the theorem hypotheses the check refuses to run
  CHECK_THROWS_AS(verify_nehari_level(ProblemParams(4, 2.0, 2.5), g, k, {0.1}),
                  config_error);
}

TEST_CASE("constraint level verification (N=5)") {
  const auto& f = fix();
  const auto rep =
      verify_constraint_level(f.params, f.grid, f.kernel, {0.025, 0.01, 0.005});
  CHECK(rep.report.pass);
  CHECK(rep.report.margin > 0.0);

  const double p = f.params.p();
  const double c0 = choquard_constant(5, 2.0);
  CHECK(rep.bracket_lo == doctest::Approx(std::pow(p / c0, 1.0 / (2 * p))).epsilon(1e-14));
  CHECK(rep.bracket_hi ==
        doctest::Approx(std::pow(2.0 * p / c0, 1.0 / (2 * p))).epsilon(1e-14));

  const double s = sobolev_constant(5);
  bool saw_infeasible = false;
  for (const auto& probe : rep.probes) {
    CHECK(probe.t_of_v == doctest::Approx(0.5 * s).epsilon(5e-3));
    CHECK(probe.b_of_v == doctest::Approx(c0).epsilon(5e-3));
    if (!probe.feasible) {
      saw_infeasible = true;
      continue;
    }
    CHECK(probe.t_eps >= rep.bracket_lo);
    CHECK(probe.t_eps <= rep.bracket_hi);
    CHECK(probe.level < rep.report.bound);
  }
  CHECK(saw_infeasible);  // eps = 0.025 is too coarse for the bracket
}

TEST_CASE("constraint level verification (N=4)") {
  const auto g = make_grid(4, 1e-6, 1e4, 1024);
  const KernelMatrix k = build_kernel(g, 2.0);
  const ProblemParams params(4, 2.0, 3.5);
  const auto rep = verify_constraint_level(params, g, k, {0.01, 0.005});
  CHECK(rep.report.pass);
  CHECK(rep.report.margin > 0.0);
}

TEST_CASE("nehari minimization") {
  const auto& f = fix();
  SolverOptions opts;
  opts.tol_residual = 1e-4;

  const auto start = bubble(f.grid, BubbleSpec{5, 0.1, 0.0});
  const auto [u1, rep1] = minimize_nehari(f.params, f.grid, f.kernel, start, opts);
  CHECK(rep1.pass);
  CHECK(rep1.level < rep1.bound);
  CHECK(rep1.residual < 1e-4);
  CHECK(std::abs(rep1.breakdown.nehari_j) <=
        1e-8 * (rep1.breakdown.a + rep1.breakdown.d));
  CHECK(rep1.norm_monitor <= 1.0);

  const Residual res = el_residual(u1, f.kernel, f.params);
  CHECK(res.value < 1e-4);

  // independent start converges to the same level
  std::mt19937_64 rng(61);
  const auto bump = oracles::random_profile(f.grid, rng);
  const auto [u2, rep2] = minimize_nehari(f.params, f.grid, f.kernel, bump, opts);
  CHECK(rep2.level == doctest::Approx(rep1.level).epsilon(1e-3));

  CHECK_THROWS_AS(
      minimize_nehari(f.params, f.grid, f.kernel, RadialField(f.grid), opts),
      data_error);
}

TEST_CASE("constraint minimization") {
  const auto& f = fix();
  const auto scan = verify_constraint_level(f.params, f.grid, f.kernel, {0.005});
  REQUIRE(scan.probes.front().feasible);

  auto start = bubble(f.grid, BubbleSpec{5, 0.005, 0.0});
  const double nrm = critical_norm(start);
  for (double& v : start.values) v *= scan.probes.front().t_eps / nrm;

  const auto [u, rep] = minimize_constraint(f.params, f.grid, f.kernel, start);
  CHECK(rep.pass);
  CHECK(rep.level <= scan.probes.front().level * (1.0 + 1e-12));
  CHECK(rep.level < rep.bound);
  CHECK(std::abs(rep.breakdown.constraint_h - 1.0) <= 1e-8);
  CHECK(rep.breakdown.b + rep.breakdown.c - rep.breakdown.d > 2.0 - 1e-6);
  CHECK(std::isfinite(rep.monitor_c));

  // re-running from the minimizer stops immediately at the same level
  const auto [u2, rep2] = minimize_constraint(f.params, f.grid, f.kernel, u);
  CHECK(rep2.iterations <= 2);
  CHECK(rep2.level == doctest::Approx(rep.level).epsilon(1e-8));

  // a start off the manifold is first projected onto H = 1
  auto off = start;
  for (double& v : off.values) v *= 1.3;
  const auto [u3, rep3] = minimize_constraint(f.params, f.grid, f.kernel, off);
  CHECK(std::abs(rep3.breakdown.constraint_h - 1.0) <= 1e-8);
}

TEST_CASE("nonlocal splitting along a concentrating family") {
  const auto& f = fix();

  SUBCASE("zero background: defect vanishes identically") {
    const auto rep =
        brezis_lieb_check(f.params, f.grid, f.kernel, RadialField(f.grid), {0.2, 0.1});
    CHECK(rep.b_u0 == 0.0);
    for (const auto& [eps, delta] : rep.rows) CHECK(delta <= 1e-12);
  }
  SUBCASE("gaussian background: defect decreases") {
    const auto u0 = sample(f.grid, [](double r) { return std::exp(-r * r); });
    const auto rep = brezis_lieb_check(f.params, f.grid, f.kernel, u0, {0.2, 0.1, 0.05});
    CHECK(rep.decreasing);
    CHECK(rep.rows.front().second > rep.rows.back().second);
  }
  SUBCASE("amplified background clears the 5% floor") {
    const auto u0 = sample(f.grid, [](double r) { return 10.0 * std::exp(-r * r); });
    const auto rep = brezis_lieb_check(f.params, f.grid, f.kernel, u0, {0.2, 0.1, 0.05});
    CHECK(rep.pass);
  }
  SUBCASE("eps list must decrease") {
    CHECK_THROWS_AS(
        brezis_lieb_check(f.params, f.grid, f.kernel, RadialField(f.grid), {0.1, 0.2}),
        config_error);
  }
}

TEST_CASE("subadditivity gap") {
  CHECK(subadditivity_gap(0.0, 5) == 0.0);
  CHECK(subadditivity_gap(1.0, 5) == 0.0);
  CHECK(subadditivity_gap(0.5, 5) ==
        doctest::Approx(2.0 * std::pow(0.5, 0.6) - 1.0).epsilon(1e-14));
  for (int n : {4, 5, 6})
    for (int k = 1; k <= 99; ++k) CHECK(subadditivity_gap(k / 100.0, n) > 0.0);
  CHECK_THROWS_AS(subadditivity_gap(-0.1, 5), std::domain_error);
  CHECK_THROWS_AS(subadditivity_gap(1.1, 5), std::domain_error);
}

TEST_CASE("limit algebra reproduces the level threshold") {
  for (const auto& params :
       {ProblemParams(5, 2.0, 3.0), ProblemParams(4, 2.0, 3.5), ProblemParams(6, 3.0, 2.5)})
    CHECK(contradiction_level(params) ==
          doctest::Approx(nehari_level_bound(params)).epsilon(1e-10));
}
