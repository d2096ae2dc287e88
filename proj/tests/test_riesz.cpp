#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "choquard/constants.hpp"
#include "choquard/errors.hpp"
#include "choquard/riesz.hpp"
#include "support/oracles.hpp"

using namespace choquard;

namespace {

double rel_l2(const RadialField& a, const RadialField& b) {
  RadialField diff(a.grid);
  for (std::size_t i = 0; i < a.size(); ++i)
    diff.values[i] = a.values[i] - b.values[i];
  return std::sqrt(mass_norm(diff) / mass_norm(b));
}

}  // namespace

TEST_CASE("kernel entries: Newton closed form, symmetry, positivity") {
  const auto g = make_grid(5, 1e-6, 1e4, 512);
  const KernelMatrix k2 = build_kernel(g, 2.0);

  const double cbar = riesz_normalization(5, 2.0);
  const double om = oracles::surface_area(5);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, g->size() - 1);
  for (int t = 0; t < 50; ++t) {
    const std::size_t i = pick(rng), j = pick(rng);
    CHECK(k2.entry(i, j) == k2.entry(j, i));  // symmetric by construction
    const double want = cbar * om * std::pow(std::max(g->nodes[i], g->nodes[j]), -3.0);
    CHECK(k2.entry(i, j) == doctest::Approx(want).epsilon(1e-8));
    CHECK(k2.entry(i, j) > 0.0);
  }

  const auto g4 = make_grid(4, 1e-6, 1e4, 256);
  const KernelMatrix k43 = build_kernel(g4, 3.0);
  double row_sum = 0.0;
  for (std::size_t j = 0; j < g4->size(); ++j) {
    CHECK(k43.entry(100, j) > 0.0);
    row_sum += k43.entry(100, j) * g4->weights[j];
  }
  CHECK(std::isfinite(row_sum));

  CHECK_THROWS_AS(build_kernel(g, 0.8), config_error);   // alpha <= 1 unsupported
  CHECK_THROWS_AS(build_kernel(g, 7.0), std::domain_error);
}

TEST_CASE("apply: zero, linearity, grid mismatch") {
  const auto g = make_grid(5, 1e-6, 1e4, 512);
  const KernelMatrix k = build_kernel(g, 2.0);

  const RadialField zero(g);
  const auto kz = apply_riesz(k, zero);
  for (double v : kz.values) CHECK(v == 0.0);

  std::mt19937_64 rng(7);
  const auto f = oracles::random_profile(g, rng);
  const auto h = oracles::random_profile(g, rng);
  RadialField lin(g);
  for (std::size_t i = 0; i < g->size(); ++i)
    lin.values[i] = 2.0 * f.values[i] - 0.5 * h.values[i];
  const auto kf = apply_riesz(k, f), kh = apply_riesz(k, h), kl = apply_riesz(k, lin);
  for (std::size_t i = 0; i < g->size(); i += 37)
    CHECK(kl.values[i] ==
          doctest::Approx(2.0 * kf.values[i] - 0.5 * kh.values[i]).epsilon(1e-12));

  const auto g2 = make_grid(5, 1e-6, 1e4, 256);
  CHECK_THROWS_AS(apply_riesz(k, RadialField(g2)), data_error);
}

TEST_CASE("newton oracle on a sampled cutoff: exterior power law") {
  const auto g = make_grid(5, 1e-6, 1e4, 2048);
  const auto ind = sample(g, [](double r) { return r <= 1.0 ? 1.0 : 0.0; });
  const auto pot = newton_oracle(ind);
  // outside the support the potential is exactly c/r^3; the constant is
  // 1/15 up to the mass captured by the boundary cell
  std::size_t i0 = 0;
  while (g->nodes[i0] < 1.5) ++i0;
  const double c0 = pot.values[i0] * std::pow(g->nodes[i0], 3.0);
  for (std::size_t i = i0; i < g->size(); i += 50)
    CHECK(pot.values[i] * std::pow(g->nodes[i], 3.0) ==
          doctest::Approx(c0).epsilon(1e-10));
  CHECK(c0 == doctest::Approx(1.0 / 15.0).epsilon(2.5e-2));

  const auto zero = newton_oracle(RadialField(g));
  for (double v : zero.values) CHECK(v == 0.0);
}

TEST_CASE("kernel agrees with the Newton route at alpha = 2") {
  for (int dim : {4, 5}) {
    const auto g = make_grid(dim, 1e-6, 1e4, 1024);
    const KernelMatrix k = build_kernel(g, 2.0);
    std::mt19937_64 rng(100 + dim);
    for (int t = 0; t < 5; ++t) {
      const auto u = oracles::random_profile(g, rng);
      CHECK(rel_l2(apply_riesz(k, u), newton_oracle(u)) < 1e-6);
    }
  }
}

TEST_CASE("self-adjointness") {
  const auto g = make_grid(5, 1e-6, 1e4, 512);
  const KernelMatrix k = build_kernel(g, 2.5);
  std::mt19937_64 rng(11);
  const auto f = oracles::random_profile(g, rng);
  const auto h = oracles::random_profile(g, rng);
  RadialField fg(g), hg(g);
  const auto kf = apply_riesz(k, f), kh = apply_riesz(k, h);
  for (std::size_t i = 0; i < g->size(); ++i) {
    fg.values[i] = kf.values[i] * h.values[i];
    hg.values[i] = kh.values[i] * f.values[i];
  }
  CHECK(integrate(fg) == doctest::Approx(integrate(hg)).epsilon(1e-10));
}

TEST_CASE("nonlocal energy: bubbles saturate the sharp bound") {
  const auto g = make_grid(5, 1e-6, 1e4, 2048);
  const KernelMatrix k = build_kernel(g, 2.0);
  const double p = 7.0 / 3.0;
  const double target = choquard_constant(5, 2.0) * std::pow(sobolev_constant(5), 3.5);

  CHECK(choquard_energy(k, RadialField(g), p) == 0.0);

  for (double eps : {0.1, 0.3, 1.0}) {
    const double amp = std::pow(15.0, 0.75) * std::pow(eps, -1.5);
    const auto u = sample(g, [&](double r) {
      return amp * std::pow(1.0 + r * r / (eps * eps), -1.5);
    });
    CHECK(choquard_energy(k, u, p) == doctest::Approx(target).epsilon(5e-3));
  }

  // strict inequality for generic fields: B(u) <= C0 ||u||_{2*}^{2p}
  std::mt19937_64 rng(13);
  for (int t = 0; t < 50; ++t) {
    const auto u = oracles::random_profile(g, rng);
    const double b = choquard_energy(k, u, p);
    const double rhs = choquard_constant(5, 2.0) *
                       std::pow(lebesgue_q_norm(u, 10.0 / 3.0), 7.0 / 5.0);
    CHECK(b <= rhs * (1.0 + 1e-3));
  }
}

TEST_CASE("kernel cache round trip and validation") {
  namespace fs = std::filesystem;
  const auto g = make_grid(4, 1e-4, 1e3, 128);
  const KernelMatrix k = build_kernel(g, 2.0);
  const auto path = (fs::temp_directory_path() / "choquard_kernel_test.bin").string();
  save_kernel(k, path);
  const KernelMatrix loaded = load_kernel(g, 2.0, path);
  CHECK(loaded.entries() == k.entries());
  CHECK_THROWS_AS(load_kernel(g, 2.5, path), data_error);
  const auto g2 = make_grid(4, 1e-4, 1e3, 256);
  CHECK_THROWS_AS(load_kernel(g2, 2.0, path), data_error);
  std::remove(path.c_str());
}
