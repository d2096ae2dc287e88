#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "choquard/constants.hpp"
#include "choquard/special.hpp"
#include "support/oracles.hpp"

using namespace choquard;

TEST_CASE("gamma function reference values") {
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-13));
  CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
  CHECK_THROWS_AS(gamma_fn(-2.5), std::domain_error);
}

TEST_CASE("gamma recurrence and oracle agreement") {
  for (double x = 0.1; x <= 10.0; x += 0.1) {
    CHECK(gamma_fn(x + 1.0) == doctest::Approx(x * gamma_fn(x)).epsilon(1e-12));
    CHECK(gamma_fn(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-12));
  }
}

TEST_CASE("riesz normalization closed forms") {
  CHECK(riesz_normalization(3, 2.0) == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-13));
  CHECK(riesz_normalization(5, 2.0) ==
        doctest::Approx(1.0 / (8.0 * M_PI * M_PI)).epsilon(1e-13));
  CHECK(riesz_normalization(4, 2.0) ==
        doctest::Approx(1.0 / (4.0 * M_PI * M_PI)).epsilon(1e-13));
  CHECK_THROWS_AS(riesz_normalization(4, 0.0), std::domain_error);
  CHECK_THROWS_AS(riesz_normalization(4, 4.0), std::domain_error);
}

TEST_CASE("hls sharp constant") {
  // N=4, lambda=2: pi Gamma(1)/Gamma(3) (Gamma(2)/Gamma(4))^{-1/2} = pi/2 sqrt(6)
  CHECK(hls_sharp_constant(4, 2.0) ==
        doctest::Approx(M_PI / 2.0 * std::sqrt(6.0)).epsilon(1e-13));
  const double want53 = std::pow(M_PI, 1.5) / std::tgamma(3.5) *
                        std::pow(std::tgamma(2.5) / 24.0, -0.4);
  CHECK(hls_sharp_constant(5, 3.0) == doctest::Approx(want53).epsilon(1e-13));
  for (int n : {4, 5, 6}) CHECK(hls_sharp_constant(n, 0.5 * n) > 0.0);
  CHECK_THROWS_AS(hls_sharp_constant(5, 5.0), std::domain_error);
}

TEST_CASE("choquard constant values and factorization") {
  CHECK(choquard_constant(4, 2.0) ==
        doctest::Approx(std::sqrt(6.0) / (8.0 * M_PI)).epsilon(1e-13));
  CHECK(choquard_constant(5, 2.0) == doctest::Approx(0.067513).epsilon(1e-4));

  std::mt19937_64 rng(20240811);
  std::uniform_int_distribution<int> dims(3, 10);
  std::uniform_real_distribution<double> frac(0.15, 0.85);
  for (int k = 0; k < 20; ++k) {
    const int n = dims(rng);
    const double a = frac(rng) * n;
    const double product = hls_sharp_constant(n, n - a) * riesz_normalization(n, a);
    CHECK(choquard_constant(n, a) == doctest::Approx(product).epsilon(1e-12));
  }
}

TEST_CASE("choquard constant is continuous in alpha") {
  const double h = 1e-6;
  for (double a : {0.7, 1.5, 2.0, 3.2}) {
    const double d = std::abs(choquard_constant(5, a + h) - choquard_constant(5, a));
    CHECK(d < 1e-4);  // difference quotient stays bounded
  }
}

TEST_CASE("sobolev constant closed form and quadrature agree") {
  CHECK(sobolev_constant(4) == doctest::Approx(8.0 * M_PI / std::sqrt(6.0)).epsilon(1e-12));
  CHECK(sobolev_constant(5) == doctest::Approx(oracles::sobolev_closed(5)).epsilon(1e-12));
  CHECK(sobolev_constant(3) > 0.0);
}

TEST_CASE("product identity C0(N,2) S(N) = 1") {
  for (int n = 4; n <= 10; ++n)
    CHECK(choquard_constant(n, 2.0) * sobolev_constant(n) ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("level bounds") {
  const ProblemParams p52(5, 2.0, 3.0);
  const double s5 = sobolev_constant(5);
  // alpha = 2 collapses the bound to 2 S^{N/2}/(N+2)
  CHECK(nehari_level_bound(p52) ==
        doctest::Approx(2.0 / 7.0 * std::pow(s5, 2.5)).epsilon(1e-12));
  const ProblemParams p42(4, 2.0, 3.5);
  const double s4 = sobolev_constant(4);
  CHECK(nehari_level_bound(p42) == doctest::Approx(s4 * s4 / 3.0).epsilon(1e-12));

  CHECK(constraint_level_bound(p52) ==
        doctest::Approx(0.5 * s5 * std::pow(14.0 / 3.0 * s5, 3.0 / 7.0)).epsilon(1e-12));
  CHECK(constraint_level_bound(p42) ==
        doctest::Approx(0.5 * s4 * std::pow(6.0 * s4, 1.0 / 3.0)).epsilon(1e-12));
  CHECK(nehari_level_bound(p52) > 0.0);
  CHECK(constraint_level_bound(p42) > 0.0);
}

TEST_CASE("constants report is positive and self-consistent") {
  const auto rep = constants_report(ProblemParams(5, 2.0, 3.0));
  CHECK(rep.riesz_norm > 0.0);
  CHECK(rep.hls_sharp > 0.0);
  CHECK(rep.choquard_c0 > 0.0);
  CHECK(rep.sobolev_s > 0.0);
  CHECK(rep.nehari_bound > 0.0);
  CHECK(rep.constraint_bound > 0.0);
  CHECK(rep.choquard_c0 * rep.sobolev_s == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.choquard_c0 ==
        doctest::Approx(oracles::choquard_c0_closed(5, 2.0)).epsilon(1e-13));
}

TEST_CASE("problem params") {
  const ProblemParams p(5, 2.0, 3.0);
  CHECK(p.p() == doctest::Approx(7.0 / 3.0).epsilon(1e-15));
  CHECK(p.two_star() == doctest::Approx(10.0 / 3.0).epsilon(1e-15));
  CHECK(p.theorem_regime());
  CHECK(ProblemParams(4, 2.0, 3.5).theorem_regime());
  CHECK_FALSE(ProblemParams(4, 2.0, 2.5).theorem_regime());
  CHECK_THROWS_AS(ProblemParams(5, 0.0, 3.0), config_error);
  CHECK_THROWS_AS(ProblemParams(5, 2.0, 2.0), config_error);
  CHECK_THROWS_AS(ProblemParams(2, 1.0, 2.5), config_error);
}
