#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "nvpool/marginals.hpp"
#include "nvpool/math/quadrature.hpp"
#include "test_support.hpp"

using namespace nvpool;

TEST_CASE("cdf matches the elementary cases", "[marginals]") {
  CHECK(MarginalDistribution::uniform(0, 1).cdf(0.7) == Catch::Approx(0.7));
  CHECK(MarginalDistribution::beta(5, 5).cdf(0.5) ==
        Catch::Approx(0.5).margin(1e-12));
  CHECK(MarginalDistribution::exponential(1).cdf(0.8244) ==
        Catch::Approx(1 - std::exp(-0.8244)).margin(1e-15));
  CHECK(MarginalDistribution::exponential(1).cdf(-1) == 0.0);
  CHECK(MarginalDistribution::pareto(2, 1).cdf(0.5) == 0.0);
  CHECK(MarginalDistribution::beta(2, 8).cdf(-0.1) == 0.0);
  CHECK(MarginalDistribution::beta(2, 8).cdf(1.1) == 1.0);
}

TEST_CASE("quantile matches the elementary cases", "[marginals]") {
  CHECK(MarginalDistribution::uniform(0, 1).quantile(0.7) ==
        Catch::Approx(0.7));
  CHECK(MarginalDistribution::beta(5, 5).quantile(0.5) ==
        Catch::Approx(0.5).margin(1e-12));
  CHECK(MarginalDistribution::exponential(1).quantile(0.2) ==
        Catch::Approx(0.2231435513142097).margin(1e-14));
}

TEST_CASE("sampling is the inverse-cdf transform", "[marginals]") {
  CHECK(MarginalDistribution::uniform(2, 4).sample(0.5) == Catch::Approx(3.0));
  CHECK(MarginalDistribution::pareto(2, 1).sample(0.75) ==
        Catch::Approx(2.0).margin(1e-14));
  CHECK(MarginalDistribution::normal(0, 1).sample(0.5) ==
        Catch::Approx(0.0).margin(1e-15));
  const auto d = MarginalDistribution::beta(2, 8);
  for (double u : {0.02, 0.5, 0.97})
    CHECK(d.sample(u) == d.quantile(u));
}

TEST_CASE("density values and support edges", "[marginals]") {
  CHECK(MarginalDistribution::uniform(0, 1).density(0.3) == Catch::Approx(1.0));
  CHECK(MarginalDistribution::beta(5, 5).density(0.5) ==
        Catch::Approx(2.4609375).margin(1e-12));
  CHECK(MarginalDistribution::exponential(1).density(0.0) == Catch::Approx(1.0));
  CHECK(MarginalDistribution::exponential(1).density(-0.5) == 0.0);
  CHECK(MarginalDistribution::beta(2, 8).density(-0.2) == 0.0);
  CHECK(MarginalDistribution::beta(2, 8).density(1.2) == 0.0);
  CHECK(MarginalDistribution::pareto(3, 2).density(1.0) == 0.0);
}

TEST_CASE("bounded quantiles clamp, unbounded reject", "[marginals]") {
  const auto b = MarginalDistribution::beta(2, 8);
  CHECK(b.quantile(0.0) == 0.0);
  CHECK(b.quantile(1.0) == 1.0);
  CHECK(b.quantile(-0.5) == 0.0);
  const auto u = MarginalDistribution::uniform(3, 7);
  CHECK(u.quantile(0.0) == 3.0);
  CHECK(u.quantile(1.0) == 7.0);
  for (const auto& d : {MarginalDistribution::normal(0, 1),
                        MarginalDistribution::exponential(2),
                        MarginalDistribution::pareto(1.5, 1)}) {
    CHECK_THROWS_AS(d.quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(d.quantile(1.0), std::domain_error);
    CHECK_THROWS_MATCHES(d.quantile(-2.0), std::domain_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("-2")));
  }
}

TEST_CASE("construction rejects invalid parameters", "[marginals]") {
  CHECK_THROWS_AS(MarginalDistribution::beta(0, 1), std::domain_error);
  CHECK_THROWS_AS(MarginalDistribution::beta(2, -1), std::domain_error);
  CHECK_THROWS_AS(MarginalDistribution::normal(0, 0), std::domain_error);
  CHECK_THROWS_AS(MarginalDistribution::exponential(-1), std::domain_error);
  CHECK_THROWS_AS(MarginalDistribution::pareto(0, 1), std::domain_error);
  CHECK_THROWS_AS(MarginalDistribution::uniform(2, 2), std::domain_error);
}

TEST_CASE("mean exists except for heavy-tailed pareto", "[marginals]") {
  CHECK(MarginalDistribution::beta(2, 8).mean().value() == Catch::Approx(0.2));
  CHECK(MarginalDistribution::exponential(4).mean().value() ==
        Catch::Approx(0.25));
  CHECK(MarginalDistribution::pareto(2, 1).mean().value() == Catch::Approx(2.0));
  CHECK_FALSE(MarginalDistribution::pareto(1.0, 1).mean().has_value());
  CHECK_FALSE(MarginalDistribution::pareto(0.8, 1).mean().has_value());
}

TEST_CASE("quantile inverts cdf across random parameter draws", "[marginals]") {
  test::Gen gen(33);
  for (int rep = 0; rep < 60; ++rep) {
    const auto d = gen.marginal();
    CAPTURE(d.describe());
    double prev = -std::numeric_limits<double>::infinity();
    for (double p = 1e-6; p < 1.0; p += 0.009) {
      const double x = d.quantile(p);
      CHECK(x >= prev);
      prev = x;
      CHECK(d.cdf(x) == Catch::Approx(p).margin(1e-9));
    }
  }
}

TEST_CASE("density matches numerical cdf derivative", "[marginals]") {
  test::Gen gen(44);
  for (int rep = 0; rep < 40; ++rep) {
    const auto d = gen.marginal();
    const double scale = d.quantile(0.75) - d.quantile(0.25);
    const double h = 1e-5 * scale;
    for (double p : {0.15, 0.35, 0.55, 0.75, 0.92}) {
      const double x = d.quantile(p);
      const double numeric = (d.cdf(x + h) - d.cdf(x - h)) / (2 * h);
      const double exact = d.density(x);
      CAPTURE(d.describe(), p, x);
      CHECK(numeric == Catch::Approx(exact).epsilon(1e-5));
    }
  }
}

TEST_CASE("beta cdf agrees with direct density integration", "[marginals]") {
  test::Gen gen(55);
  QuadratureOptions opt;
  opt.abs_tol = 1e-10;
  for (int rep = 0; rep < 10; ++rep) {
    const double a = gen.uniform(1.0, 8), b = gen.uniform(1.0, 8);
    const auto d = MarginalDistribution::beta(a, b);
    for (double x : {0.12, 0.4, 0.66, 0.9}) {
      const double by_quadrature =
          integrate([&](double s) { return d.density(s); }, 0.0, x, opt);
      CAPTURE(a, b, x);
      CHECK(by_quadrature == Catch::Approx(d.cdf(x)).margin(1e-9));
    }
  }
}
