#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "nvpool/joint_demand.hpp"
#include "nvpool/rng.hpp"
#include "test_support.hpp"

using namespace nvpool;

namespace {

// Gamma(2,1) law of the sum of two independent unit exponentials.
double gamma2_cdf(double x) { return 1.0 - std::exp(-x) * (1.0 + x); }

double gamma2_quantile(double p) {
  double x = 1.0;
  for (int i = 0; i < 80; ++i) {
    const double f = gamma2_cdf(x) - p;
    x -= f / (x * std::exp(-x));
  }
  return x;
}

JointDemandModel exp2_independent() {
  return {MarginalDistribution::exponential(1),
          MarginalDistribution::exponential(1), Copula::independence()};
}

}  // namespace

TEST_CASE("joint cdf composes copula and marginals", "[joint]") {
  const JointDemandModel unif(MarginalDistribution::uniform(0, 1),
                              MarginalDistribution::uniform(0, 1),
                              Copula::independence());
  CHECK(unif.joint_cdf(0.5, 0.5) == Catch::Approx(0.25));

  const JointDemandModel como(MarginalDistribution::uniform(0, 1),
                              MarginalDistribution::uniform(0, 1),
                              Copula::comonotone());
  CHECK(como.joint_cdf(0.3, 0.7) == Catch::Approx(0.3));

  const JointDemandModel gum(MarginalDistribution::beta(5, 5),
                             MarginalDistribution::beta(5, 5),
                             Copula::gumbel(2));
  CHECK(gum.joint_cdf(0.5, 0.5) ==
        Catch::Approx(0.3752142272464818).margin(1e-10));
}

TEST_CASE("joint cdf marginal consistency on bounded supports", "[joint]") {
  test::Gen gen(11);
  for (int rep = 0; rep < 25; ++rep) {
    const auto m1 = MarginalDistribution::beta(gen.uniform(0.5, 6),
                                               gen.uniform(0.5, 6));
    const auto m2 = MarginalDistribution::uniform(0, gen.uniform(0.5, 2));
    const JointDemandModel m(m1, m2, gen.copula());
    CAPTURE(m.describe());
    for (double p : {0.1, 0.4, 0.7, 0.95}) {
      const double x1 = m1.quantile(p);
      CHECK(m.joint_cdf(x1, m2.support().hi) ==
            Catch::Approx(m1.cdf(x1)).margin(1e-10));
      const double x2 = m2.quantile(p);
      CHECK(m.joint_cdf(m1.support().hi, x2) ==
            Catch::Approx(m2.cdf(x2)).margin(1e-10));
    }
  }
}

TEST_CASE("sum cdf closed-form oracles", "[joint]") {
  SECTION("independent exponentials give the gamma law") {
    const auto m = exp2_independent();
    for (double x : {0.2, 0.8244, 1.5, 3.0, 6.0})
      CHECK(m.sum_cdf(x) == Catch::Approx(gamma2_cdf(x)).margin(1e-9));
  }
  SECTION("independent uniforms give the triangular law") {
    const JointDemandModel m(MarginalDistribution::uniform(0, 1),
                             MarginalDistribution::uniform(0, 1),
                             Copula::independence());
    auto tri = [](double x) {
      return x <= 1 ? 0.5 * x * x : 1.0 - 0.5 * (2 - x) * (2 - x);
    };
    CHECK(m.sum_cdf(1.0) == Catch::Approx(0.5).margin(1e-9));
    for (double x : {0.2, 0.7, 1.3, 1.9})
      CHECK(m.sum_cdf(x) == Catch::Approx(tri(x)).margin(1e-9));
    CHECK(m.sum_cdf(-0.1) == 0.0);
    CHECK(m.sum_cdf(2.1) == 1.0);
  }
  SECTION("comonotone quantile additivity identity") {
    const JointDemandModel m(MarginalDistribution::beta(5, 5),
                             MarginalDistribution::beta(5, 5),
                             Copula::comonotone());
    for (double t : {0.1, 0.3, 0.5, 0.8})
      CHECK(m.sum_cdf(2 * MarginalDistribution::beta(5, 5).quantile(t)) ==
            Catch::Approx(t).margin(1e-9));
  }
  SECTION("countermonotone exponentials: closed-form sublevel measure") {
    // S = -ln(U(1-U)) so P(S <= x) = sqrt(1 - 4 e^-x) for x >= 2 ln 2
    const JointDemandModel m(MarginalDistribution::exponential(1),
                             MarginalDistribution::exponential(1),
                             Copula::countermonotone());
    for (double x : {1.5, 2.0, 3.0, 5.0})
      CHECK(m.sum_cdf(x) ==
            Catch::Approx(std::sqrt(std::max(0.0, 1 - 4 * std::exp(-x))))
                .margin(1e-8));
    CHECK(m.sum_cdf(1.2) == Catch::Approx(0.0).margin(1e-8));
  }
}

TEST_CASE("sum cdf is monotone and clamped", "[joint]") {
  test::Gen gen(12);
  for (int rep = 0; rep < 12; ++rep) {
    const JointDemandModel m(gen.marginal(), gen.marginal(), gen.copula());
    CAPTURE(m.describe());
    const double lo = m.sum_support().lo;
    const double start = std::isfinite(lo) ? lo : -5.0;
    double prev = -1e-9;
    for (int i = 0; i <= 40; ++i) {
      const double x = start + 0.2 * i;
      const double f = m.sum_cdf(x);
      CHECK(f >= 0.0);
      CHECK(f <= 1.0);
      CHECK(f >= prev - 1e-9);
      prev = f;
    }
  }
}

TEST_CASE("sum quantile solves the sum cdf", "[joint]") {
  const auto m = exp2_independent();
  const auto est = m.sum_quantile(0.2);
  CHECK(est.method == Method::Quadrature);
  CHECK(est.ci_halfwidth == 0.0);
  CHECK(est.point == Catch::Approx(gamma2_quantile(0.2)).margin(1e-6));
  CHECK(m.sum_cdf(est.point) == Catch::Approx(0.2).margin(2e-9));

  test::Gen gen(13);
  for (int rep = 0; rep < 8; ++rep) {
    const auto m1 = MarginalDistribution::beta(gen.uniform(1, 6), gen.uniform(1, 6));
    const auto m2 = MarginalDistribution::beta(gen.uniform(1, 6), gen.uniform(1, 6));
    const JointDemandModel model(m1, m2, gen.copula());
    CAPTURE(model.describe());
    for (double t : {0.05, 0.5, 0.95}) {
      const double x = model.sum_quantile(t).point;
      CHECK(x >= model.sum_support().lo);
      CHECK(x <= model.sum_support().hi);
      CHECK(model.sum_cdf(x) == Catch::Approx(t).margin(5e-9));
    }
  }
  CHECK_THROWS_AS(m.sum_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(m.sum_quantile(1.0), std::domain_error);
}

TEST_CASE("comonotone sum quantile adds the marginal quantiles", "[joint]") {
  test::Gen gen(14);
  for (int rep = 0; rep < 10; ++rep) {
    const auto m1 = gen.marginal();
    const auto m2 = gen.marginal();
    const JointDemandModel m(m1, m2, Copula::comonotone());
    CAPTURE(m.describe());
    for (double t : {0.1, 0.25, 0.5, 0.75, 0.9}) {
      CHECK(m.sum_quantile(t).point ==
            Catch::Approx(m1.quantile(t) + m2.quantile(t)).margin(1e-6));
    }
  }
}

TEST_CASE("gaussian copula with normal marginals matches the bivariate "
          "normal sum law", "[joint]") {
  struct Case {
    double mu1, s1, mu2, s2, rho;
  };
  for (const auto& c : {Case{0, 1, 0, 1, 0.0}, Case{0, 1, 5, 2, 0.5},
                        Case{5, 2, 5, 2, -0.5}, Case{0, 2, 5, 1, 0.3}}) {
    const JointDemandModel m(MarginalDistribution::normal(c.mu1, c.s1),
                             MarginalDistribution::normal(c.mu2, c.s2),
                             Copula::gaussian(c.rho));
    const double var = c.s1 * c.s1 + c.s2 * c.s2 + 2 * c.rho * c.s1 * c.s2;
    CAPTURE(c.mu1, c.s1, c.mu2, c.s2, c.rho);
    for (double t = 0.1; t < 0.95; t += 0.1) {
      const double closed =
          c.mu1 + c.mu2 + norm_quantile(t) * std::sqrt(var);
      CHECK(m.sum_quantile(t).point == Catch::Approx(closed).margin(1e-6));
    }
  }
}

TEST_CASE("monte carlo sum quantile", "[joint][mc]") {
  SECTION("comonotone symmetric betas center on the exact quantile") {
    const JointDemandModel m(MarginalDistribution::beta(5, 5),
                             MarginalDistribution::beta(5, 5),
                             Copula::comonotone());
    const auto est = m.sum_quantile_mc(0.5, 100000, 21);
    CHECK(est.method == Method::MonteCarlo);
    CHECK(est.n_samples == 100000);
    CHECK(est.ci_halfwidth > 0.0);
    CHECK(std::fabs(est.point - 1.0) <= est.ci_halfwidth);
  }
  SECTION("independent exponentials cover the gamma quantile") {
    const auto m = exp2_independent();
    const auto est = m.sum_quantile_mc(0.2, 1000000, 22);
    CHECK(std::fabs(est.point - gamma2_quantile(0.2)) <= est.ci_halfwidth);
  }
  SECTION("cross-method agreement on random models") {
    test::Gen gen(23);
    int hits = 0;
    for (int rep = 0; rep < 10; ++rep) {
      const JointDemandModel m(gen.marginal(), gen.marginal(), gen.copula());
      const double t = gen.uniform(0.1, 0.9);
      const auto mc = m.sum_quantile_mc(t, 100000, derive_seed(23, rep));
      const double quad = m.sum_quantile(t).point;
      if (std::fabs(quad - mc.point) <= mc.ci_halfwidth) ++hits;
    }
    CHECK(hits >= 9);
  }
  SECTION("argument validation") {
    CHECK_THROWS_AS(exp2_independent().sum_quantile_mc(0.5, 10, 1),
                    std::domain_error);
  }
}

TEST_CASE("sample_demands determinism and first draw", "[joint]") {
  const JointDemandModel m(MarginalDistribution::uniform(0, 1),
                           MarginalDistribution::uniform(0, 1),
                           Copula::independence());
  const auto a = m.sample_demands(50, 99);
  const auto b = m.sample_demands(50, 99);
  CHECK(a == b);
  const auto c = m.sample_demands(50, 100);
  CHECK(a != c);
  // with uniform marginals under independence, draw 0 is the raw stream pair
  UniformStream stream(99);
  CHECK(a[0].first == stream.at(0));
  CHECK(a[0].second == stream.at(1));
  CHECK_THROWS_AS(m.sample_demands(0, 1), std::domain_error);
}

TEST_CASE("sampled moments and dependence match the model", "[joint][mc]") {
  const JointDemandModel beta28(MarginalDistribution::beta(2, 8),
                                MarginalDistribution::beta(2, 8),
                                Copula::independence());
  const auto draws = beta28.sample_demands(1000000, 7);
  double mean1 = 0, mean2 = 0;
  for (const auto& [d1, d2] : draws) {
    mean1 += d1;
    mean2 += d2;
  }
  mean1 /= static_cast<double>(draws.size());
  mean2 /= static_cast<double>(draws.size());
  CHECK(mean1 == Catch::Approx(0.2).margin(0.001));
  CHECK(mean2 == Catch::Approx(0.2).margin(0.001));

  const JointDemandModel gum(MarginalDistribution::beta(2, 8),
                             MarginalDistribution::beta(5, 5),
                             Copula::gumbel(2));
  const auto pairs = gum.sample_demands(100000, 8);
  CHECK(empirical_kendall_tau(pairs) == Catch::Approx(0.5).margin(0.02));
}
