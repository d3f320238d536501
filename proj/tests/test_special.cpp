#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "nvpool/errors.hpp"
#include "nvpool/math/quadrature.hpp"
#include "nvpool/math/roots.hpp"
#include "nvpool/math/special.hpp"
#include "nvpool/rng.hpp"
#include "test_support.hpp"

using namespace nvpool;

TEST_CASE("normal cdf reference values", "[special]") {
  CHECK(norm_cdf(0.0) == Catch::Approx(0.5).margin(1e-16));
  CHECK(norm_cdf(1.959963984540054) == Catch::Approx(0.975).margin(1e-14));
  CHECK(norm_cdf(-1.0) == Catch::Approx(0.15865525393145705).margin(1e-15));
  CHECK(norm_cdf(10.0) == Catch::Approx(1.0).margin(1e-16));
}

TEST_CASE("normal quantile inverts the cdf", "[special]") {
  CHECK(norm_quantile(0.8) ==
        Catch::Approx(0.8416212335729143).margin(1e-13));
  CHECK(norm_quantile(0.5) == Catch::Approx(0.0).margin(1e-15));
  for (double p = 1e-6; p < 1.0; p += 0.0107) {
    CAPTURE(p);
    CHECK(norm_cdf(norm_quantile(p)) == Catch::Approx(p).margin(1e-14));
  }
  CHECK_THROWS_AS(norm_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(norm_quantile(1.0), std::domain_error);
}

TEST_CASE("incomplete beta reference and symmetry", "[special]") {
  CHECK(inc_beta(5, 5, 0.5) == Catch::Approx(0.5).margin(1e-13));
  CHECK(inc_beta(2, 8, 0.3) == Catch::Approx(0.803996766).margin(1e-12));

  // integer-parameter binomial-tail oracle: I_x(2,8) = sum_{j>=2} C(9,j) x^j (1-x)^{9-j}
  auto binom_tail = [](double x) {
    auto c = [](int n, int k) {
      double r = 1;
      for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
      return r;
    };
    double s = 0;
    for (int j = 2; j <= 9; ++j)
      s += c(9, j) * std::pow(x, j) * std::pow(1 - x, 9 - j);
    return s;
  };
  for (double x = 0.05; x < 1.0; x += 0.05)
    CHECK(inc_beta(2, 8, x) == Catch::Approx(binom_tail(x)).margin(1e-12));

  test::Gen gen(101);
  for (int i = 0; i < 200; ++i) {
    const double a = gen.uniform(0.3, 9), b = gen.uniform(0.3, 9);
    const double x = gen.uniform(1e-3, 1 - 1e-3);
    CAPTURE(a, b, x);
    CHECK(inc_beta(a, b, x) + inc_beta(b, a, 1 - x) ==
          Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("incomplete beta inverse round trip", "[special]") {
  test::Gen gen(202);
  for (int i = 0; i < 200; ++i) {
    const double a = gen.uniform(0.3, 9), b = gen.uniform(0.3, 9);
    const double p = gen.uniform(1e-6, 1 - 1e-6);
    const double x = inc_beta_inv(a, b, p);
    CAPTURE(a, b, p, x);
    CHECK(inc_beta(a, b, x) == Catch::Approx(p).margin(1e-12));
  }
  CHECK(inc_beta_inv(5, 5, 0.0) == 0.0);
  CHECK(inc_beta_inv(5, 5, 1.0) == 1.0);
}

TEST_CASE("debye D1 values and reflection", "[special]") {
  CHECK(debye1(4.605170185988091) ==
        Catch::Approx(0.34496563295532538).margin(1e-10));
  CHECK(debye1(1.0) == Catch::Approx(0.77750463411224828).margin(1e-12));
  CHECK(debye1(-2.5) == Catch::Approx(1.7887895690778559).margin(1e-12));
  CHECK(debye1(18.19153975085161) ==
        Catch::Approx(0.090423012457419834).margin(1e-10));
  CHECK(debye1(1e-9) == Catch::Approx(1.0).margin(1e-9));
  for (double x : {0.5, 2.0, 7.7, 31.0})
    CHECK(debye1(-x) == Catch::Approx(debye1(x) + x / 2).margin(1e-12));
}

TEST_CASE("adaptive simpson on smooth and kinked integrands", "[quadrature]") {
  QuadratureOptions opt;
  opt.abs_tol = 1e-10;
  CHECK(integrate([](double x) { return x * x; }, 0, 1, opt) ==
        Catch::Approx(1.0 / 3).margin(1e-12));
  CHECK(integrate([](double x) { return std::sin(x); }, 0, pi, opt) ==
        Catch::Approx(2.0).margin(1e-12));
  const double kink[] = {1.0 / 3};
  CHECK(integrate([](double x) { return std::fabs(x - 1.0 / 3); }, 0, 1,
                  std::span<const double>(kink, 1), opt) ==
        Catch::Approx(5.0 / 18).margin(1e-12));
}

TEST_CASE("quadrature reports achieved tolerance on hard singularities",
          "[quadrature]") {
  QuadratureOptions opt;
  opt.abs_tol = 1e-12;
  opt.max_depth = 18;
  try {
    integrate([](double x) { return 1.0 / std::sqrt(std::fabs(x - 1.0 / 3)); },
              0, 1, opt);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(e.achieved_tolerance() > opt.abs_tol);
  }
}

TEST_CASE("monotone solve and bracket expansion", "[roots]") {
  auto cube = [](double x) { return x * x * x; };
  const double r = solve_monotone(cube, 0.125, -2, 2, cube(-2), cube(2),
                                  {1e-12, 200});
  CHECK(r == Catch::Approx(0.5).margin(1e-9));

  double lo, hi, f_lo, f_hi;
  REQUIRE(expand_bracket(cube, 1000.0, 0.0, 1.0, lo, hi, f_lo, f_hi));
  CHECK(f_lo <= 1000.0);
  CHECK(f_hi >= 1000.0);
  const double r2 = solve_monotone(cube, 1000.0, lo, hi, f_lo, f_hi,
                                   {1e-9, 200});
  CHECK(r2 == Catch::Approx(10.0).margin(1e-6));

  const double root = bisect_sign_change(
      [](double x) { return std::cos(x); }, 0.0, 3.0, 1.0, std::cos(3.0),
      1e-10);
  CHECK(root == Catch::Approx(pi / 2).margin(1e-9));
}

TEST_CASE("counter rng determinism and uniformity", "[rng]") {
  UniformStream a(123), b(123), c(124);
  CHECK(a.at(7) == b.at(7));
  CHECK(a.at(7) != c.at(7));
  CHECK(a.at(0) != a.at(1));
  double mean = 0.0;
  constexpr int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = a.at(static_cast<std::uint64_t>(i));
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    mean += u;
  }
  CHECK(mean / n == Catch::Approx(0.5).margin(0.005));

  CHECK(derive_seed(1, "alpha") != derive_seed(1, "beta"));
  CHECK(derive_seed(1, "alpha") == derive_seed(1, "alpha"));
  CHECK(derive_seed(1, "alpha") != derive_seed(2, "alpha"));
}
