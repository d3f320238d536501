#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "nvpool/copulas.hpp"
#include "nvpool/marginals.hpp"
#include "nvpool/math/quadrature.hpp"
#include "nvpool/math/roots.hpp"
#include "nvpool/math/special.hpp"
#include "nvpool/rng.hpp"

namespace nvpool {

enum class Method { Quadrature, MonteCarlo };

inline const char* method_name(Method m) {
  return m == Method::Quadrature ? "quadrature" : "monte_carlo";
}

struct SumQuantileEstimate {
  double point = 0.0;
  double ci_halfwidth = 0.0;  // 0 for the quadrature path
  Method method = Method::Quadrature;
  std::int64_t n_samples = 0;  // MC only
};

/// Sklar composition of two marginal demands and one copula. The joint CDF
/// is C(F1(x1), F2(x2)); the sum D1+D2 is what pooling stocks against.
class JointDemandModel {
 public:
  JointDemandModel(MarginalDistribution m1, MarginalDistribution m2,
                   Copula copula)
      : m1_(std::move(m1)), m2_(std::move(m2)), copula_(std::move(copula)) {}

  const MarginalDistribution& marginal1() const { return m1_; }
  const MarginalDistribution& marginal2() const { return m2_; }
  const Copula& copula() const { return copula_; }

  double joint_cdf(double x1, double x2) const {
    return copula_.cdf(m1_.cdf(x1), m2_.cdf(x2));
  }

  Support sum_support() const {
    const Support s1 = m1_.support(), s2 = m2_.support();
    return {s1.lo + s2.lo, s1.hi + s2.hi};
  }

  /// P(D1 + D2 <= x) = integral over u of h(F2(x - F1^-1(u)) | u).
  ///
  /// The u-range is clamped to [1e-12, 1-1e-12] (the truncated mass is below
  /// the quadrature tolerance) and the points where x - F1^-1(u) crosses the
  /// support edges of F2 are used as panel boundaries, since the integrand
  /// kinks there. The Frechet bound copulas have degenerate (step) h
  /// functions and get direct treatment instead.
  double sum_cdf(double x) const {
    const Support sup = sum_support();
    if (x <= sup.lo) return 0.0;
    if (std::isfinite(sup.hi) && x >= sup.hi) return 1.0;

    if (copula_.family() == CopulaFamily::Comonotone)
      return comonotone_sum_cdf(x);
    if (copula_.family() == CopulaFamily::Countermonotone)
      return countermonotone_sum_cdf(x);

    constexpr double eps = 1e-12;
    auto integrand = [&](double u) {
      const double uu = std::clamp(u, eps, 1.0 - eps);
      const double y = x - m1_.quantile(uu);
      return copula_.conditional_cdf(m2_.cdf(y), uu);
    };
    // Kinks: u where x - F1^-1(u) meets F2's support edges.
    const Support s2 = m2_.support();
    std::vector<double> kinks;
    for (double edge : {s2.lo, s2.hi})
      if (std::isfinite(edge)) {
        const double uk = m1_.cdf(x - edge);
        if (uk > eps && uk < 1.0 - eps) kinks.push_back(uk);
      }
    QuadratureOptions opt;
    opt.abs_tol = 1e-9;
    opt.panel_floor = 64;
    const double val = integrate(integrand, eps, 1.0 - eps,
                                 std::span<const double>(kinks), opt);
    return std::clamp(val, 0.0, 1.0);
  }

  /// Quantile of the sum by bracketed bisection on sum_cdf (expanding
  /// bracket when the sum support is unbounded), tolerance in probability
  /// space, plus a final secant polish in x.
  SumQuantileEstimate sum_quantile(double t, double tol = 1e-9) const {
    require_t(t);
    double lo, hi, f_lo, f_hi;
    const Support sup = sum_support();
    auto f = [&](double x) { return sum_cdf(x); };
    if (sup.bounded()) {
      lo = sup.lo;
      hi = sup.hi;
      f_lo = 0.0;
      f_hi = 1.0;
    } else {
      const double center = m1_.quantile(t) + m2_.quantile(t);
      const double scale = std::max(1.0, std::fabs(center));
      if (!expand_bracket(f, t, center, 0.5 * scale, lo, hi, f_lo, f_hi))
        throw NumericError(
            "sum_quantile: no bracket for t=" + format_full(t) + " around " +
                format_full(center),
            std::min(std::fabs(f_lo - t), std::fabs(f_hi - t)));
    }
    const double x = solve_monotone(f, t, lo, hi, f_lo, f_hi, {tol, 200});
    return {x, 0.0, Method::Quadrature, 0};
  }

  /// Empirical quantile (inverted empirical CDF, lower interpolation) of n
  /// sampled sums, with a 99% order-statistic confidence interval.
  SumQuantileEstimate sum_quantile_mc(double t, std::int64_t n,
                                      std::uint64_t seed) const {
    require_t(t);
    if (n < 1000) throw std::domain_error("sum_quantile_mc needs n >= 1000");
    std::vector<double> sums(static_cast<std::size_t>(n));
    UniformStream stream(seed);
    for (std::int64_t i = 0; i < n; ++i) {
      const auto [u, v] =
          copula_.sample_pair(stream.at(2 * static_cast<std::uint64_t>(i)),
                              stream.at(2 * static_cast<std::uint64_t>(i) + 1));
      sums[static_cast<std::size_t>(i)] = m1_.quantile(u) + m2_.quantile(v);
    }
    std::sort(sums.begin(), sums.end());
    const double nt = static_cast<double>(n) * t;
    const auto order_stat = [&](double k) {
      const auto idx = static_cast<std::int64_t>(
          std::clamp(k, 1.0, static_cast<double>(n)));
      return sums[static_cast<std::size_t>(idx - 1)];
    };
    const double point = order_stat(std::ceil(nt));
    const double z995 = 2.575829303548901;  // Phi^-1(0.995)
    const double spread = z995 * std::sqrt(nt * (1.0 - t));
    const double lo_val = order_stat(std::floor(nt - spread));
    const double hi_val = order_stat(std::ceil(nt + spread));
    return {point, 0.5 * (hi_val - lo_val), Method::MonteCarlo, n};
  }

  /// n demand pairs (F1^-1(U_i), F2^-1(V_i)); draw i consumes stream slots
  /// 2i and 2i+1, so the sequence is reproducible independent of order.
  std::vector<std::pair<double, double>> sample_demands(
      std::int64_t n, std::uint64_t seed) const {
    if (n < 1) throw std::domain_error("sample_demands needs n >= 1");
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<std::size_t>(n));
    UniformStream stream(seed);
    for (std::int64_t i = 0; i < n; ++i) {
      const auto [u, v] =
          copula_.sample_pair(stream.at(2 * static_cast<std::uint64_t>(i)),
                              stream.at(2 * static_cast<std::uint64_t>(i) + 1));
      out.emplace_back(m1_.quantile(u), m2_.quantile(v));
    }
    return out;
  }

  std::string describe() const {
    return "m1=" + m1_.describe() + "|m2=" + m2_.describe() +
           "|copula=" + copula_.describe();
  }

 private:
  static void require_t(double t) {
    if (!(t > 0.0 && t < 1.0))
      throw std::domain_error("sum quantile level t=" + format_scalar(t) +
                              " outside (0,1)");
  }

  /// Comonotone: S(t) = F1^-1(t) + F2^-1(t) is nondecreasing, so the sum
  /// CDF is the sup-level of t with S(t) <= x.
  double comonotone_sum_cdf(double x) const {
    auto s = [&](double t) {
      return m1_.quantile(std::clamp(t, 1e-15, 1.0 - 1e-15)) +
             m2_.quantile(std::clamp(t, 1e-15, 1.0 - 1e-15));
    };
    if (s(1.0 - 1e-15) <= x) return 1.0;
    if (s(1e-15) > x) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-13) {
      const double mid = 0.5 * (lo + hi);
      if (s(mid) <= x)
        lo = mid;
      else
        hi = mid;
    }
    return lo;
  }

  /// Countermonotone: V = 1-U, so the sum is g(u) = F1^-1(u) + F2^-1(1-u),
  /// generally non-monotone; the CDF is the Lebesgue measure of the
  /// sublevel set {u : g(u) <= x}, measured on a scan grid with refined
  /// crossing points.
  double countermonotone_sum_cdf(double x) const {
    constexpr int grid = 2048;
    constexpr double eps = 1e-12;
    auto g = [&](double u) {
      const double uu = std::clamp(u, eps, 1.0 - eps);
      return m1_.quantile(uu) + m2_.quantile(1.0 - uu);
    };
    double measure = 0.0;
    double prev_u = 0.0;
    bool prev_in = g(eps) <= x;
    double seg_start = prev_in ? 0.0 : -1.0;
    for (int i = 1; i <= grid; ++i) {
      const double u = static_cast<double>(i) / grid;
      const bool in = g(u) <= x;
      if (in != prev_in) {
        const double cross = bisect_sign_change(
            [&](double uu) { return g(uu) - x; }, prev_u, u,
            g(prev_u) - x, g(u) - x, 1e-13);
        if (prev_in) {
          measure += cross - seg_start;
        } else {
          seg_start = cross;
        }
        prev_in = in;
      }
      prev_u = u;
    }
    if (prev_in) measure += 1.0 - seg_start;
    return std::clamp(measure, 0.0, 1.0);
  }

  MarginalDistribution m1_;
  MarginalDistribution m2_;
  Copula copula_;
};

}  // namespace nvpool
