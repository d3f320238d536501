#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nvpool/format.hpp"
#include "nvpool/math/gauss_legendre.hpp"
#include "nvpool/math/special.hpp"
#include "nvpool/rng.hpp"

namespace nvpool {

enum class CopulaFamily {
  Independence,
  Gumbel,
  Clayton,
  Frank,
  Gaussian,
  Comonotone,
  Countermonotone
};

inline const char* family_name(CopulaFamily f) {
  switch (f) {
    case CopulaFamily::Independence: return "independence";
    case CopulaFamily::Gumbel: return "gumbel";
    case CopulaFamily::Clayton: return "clayton";
    case CopulaFamily::Frank: return "frank";
    case CopulaFamily::Gaussian: return "gaussian";
    case CopulaFamily::Comonotone: return "comonotone";
    case CopulaFamily::Countermonotone: return "countermonotone";
  }
  return "?";
}

/// Clayton here uses the standard form C = (u^-t + v^-t - 1)^(-1/t); some
/// texts parameterize the same family with the reciprocal exponent. This
/// maps such a reciprocal parameter to ours.
inline double clayton_theta_from_reciprocal(double reciprocal_theta) {
  return 1.0 / reciprocal_theta;
}

/// Frank is parameterized by the natural theta; the equivalent log-base
/// form C = log_alpha(...) corresponds to alpha = e^-theta.
inline double frank_theta_from_alpha(double alpha) { return -std::log(alpha); }

/// Bivariate copula: CDF, conditional CDF h(v|u) = dC/du, its inverse,
/// Kendall's tau, and conditional-inversion pair sampling. Values are
/// immutable and all operations are pure; randomness is injected by the
/// caller as explicit uniforms.
class Copula {
 public:
  static Copula independence() { return {CopulaFamily::Independence, 0.0}; }
  static Copula comonotone() { return {CopulaFamily::Comonotone, 0.0}; }
  static Copula countermonotone() {
    return {CopulaFamily::Countermonotone, 0.0};
  }
  static Copula gumbel(double theta) {
    if (!(theta >= 1.0))
      throw std::domain_error("gumbel theta must be >= 1, got " +
                              format_scalar(theta));
    return {CopulaFamily::Gumbel, theta};
  }
  static Copula clayton(double theta) {
    if (!(theta > 0.0))
      throw std::domain_error("clayton theta must be > 0, got " +
                              format_scalar(theta));
    return {CopulaFamily::Clayton, theta};
  }
  static Copula frank(double theta) {
    if (!(theta != 0.0) || !std::isfinite(theta))
      throw std::domain_error("frank theta must be finite and nonzero");
    return {CopulaFamily::Frank, theta};
  }
  static Copula gaussian(double rho) {
    if (!(rho > -1.0 && rho < 1.0))
      throw std::domain_error("gaussian rho must lie in (-1,1), got " +
                              format_scalar(rho));
    return {CopulaFamily::Gaussian, rho};
  }

  CopulaFamily family() const { return family_; }
  bool has_theta() const {
    return family_ == CopulaFamily::Gumbel || family_ == CopulaFamily::Clayton ||
           family_ == CopulaFamily::Frank || family_ == CopulaFamily::Gaussian;
  }
  double theta() const { return theta_; }

  double cdf(double u, double v) const {
    if (u <= 0.0 || v <= 0.0) return 0.0;
    if (u >= 1.0) return std::min(v, 1.0);
    if (v >= 1.0) return u;
    switch (family_) {
      case CopulaFamily::Independence:
        return u * v;
      case CopulaFamily::Comonotone:
        return std::min(u, v);
      case CopulaFamily::Countermonotone:
        return std::max(u + v - 1.0, 0.0);
      case CopulaFamily::Gumbel: {
        const double lu = -std::log(u), lv = -std::log(v);
        // (lu^t + lv^t)^(1/t) evaluated in logs to dodge overflow
        const double a = theta_ * std::log(lu), b = theta_ * std::log(lv);
        const double m = std::max(a, b);
        const double s = m + std::log(std::exp(a - m) + std::exp(b - m));
        return std::exp(-std::exp(s / theta_));
      }
      case CopulaFamily::Clayton: {
        // u^-t + v^-t - 1 in logs: exp(a) + exp(b) - 1, a,b >= 0
        const double a = -theta_ * std::log(u), b = -theta_ * std::log(v);
        const double m = std::max(a, b);
        const double s =
            m + std::log(std::exp(a - m) + std::exp(b - m) - std::exp(-m));
        return std::exp(-s / theta_);
      }
      case CopulaFamily::Frank: {
        // 1 + em_u*em_v/em rearranged to avoid the catastrophic
        // cancellation the naive form hits at large theta:
        //   em + em_u*em_v = e^{-t u} em_v + e^{-t v} expm1(-t(1-v))
        // whose two terms always share a sign.
        const double em = std::expm1(-theta_);
        const double em_v = std::expm1(-theta_ * v);
        const double denom = std::exp(-theta_ * u) * em_v +
                             std::exp(-theta_ * v) *
                                 std::expm1(-theta_ * (1.0 - v));
        if (denom == 0.0 || !std::isfinite(denom)) return std::min(u, v);
        return -(std::log(std::fabs(denom)) - std::log(std::fabs(em))) /
               theta_;
      }
      case CopulaFamily::Gaussian: {
        // C(u,v) = integral of phi(z) * Phi((zv - rho z)/s) for z <= zu.
        // Panels split at the transition band of the inner Phi so each
        // piece is smooth at the rule's scale; 64-node Gauss-Legendre per
        // piece reaches ~1e-15 on these analytic integrands.
        const double zu = norm_quantile(u), zv = norm_quantile(v);
        const double rho = theta_;
        const double s = std::sqrt((1.0 - rho) * (1.0 + rho));
        auto f = [&](double z) {
          return norm_pdf(z) * norm_cdf((zv - rho * z) / s);
        };
        const double lo = -8.6, hi = zu;
        double edges[4] = {lo, hi, hi, hi};
        int n_edges = 2;
        if (rho != 0.0) {
          const double zc = zv / rho, w = 9.0 * s / std::fabs(rho);
          for (double e : {zc - w, zc + w})
            if (e > lo && e < hi) edges[n_edges++] = e;
          std::sort(edges, edges + n_edges);
        }
        double acc = 0.0;
        for (int i = 0; i + 1 < n_edges; ++i)
          acc += gl64(f, edges[i], edges[i + 1]);
        return acc;
      }
    }
    return 0.0;
  }

  /// Conditional CDF h(v | u) = dC(u,v)/du for u in (0,1).
  double conditional_cdf(double v, double given_u) const {
    const double u = given_u;
    if (v <= 0.0) return 0.0;
    if (v >= 1.0) return 1.0;
    switch (family_) {
      case CopulaFamily::Independence:
        return v;
      case CopulaFamily::Comonotone:
        return v >= u ? 1.0 : 0.0;
      case CopulaFamily::Countermonotone:
        return v > 1.0 - u ? 1.0 : 0.0;
      case CopulaFamily::Gumbel: {
        const double lu = -std::log(u), lv = -std::log(v);
        const double a = theta_ * std::log(lu), b = theta_ * std::log(lv);
        const double m = std::max(a, b);
        const double s = m + std::log(std::exp(a - m) + std::exp(b - m));
        const double log_h = -std::exp(s / theta_) +
                             (1.0 / theta_ - 1.0) * s +
                             (theta_ - 1.0) * std::log(lu) - std::log(u);
        return std::exp(log_h);
      }
      case CopulaFamily::Clayton: {
        const double a = -theta_ * std::log(u), b = -theta_ * std::log(v);
        const double m = std::max(a, b);
        const double s =
            m + std::log(std::exp(a - m) + std::exp(b - m) - std::exp(-m));
        const double log_h =
            -(theta_ + 1.0) * std::log(u) - (1.0 + 1.0 / theta_) * s;
        return std::exp(log_h);
      }
      case CopulaFamily::Frank: {
        const double em_v = std::expm1(-theta_ * v);
        const double num = std::exp(-theta_ * u) * em_v;
        const double denom =
            num + std::exp(-theta_ * v) * std::expm1(-theta_ * (1.0 - v));
        return num / denom;
      }
      case CopulaFamily::Gaussian: {
        const double s = std::sqrt(1.0 - theta_ * theta_);
        return norm_cdf((norm_quantile(v) - theta_ * norm_quantile(u)) / s);
      }
    }
    return 0.0;
  }

  /// Inverse of h in v: smallest v with h(v|u) >= q. Closed forms where the
  /// family admits one, bisection to 1e-12 otherwise (Gumbel).
  double conditional_quantile(double q, double given_u) const {
    const double u = given_u;
    if (q <= 0.0) return 0.0;
    if (q >= 1.0) return 1.0;
    switch (family_) {
      case CopulaFamily::Independence:
        return q;
      case CopulaFamily::Comonotone:
        return u;
      case CopulaFamily::Countermonotone:
        return 1.0 - u;
      case CopulaFamily::Clayton: {
        // log(v) = -(1/t) * log(1 + u^-t * (q^(-t/(t+1)) - 1))
        const double g =
            std::expm1(-theta_ / (theta_ + 1.0) * std::log(q));  // > 0
        const double arg = -theta_ * std::log(u) + std::log(g);
        const double log1p_term =
            arg > 0.0 ? arg + std::log1p(std::exp(-arg)) : std::log1p(std::exp(arg));
        return std::exp(-log1p_term / theta_);
      }
      case CopulaFamily::Frank: {
        // denominator e^{-t u} - q*em_u == e^{-t u}(1-q) + q, all positive
        const double em = std::expm1(-theta_);
        const double em_v =
            q * em / (std::exp(-theta_ * u) * (1.0 - q) + q);
        return -std::log1p(em_v) / theta_;
      }
      case CopulaFamily::Gaussian: {
        const double s = std::sqrt(1.0 - theta_ * theta_);
        return norm_cdf(s * norm_quantile(q) + theta_ * norm_quantile(u));
      }
      case CopulaFamily::Gumbel: {
        double lo = 0.0, hi = 1.0;
        while (hi - lo > 1e-12) {
          const double mid = 0.5 * (lo + hi);
          if (conditional_cdf(mid, u) >= q)
            hi = mid;
          else
            lo = mid;
        }
        return 0.5 * (lo + hi);
      }
    }
    return q;
  }

  /// Kendall's tau of the copula (closed forms).
  double kendall_tau() const {
    switch (family_) {
      case CopulaFamily::Independence: return 0.0;
      case CopulaFamily::Comonotone: return 1.0;
      case CopulaFamily::Countermonotone: return -1.0;
      case CopulaFamily::Gumbel: return 1.0 - 1.0 / theta_;
      case CopulaFamily::Clayton: return theta_ / (theta_ + 2.0);
      case CopulaFamily::Frank:
        return 1.0 - 4.0 / theta_ * (1.0 - debye1(theta_));
      case CopulaFamily::Gaussian: return 2.0 / pi * std::asin(theta_);
    }
    return 0.0;
  }

  /// Conditional-inversion sampling: maps two independent uniforms to a
  /// pair with this copula's law, (U, V) = (u1, h^-1(u2 | u1)).
  std::pair<double, double> sample_pair(double u1, double u2) const {
    return {u1, conditional_quantile(u2, u1)};
  }

  std::string describe() const {
    std::string s = family_name(family_);
    if (has_theta()) {
      s += "(theta=";
      s += format_scalar(theta_);
      s += ")";
    }
    return s;
  }

 private:
  Copula(CopulaFamily f, double theta) : family_(f), theta_(theta) {}

  CopulaFamily family_;
  double theta_;
};

/// Monte Carlo estimate of tau via tau = 4 E[C(U,V)] - 1 with (U,V) drawn
/// from the copula itself. Deterministic given the seed.
inline double numeric_kendall_tau(const Copula& c, std::int64_t n_samples,
                                  std::uint64_t seed) {
  if (n_samples < 1000)
    throw std::domain_error("numeric_kendall_tau needs n_samples >= 1000");
  UniformStream stream(seed);
  double acc = 0.0;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    const auto [u, v] = c.sample_pair(stream.at(2 * static_cast<std::uint64_t>(i)),
                                      stream.at(2 * static_cast<std::uint64_t>(i) + 1));
    acc += c.cdf(u, v);
  }
  return 4.0 * acc / static_cast<double>(n_samples) - 1.0;
}

namespace detail {

inline double tau_range_error(CopulaFamily family, double tau,
                              const char* range) {
  throw std::range_error(std::string("tau=") + format_scalar(tau) +
                         " is outside the attainable range " + range +
                         " for the " + family_name(family) + " copula");
}

/// Monotone bisection of a scalar map tau(theta) over [lo, hi].
template <typename TauFn>
double invert_tau(TauFn&& tau_of, double target, double lo, double hi) {
  double f_lo = tau_of(lo), f_hi = tau_of(hi);
  const bool rising = f_hi >= f_lo;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = tau_of(mid);
    if ((fm >= target) == rising)
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= 1e-15 * (1.0 + std::fabs(mid))) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Solve for the dependence parameter reproducing a target Kendall's tau.
/// tau = 0 yields the independence copula for every family.
inline Copula calibrate_parameter(CopulaFamily family, double target_tau) {
  if (!(target_tau > -1.0 && target_tau < 1.0) &&
      family != CopulaFamily::Comonotone &&
      family != CopulaFamily::Countermonotone)
    detail::tau_range_error(family, target_tau, "(-1,1)");
  if (target_tau == 0.0 && family != CopulaFamily::Comonotone &&
      family != CopulaFamily::Countermonotone)
    return Copula::independence();
  switch (family) {
    case CopulaFamily::Independence:
      detail::tau_range_error(family, target_tau, "{0}");
      break;
    case CopulaFamily::Comonotone:
      if (target_tau == 1.0) return Copula::comonotone();
      detail::tau_range_error(family, target_tau, "{1}");
      break;
    case CopulaFamily::Countermonotone:
      if (target_tau == -1.0) return Copula::countermonotone();
      detail::tau_range_error(family, target_tau, "{-1}");
      break;
    case CopulaFamily::Gumbel: {
      if (target_tau < 0.0) detail::tau_range_error(family, target_tau, "[0,1)");
      const double theta = detail::invert_tau(
          [](double t) { return Copula::gumbel(t).kendall_tau(); }, target_tau,
          1.0, 2.0 / (1.0 - target_tau));
      return Copula::gumbel(theta);
    }
    case CopulaFamily::Clayton: {
      if (target_tau < 0.0) detail::tau_range_error(family, target_tau, "[0,1)");
      const double hint = 2.0 * target_tau / (1.0 - target_tau);
      const double theta = detail::invert_tau(
          [](double t) { return Copula::clayton(t).kendall_tau(); }, target_tau,
          1e-12, 2.0 * hint + 1.0);
      return Copula::clayton(theta);
    }
    case CopulaFamily::Frank: {
      const double mag = std::fabs(target_tau);
      double hi = 1.0;
      auto tau_of = [](double t) { return Copula::frank(t).kendall_tau(); };
      while (tau_of(hi) < mag && hi < 1e6) hi *= 2.0;
      double theta = detail::invert_tau(tau_of, mag, 1e-12, hi);
      if (target_tau < 0.0) theta = -theta;
      return Copula::frank(theta);
    }
    case CopulaFamily::Gaussian: {
      const double rho = detail::invert_tau(
          [](double r) { return Copula::gaussian(r).kendall_tau(); },
          target_tau, -1.0 + 1e-12, 1.0 - 1e-12);
      return Copula::gaussian(rho);
    }
  }
  throw std::logic_error("unreachable");
}

/// Sample version of Kendall's tau: (concordant - discordant) / C(n,2),
/// ties counting to neither side. O(n log n) via merge-sort inversion
/// counting.
inline double empirical_kendall_tau(
    std::span<const std::pair<double, double>> pairs) {
  const std::size_t n = pairs.size();
  if (n < 2)
    throw std::domain_error("empirical_kendall_tau needs at least 2 pairs");
  std::vector<std::pair<double, double>> pts(pairs.begin(), pairs.end());
  std::sort(pts.begin(), pts.end());

  auto run_pairs = [](std::uint64_t c) { return c * (c - 1) / 2; };
  std::uint64_t ties_x = 0, ties_xy = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && pts[j].first == pts[i].first) ++j;
    ties_x += run_pairs(j - i);
    for (std::size_t k = i; k < j;) {
      std::size_t l = k;
      while (l < j && pts[l].second == pts[k].second) ++l;
      ties_xy += run_pairs(l - k);
      k = l;
    }
    i = j;
  }

  // Count strict inversions of the y-sequence (discordant pairs).
  std::vector<double> ys(n), buf(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = pts[i].second;
  std::uint64_t discordant = 0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
      const std::size_t mid = lo + width, hi = std::min(lo + 2 * width, n);
      std::size_t a = lo, b = mid, out = lo;
      while (a < mid && b < hi) {
        if (ys[b] < ys[a]) {
          discordant += mid - a;
          buf[out++] = ys[b++];
        } else {
          buf[out++] = ys[a++];
        }
      }
      while (a < mid) buf[out++] = ys[a++];
      while (b < hi) buf[out++] = ys[b++];
      std::copy(buf.begin() + lo, buf.begin() + hi, ys.begin() + lo);
    }
  }

  std::uint64_t ties_y = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && ys[j] == ys[i]) ++j;
    ties_y += run_pairs(j - i);
    i = j;
  }

  const std::uint64_t total = run_pairs(n);
  const std::uint64_t tied = ties_x + ties_y - ties_xy;
  const std::uint64_t concordant = total - tied - discordant;
  return (static_cast<double>(concordant) - static_cast<double>(discordant)) /
         static_cast<double>(total);
}

inline double empirical_kendall_tau(
    const std::vector<std::pair<double, double>>& pairs) {
  return empirical_kendall_tau(
      std::span<const std::pair<double, double>>(pairs));
}

}  // namespace nvpool
