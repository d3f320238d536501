#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "nvpool/format.hpp"
#include "nvpool/math/special.hpp"

namespace nvpool {

enum class MarginalFamily { Beta, Normal, Exponential, Pareto, Uniform };

inline const char* family_name(MarginalFamily f) {
  switch (f) {
    case MarginalFamily::Beta: return "beta";
    case MarginalFamily::Normal: return "normal";
    case MarginalFamily::Exponential: return "exponential";
    case MarginalFamily::Pareto: return "pareto";
    case MarginalFamily::Uniform: return "uniform";
  }
  return "?";
}

struct Support {
  double lo;
  double hi;
  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
};

/// Parametric univariate demand law. Immutable after construction; all
/// operations are pure, so values may be shared freely across threads.
///
/// Quantiles follow the generalized-inverse convention inf{x : F(x) >= p}.
/// For bounded supports, p <= 0 / p >= 1 clamp to the support endpoints;
/// unbounded families reject p outside (0,1).
class MarginalDistribution {
 public:
  static MarginalDistribution beta(double a, double b) {
    require(a > 0.0, "beta shape a", a);
    require(b > 0.0, "beta shape b", b);
    return {MarginalFamily::Beta, a, b};
  }
  static MarginalDistribution normal(double mu, double sigma) {
    require(sigma > 0.0, "normal sigma", sigma);
    return {MarginalFamily::Normal, mu, sigma};
  }
  static MarginalDistribution exponential(double rate) {
    require(rate > 0.0, "exponential rate", rate);
    return {MarginalFamily::Exponential, rate, 0.0};
  }
  static MarginalDistribution pareto(double alpha, double scale) {
    require(alpha > 0.0, "pareto tail index", alpha);
    require(scale > 0.0, "pareto scale", scale);
    return {MarginalFamily::Pareto, alpha, scale};
  }
  static MarginalDistribution uniform(double lo, double hi) {
    if (!(lo < hi))
      throw std::domain_error("uniform requires lower < upper, got [" +
                              format_scalar(lo) + ", " + format_scalar(hi) +
                              "]");
    return {MarginalFamily::Uniform, lo, hi};
  }

  MarginalFamily family() const { return family_; }
  double param1() const { return p1_; }
  double param2() const { return p2_; }

  Support support() const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (family_) {
      case MarginalFamily::Beta: return {0.0, 1.0};
      case MarginalFamily::Normal: return {-inf, inf};
      case MarginalFamily::Exponential: return {0.0, inf};
      case MarginalFamily::Pareto: return {p2_, inf};
      case MarginalFamily::Uniform: return {p1_, p2_};
    }
    return {-inf, inf};
  }

  double cdf(double x) const {
    switch (family_) {
      case MarginalFamily::Beta:
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        return inc_beta(p1_, p2_, x);
      case MarginalFamily::Normal:
        return norm_cdf((x - p1_) / p2_);
      case MarginalFamily::Exponential:
        return x <= 0.0 ? 0.0 : -std::expm1(-p1_ * x);
      case MarginalFamily::Pareto:
        return x <= p2_ ? 0.0 : 1.0 - std::pow(p2_ / x, p1_);
      case MarginalFamily::Uniform:
        if (x <= p1_) return 0.0;
        if (x >= p2_) return 1.0;
        return (x - p1_) / (p2_ - p1_);
    }
    return 0.0;
  }

  double quantile(double p) const {
    const Support sup = support();
    if (sup.bounded()) {
      if (p <= 0.0) return sup.lo;
      if (p >= 1.0) return sup.hi;
    } else if (!(p > 0.0 && p < 1.0)) {
      throw std::domain_error(std::string("quantile: p=") + format_scalar(p) +
                              " outside (0,1) for unbounded " +
                              family_name(family_) + " support");
    }
    switch (family_) {
      case MarginalFamily::Beta:
        return inc_beta_inv(p1_, p2_, p);
      case MarginalFamily::Normal:
        return p1_ + p2_ * norm_quantile(p);
      case MarginalFamily::Exponential:
        return -std::log1p(-p) / p1_;
      case MarginalFamily::Pareto:
        return p2_ * std::pow(1.0 - p, -1.0 / p1_);
      case MarginalFamily::Uniform:
        return p1_ + p * (p2_ - p1_);
    }
    return 0.0;
  }

  /// Inverse-CDF transform of a uniform variate; the deterministic hook the
  /// copula sampler drives.
  double sample(double u) const { return quantile(u); }

  double density(double x) const {
    switch (family_) {
      case MarginalFamily::Beta:
        return beta_pdf(p1_, p2_, x);
      case MarginalFamily::Normal:
        return norm_pdf((x - p1_) / p2_) / p2_;
      case MarginalFamily::Exponential:
        return x < 0.0 ? 0.0 : p1_ * std::exp(-p1_ * x);
      case MarginalFamily::Pareto:
        return x < p2_ ? 0.0 : p1_ * std::pow(p2_, p1_) / std::pow(x, p1_ + 1.0);
      case MarginalFamily::Uniform:
        return (x >= p1_ && x <= p2_) ? 1.0 / (p2_ - p1_) : 0.0;
    }
    return 0.0;
  }

  /// Mean when it exists; Pareto with tail index <= 1 has none.
  std::optional<double> mean() const {
    switch (family_) {
      case MarginalFamily::Beta: return p1_ / (p1_ + p2_);
      case MarginalFamily::Normal: return p1_;
      case MarginalFamily::Exponential: return 1.0 / p1_;
      case MarginalFamily::Pareto:
        if (p1_ <= 1.0) return std::nullopt;
        return p1_ * p2_ / (p1_ - 1.0);
      case MarginalFamily::Uniform: return 0.5 * (p1_ + p2_);
    }
    return std::nullopt;
  }

  std::string describe() const {
    std::string s = family_name(family_);
    s += "(";
    s += format_scalar(p1_);
    if (family_ != MarginalFamily::Exponential) {
      s += ",";
      s += format_scalar(p2_);
    }
    s += ")";
    return s;
  }

 private:
  MarginalDistribution(MarginalFamily f, double p1, double p2)
      : family_(f), p1_(p1), p2_(p2) {}

  static void require(bool ok, const char* what, double v) {
    if (!ok)
      throw std::domain_error(std::string(what) + " must be positive, got " +
                              format_scalar(v));
  }

  MarginalFamily family_;
  double p1_, p2_;
};

}  // namespace nvpool
