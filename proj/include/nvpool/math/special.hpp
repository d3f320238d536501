#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace nvpool {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double sqrt2 = 1.41421356237309504880;

inline double norm_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * pi);
}

inline double norm_cdf(double x) { return 0.5 * std::erfc(-x / sqrt2); }

/// Standard normal quantile: Acklam's rational approximation refined by one
/// Newton step against the erfc-based CDF, good to ~1 ulp over (0,1).
inline double norm_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("norm_quantile: p=" + std::to_string(p) +
                            " outside (0,1)");
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // One Newton polish in probability space.
  double e = norm_cdf(x) - p;
  x -= e / norm_pdf(x);
  return x;
}

namespace detail {

/// Continued fraction for the regularized incomplete beta (modified Lentz).
inline double beta_cont_frac(double a, double b, double x) {
  constexpr int max_iter = 400;
  constexpr double eps = 1e-16, fpmin = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= eps) break;
  }
  return h;
}

}  // namespace detail

/// Regularized incomplete beta I_x(a, b).
inline double inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log1p(-x);
  const double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0))
    return bt * detail::beta_cont_frac(a, b, x) / a;
  return 1.0 - bt * detail::beta_cont_frac(b, a, 1.0 - x) / b;
}

inline double beta_pdf(double a, double b, double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                  (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x));
}

/// Inverse of I_x(a, b): Newton in probability space with a bisection
/// safeguard; converges to |I(x) - p| <= 1e-12.
inline double inc_beta_inv(double a, double b, double p) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  // Normal-approximation starting point (Abramowitz & Stegun 26.5.22),
  // falling back to the mean when it degenerates.
  double x;
  {
    const double yp = norm_quantile(p);
    const double al = 1.0 / (2.0 * a - 1.0), be = 1.0 / (2.0 * b - 1.0);
    if (a > 1.0 && b > 1.0) {
      const double lam = (yp * yp - 3.0) / 6.0;
      const double h = 2.0 / (al + be);
      const double w = yp * std::sqrt(h + lam) / h -
                       (be - al) * (lam + 5.0 / 6.0 - 2.0 / (3.0 * h));
      x = a / (a + b * std::exp(2.0 * w));
    } else {
      x = a / (a + b);
    }
    if (!(x > 0.0 && x < 1.0)) x = a / (a + b);
  }
  double f = inc_beta(a, b, x) - p;
  for (int it = 0; it < 200; ++it) {
    if (f > 0.0)
      hi = x;
    else
      lo = x;
    if (std::fabs(f) <= 1e-12 || hi - lo <= 1e-16 * (1.0 + x)) break;
    const double dens = beta_pdf(a, b, x);
    double xn = dens > 0.0 ? x - f / dens : 0.5 * (lo + hi);
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    x = xn;
    f = inc_beta(a, b, x) - p;
  }
  return x;
}

/// Debye function D_1(x) = (1/x) * integral_0^x t/(e^t - 1) dt, valid for
/// both signs of x (the integrand t/expm1(t) is analytic with value 1 at 0).
inline double debye1(double x) {
  if (std::fabs(x) < 1e-4) return 1.0 - x / 4.0 + x * x / 36.0;
  if (x < 0.0) return debye1(-x) - x / 2.0;
  if (x > 60.0) return (pi * pi / 6.0) / x;  // tail below e^-60
  // Composite Simpson; the integrand is smooth so fixed panels suffice.
  const int n = 1024;
  const double hstep = x / n;
  auto f = [](double t) { return t != 0.0 ? t / std::expm1(t) : 1.0; };
  double sum = f(0.0) + f(x);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(i * hstep);
  const double integral = sum * hstep / 3.0;
  return integral / x;
}

}  // namespace nvpool
