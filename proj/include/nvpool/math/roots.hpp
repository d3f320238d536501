#pragma once

#include <cmath>
#include <functional>

#include "nvpool/errors.hpp"
#include "nvpool/format.hpp"

namespace nvpool {

struct MonotoneSolveOptions {
  double value_tol = 1e-9;  // accept when |f(x) - target| <= value_tol
  int max_iter = 200;
};

/// Solve f(x) = target for a nondecreasing f over a bracketing interval
/// [lo, hi] (f(lo) <= target <= f(hi) is assumed). Bisection until the
/// value tolerance is met, followed by one secant polish; if f has a flat
/// spot or jump at the solution, returns the generalized inverse
/// inf{x : f(x) >= target} to x-space machine precision.
template <typename F>
double solve_monotone(F&& f, double target, double lo, double hi,
                      double f_lo, double f_hi,
                      const MonotoneSolveOptions& opt = {}) {
  if (f_lo >= target) return lo;
  if (f_hi < target) {
    throw NumericError("monotone solve: target " + format_full(target) +
                           " above bracket [" + format_full(lo) + ", " +
                           format_full(hi) + "] with f(hi)=" +
                           format_full(f_hi),
                       f_hi - target);
  }
  double best_x = hi, best_err = std::fabs(f_hi - target);
  for (int it = 0; it < opt.max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    const double err = std::fabs(fm - target);
    if (err < best_err) {
      best_err = err;
      best_x = mid;
    }
    if (fm >= target) {
      hi = mid;
      f_hi = fm;
    } else {
      lo = mid;
      f_lo = fm;
    }
    if (err <= opt.value_tol) break;
    if (hi - lo <= 1e-14 * (1.0 + std::fabs(mid))) {
      // Resolution limit: a flat spot or jump of f. The upper end carries
      // f(hi) >= target, which is the generalized-inverse convention.
      return hi;
    }
  }
  // Secant polish from the final bracket.
  if (f_hi > f_lo) {
    const double xs = lo + (target - f_lo) * (hi - lo) / (f_hi - f_lo);
    if (xs > lo && xs < hi) {
      const double fs = f(xs);
      if (std::fabs(fs - target) < best_err) return xs;
    }
  }
  return best_x;
}

/// Locate a bracket [lo, hi] with f(lo) <= target <= f(hi) for a
/// nondecreasing f, expanding geometrically around a starting guess.
/// Returns false if no bracket is found within the expansion budget.
template <typename F>
bool expand_bracket(F&& f, double target, double center, double initial_halfwidth,
                    double& lo, double& hi, double& f_lo, double& f_hi,
                    int max_expansions = 120) {
  double w = initial_halfwidth;
  lo = center - w;
  hi = center + w;
  f_lo = f(lo);
  f_hi = f(hi);
  for (int i = 0; i < max_expansions && (f_lo > target || f_hi < target); ++i) {
    w *= 2.0;
    if (f_lo > target) {
      lo = center - w;
      f_lo = f(lo);
    }
    if (f_hi < target) {
      hi = center + w;
      f_hi = f(hi);
    }
  }
  return f_lo <= target && f_hi >= target;
}

/// Sign-change bisection for a continuous f with f(a) and f(b) of opposite
/// sign; refines until the bracket is narrower than x_tol.
template <typename F>
double bisect_sign_change(F&& f, double a, double b, double fa, double fb,
                          double x_tol) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  while (b - a > x_tol) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace nvpool
