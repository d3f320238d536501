#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "nvpool/errors.hpp"
#include "nvpool/format.hpp"

namespace nvpool {

struct QuadratureOptions {
  double abs_tol = 1e-9;
  int panel_floor = 64;  // initial uniform subdivision across the whole range
  int max_depth = 32;
};

namespace detail {

template <typename F>
double adapt_panel(const F& f, double a, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth,
                   double& err_acc, bool& converged) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::fabs(delta) <= 15.0 * tol || b - a < 1e-15 * (1.0 + std::fabs(a))) {
    err_acc += std::fabs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  if (depth <= 0) {
    err_acc += std::fabs(delta) / 15.0;
    converged = false;
    return left + right + delta / 15.0;
  }
  return adapt_panel(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, err_acc,
                     converged) +
         adapt_panel(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1,
                     err_acc, converged);
}

}  // namespace detail

/// Adaptive Simpson over [a, b] with optional interior breakpoints (kink
/// locations are made panel boundaries so each panel sees a smooth
/// integrand). Throws NumericError carrying the achieved error estimate if
/// refinement bottoms out above the requested tolerance.
template <typename F>
double integrate(F&& f, double a, double b, std::span<const double> breakpoints,
                 const QuadratureOptions& opt = {}) {
  if (!(b > a)) return 0.0;
  std::vector<double> edges{a, b};
  for (double p : breakpoints)
    if (p > a && p < b) edges.push_back(p);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  const double width = b - a;
  double total = 0.0, err_acc = 0.0;
  bool converged = true;
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    const double lo = edges[s], hi = edges[s + 1];
    const int panels = std::max(
        1, static_cast<int>(std::lround(opt.panel_floor * (hi - lo) / width)));
    const double h = (hi - lo) / panels;
    for (int i = 0; i < panels; ++i) {
      const double pa = lo + i * h;
      const double pb = (i + 1 == panels) ? hi : pa + h;
      const double pm = 0.5 * (pa + pb);
      const double fa = f(pa), fm = f(pm), fb = f(pb);
      const double whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
      const double tol = opt.abs_tol * (pb - pa) / width;
      total += detail::adapt_panel(f, pa, pb, fa, fm, fb, whole, tol,
                                   opt.max_depth, err_acc, converged);
    }
  }
  if (!converged && err_acc > opt.abs_tol)
    throw NumericError("quadrature did not reach tolerance " +
                           format_full(opt.abs_tol) + "; achieved " +
                           format_full(err_acc),
                       err_acc);
  return total;
}

template <typename F>
double integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  return integrate(std::forward<F>(f), a, b, std::span<const double>{}, opt);
}

}  // namespace nvpool
