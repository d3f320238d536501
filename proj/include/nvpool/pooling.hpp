#pragma once

#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "nvpool/format.hpp"
#include "nvpool/joint_demand.hpp"
#include "nvpool/math/quadrature.hpp"
#include "nvpool/math/roots.hpp"
#include "nvpool/rng.hpp"

namespace nvpool {

/// Unit price/cost of a newsvendor product, or just the induced margin
/// ratio t = (p - c)/p when prices are not needed. When both p and c are
/// given, t is always recomputed from them.
class ProfitParams {
 public:
  static ProfitParams from_price_cost(double price, double cost) {
    if (!(price > 0.0) || !(cost > 0.0) || !(cost < price))
      throw std::domain_error("require 0 < cost < price, got price=" +
                              format_scalar(price) + " cost=" +
                              format_scalar(cost));
    ProfitParams pp;
    pp.price_ = price;
    pp.cost_ = cost;
    return pp;
  }
  static ProfitParams from_margin_ratio(double t) {
    if (!(t > 0.0 && t < 1.0))
      throw std::domain_error("margin ratio t=" + format_scalar(t) +
                              " outside (0,1)");
    ProfitParams pp;
    pp.bare_t_ = t;
    return pp;
  }

  bool has_price_cost() const { return price_.has_value(); }
  double price() const { return require_prices(), *price_; }
  double cost() const { return require_prices(), *cost_; }
  double margin_ratio() const {
    return price_ ? (*price_ - *cost_) / *price_ : *bare_t_;
  }

 private:
  ProfitParams() = default;
  void require_prices() const {
    if (!price_)
      throw std::domain_error("price/cost not set (bare margin ratio only)");
  }
  std::optional<double> price_, cost_, bare_t_;
};

/// Optimal single-product newsvendor stock: the demand quantile at the
/// margin ratio.
inline double newsvendor_quantile(const MarginalDistribution& dist,
                                  const ProfitParams& pp) {
  return dist.quantile(pp.margin_ratio());
}

/// Expected profit p*E[min(D,Q)] - c*Q for nonnegative demand,
/// E[min(D,Q)] = integral_0^Q (1 - F(x)) dx.
inline double expected_profit(const MarginalDistribution& dist, double q,
                              const ProfitParams& pp) {
  if (q < 0.0)
    throw std::domain_error("stock level Q=" + format_scalar(q) +
                            " must be nonnegative");
  const double p = pp.price(), c = pp.cost();
  if (q == 0.0) return 0.0;
  QuadratureOptions opt;
  opt.abs_tol = 1e-9;
  const double expected_sales =
      integrate([&](double x) { return 1.0 - dist.cdf(x); }, 0.0, q, opt);
  return p * expected_sales - c * q;
}

/// Total optimal dedicated stock F1^-1(t) + F2^-1(t); depends on the
/// marginals only, never on the copula.
inline double dedicated_total(const JointDemandModel& m, double t) {
  return m.marginal1().quantile(t) + m.marginal2().quantile(t);
}

/// Pooling effect P(t) = F_{1+2}^-1(t) - F1^-1(t) - F2^-1(t). Positive
/// means pooling needs MORE total stock than dedicated inventories.
inline double pooling_effect(const JointDemandModel& m, double t) {
  return m.sum_quantile(t).point - dedicated_total(m, t);
}

struct PoolingCurve {
  std::vector<double> t_grid;
  std::vector<double> dedicated;
  std::vector<double> pooled;
  std::vector<double> effect;      // pooled - dedicated
  std::vector<double> effect_pct;  // 100 * effect / dedicated
  std::vector<double> ci_halfwidth;
  std::vector<std::string> point_errors;  // empty string = point ok

  bool all_ok() const {
    for (const auto& e : point_errors)
      if (!e.empty()) return false;
    return true;
  }
};

inline PoolingCurve pooling_curve(const JointDemandModel& m,
                                  std::span<const double> t_grid,
                                  Method method,
                                  std::int64_t mc_samples = 100000,
                                  std::uint64_t seed = 0) {
  if (t_grid.empty()) throw std::domain_error("pooling_curve: empty t grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0 && t_grid[i] < 1.0))
      throw std::domain_error("pooling_curve: grid point outside (0,1)");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1]))
      throw std::domain_error("pooling_curve: grid not strictly increasing");
  }
  PoolingCurve out;
  const std::size_t n = t_grid.size();
  out.t_grid.assign(t_grid.begin(), t_grid.end());
  out.dedicated.resize(n);
  out.pooled.resize(n);
  out.effect.resize(n);
  out.effect_pct.resize(n);
  out.ci_halfwidth.resize(n);
  out.point_errors.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = t_grid[i];
    try {
      out.dedicated[i] = dedicated_total(m, t);
      const SumQuantileEstimate est =
          method == Method::Quadrature
              ? m.sum_quantile(t)
              : m.sum_quantile_mc(t, mc_samples, derive_seed(seed, i));
      out.pooled[i] = est.point;
      out.ci_halfwidth[i] = est.ci_halfwidth;
      out.effect[i] = out.pooled[i] - out.dedicated[i];
      out.effect_pct[i] = out.dedicated[i] > 0.0
                              ? 100.0 * out.effect[i] / out.dedicated[i]
                              : std::numeric_limits<double>::quiet_NaN();
    } catch (const std::exception& ex) {
      out.point_errors[i] = ex.what();
      out.dedicated[i] = out.pooled[i] = out.effect[i] = out.effect_pct[i] =
          out.ci_halfwidth[i] = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return out;
}

inline void write_csv(const PoolingCurve& c, std::ostream& os) {
  os << "t,dedicated,pooled,effect,effect_pct,ci_halfwidth\n";
  for (std::size_t i = 0; i < c.t_grid.size(); ++i) {
    os << format_full(c.t_grid[i]) << ',' << format_full(c.dedicated[i]) << ','
       << format_full(c.pooled[i]) << ',' << format_full(c.effect[i]) << ','
       << format_full(c.effect_pct[i]) << ',' << format_full(c.ci_halfwidth[i])
       << '\n';
  }
}

inline PoolingCurve read_curve_csv(std::istream& is) {
  PoolingCurve c;
  std::string line;
  if (!std::getline(is, line) ||
      line != "t,dedicated,pooled,effect,effect_pct,ci_halfwidth")
    throw std::invalid_argument("curve csv: bad header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::vector<double> row;
    while (std::getline(ss, tok, ',')) row.push_back(parse_double(tok));
    if (row.size() != 6) throw std::invalid_argument("curve csv: bad row");
    c.t_grid.push_back(row[0]);
    c.dedicated.push_back(row[1]);
    c.pooled.push_back(row[2]);
    c.effect.push_back(row[3]);
    c.effect_pct.push_back(row[4]);
    c.ci_halfwidth.push_back(row[5]);
    c.point_errors.emplace_back();
  }
  return c;
}

/// Sign-change report for P(t) over a uniform interior scan grid.
struct ThresholdReport {
  std::vector<double> roots;  // ordered sign-change locations
  std::vector<std::pair<double, double>> brackets;  // refined per root
  std::string sign_pattern;  // one of +/-/0 per scan node
  bool unique = false;       // exactly one root
  // flat-zero runs wider than one grid cell, reported as intervals
  std::vector<std::pair<double, double>> zero_plateaus;
  std::vector<double> scan_grid;
  std::vector<double> scan_values;
};

/// Scan P(t) on `scan_points` uniform interior nodes, classify each value
/// against zero_tol, and refine every sign change to 1e-6 in t by
/// bisection.
inline ThresholdReport find_thresholds(const JointDemandModel& m,
                                       int scan_points = 199,
                                       double zero_tol = 1e-5) {
  if (scan_points < 9)
    throw std::domain_error("find_thresholds needs scan_points >= 9");
  ThresholdReport rep;
  const int n = scan_points;
  rep.scan_grid.resize(n);
  rep.scan_values.resize(n);
  rep.sign_pattern.resize(n, '0');
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i + 1) / (n + 1);
    const double p = pooling_effect(m, t);
    rep.scan_grid[i] = t;
    rep.scan_values[i] = p;
    rep.sign_pattern[i] = std::fabs(p) <= zero_tol ? '0' : (p > 0.0 ? '+' : '-');
  }
  // Roots between consecutive nonzero classifications of opposite sign
  // (zero runs in between are spanned by the bracket).
  int prev = -1;
  for (int i = 0; i < n; ++i) {
    if (rep.sign_pattern[i] == '0') continue;
    if (prev >= 0 && rep.sign_pattern[i] != rep.sign_pattern[prev]) {
      double a = rep.scan_grid[prev], b = rep.scan_grid[i];
      double fa = rep.scan_values[prev];
      auto f = [&](double t) { return pooling_effect(m, t); };
      while (b - a > 1e-6) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if (fm == 0.0) {
          a = b = mid;
          break;
        }
        if ((fm > 0.0) == (fa > 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      rep.roots.push_back(0.5 * (a + b));
      rep.brackets.emplace_back(a, b);
    }
    prev = i;
  }
  // Zero plateaus: maximal '0' runs spanning more than one grid cell.
  for (int i = 0; i < n;) {
    if (rep.sign_pattern[i] != '0') {
      ++i;
      continue;
    }
    int j = i;
    while (j < n && rep.sign_pattern[j] == '0') ++j;
    if (j - i >= 2)
      rep.zero_plateaus.emplace_back(rep.scan_grid[i], rep.scan_grid[j - 1]);
    i = j;
  }
  rep.unique = rep.roots.size() == 1;
  return rep;
}

/// Maximal-sign regions of the scan: consecutive [t_lo, t_hi] intervals with
/// the sign they carry, boundaries refined to the reported roots.
inline std::vector<std::pair<std::pair<double, double>, char>> sign_regions(
    const ThresholdReport& rep) {
  std::vector<std::pair<std::pair<double, double>, char>> regions;
  if (rep.scan_grid.empty()) return regions;
  std::size_t root_idx = 0;
  double start = rep.scan_grid.front();
  char cur = 0;
  for (std::size_t i = 0; i < rep.scan_grid.size(); ++i) {
    const char s = rep.sign_pattern[i];
    if (s == '0') continue;
    if (cur == 0) {
      cur = s;
    } else if (s != cur) {
      const double boundary = root_idx < rep.roots.size()
                                  ? rep.roots[root_idx]
                                  : 0.5 * (rep.scan_grid[i - 1] + rep.scan_grid[i]);
      ++root_idx;
      regions.push_back({{start, boundary}, cur});
      start = boundary;
      cur = s;
    }
  }
  if (cur != 0) regions.push_back({{start, rep.scan_grid.back()}, cur});
  return regions;
}

/// Quantile of the sum of bivariate-normal demands: the elliptical
/// closed form mu1 + mu2 + Phi^-1(t) * sqrt(s1^2 + s2^2 + 2 rho s1 s2).
inline double normal_pooled_closed_form(double mu1, double sigma1, double mu2,
                                        double sigma2, double rho, double t) {
  if (!(sigma1 > 0.0 && sigma2 > 0.0))
    throw std::domain_error("normal_pooled_closed_form: sigma must be > 0");
  const double var =
      sigma1 * sigma1 + sigma2 * sigma2 + 2.0 * rho * sigma1 * sigma2;
  return mu1 + mu2 + norm_quantile(t) * std::sqrt(std::max(var, 0.0));
}

}  // namespace nvpool
