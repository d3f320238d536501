#pragma once

#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "nvpool/config_json.hpp"
#include "nvpool/copulas.hpp"
#include "nvpool/marginals.hpp"
#include "nvpool/pooling.hpp"
#include "nvpool/rng.hpp"
#include "nvpool/version.hpp"

namespace nvpool {

/// A scenario grid: the cross product of marginal pairs and copula specs,
/// each cell producing a pooling curve, a threshold report and a sampler
/// validation tau. Cells are seeded independently from (base_seed, cell id)
/// so execution order never changes the numbers.
struct ScenarioConfig {
  std::vector<std::pair<MarginalDistribution, MarginalDistribution>>
      marginal_pairs;
  std::vector<CopulaSpec> copula_specs;
  std::vector<double> t_grid;
  Method method = Method::Quadrature;
  std::int64_t mc_samples = 100000;
  std::uint64_t base_seed = 42;
  std::string output_path;
  int scan_points = 199;
  double zero_tol = 1e-5;
  std::int64_t validation_samples = 20000;
  std::vector<std::string> notes;

  void validate() const {
    if (marginal_pairs.empty())
      throw std::invalid_argument("config: no marginal pairs");
    if (copula_specs.empty())
      throw std::invalid_argument("config: no copula specs");
    if (t_grid.empty()) throw std::invalid_argument("config: empty t_grid");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      if (!(t_grid[i] > 0.0 && t_grid[i] < 1.0))
        throw std::invalid_argument("config: t_grid values must lie in (0,1)");
      if (i > 0 && !(t_grid[i] > t_grid[i - 1]))
        throw std::invalid_argument("config: t_grid not strictly increasing");
    }
    for (const auto& spec : copula_specs) {
      if (spec.tau) {
        const double tau = *spec.tau;
        if (!(tau > -1.0 && tau < 1.0))
          throw std::invalid_argument("config: tau=" + format_scalar(tau) +
                                      " outside (-1,1)");
        if (tau < 0.0 && (spec.family == CopulaFamily::Gumbel ||
                          spec.family == CopulaFamily::Clayton))
          throw std::invalid_argument(
              std::string("config: negative tau=") + format_scalar(tau) +
              " unattainable for " + family_name(spec.family) +
              " (tau range is [0,1))");
      }
    }
    if (method == Method::MonteCarlo && mc_samples < 1000)
      throw std::invalid_argument("config: mc_samples must be >= 1000");
    if (scan_points < 9)
      throw std::invalid_argument("config: scan_points must be >= 9");
    if (validation_samples < 2)
      throw std::invalid_argument("config: validation_samples must be >= 2");
  }
};

struct ScenarioResult {
  std::string cell_id;
  std::string m1_desc, m2_desc;
  CopulaSpec copula_spec;
  PoolingCurve curve;
  ThresholdReport thresholds;
  double empirical_tau = std::numeric_limits<double>::quiet_NaN();
  double analytic_tau = std::numeric_limits<double>::quiet_NaN();
  double wall_seconds = 0.0;
  std::string error;  // nonempty when the cell failed

  bool ok() const { return error.empty(); }
};

inline std::string cell_id_of(const MarginalDistribution& m1,
                              const MarginalDistribution& m2,
                              const CopulaSpec& spec) {
  return "m1=" + m1.describe() + "|m2=" + m2.describe() +
         "|copula=" + spec.describe();
}

inline int worker_count(std::size_t n_cells) {
  long configured = 0;
  if (const char* env = std::getenv("NVPOOL_THREADS")) {
    char* end = nullptr;
    configured = std::strtol(env, &end, 10);
    if (end == env) configured = 0;
  }
  if (configured <= 0)
    configured = static_cast<long>(std::thread::hardware_concurrency());
  if (configured <= 0) configured = 1;
  return static_cast<int>(
      std::min<long>(configured, static_cast<long>(std::max<std::size_t>(n_cells, 1))));
}

namespace detail {

inline ScenarioResult run_cell(const ScenarioConfig& cfg,
                               const MarginalDistribution& m1,
                               const MarginalDistribution& m2,
                               const CopulaSpec& spec) {
  ScenarioResult res;
  res.cell_id = cell_id_of(m1, m2, spec);
  res.m1_desc = m1.describe();
  res.m2_desc = m2.describe();
  res.copula_spec = spec;
  const auto started = std::chrono::steady_clock::now();
  try {
    const Copula copula = spec.resolve();
    const JointDemandModel model(m1, m2, copula);
    const std::uint64_t cell_seed = derive_seed(cfg.base_seed, res.cell_id);
    res.curve = pooling_curve(model, cfg.t_grid, cfg.method, cfg.mc_samples,
                              derive_seed(cell_seed, "curve"));
    res.thresholds = find_thresholds(model, cfg.scan_points, cfg.zero_tol);
    const auto pairs = model.sample_demands(cfg.validation_samples,
                                            derive_seed(cell_seed, "validation"));
    res.empirical_tau = empirical_kendall_tau(pairs);
    res.analytic_tau = copula.kendall_tau();
  } catch (const std::exception& ex) {
    res.error = ex.what();
  }
  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return res;
}

}  // namespace detail

/// Run every (marginal pair x copula spec) cell. Cells run concurrently
/// (NVPOOL_THREADS overrides the worker count); per-cell failures are
/// captured in the result, not thrown. Results come back sorted by cell id.
inline std::vector<ScenarioResult> run_grid(const ScenarioConfig& cfg) {
  cfg.validate();
  struct Cell {
    const MarginalDistribution* m1;
    const MarginalDistribution* m2;
    const CopulaSpec* spec;
  };
  std::vector<Cell> cells;
  for (const auto& pair : cfg.marginal_pairs)
    for (const auto& spec : cfg.copula_specs)
      cells.push_back({&pair.first, &pair.second, &spec});

  std::vector<ScenarioResult> results(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      results[i] =
          detail::run_cell(cfg, *cells[i].m1, *cells[i].m2, *cells[i].spec);
    }
  };
  const int n_workers = worker_count(cells.size());
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::sort(results.begin(), results.end(),
            [](const ScenarioResult& a, const ScenarioResult& b) {
              return a.cell_id < b.cell_id;
            });
  return results;
}

// ---------------------------------------------------------------------------
// Presets regenerating the study grids.

inline std::vector<std::string> preset_names() {
  return {"fig3", "fig4", "fig5", "fig6", "fig7",
          "fig8", "fig9", "prop2", "prop3"};
}

namespace detail {

inline std::vector<double> uniform_grid(int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = static_cast<double>(i + 1) / (n + 1);
  return g;
}

inline std::vector<MarginalDistribution> beta_trio() {
  return {MarginalDistribution::beta(2, 8), MarginalDistribution::beta(5, 5),
          MarginalDistribution::beta(8, 2)};
}

inline void all_ordered_pairs(ScenarioConfig& cfg) {
  for (const auto& a : beta_trio())
    for (const auto& b : beta_trio()) cfg.marginal_pairs.emplace_back(a, b);
}

inline void all_combinations(ScenarioConfig& cfg) {
  const auto trio = beta_trio();
  for (std::size_t i = 0; i < trio.size(); ++i)
    for (std::size_t j = i; j < trio.size(); ++j)
      cfg.marginal_pairs.emplace_back(trio[i], trio[j]);
}

inline CopulaSpec tau_spec(CopulaFamily family, double tau) {
  CopulaSpec s;
  s.family = family;
  s.tau = tau;
  return s;
}

inline CopulaSpec theta_spec(CopulaFamily family, double theta) {
  CopulaSpec s;
  s.family = family;
  s.theta = theta;
  return s;
}

}  // namespace detail

/// Named study configurations. fig3-fig9 regenerate the figure data grids;
/// prop2/prop3 exercise the elliptical-threshold and heavy-tail regimes.
inline ScenarioConfig preset(const std::string& name) {
  using detail::tau_spec;
  using detail::theta_spec;
  ScenarioConfig cfg;
  cfg.t_grid = detail::uniform_grid(99);
  cfg.output_path = "nvpool_" + name;
  if (name == "fig3") {
    cfg.marginal_pairs.emplace_back(MarginalDistribution::beta(2, 4),
                                    MarginalDistribution::beta(2, 4));
    // log-base-100 parameterization maps to theta = -ln(100)
    cfg.copula_specs.push_back(
        theta_spec(CopulaFamily::Frank, frank_theta_from_alpha(100.0)));
  } else if (name == "fig4" || name == "fig5" || name == "fig6") {
    detail::all_ordered_pairs(cfg);
    const CopulaFamily fam = name == "fig4"   ? CopulaFamily::Gumbel
                             : name == "fig5" ? CopulaFamily::Clayton
                                              : CopulaFamily::Frank;
    for (double tau : {0.0, 0.2, 0.5, 0.8})
      cfg.copula_specs.push_back(tau_spec(fam, tau));
  } else if (name == "fig7") {
    detail::all_combinations(cfg);
    cfg.copula_specs.push_back(tau_spec(CopulaFamily::Frank, 0.8));
  } else if (name == "fig8") {
    detail::all_ordered_pairs(cfg);
    for (double tau : {-0.2, -0.5, -0.8})
      cfg.copula_specs.push_back(tau_spec(CopulaFamily::Frank, tau));
  } else if (name == "fig9") {
    cfg.marginal_pairs.emplace_back(MarginalDistribution::beta(5, 5),
                                    MarginalDistribution::beta(5, 5));
    for (int i = 0; i < 17; ++i) {
      const double tau = 0.05 + i * (0.75 / 16.0);
      cfg.copula_specs.push_back(tau_spec(CopulaFamily::Gumbel, tau));
      cfg.copula_specs.push_back(tau_spec(CopulaFamily::Clayton, tau));
    }
    for (int i = -8; i <= 8; ++i)
      cfg.copula_specs.push_back(
          tau_spec(CopulaFamily::Frank, static_cast<double>(i) / 10.0));
    cfg.t_grid = {0.2, 0.5, 0.8};
    cfg.notes.push_back(
        "fig9 uses beta(5,5) marginals; identical normal marginals are a "
        "plausible alternative reading of this sweep and give the same "
        "qualitative shape");
  } else if (name == "prop2") {
    const auto n01 = MarginalDistribution::normal(0, 1);
    const auto n02 = MarginalDistribution::normal(0, 2);
    const auto n51 = MarginalDistribution::normal(5, 1);
    const auto n52 = MarginalDistribution::normal(5, 2);
    cfg.marginal_pairs.emplace_back(n01, n01);
    cfg.marginal_pairs.emplace_back(n01, n52);
    cfg.marginal_pairs.emplace_back(n52, n52);
    cfg.marginal_pairs.emplace_back(n02, n51);
    for (double rho : {-0.5, 0.0, 0.5})
      cfg.copula_specs.push_back(theta_spec(CopulaFamily::Gaussian, rho));
  } else if (name == "prop3") {
    for (double alpha : {0.8, 3.0})
      cfg.marginal_pairs.emplace_back(MarginalDistribution::pareto(alpha, 1),
                                      MarginalDistribution::pareto(alpha, 1));
    CopulaSpec indep;
    indep.family = CopulaFamily::Independence;
    cfg.copula_specs.push_back(indep);
    cfg.method = Method::MonteCarlo;
    cfg.mc_samples = 1000000;
    cfg.t_grid.clear();
    for (int i = 0; i <= 9; ++i) cfg.t_grid.push_back(0.5 + 0.05 * i);
  } else {
    std::string known;
    for (const auto& n : preset_names()) known += " " + n;
    throw std::invalid_argument("unknown preset '" + name +
                                "'; available:" + known);
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Qualitative verdicts over a set of results.

struct CheckVerdict {
  std::string name;
  std::optional<bool> pass;  // nullopt when not evaluable
  std::string details;
};

namespace detail {

struct CellKey {
  std::string m1, m2;
  CopulaFamily family;
  double tau;  // rounded target tau; NaN mapped to a concrete sentinel
  bool operator<(const CellKey& o) const {
    if (m1 != o.m1) return m1 < o.m1;
    if (m2 != o.m2) return m2 < o.m2;
    if (family != o.family) return family < o.family;
    return tau < o.tau;
  }
};

inline double cell_tau(const ScenarioResult& r) {
  if (r.copula_spec.tau) return *r.copula_spec.tau;
  if (!std::isfinite(r.analytic_tau)) return -999.0;
  return std::round(r.analytic_tau * 1e6) / 1e6;
}

inline std::optional<double> unique_root(const ScenarioResult* r) {
  if (!r || !r->ok() || !r->thresholds.unique) return std::nullopt;
  return r->thresholds.roots.front();
}

inline double max_abs_effect_pct(const ScenarioResult& r) {
  double m = 0.0;
  for (double v : r.curve.effect_pct)
    if (std::isfinite(v)) m = std::max(m, std::fabs(v));
  return m;
}

}  // namespace detail

/// Compare thresholds and effect magnitudes across the cells present:
///  (a) skewness ordering of thresholds per (copula, tau),
///  (b) Gumbel thresholds decreasing in tau, (c) Clayton increasing,
///  (d) effect magnitude shrinking as tau grows, (e) Frank tau=0.8
///  non-uniqueness. Cells that are missing or failed make a verdict
///  "not evaluable" rather than guessed.
inline std::vector<CheckVerdict> qualitative_checks(
    const std::vector<ScenarioResult>& results) {
  using detail::CellKey;
  std::map<CellKey, const ScenarioResult*> index;
  std::map<std::pair<std::string, std::string>, bool> pairs_seen;
  std::vector<double> tau_levels;
  for (const auto& r : results) {
    index[CellKey{r.m1_desc, r.m2_desc, r.copula_spec.family,
                  detail::cell_tau(r)}] = &r;
    pairs_seen[{r.m1_desc, r.m2_desc}] = true;
  }
  auto find_cell = [&](const std::string& m1, const std::string& m2,
                       CopulaFamily fam, double tau) -> const ScenarioResult* {
    const auto it = index.find(CellKey{m1, m2, fam, tau});
    return it == index.end() ? nullptr : it->second;
  };

  const std::string b28 = MarginalDistribution::beta(2, 8).describe();
  const std::string b55 = MarginalDistribution::beta(5, 5).describe();
  const std::string b82 = MarginalDistribution::beta(8, 2).describe();

  std::vector<CheckVerdict> out;

  // (a) skewness ordering: t0(b82^2) < t0(b55^2) < t0(b28^2)
  for (const CopulaFamily fam :
       {CopulaFamily::Gumbel, CopulaFamily::Clayton, CopulaFamily::Frank}) {
    for (const double tau : {0.2, 0.5, 0.8}) {
      const auto* r82 = find_cell(b82, b82, fam, tau);
      const auto* r55 = find_cell(b55, b55, fam, tau);
      const auto* r28 = find_cell(b28, b28, fam, tau);
      if (!r82 && !r55 && !r28) continue;
      CheckVerdict v;
      v.name = std::string("skewness_ordering[") + family_name(fam) +
               ",tau=" + format_scalar(tau) + "]";
      const auto t82 = detail::unique_root(r82);
      const auto t55 = detail::unique_root(r55);
      const auto t28 = detail::unique_root(r28);
      if (!t82 || !t55 || !t28) {
        v.details = "not evaluable: needs unique thresholds for all three "
                    "identical-pair cells";
      } else {
        v.pass = *t82 < *t55 && *t55 < *t28;
        v.details = "t0(beta(8,2)^2)=" + format_scalar(*t82) +
                    " t0(beta(5,5)^2)=" + format_scalar(*t55) +
                    " t0(beta(2,8)^2)=" + format_scalar(*t28);
      }
      out.push_back(std::move(v));
    }
  }

  // (b)/(c) threshold monotone in tau, direction per family
  for (const auto& [pair_key, _] : pairs_seen) {
    (void)_;
    for (const CopulaFamily fam :
         {CopulaFamily::Gumbel, CopulaFamily::Clayton}) {
      std::vector<std::pair<double, std::optional<double>>> seq;
      for (const double tau : {0.2, 0.5, 0.8}) {
        if (const auto* r = find_cell(pair_key.first, pair_key.second, fam, tau))
          seq.emplace_back(tau, detail::unique_root(r));
      }
      if (seq.size() < 2) continue;
      CheckVerdict v;
      const bool increasing = fam == CopulaFamily::Clayton;
      v.name = std::string(family_name(fam)) +
               (increasing ? "_threshold_increasing[" : "_threshold_decreasing[") +
               pair_key.first + "," + pair_key.second + "]";
      bool evaluable = true, pass = true;
      std::string detail_str;
      for (std::size_t i = 0; i < seq.size(); ++i) {
        if (!seq[i].second) {
          evaluable = false;
          break;
        }
        if (i > 0) {
          const bool step_ok = increasing
                                   ? *seq[i].second > *seq[i - 1].second
                                   : *seq[i].second < *seq[i - 1].second;
          pass = pass && step_ok;
        }
        detail_str += " t0(tau=" + format_scalar(seq[i].first) +
                      ")=" + format_scalar(*seq[i].second);
      }
      if (!evaluable) {
        v.details = "not evaluable: non-unique or failed threshold cell";
      } else {
        v.pass = pass;
        v.details = detail_str;
      }
      out.push_back(std::move(v));
    }
  }

  // (d) |effect| shrinking as tau -> 1
  for (const auto& [pair_key, _] : pairs_seen) {
    (void)_;
    for (const CopulaFamily fam :
         {CopulaFamily::Gumbel, CopulaFamily::Clayton, CopulaFamily::Frank}) {
      const auto* lo = find_cell(pair_key.first, pair_key.second, fam, 0.2);
      const auto* hi = find_cell(pair_key.first, pair_key.second, fam, 0.8);
      if (!lo && !hi) continue;
      CheckVerdict v;
      v.name = std::string("effect_shrinks_with_tau[") + family_name(fam) +
               "," + pair_key.first + "," + pair_key.second + "]";
      if (!lo || !hi || !lo->ok() || !hi->ok()) {
        v.details = "not evaluable: needs tau=0.2 and tau=0.8 cells";
      } else {
        const double m_lo = detail::max_abs_effect_pct(*lo);
        const double m_hi = detail::max_abs_effect_pct(*hi);
        v.pass = m_hi < m_lo;
        v.details = "max|effect_pct|(tau=0.2)=" + format_scalar(m_lo) +
                    " max|effect_pct|(tau=0.8)=" + format_scalar(m_hi);
      }
      out.push_back(std::move(v));
    }
  }

  // (e) Frank tau=0.8 threshold non-uniqueness
  {
    std::vector<const ScenarioResult*> frank08;
    for (const auto& r : results)
      if (r.copula_spec.family == CopulaFamily::Frank && r.copula_spec.tau &&
          std::fabs(*r.copula_spec.tau - 0.8) < 1e-12)
        frank08.push_back(&r);
    if (!frank08.empty()) {
      CheckVerdict v;
      v.name = "frank_tau08_nonunique";
      int n_multi = 0, n_ok = 0;
      for (const auto* r : frank08)
        if (r->ok()) {
          ++n_ok;
          if (r->thresholds.roots.size() >= 2) ++n_multi;
        }
      if (n_ok == 0) {
        v.details = "not evaluable: all Frank tau=0.8 cells failed";
      } else {
        v.pass = n_multi >= 1;
        v.details = format_scalar(n_multi) + " of " + format_scalar(n_ok) +
                    " cells report multiple roots";
      }
      out.push_back(std::move(v));
    }
  }

  return out;
}

// ---------------------------------------------------------------------------
// JSON round trip and output writing.

inline json scenario_config_to_json(const ScenarioConfig& cfg) {
  json j;
  j["marginal_pairs"] = json::array();
  for (const auto& [a, b] : cfg.marginal_pairs)
    j["marginal_pairs"].push_back({marginal_to_json(a), marginal_to_json(b)});
  j["copula_specs"] = json::array();
  for (const auto& s : cfg.copula_specs)
    j["copula_specs"].push_back(copula_spec_to_json(s));
  j["t_grid"] = cfg.t_grid;
  j["method"] = method_name(cfg.method);
  j["mc_samples"] = cfg.mc_samples;
  j["base_seed"] = cfg.base_seed;
  j["output_path"] = cfg.output_path;
  j["scan_points"] = cfg.scan_points;
  j["zero_tol"] = cfg.zero_tol;
  j["validation_samples"] = cfg.validation_samples;
  j["notes"] = cfg.notes;
  return j;
}

inline ScenarioConfig scenario_config_from_json(const json& j) {
  ScenarioConfig cfg;
  if (!j.is_object()) throw std::invalid_argument("config must be an object");
  for (const auto& pair : j.value("marginal_pairs", json::array())) {
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument(
          "config: each marginal pair must be a 2-element array");
    cfg.marginal_pairs.emplace_back(marginal_from_json(pair[0]),
                                    marginal_from_json(pair[1]));
  }
  for (const auto& s : j.value("copula_specs", json::array()))
    cfg.copula_specs.push_back(copula_spec_from_json(s));
  cfg.t_grid = j.value("t_grid", std::vector<double>{});
  const std::string method = j.value("method", "quadrature");
  if (method == "quadrature")
    cfg.method = Method::Quadrature;
  else if (method == "monte_carlo")
    cfg.method = Method::MonteCarlo;
  else
    throw std::invalid_argument("config: unknown method '" + method + "'");
  cfg.mc_samples = j.value("mc_samples", cfg.mc_samples);
  cfg.base_seed = j.value("base_seed", cfg.base_seed);
  cfg.output_path = j.value("output_path", cfg.output_path);
  cfg.scan_points = j.value("scan_points", cfg.scan_points);
  cfg.zero_tol = j.value("zero_tol", cfg.zero_tol);
  cfg.validation_samples = j.value("validation_samples", cfg.validation_samples);
  cfg.notes = j.value("notes", cfg.notes);
  cfg.validate();
  return cfg;
}

inline json checks_to_json(const std::vector<CheckVerdict>& checks) {
  json arr = json::array();
  for (const auto& c : checks) {
    json j;
    j["name"] = c.name;
    j["evaluable"] = c.pass.has_value();
    j["pass"] = c.pass ? json(*c.pass) : json(nullptr);
    j["details"] = c.details;
    arr.push_back(j);
  }
  return json{{"checks", arr}};
}

inline std::string sanitize_filename(const std::string& s) {
  std::string out;
  for (char ch : s)
    out += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' ||
            ch == '-')
               ? ch
               : '_';
  return out;
}

/// Write one CSV per cell plus manifest.json (config echo, version,
/// per-cell status and timing) and checks.json (qualitative verdicts).
inline void write_outputs(const ScenarioConfig& cfg,
                          const std::vector<ScenarioResult>& results,
                          const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  json cells = json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    std::string filename;
    if (r.ok()) {
      char idx[16];
      std::snprintf(idx, sizeof(idx), "%03zu", i);
      filename = std::string("cell_") + idx + "_" +
                 sanitize_filename(r.cell_id) + ".csv";
      std::ofstream os(out_dir / filename, std::ios::binary);
      write_csv(r.curve, os);
    }
    json cj;
    cj["id"] = r.cell_id;
    cj["status"] = r.ok() ? "ok" : ("error: " + r.error);
    cj["file"] = filename;
    cj["wall_seconds"] = r.wall_seconds;
    if (r.ok()) {
      cj["empirical_tau"] = r.empirical_tau;
      cj["analytic_tau"] = r.analytic_tau;
      cj["thresholds"] = threshold_report_to_json(r.thresholds);
    }
    cells.push_back(cj);
  }
  json manifest;
  manifest["generator"] = std::string("nvpool ") + version;
  manifest["config"] = scenario_config_to_json(cfg);
  manifest["cells"] = cells;
  manifest["notes"] = cfg.notes;
  {
    std::ofstream os(out_dir / "manifest.json", std::ios::binary);
    os << manifest.dump(2) << '\n';
  }
  {
    std::ofstream os(out_dir / "checks.json", std::ios::binary);
    os << checks_to_json(qualitative_checks(results)).dump(2) << '\n';
  }
}

}  // namespace nvpool
