#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nvpool/config_json.hpp"
#include "nvpool/experiments.hpp"
#include "nvpool/format.hpp"
#include "nvpool/pooling.hpp"
#include "nvpool/version.hpp"

namespace nvpool {

namespace detail {

inline std::vector<double> parse_grid_arg(const std::string& arg) {
  const auto c1 = arg.find(':');
  const auto c2 = arg.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw std::invalid_argument("grid must be lo:hi:n, got '" + arg + "'");
  const double lo = parse_double(arg.substr(0, c1));
  const double hi = parse_double(arg.substr(c1 + 1, c2 - c1 - 1));
  const long n = std::strtol(arg.c_str() + c2 + 1, nullptr, 10);
  if (!(lo > 0.0 && hi < 1.0 && lo <= hi) || n < 1)
    throw std::invalid_argument("grid lo:hi:n needs 0 < lo <= hi < 1, n >= 1");
  std::vector<double> g;
  if (n == 1) {
    g.push_back(lo);
  } else {
    for (long i = 0; i < n; ++i)
      g.push_back(lo + (hi - lo) * static_cast<double>(i) /
                           static_cast<double>(n - 1));
  }
  return g;
}

}  // namespace detail

/// Command dispatch behind the `nvpool` binary; factored out so tests can
/// drive the full surface in-process. Exit codes: 0 ok, 1 usage error,
/// 2 numeric failure.
inline int run_cli(std::vector<std::string> args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"copula-driven newsvendor inventory pooling toolkit"};
  app.set_version_flag("--version", std::string("nvpool ") + version);
  app.require_subcommand(1);

  std::string copula_json, family, model_json, grid_arg, out_path, config_path,
      preset_name;
  double tau_target = 0.0, t_level = 0.5, zero_tol = 1e-5;
  std::int64_t mc_samples = 0;
  std::uint64_t seed = 0;
  int scan_points = 199;

  auto* cmd_tau = app.add_subcommand(
      "tau", "print Kendall's tau of a copula spec");
  cmd_tau->add_option("--copula", copula_json,
                      "copula JSON, e.g. '{\"family\":\"gumbel\",\"theta\":2}'")
      ->required();

  auto* cmd_cal = app.add_subcommand(
      "calibrate", "solve the copula parameter for a target Kendall's tau");
  cmd_cal->add_option("--family", family, "copula family name")->required();
  cmd_cal->add_option("--tau", tau_target, "target Kendall's tau")->required();

  auto* cmd_quant = app.add_subcommand(
      "quantile", "dedicated vs pooled stock at one margin ratio");
  cmd_quant->add_option("--model", model_json, "joint demand model JSON")
      ->required();
  cmd_quant->add_option("--t", t_level, "margin ratio in (0,1)")->required();
  cmd_quant->add_option("--mc", mc_samples,
                        "Monte Carlo sample count (quadrature if omitted)");
  cmd_quant->add_option("--seed", seed, "Monte Carlo seed");

  auto* cmd_curve = app.add_subcommand(
      "curve", "pooling-effect curve over a margin-ratio grid, as CSV");
  cmd_curve->add_option("--model", model_json, "joint demand model JSON")
      ->required();
  cmd_curve->add_option("--grid", grid_arg, "margin-ratio grid lo:hi:n")
      ->required();
  cmd_curve->add_option("--out", out_path, "output CSV path")->required();
  cmd_curve->add_option("--mc", mc_samples,
                        "Monte Carlo sample count (quadrature if omitted)");
  cmd_curve->add_option("--seed", seed, "Monte Carlo seed");

  auto* cmd_thr = app.add_subcommand(
      "thresholds", "sign-change report of the pooling effect, as JSON");
  cmd_thr->add_option("--model", model_json, "joint demand model JSON")
      ->required();
  cmd_thr->add_option("--scan", scan_points, "interior scan points")
      ->check(CLI::PositiveNumber);
  cmd_thr->add_option("--zero-tol", zero_tol,
                      "magnitude below which the effect counts as zero");

  auto* cmd_run = app.add_subcommand(
      "run", "execute a scenario grid from a config file or preset");
  auto* opt_config =
      cmd_run->add_option("--config", config_path, "scenario config JSON file");
  auto* opt_preset =
      cmd_run->add_option("--preset", preset_name, "named preset");
  cmd_run->add_option("--out", out_path,
                      "output directory (default: config output_path)");
  opt_config->excludes(opt_preset);

  auto* cmd_presets =
      app.add_subcommand("preset-list", "list the named presets");

  std::vector<const char*> argv;
  argv.push_back("nvpool");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (cmd_tau->parsed()) {
      const auto spec = copula_spec_from_json(json::parse(copula_json));
      out << "tau=" << format_scalar(spec.resolve().kendall_tau()) << '\n';
    } else if (cmd_cal->parsed()) {
      const Copula c =
          calibrate_parameter(copula_family_from_name(family), tau_target);
      if (c.has_theta())
        out << "theta=" << format_scalar(c.theta()) << '\n';
      else
        out << "family=" << family_name(c.family()) << '\n';
    } else if (cmd_quant->parsed()) {
      const auto model = model_from_json_text(model_json);
      const double dedicated = dedicated_total(model, t_level);
      const SumQuantileEstimate est =
          mc_samples > 0 ? model.sum_quantile_mc(t_level, mc_samples, seed)
                         : model.sum_quantile(t_level);
      out << "dedicated=" << format_scalar(dedicated) << '\n';
      out << "pooled=" << format_scalar(est.point) << '\n';
      out << "effect=" << format_scalar(est.point - dedicated) << '\n';
      if (est.method == Method::MonteCarlo)
        out << "ci_halfwidth=" << format_scalar(est.ci_halfwidth) << '\n';
    } else if (cmd_curve->parsed()) {
      const auto model = model_from_json_text(model_json);
      const auto grid = detail::parse_grid_arg(grid_arg);
      const Method method =
          mc_samples > 0 ? Method::MonteCarlo : Method::Quadrature;
      const auto curve = pooling_curve(model, grid, method,
                                       mc_samples > 0 ? mc_samples : 100000,
                                       seed);
      std::ofstream os(out_path, std::ios::binary);
      if (!os) throw std::invalid_argument("cannot open '" + out_path + "'");
      write_csv(curve, os);
      out << "wrote " << out_path << '\n';
      for (std::size_t i = 0; i < curve.point_errors.size(); ++i)
        if (!curve.point_errors[i].empty())
          err << "point t=" << format_scalar(curve.t_grid[i])
              << " failed: " << curve.point_errors[i] << '\n';
    } else if (cmd_thr->parsed()) {
      const auto model = model_from_json_text(model_json);
      const auto rep = find_thresholds(model, scan_points, zero_tol);
      out << threshold_report_to_json(rep).dump() << '\n';
    } else if (cmd_run->parsed()) {
      ScenarioConfig cfg;
      if (!preset_name.empty()) {
        cfg = preset(preset_name);
      } else if (!config_path.empty()) {
        std::ifstream is(config_path, std::ios::binary);
        if (!is)
          throw std::invalid_argument("cannot read config '" + config_path +
                                      "'");
        json j;
        try {
          j = json::parse(is);
        } catch (const json::parse_error& e) {
          throw std::invalid_argument(std::string("config JSON parse error: ") +
                                      e.what());
        }
        cfg = scenario_config_from_json(j);
      } else {
        throw std::invalid_argument("run needs --config or --preset");
      }
      if (!out_path.empty()) cfg.output_path = out_path;
      if (cfg.output_path.empty())
        throw std::invalid_argument("no output directory (--out)");
      const auto results = run_grid(cfg);
      write_outputs(cfg, results, cfg.output_path);
      std::size_t ok = 0;
      for (const auto& r : results) {
        if (r.ok())
          ++ok;
        else
          err << "cell " << r.cell_id << " failed: " << r.error << '\n';
        out << (r.ok() ? "ok   " : "FAIL ") << r.cell_id << '\n';
      }
      out << ok << "/" << results.size() << " cells ok; outputs in "
          << cfg.output_path << '\n';
    } else if (cmd_presets->parsed()) {
      for (const auto& name : preset_names()) {
        const auto cfg = preset(name);
        out << name << ": " << cfg.marginal_pairs.size() << " pair(s) x "
            << cfg.copula_specs.size() << " copula spec(s), "
            << cfg.t_grid.size() << " grid point(s), "
            << method_name(cfg.method) << '\n';
      }
    }
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace nvpool
