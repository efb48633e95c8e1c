// zeno — convergence experiments for intercepted Markovian evolutions.
//
//   zeno run --scenario <file|builtin> [--ns 4,8,...] [--norm proxy|rank1]
//            [--out r.csv] [--json r.json] [--plot r.svg] [--seed N]
//   zeno check --suite chernoff|lemma4|projectors|telescoping|all
//   zeno spectrum --scenario <file|builtin>
//
// Exit codes: 0 success, 1 failed check, 2 validation failure,
// 3 numerical non-convergence.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zeno/harness.hpp"
#include "zeno/spectral.hpp"

namespace {

zeno::ScenarioConfig resolve_scenario(const std::string& ref) {
  if (std::filesystem::exists(ref)) return zeno::load_scenario(ref);
  if (zeno::is_builtin_scenario(ref)) return zeno::builtin_scenario(ref);
  std::string names;
  for (const auto& n : zeno::builtin_scenario_names()) names += " " + n;
  throw zeno::ValidationError("scenario '" + ref +
                              "' is neither a file nor a builtin; builtins:" + names);
}

std::vector<long> parse_ns(const std::string& text) {
  std::vector<long> ns;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const long v = std::stol(item, &used);
    if (used != item.size()) throw zeno::ValidationError("--ns: bad entry '" + item + "'");
    ns.push_back(v);
  }
  if (ns.empty()) throw zeno::ValidationError("--ns: empty list");
  return ns;
}

int cmd_run(const std::string& scenario_ref, const std::string& ns_arg,
            const std::string& norm_arg, std::int64_t seed_arg, bool seed_set,
            const std::string& out_csv, const std::string& out_json,
            const std::string& out_svg) {
  zeno::ScenarioConfig cfg = resolve_scenario(scenario_ref);
  if (!ns_arg.empty()) cfg.sweep = parse_ns(ns_arg);
  if (!norm_arg.empty()) cfg.norm_kind = zeno::norm_kind_from_name(norm_arg);
  if (seed_set) cfg.seed = static_cast<std::uint64_t>(seed_arg);

  const zeno::ExperimentResult result = zeno::run_sweep(cfg);

  std::printf("scenario %s (dim %d, %s)\n", result.scenario.c_str(), cfg.dim,
              cfg.time_dependent() ? "time-dependent" : "static");
  std::printf("%10s  %-14s %s\n", "n", "error", "norm");
  for (const auto& rec : result.records)
    std::printf("%10ld  %-14.6e %s\n", rec.n, rec.error,
                zeno::norm_kind_name(rec.norm_kind));
  std::printf("log-log slope %.4f, final error %.6e, wall time %.2fs\n",
              result.loglog_slope, result.final_error, result.meta.wall_time_s);

  if (!out_csv.empty()) zeno::emit(result, zeno::EmitFormat::csv, out_csv);
  if (!out_json.empty()) zeno::emit(result, zeno::EmitFormat::json, out_json);
  if (!out_svg.empty()) zeno::emit(result, zeno::EmitFormat::svg, out_svg);
  return 0;
}

int cmd_check(const std::string& suite) {
  std::vector<std::string> suites;
  if (suite == "all") {
    suites = zeno::check_suite_names();
  } else {
    suites.push_back(suite);
  }
  bool all_pass = true;
  for (const auto& name : suites) {
    const zeno::CheckReport report = zeno::run_check_suite(name);
    for (const auto& line : report.lines) {
      std::printf("[%s] %s: %s (%s)\n", line.pass ? "PASS" : "FAIL",
                  report.suite.c_str(), line.name.c_str(), line.detail.c_str());
      all_pass = all_pass && line.pass;
    }
  }
  std::printf("%s\n", all_pass ? "all checks passed" : "CHECK FAILURES");
  return all_pass ? 0 : 1;
}

int cmd_spectrum(const std::string& scenario_ref) {
  const zeno::ScenarioConfig cfg = resolve_scenario(scenario_ref);
  const zeno::SpectralReport rep = zeno::spectrum_report(cfg.interception(), cfg.gap_min);
  std::printf("scenario %s: spectrum of M (dim %d, side %d)\n", cfg.name.c_str(), cfg.dim,
              cfg.dim * cfg.dim);
  for (const auto& ev : rep.eigenvalues)
    std::printf("  %+.12f %+.12fi   |.| = %.12f\n", ev.real(), ev.imag(), std::abs(ev));
  std::printf("delta = %.12f, peripheral multiplicity = %d, gap_min = %g, gap_ok = %s\n",
              rep.delta, rep.peripheral_multiplicity, rep.gap_min,
              rep.gap_ok ? "yes" : "no");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum Zeno convergence experiments"};
  app.require_subcommand(1);

  std::string scenario_ref, ns_arg, norm_arg, out_csv, out_json, out_svg, suite;
  std::int64_t seed_arg = 0;

  CLI::App* run = app.add_subcommand("run", "run a convergence sweep");
  run->add_option("--scenario", scenario_ref, "scenario file or builtin name")->required();
  run->add_option("--ns", ns_arg, "comma-separated interception counts");
  run->add_option("--norm", norm_arg, "proxy|rank1");
  CLI::Option* seed_opt = run->add_option("--seed", seed_arg, "RNG seed");
  run->add_option("--out", out_csv, "CSV output path");
  run->add_option("--json", out_json, "JSON output path");
  run->add_option("--plot", out_svg, "SVG output path");

  CLI::App* check = app.add_subcommand("check", "run an inequality check suite");
  check->add_option("--suite", suite, "chernoff|lemma4|projectors|telescoping|all")->required();

  CLI::App* spectrum = app.add_subcommand("spectrum", "print the spectral report of M");
  spectrum->add_option("--scenario", scenario_ref, "scenario file or builtin name")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(scenario_ref, ns_arg, norm_arg, seed_arg, seed_opt->count() > 0,
                     out_csv, out_json, out_svg);
    if (check->parsed()) return cmd_check(suite);
    if (spectrum->parsed()) return cmd_spectrum(scenario_ref);
  } catch (const zeno::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const zeno::ConvergenceError& e) {
    std::cerr << "numerical non-convergence: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
