#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "zeno/lindblad.hpp"
#include "zeno/superop.hpp"
#include "zeno/timedep.hpp"
#include "zeno/zeno_static.hpp"

namespace zeno {

/// Experiment description: the interception M (Kraus or explicit matrix), a
/// generator or generator path, a time horizon and a sweep over interception
/// counts.
struct ScenarioConfig {
  std::string name;
  int dim = 0;
  std::variant<std::monostate, KrausSet, SuperOp> m_spec;
  std::variant<std::monostate, LindbladGenerator, GeneratorPath> generator;
  double time = 1.0;  // t (static) or τ (time-dependent, equals path horizon)
  std::vector<long> sweep;
  NormKind norm_kind = NormKind::proxy;
  std::uint64_t seed = 0;
  std::optional<Matrix> initial_state;  // for time-dependent sweeps; default 1/d
  double gap_min = 0.05;

  bool time_dependent() const { return std::holds_alternative<GeneratorPath>(generator); }
  SuperOp interception() const;
  Matrix initial_state_or_default() const;
};

struct ExperimentResult {
  std::string scenario;
  std::vector<ConvergenceRecord> records;
  double loglog_slope = 0.0;  // least squares on (log n, log error)
  double final_error = 0.0;
  struct Meta {
    std::uint64_t seed = 0;
    double gap_min = 0.05;
    double limit_tol = 1e-10;
    double wall_time_s = 0.0;  // informational; never serialized
  } meta;
};

/// Parse and fully validate a scenario file. Parse errors carry the byte
/// position, invariant violations name the offending field.
ScenarioConfig load_scenario(const std::filesystem::path& file);
ScenarioConfig scenario_from_json_text(const std::string& text);

/// Run the configured sweep. Static scenarios measure
/// ‖(M e^{tL/n})ⁿ - e^{tPLP}P‖; time-dependent scenarios measure
/// ‖Tₙ(ρ₀) - ρ̃(τ)‖₁ against the projected master equation's solution.
/// Deterministic for a fixed config and seed.
ExperimentResult run_sweep(const ScenarioConfig& cfg);

enum class EmitFormat { csv, json, svg };

/// CSV columns n,error,norm_kind; JSON mirrors ExperimentResult (minus wall
/// time, which would break byte-determinism); SVG is a log-log scatter with
/// the fitted slope annotated. Byte-identical for identical results.
void emit(const ExperimentResult& r, EmitFormat format, const std::filesystem::path& out);
std::string emit_csv(const ExperimentResult& r);
std::string emit_json(const ExperimentResult& r);
std::string emit_svg(const ExperimentResult& r);

std::vector<ConvergenceRecord> parse_records_csv(const std::string& text);
std::vector<ConvergenceRecord> parse_records_json(const std::string& text);

/// Built-in example systems: classic_zeno, damped_rabi, timedep_drive,
/// timedep_damped, random_gapped, identity_m.
std::vector<std::string> builtin_scenario_names();
bool is_builtin_scenario(const std::string& name);
ScenarioConfig builtin_scenario(const std::string& name);
std::vector<ScenarioConfig> builtin_scenarios();
/// The JSON text a builtin corresponds to (same schema as load_scenario).
std::string builtin_scenario_text(const std::string& name);

// ── Check suites ─────────────────────────────────────────────────────────
// Shared by `zeno check` and the acceptance tests: chernoff, lemma4,
// projectors, telescoping.

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CheckReport {
  std::string suite;
  std::vector<CheckLine> lines;
  bool all_pass() const;
};

CheckReport run_check_suite(const std::string& suite);
std::vector<std::string> check_suite_names();

}  // namespace zeno
