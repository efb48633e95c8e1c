#include "zeno/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <random>
#include <sstream>

#include "zeno/random.hpp"
#include "zeno/serialize.hpp"
#include "zeno/spectral.hpp"

namespace zeno {

using nlohmann::json;

SuperOp ScenarioConfig::interception() const {
  if (std::holds_alternative<std::monostate>(m_spec))
    throw ValidationError("m: interception not set");
  if (std::holds_alternative<KrausSet>(m_spec))
    return kraus_to_superop(std::get<KrausSet>(m_spec));
  const SuperOp& m = std::get<SuperOp>(m_spec);
  if (m.dim() != dim) throw ValidationError("m: superoperator dimension does not match dim");
  return m;
}

Matrix ScenarioConfig::initial_state_or_default() const {
  if (initial_state) return *initial_state;
  return Matrix::Identity(dim, dim) / static_cast<double>(dim);
}

namespace {

std::vector<long> default_sweep() { return {4, 8, 16, 32, 64, 128, 256, 512, 1024}; }

void validate_sweep(const std::vector<long>& sweep) {
  if (sweep.empty()) throw ValidationError("sweep: must be non-empty");
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    if (sweep[i] < 1) throw ValidationError("sweep: entries must be >= 1");
    if (i > 0 && sweep[i] <= sweep[i - 1])
      throw ValidationError("sweep: entries must be strictly increasing");
  }
}

ScenarioConfig scenario_from_json(const json& j) {
  ScenarioConfig cfg;
  if (!j.contains("name") || !j["name"].is_string())
    throw ValidationError("name: required string field");
  cfg.name = j["name"].get<std::string>();
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<int>() < 1)
    throw ValidationError("dim: required positive integer");
  cfg.dim = j["dim"].get<int>();

  if (!j.contains("m")) throw ValidationError("m: required field");
  const json& jm = j["m"];
  if (jm.contains("kraus")) {
    cfg.m_spec = kraus_from_json(jm, cfg.dim);
  } else if (jm.contains("superop")) {
    const Matrix rep = matrix_from_json(jm["superop"], "m.superop");
    if (rep.rows() != static_cast<Eigen::Index>(cfg.dim) * cfg.dim)
      throw ValidationError("m.superop: side must equal dim^2");
    cfg.m_spec = SuperOp(rep);
  } else {
    throw ValidationError("m: needs either 'kraus' or 'superop'");
  }

  if (!j.contains("generator")) throw ValidationError("generator: required field");
  const json& jg = j["generator"];
  if (jg.contains("path")) {
    GeneratorPath path = path_from_json(jg["path"]);
    if (path.dim() != cfg.dim) throw ValidationError("generator.path: dim mismatch");
    cfg.time = path.horizon();
    if (j.contains("t") && std::abs(j["t"].get<double>() - path.horizon()) > 1e-12)
      throw ValidationError("t: must equal the path horizon for time-dependent scenarios");
    cfg.generator = std::move(path);
  } else {
    cfg.generator = generator_from_json(jg, cfg.dim);
    if (!j.contains("t")) throw ValidationError("t: required for static scenarios");
    cfg.time = j["t"].get<double>();
    if (cfg.time < 0) throw ValidationError("t: must be >= 0");
  }

  if (j.contains("sweep")) {
    cfg.sweep = j["sweep"].get<std::vector<long>>();
  } else {
    cfg.sweep = default_sweep();
  }
  validate_sweep(cfg.sweep);

  if (j.contains("norm")) cfg.norm_kind = norm_kind_from_name(j["norm"].get<std::string>());
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("gap_min")) {
    cfg.gap_min = j["gap_min"].get<double>();
    if (cfg.gap_min <= 0 || cfg.gap_min >= 1)
      throw ValidationError("gap_min: must be in (0,1)");
  }
  if (j.contains("initial_state")) {
    Matrix rho = matrix_from_json(j["initial_state"], "initial_state");
    if (rho.rows() != cfg.dim) throw ValidationError("initial_state: shape mismatch");
    try {
      DensityMatrix check(rho);
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("initial_state: ") + e.what());
    }
    cfg.initial_state = std::move(rho);
  }
  return cfg;
}

json scenario_to_json(const ScenarioConfig& cfg) {
  json j;
  j["name"] = cfg.name;
  j["dim"] = cfg.dim;
  if (std::holds_alternative<KrausSet>(cfg.m_spec)) {
    j["m"] = kraus_to_json(std::get<KrausSet>(cfg.m_spec));
  } else {
    j["m"] = json{{"superop", matrix_to_json(std::get<SuperOp>(cfg.m_spec).rep())}};
  }
  if (cfg.time_dependent()) {
    j["generator"] = json{{"path", path_to_json(std::get<GeneratorPath>(cfg.generator))}};
  } else {
    j["generator"] = generator_to_json(std::get<LindbladGenerator>(cfg.generator));
    j["t"] = cfg.time;
  }
  j["sweep"] = cfg.sweep;
  j["norm"] = norm_kind_name(cfg.norm_kind);
  j["seed"] = cfg.seed;
  j["gap_min"] = cfg.gap_min;
  if (cfg.initial_state) j["initial_state"] = matrix_to_json(*cfg.initial_state);
  return j;
}

}  // namespace

ScenarioConfig scenario_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("scenario parse error: ") + e.what());
  }
  return scenario_from_json(j);
}

ScenarioConfig load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ValidationError("cannot open scenario file: " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return scenario_from_json_text(buf.str());
}

namespace {

double loglog_slope(const std::vector<ConvergenceRecord>& records) {
  // Least squares on (log n, log error) over the strictly positive errors.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (const auto& r : records) {
    if (r.error <= 0) continue;
    const double x = std::log(static_cast<double>(r.n));
    const double y = std::log(r.error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) return 0.0;
  const double denom = count * sxx - sx * sx;
  return denom == 0 ? 0.0 : (count * sxy - sx * sy) / denom;
}

}  // namespace

ExperimentResult run_sweep(const ScenarioConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  validate_sweep(cfg.sweep);

  ExperimentResult result;
  result.scenario = cfg.name;
  result.meta.seed = cfg.seed;
  result.meta.gap_min = cfg.gap_min;
  result.meta.limit_tol = 1e-10;

  const SuperOp m = cfg.interception();
  if (!cfg.time_dependent()) {
    const SuperOp l = std::get<LindbladGenerator>(cfg.generator).to_superop();
    const ZenoStaticScenario scenario(m, l, cfg.time, cfg.gap_min);
    result.records = convergence_curve(scenario, cfg.sweep, cfg.norm_kind, cfg.seed);
  } else {
    const GeneratorPath& path = std::get<GeneratorPath>(cfg.generator);
    const SpectralReport rep = spectrum_report(m, cfg.gap_min);
    if (!rep.gap_ok)
      throw ValidationError("scenario '" + cfg.name +
                            "': M fails the spectral gap condition (delta = " +
                            std::to_string(rep.delta) + ", gap_min = " +
                            std::to_string(cfg.gap_min) + ")");
    const SuperOp p = riesz_contour(m, ContourSpec::around_one(rep.delta)).proj;
    const SuperOp limit = zeno_limit_timedep(p, path, result.meta.limit_tol);
    const Matrix rho0 = cfg.initial_state_or_default();
    const Matrix target = limit.apply(rho0);
    // independent per-n tasks, merged back in sweep order
    std::vector<std::future<double>> tasks;
    tasks.reserve(cfg.sweep.size());
    for (long n : cfg.sweep) {
      tasks.push_back(std::async(std::launch::async, [&m, &path, &rho0, &target, n] {
        InterceptedConfig ic{m, path, n, 1, 1e-10};
        return trace_norm(intercepted_product(ic).apply(rho0) - target);
      }));
    }
    for (std::size_t i = 0; i < cfg.sweep.size(); ++i)
      result.records.push_back({cfg.sweep[i], tasks[i].get(), NormKind::trace_state});
  }

  result.loglog_slope = loglog_slope(result.records);
  result.final_error = result.records.empty() ? 0.0 : result.records.back().error;
  result.meta.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

// ── Builtin scenarios ──────────────────────────────────────────────────────

namespace {

Matrix sigma_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix sigma_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

Matrix sigma_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix sigma_minus() {
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  return m;
}

KrausSet qubit_pinching() {
  Matrix k0 = Matrix::Zero(2, 2);
  Matrix k1 = Matrix::Zero(2, 2);
  k0(0, 0) = 1;
  k1(1, 1) = 1;
  return KrausSet(2, {k0, k1}, KrausSet::Kind::channel);
}

Matrix plus_state() {
  Matrix rho(2, 2);
  rho << 0.5, 0.5, 0.5, 0.5;
  return rho;
}

std::vector<long> timedep_sweep() { return {8, 16, 32, 64, 128, 256, 512}; }

ScenarioConfig make_classic_zeno() {
  ScenarioConfig c;
  c.name = "classic_zeno";
  c.dim = 2;
  c.m_spec = qubit_pinching();
  c.generator = LindbladGenerator(sigma_x(), {});
  c.time = 1.0;
  c.sweep = default_sweep();
  c.seed = 7;
  return c;
}

ScenarioConfig make_damped_rabi() {
  ScenarioConfig c;
  c.name = "damped_rabi";
  c.dim = 2;
  c.m_spec = qubit_pinching();
  c.generator = LindbladGenerator(sigma_x(), {std::sqrt(0.3) * sigma_z()});
  c.time = 1.0;
  c.sweep = default_sweep();
  c.seed = 11;
  return c;
}

ScenarioConfig make_timedep_drive() {
  ScenarioConfig c;
  c.name = "timedep_drive";
  c.dim = 2;
  c.m_spec = qubit_pinching();
  const Matrix deph = std::sqrt(0.3) * sigma_z();
  std::vector<std::pair<double, LindbladGenerator>> kf;
  kf.emplace_back(0.0, LindbladGenerator(sigma_x(), {deph}));
  kf.emplace_back(1.0, LindbladGenerator(sigma_y(), {deph}));
  c.generator = GeneratorPath(std::move(kf));
  c.time = 1.0;
  c.sweep = timedep_sweep();
  c.initial_state = plus_state();
  c.seed = 13;
  return c;
}

ScenarioConfig make_timedep_damped() {
  // Amplitude damping whose rate ramps down over the horizon: the projected
  // master equation has a genuinely time-dependent generator here.
  ScenarioConfig c;
  c.name = "timedep_damped";
  c.dim = 2;
  c.m_spec = qubit_pinching();
  std::vector<std::pair<double, LindbladGenerator>> kf;
  kf.emplace_back(0.0, LindbladGenerator(sigma_x(), {std::sqrt(0.6) * sigma_minus()}));
  kf.emplace_back(1.0, LindbladGenerator(sigma_y(), {std::sqrt(0.1) * sigma_minus()}));
  c.generator = GeneratorPath(std::move(kf));
  c.time = 1.0;
  c.sweep = timedep_sweep();
  c.initial_state = plus_state();
  c.seed = 17;
  return c;
}

ScenarioConfig make_random_gapped() {
  ScenarioConfig c;
  c.name = "random_gapped";
  c.dim = 2;
  c.seed = 42;
  std::mt19937_64 rng(c.seed);
  c.m_spec = random_gapped_channel(2, 0.5, rng);
  c.generator = random_gkls(2, 1, 0.8, rng);
  c.time = 1.0;
  c.sweep = default_sweep();
  return c;
}

ScenarioConfig make_identity_m() {
  ScenarioConfig c;
  c.name = "identity_m";
  c.dim = 2;
  c.m_spec = KrausSet(2, {Matrix::Identity(2, 2)}, KrausSet::Kind::channel);
  c.generator = LindbladGenerator(sigma_x(), {std::sqrt(0.3) * sigma_z()});
  c.time = 1.0;
  c.sweep = default_sweep();
  c.seed = 3;
  return c;
}

}  // namespace

std::vector<std::string> builtin_scenario_names() {
  return {"classic_zeno", "damped_rabi",   "timedep_drive",
          "timedep_damped", "random_gapped", "identity_m"};
}

bool is_builtin_scenario(const std::string& name) {
  for (const auto& n : builtin_scenario_names())
    if (n == name) return true;
  return false;
}

ScenarioConfig builtin_scenario(const std::string& name) {
  if (name == "classic_zeno") return make_classic_zeno();
  if (name == "damped_rabi") return make_damped_rabi();
  if (name == "timedep_drive") return make_timedep_drive();
  if (name == "timedep_damped") return make_timedep_damped();
  if (name == "random_gapped") return make_random_gapped();
  if (name == "identity_m") return make_identity_m();
  throw ValidationError("unknown builtin scenario: " + name);
}

std::vector<ScenarioConfig> builtin_scenarios() {
  std::vector<ScenarioConfig> out;
  for (const auto& name : builtin_scenario_names()) out.push_back(builtin_scenario(name));
  return out;
}

std::string builtin_scenario_text(const std::string& name) {
  return scenario_to_json(builtin_scenario(name)).dump(2) + "\n";
}

}  // namespace zeno
