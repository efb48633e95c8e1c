#include "zeno/serialize.hpp"

namespace zeno {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty())
    throw ValidationError(field + ": expected a non-empty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  Matrix m;
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array()) throw ValidationError(field + ": row " + std::to_string(i) + " is not an array");
    if (i == 0) {
      cols = row.size();
      m.resize(rows, cols);
    } else if (row.size() != cols) {
      throw ValidationError(field + ": ragged rows");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      const json& entry = row[k];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
        throw ValidationError(field + ": entries must be [re, im] pairs");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  if (!is_finite(m)) throw ValidationError(field + ": non-finite entries");
  return m;
}

json kraus_to_json(const KrausSet& k) {
  json ops = json::array();
  for (const Matrix& op : k.ops) ops.push_back(matrix_to_json(op));
  return json{{"kraus", std::move(ops)},
              {"kind", k.kind == KrausSet::Kind::channel ? "channel" : "operation"}};
}

KrausSet kraus_from_json(const json& j, int dim) {
  if (!j.contains("kraus") || !j["kraus"].is_array())
    throw ValidationError("kraus: expected an array of operators");
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < j["kraus"].size(); ++i)
    ops.push_back(matrix_from_json(j["kraus"][i], "kraus[" + std::to_string(i) + "]"));
  KrausSet::Kind kind = KrausSet::Kind::channel;
  if (j.contains("kind")) {
    const std::string k = j["kind"].get<std::string>();
    if (k == "channel") kind = KrausSet::Kind::channel;
    else if (k == "operation") kind = KrausSet::Kind::operation;
    else throw ValidationError("kind: must be 'channel' or 'operation'");
  }
  for (const Matrix& op : ops)
    if (op.rows() != dim || op.cols() != dim)
      throw ValidationError("kraus: operator shape does not match dim");
  return KrausSet(dim, std::move(ops), kind);
}

json generator_to_json(const LindbladGenerator& g) {
  json jumps = json::array();
  for (const Matrix& v : g.jumps) jumps.push_back(matrix_to_json(v));
  return json{{"hamiltonian", matrix_to_json(g.hamiltonian)}, {"jumps", std::move(jumps)}};
}

LindbladGenerator generator_from_json(const json& j, int dim) {
  if (!j.contains("hamiltonian"))
    throw ValidationError("generator: missing field 'hamiltonian'");
  Matrix h = matrix_from_json(j["hamiltonian"], "hamiltonian");
  if (h.rows() != dim) throw ValidationError("hamiltonian: shape does not match dim");
  std::vector<Matrix> jumps;
  if (j.contains("jumps")) {
    if (!j["jumps"].is_array()) throw ValidationError("jumps: expected an array");
    for (std::size_t i = 0; i < j["jumps"].size(); ++i) {
      jumps.push_back(matrix_from_json(j["jumps"][i], "jumps[" + std::to_string(i) + "]"));
      if (jumps.back().rows() != dim)
        throw ValidationError("jumps[" + std::to_string(i) + "]: shape does not match dim");
    }
  }
  try {
    return LindbladGenerator(std::move(h), std::move(jumps));
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("hamiltonian: ") + e.what());
  }
}

json path_to_json(const GeneratorPath& p) {
  json keyframes = json::array();
  for (std::size_t i = 0; i < p.keyframe_count(); ++i) {
    json kf = generator_to_json(p.keyframe(i));
    kf["t"] = p.times()[i];
    keyframes.push_back(std::move(kf));
  }
  return json{{"dim", p.dim()}, {"horizon", p.horizon()}, {"keyframes", std::move(keyframes)}};
}

GeneratorPath path_from_json(const json& j) {
  if (!j.contains("dim") || !j.contains("keyframes"))
    throw ValidationError("path: needs 'dim' and 'keyframes'");
  const int dim = j["dim"].get<int>();
  std::vector<std::pair<double, LindbladGenerator>> keyframes;
  for (const json& kf : j["keyframes"]) {
    if (!kf.contains("t")) throw ValidationError("path keyframe: missing time 't'");
    keyframes.emplace_back(kf["t"].get<double>(), generator_from_json(kf, dim));
  }
  GeneratorPath path(std::move(keyframes));
  if (j.contains("horizon")) {
    const double tau = j["horizon"].get<double>();
    if (std::abs(tau - path.horizon()) > 1e-12)
      throw ValidationError("horizon: does not match the last keyframe time");
  }
  return path;
}

}  // namespace zeno
