#pragma once

#include <json.hpp>

#include "zeno/lindblad.hpp"
#include "zeno/superop.hpp"

namespace zeno {

// Complex matrices travel as row-major arrays of [re, im] pairs:
//   [[[1,0],[0,0]], [[0,0],[1,0]]]  is the 2×2 identity.

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, const std::string& field);

nlohmann::json kraus_to_json(const KrausSet& k);
KrausSet kraus_from_json(const nlohmann::json& j, int dim);

nlohmann::json generator_to_json(const LindbladGenerator& g);
LindbladGenerator generator_from_json(const nlohmann::json& j, int dim);

/// {"dim": d, "horizon": τ, "keyframes": [{"t": ..., "hamiltonian": ...,
///  "jumps": [...]}, ...]}
nlohmann::json path_to_json(const GeneratorPath& p);
GeneratorPath path_from_json(const nlohmann::json& j);

}  // namespace zeno
