#pragma once

#include <string>

#include <json.hpp>

#include "roofs/core_states.hpp"
#include "roofs/diagonal_sym.hpp"
#include "roofs/measures.hpp"
#include "roofs/qubit_maps.hpp"

namespace roofs::io {

using nlohmann::json;

/// Entries are [re, im] pairs; matrices are row-major lists of rows.
json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

json state_to_json(const DensityOperator& omega);
/// {"dim": d, "matrix": ...}; validated as a density operator.
DensityOperator state_from_json(const json& j);

json decomposition_to_json(const PureDecomposition& dec);

/// {"kind":"kraus","ops":[...]}, {"kind":"axial",...} or {"kind":"affine","m":[[..]]}.
QubitMap map_from_json(const json& j);
json map_to_json(const QubitMap& t);

/// {"blocks":[...], "amplitudes":[[[re,im],...],...]}.
EmbeddingSpec embedding_from_json(const json& j);

json report_to_json(const MeasureReport& r);

/// Reads and parses a JSON file; failures raise ErrorKind::Parse.
json read_json_file(const std::string& path);

}  // namespace roofs::io
