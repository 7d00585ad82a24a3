#pragma once

#include <string>

#include "json.hpp"
#include "qceq/circuit.hpp"
#include "qceq/semantics.hpp"

namespace qceq {

using json = nlohmann::json;

json gate_to_json(const Gate& g);
Gate gate_from_json(const json& j);

json circuit_to_json(const Circuit& c);
// Parses and validates a circuit object.
Circuit circuit_from_json(const json& j);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace qceq
