#pragma once

#include <string>

#include "norman/bayesnet.hpp"

namespace norman {

// Reads the JSON network schema:
//
//   {
//     "name": "...",
//     "nodes": [{"name": "A", "states": ["true", "false"]}, ...],
//     "arcs": [["A", "B"], ...],
//     "cpts": {"B": {"parents": ["A"], "rows": [[0.9, 0.1], [0.1, 0.9]]}, ...},
//     "roles": {"hypothesis": "A", "hypothesis_true_state": "true",
//               "evidence": [{"node": "one", "true_state": "true"}, ...]}
//   }
//
// CPT rows are ordered row-major in declared parent order (first parent
// varies slowest); each row lists probabilities over the node's states in
// declared state order. "roles" is optional. Throws ParseError (with line and
// column) on bad JSON and ValidationError on schema or model violations.
NetworkDefinition parse_network_json(const std::string& text);

std::string serialize_network_json(const NetworkDefinition& net);

}  // namespace norman
