#pragma once

#include <string>

#include "norman/bayesnet.hpp"

namespace norman {

// Reads the BIF 0.15 interchange format, restricted to discrete networks:
// a `network` block, `variable` blocks with `type discrete`, and
// `probability` blocks with `table` rows (child states slowest, parent
// combinations row-major in declared parent order) or per-combination entry
// rows `(state, ...) p, ...;`. `property` lines are accepted and ignored;
// `//` and `/* */` comments are skipped. Continuous variables and `default`
// rows raise UnsupportedFeatureError; other malformed input raises ParseError.
// Both error types carry the offending line and column. Variable declaration
// order becomes node order. BIF carries no role assignment.
NetworkDefinition parse_network_bif(const std::string& text);

// Writes a network in the same subset: roots as `table` rows, everything else
// as entry rows. parse(serialize(parse(x))) is structurally equal to parse(x).
std::string serialize_network_bif(const NetworkDefinition& net);

}  // namespace norman
