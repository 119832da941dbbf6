#pragma once

#include <string>
#include <vector>

#include "norman/bayesnet.hpp"

namespace norman {

// Built-in networks: "big-net" (13 nodes, hypothesis A, evidence one..nine)
// and "small-net" (7 nodes, hypothesis V, evidence I, M, RS, WHO), with roles
// pre-assigned. Other well-known networks (asia, alarm, vole, ...) are not
// compiled in; their tables live in external repositories and must be loaded
// from a JSON or BIF file. Throws UnknownPresetError for any other name.
NetworkDefinition preset(const std::string& name);

std::vector<std::string> preset_names();

bool is_preset_name(const std::string& name);

}  // namespace norman
