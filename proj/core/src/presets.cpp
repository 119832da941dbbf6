#include "norman/presets.hpp"

#include <algorithm>

namespace norman {

namespace {

struct BinaryNode {
  const char* name;
  std::vector<const char*> parents;
  // P(node = true | parent combo), row-major, first parent slowest.
  std::vector<double> p_true;
};

NetworkDefinition build_binary_network(const std::string& name,
                                       const std::vector<BinaryNode>& spec,
                                       const char* hypothesis,
                                       const std::vector<const char*>& evidence) {
  std::vector<NodeSpec> nodes;
  for (const BinaryNode& b : spec) nodes.push_back({b.name, {"true", "false"}});

  auto index_of = [&](const char* node_name) {
    for (std::size_t i = 0; i < spec.size(); ++i)
      if (std::string(spec[i].name) == node_name) return static_cast<int>(i);
    return -1;
  };

  std::vector<Arc> arcs;
  std::vector<Cpt> cpts;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    Cpt cpt;
    cpt.node = static_cast<int>(i);
    for (const char* p : spec[i].parents) {
      int pi = index_of(p);
      arcs.push_back({pi, static_cast<int>(i)});
      cpt.parents.push_back(pi);
    }
    for (double p : spec[i].p_true) cpt.rows.push_back({p, 1.0 - p});
    cpts.push_back(std::move(cpt));
  }

  RoleAssignment roles;
  roles.hypothesis = index_of(hypothesis);
  roles.hypothesis_true_state = 0;
  for (const char* e : evidence) roles.evidence.push_back({index_of(e), 0});

  return NetworkDefinition(name, std::move(nodes), std::move(arcs),
                           std::move(cpts), std::move(roles));
}

NetworkDefinition big_net() {
  // Symmetric by construction: B pulls toward the hypothesis exactly as hard
  // as D pulls away, and C is non-diagnostic.
  const std::vector<BinaryNode> spec = {
      {"A", {}, {0.5}},
      {"B", {"A"}, {0.9, 0.1}},
      {"C", {"A"}, {0.5, 0.5}},
      {"D", {"A"}, {0.1, 0.9}},
      {"one", {"B"}, {0.9, 0.1}},
      {"two", {"B"}, {0.8, 0.2}},
      {"three", {"B"}, {0.7, 0.3}},
      {"four", {"C"}, {0.9, 0.1}},
      {"five", {"C"}, {0.8, 0.2}},
      {"six", {"C"}, {0.7, 0.3}},
      {"seven", {"D"}, {0.9, 0.1}},
      {"eight", {"D"}, {0.8, 0.2}},
      {"nine", {"D"}, {0.7, 0.3}},
  };
  return build_binary_network(
      "big-net", spec, "A",
      {"one", "two", "three", "four", "five", "six", "seven", "eight", "nine"});
}

NetworkDefinition small_net() {
  const std::vector<BinaryNode> spec = {
      {"V", {}, {0.5}},
      {"CS", {"V"}, {0.9, 0.1}},
      {"VT", {"V"}, {0.8, 0.2}},
      {"I", {"CS"}, {0.7, 0.3}},
      {"M", {"CS"}, {0.8, 0.2}},
      {"RS", {"VT"}, {0.2, 0.8}},
      {"WHO", {"VT"}, {0.8, 0.2}},
  };
  // Leaf nodes are the evidence; RS (when true) speaks against V.
  return build_binary_network("small-net", spec, "V", {"I", "M", "RS", "WHO"});
}

}  // namespace

NetworkDefinition preset(const std::string& name) {
  if (name == "big-net") return big_net();
  if (name == "small-net") return small_net();
  throw UnknownPresetError(
      "unknown preset '" + name +
      "'; only 'big-net' and 'small-net' are built in. Load other networks "
      "(asia, alarm, wet-grass, sally-clark, vole, ...) from a JSON or BIF "
      "file instead.");
}

std::vector<std::string> preset_names() { return {"big-net", "small-net"}; }

bool is_preset_name(const std::string& name) {
  auto names = preset_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

}  // namespace norman
