#include "norman/bayesnet.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace norman {

namespace {

constexpr double kRowSumTolerance = 1e-9;

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

}  // namespace

NetworkDefinition::NetworkDefinition(std::string name,
                                     std::vector<NodeSpec> nodes,
                                     std::vector<Arc> arcs,
                                     std::vector<Cpt> cpts,
                                     std::optional<RoleAssignment> roles)
    : name_(std::move(name)),
      nodes_(std::move(nodes)),
      arcs_(std::move(arcs)),
      cpts_(std::move(cpts)),
      roles_(std::move(roles)) {
  const int n = static_cast<int>(nodes_.size());
  if (n == 0) {
    throw ValidationError("network " + quoted(name_) + " has no nodes");
  }

  std::unordered_set<std::string> seen_names;
  for (const NodeSpec& node : nodes_) {
    if (!seen_names.insert(node.name).second) {
      throw ValidationError("duplicate node name " + quoted(node.name));
    }
    if (node.states.size() < 2) {
      throw ValidationError("node " + quoted(node.name) +
                            " needs at least two states");
    }
    std::unordered_set<std::string> seen_states;
    for (const std::string& s : node.states) {
      if (!seen_states.insert(s).second) {
        throw ValidationError("duplicate state " + quoted(s) + " on node " +
                              quoted(node.name));
      }
    }
  }

  std::set<std::pair<int, int>> seen_arcs;
  std::vector<std::vector<int>> in_arcs(n);
  children_.assign(n, {});
  for (const Arc& arc : arcs_) {
    if (arc.parent < 0 || arc.parent >= n || arc.child < 0 || arc.child >= n) {
      throw ValidationError("arc references an undeclared node in network " +
                            quoted(name_));
    }
    if (arc.parent == arc.child) {
      throw ValidationError("self-arc on node " + quoted(nodes_[arc.child].name));
    }
    if (!seen_arcs.insert({arc.parent, arc.child}).second) {
      throw ValidationError("duplicate arc " + quoted(nodes_[arc.parent].name) +
                            " -> " + quoted(nodes_[arc.child].name));
    }
    in_arcs[arc.child].push_back(arc.parent);
    children_[arc.parent].push_back(arc.child);
  }
  for (auto& ch : children_) std::sort(ch.begin(), ch.end());

  // Kahn's algorithm; anything left over sits on a cycle.
  {
    std::vector<int> indegree(n);
    for (int v = 0; v < n; ++v) indegree[v] = static_cast<int>(in_arcs[v].size());
    std::vector<int> ready;
    for (int v = 0; v < n; ++v)
      if (indegree[v] == 0) ready.push_back(v);
    topo_order_.clear();
    for (std::size_t head = 0; head < ready.size(); ++head) {
      int v = ready[head];
      topo_order_.push_back(v);
      for (int c : children_[v])
        if (--indegree[c] == 0) ready.push_back(c);
    }
    if (static_cast<int>(topo_order_.size()) != n) {
      for (int v = 0; v < n; ++v) {
        if (indegree[v] > 0) {
          throw ValidationError("arc graph has a cycle through node " +
                                quoted(nodes_[v].name));
        }
      }
    }
  }

  if (static_cast<int>(cpts_.size()) != n) {
    throw ValidationError("network " + quoted(name_) + " declares " +
                          std::to_string(cpts_.size()) + " CPTs for " +
                          std::to_string(n) + " nodes");
  }
  std::vector<bool> has_cpt(n, false);
  std::vector<Cpt> by_node(n);
  for (Cpt& cpt : cpts_) {
    if (cpt.node < 0 || cpt.node >= n) {
      throw ValidationError("CPT references an undeclared node");
    }
    const std::string& node_name = nodes_[cpt.node].name;
    if (has_cpt[cpt.node]) {
      throw ValidationError("node " + quoted(node_name) + " has two CPTs");
    }
    has_cpt[cpt.node] = true;

    std::vector<int> declared_parents = cpt.parents;
    std::vector<int> arc_parents = in_arcs[cpt.node];
    std::sort(declared_parents.begin(), declared_parents.end());
    std::sort(arc_parents.begin(), arc_parents.end());
    if (declared_parents != arc_parents ||
        std::adjacent_find(declared_parents.begin(), declared_parents.end()) !=
            declared_parents.end()) {
      throw ValidationError("CPT parent list of node " + quoted(node_name) +
                            " does not match its incoming arcs");
    }

    std::size_t expected_rows = 1;
    for (int p : cpt.parents) expected_rows *= nodes_[p].states.size();
    if (cpt.rows.size() != expected_rows) {
      throw ValidationError("CPT of node " + quoted(node_name) + " has " +
                            std::to_string(cpt.rows.size()) + " rows, expected " +
                            std::to_string(expected_rows));
    }
    const std::size_t width = nodes_[cpt.node].states.size();
    for (std::size_t r = 0; r < cpt.rows.size(); ++r) {
      std::vector<double>& row = cpt.rows[r];
      if (row.size() != width) {
        throw ValidationError("CPT row " + std::to_string(r) + " of node " +
                              quoted(node_name) + " has " +
                              std::to_string(row.size()) + " entries, expected " +
                              std::to_string(width));
      }
      double sum = 0.0;
      for (double v : row) {
        if (!(v >= 0.0 && v <= 1.0)) {
          throw ValidationError("CPT row " + std::to_string(r) + " of node " +
                                quoted(node_name) +
                                " has an entry outside [0, 1]");
        }
        sum += v;
      }
      if (std::fabs(sum - 1.0) > kRowSumTolerance) {
        throw ValidationError("CPT row " + std::to_string(r) + " of node " +
                              quoted(node_name) + " sums to " +
                              std::to_string(sum));
      }
      // External files carry rounded entries; make rows exact distributions.
      for (double& v : row) v /= sum;
    }
    by_node[cpt.node] = std::move(cpt);
  }
  cpts_ = std::move(by_node);

  if (roles_) validate_roles(*this, *roles_);
}

int NetworkDefinition::node_index(std::string_view node_name) const {
  for (int i = 0; i < node_count(); ++i)
    if (nodes_[i].name == node_name) return i;
  return -1;
}

int NetworkDefinition::state_index(int node, std::string_view state_name) const {
  const std::vector<std::string>& states = nodes_.at(node).states;
  for (int i = 0; i < static_cast<int>(states.size()); ++i)
    if (states[i] == state_name) return i;
  return -1;
}

int NetworkDefinition::require_node(std::string_view node_name) const {
  int i = node_index(node_name);
  if (i < 0) {
    throw ValidationError("unknown node " + quoted(node_name) + " in network " +
                          quoted(name_));
  }
  return i;
}

int NetworkDefinition::require_state(int node, std::string_view state_name) const {
  int i = state_index(node, state_name);
  if (i < 0) {
    throw ValidationError("node " + quoted(nodes_.at(node).name) +
                          " has no state " + quoted(state_name));
  }
  return i;
}

double NetworkDefinition::joint_configuration_count() const {
  double count = 1.0;
  for (const NodeSpec& node : nodes_) count *= static_cast<double>(node.states.size());
  return count;
}

bool NetworkDefinition::structurally_equal(const NetworkDefinition& other) const {
  if (node_count() != other.node_count()) return false;
  for (int i = 0; i < node_count(); ++i) {
    if (nodes_[i].name != other.nodes_[i].name ||
        nodes_[i].states != other.nodes_[i].states)
      return false;
    if (cpts_[i].parents != other.cpts_[i].parents) return false;
    if (cpts_[i].rows.size() != other.cpts_[i].rows.size()) return false;
    for (std::size_t r = 0; r < cpts_[i].rows.size(); ++r) {
      if (cpts_[i].rows[r] != other.cpts_[i].rows[r]) return false;
    }
  }
  std::vector<std::pair<int, int>> a, b;
  for (const Arc& arc : arcs_) a.emplace_back(arc.parent, arc.child);
  for (const Arc& arc : other.arcs_) b.emplace_back(arc.parent, arc.child);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) return false;
  return roles_ == other.roles_;
}

void validate_roles(const NetworkDefinition& net, const RoleAssignment& roles) {
  auto check_binary = [&](int node, const char* what) {
    if (node < 0 || node >= net.node_count()) {
      throw ValidationError(std::string(what) + " node index out of range");
    }
    if (net.state_count(node) != 2) {
      throw ValidationError(std::string(what) + " node '" +
                            net.node(node).name + "' must be two-valued");
    }
  };
  check_binary(roles.hypothesis, "hypothesis");
  if (roles.hypothesis_true_state < 0 ||
      roles.hypothesis_true_state >= net.state_count(roles.hypothesis)) {
    throw ValidationError("hypothesis true-state index out of range");
  }
  std::unordered_set<int> seen;
  for (const EvidenceRole& ev : roles.evidence) {
    check_binary(ev.node, "evidence");
    if (ev.node == roles.hypothesis) {
      throw ValidationError("evidence node '" + net.node(ev.node).name +
                            "' is the hypothesis");
    }
    if (!seen.insert(ev.node).second) {
      throw ValidationError("evidence node '" + net.node(ev.node).name +
                            "' listed twice");
    }
    if (ev.true_state < 0 || ev.true_state >= net.state_count(ev.node)) {
      throw ValidationError("evidence true-state index out of range for '" +
                            net.node(ev.node).name + "'");
    }
  }
}

Evidence evidence_to_assignment(const NetworkDefinition& net,
                                const std::map<int, bool>& known) {
  if (!net.roles()) {
    throw ValidationError("network '" + net.name() + "' has no role assignment");
  }
  const RoleAssignment& roles = *net.roles();
  Evidence assignment;
  for (const auto& [index, value] : known) {
    if (index < 0 || index >= roles.evidence_count()) {
      throw ValidationError("evidence index " + std::to_string(index) +
                            " out of range");
    }
    const EvidenceRole& role = roles.evidence[index];
    // Two-valued node: the non-true state is the other one.
    int state = value ? role.true_state : 1 - role.true_state;
    assignment[role.node] = state;
  }
  return assignment;
}

}  // namespace norman
