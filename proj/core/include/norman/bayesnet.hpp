#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "norman/errors.hpp"

namespace norman {

// One discrete variable: a name and an ordered list of at least two states.
struct NodeSpec {
  std::string name;
  std::vector<std::string> states;
};

struct Arc {
  int parent = -1;
  int child = -1;
  friend bool operator==(const Arc&, const Arc&) = default;
};

// Conditional probability table for one node. `rows` holds one probability
// vector over the node's states per combination of parent states; rows are
// ordered row-major in declared parent order (first parent varies slowest).
struct Cpt {
  int node = -1;
  std::vector<int> parents;
  std::vector<std::vector<double>> rows;
};

struct EvidenceRole {
  int node = -1;
  int true_state = -1;  // state index that counts as "true" for this evidence
  friend bool operator==(const EvidenceRole&, const EvidenceRole&) = default;
};

// Designates the hypothesis under debate and the ordered evidence
// propositions. All designated nodes must be two-valued.
struct RoleAssignment {
  int hypothesis = -1;
  int hypothesis_true_state = -1;
  std::vector<EvidenceRole> evidence;

  int evidence_count() const { return static_cast<int>(evidence.size()); }
  friend bool operator==(const RoleAssignment&, const RoleAssignment&) = default;
};

// Observed node states for a conditional query: node index -> state index.
using Evidence = std::map<int, int>;

// A validated discrete Bayesian network. Immutable after construction and
// safe to share across threads.
class NetworkDefinition {
 public:
  // Throws ValidationError unless: node names are unique, each node has >= 2
  // unique states, arcs reference declared nodes, the arc graph is acyclic,
  // and there is exactly one CPT per node whose parent list matches the
  // node's in-arcs and whose rows are distributions (sum within 1e-9 of 1,
  // entries in [0,1]). Rows are renormalized to sum to 1 exactly.
  NetworkDefinition(std::string name, std::vector<NodeSpec> nodes,
                    std::vector<Arc> arcs, std::vector<Cpt> cpts,
                    std::optional<RoleAssignment> roles = std::nullopt);

  const std::string& name() const { return name_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  const std::vector<NodeSpec>& nodes() const { return nodes_; }
  const NodeSpec& node(int i) const { return nodes_.at(i); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Cpt& cpt(int node) const { return cpts_.at(node); }
  const std::vector<Cpt>& cpts() const { return cpts_; }
  const std::optional<RoleAssignment>& roles() const { return roles_; }

  int state_count(int node) const {
    return static_cast<int>(nodes_.at(node).states.size());
  }
  const std::vector<int>& parents(int node) const {
    return cpts_.at(node).parents;
  }
  const std::vector<int>& children(int node) const {
    return children_.at(node);
  }
  // Parents first, in an order compatible with the arcs.
  const std::vector<int>& topological_order() const { return topo_order_; }

  // -1 when the name is unknown.
  int node_index(std::string_view node_name) const;
  int state_index(int node, std::string_view state_name) const;

  // Like the lookups above but throwing ValidationError with context.
  int require_node(std::string_view node_name) const;
  int require_state(int node, std::string_view state_name) const;

  // Number of joint configurations, as a double so it cannot overflow.
  double joint_configuration_count() const;

  bool structurally_equal(const NetworkDefinition& other) const;

 private:
  std::string name_;
  std::vector<NodeSpec> nodes_;
  std::vector<Arc> arcs_;
  std::vector<Cpt> cpts_;  // indexed by node
  std::optional<RoleAssignment> roles_;
  std::vector<std::vector<int>> children_;
  std::vector<int> topo_order_;
};

// Validates a role assignment against a network (two-valued nodes, distinct
// evidence, hypothesis not among the evidence). Throws ValidationError.
void validate_roles(const NetworkDefinition& net, const RoleAssignment& roles);

// Maps an agent-side truth map {evidence index -> bool} to node states.
Evidence evidence_to_assignment(const NetworkDefinition& net,
                                const std::map<int, bool>& known);

}  // namespace norman
