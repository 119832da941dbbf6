#include "norman/net_json.hpp"

#include <algorithm>
#include <charconv>
#include <optional>

#include <json.hpp>

namespace norman {

namespace {

using json = nlohmann::ordered_json;

// nlohmann reports byte offsets; turn one into line/column for ParseError.
std::pair<int, int> position_of(const std::string& text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

const json& require(const json& obj, const char* key,
                    const std::string& context) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ValidationError(std::string("network JSON: missing '") + key +
                          "' in " + context);
  }
  return *it;
}

std::string shortest_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

}  // namespace

NetworkDefinition parse_network_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, column] = position_of(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(std::string("network JSON: ") + e.what(), line, column);
  }
  if (!doc.is_object()) throw ValidationError("network JSON: top level must be an object");

  std::string name = doc.value("name", std::string("unnamed"));

  std::vector<NodeSpec> nodes;
  for (const json& jnode : require(doc, "nodes", "top-level object")) {
    NodeSpec node;
    node.name = require(jnode, "name", "a node entry").get<std::string>();
    for (const json& s : require(jnode, "states", "node '" + node.name + "'"))
      node.states.push_back(s.get<std::string>());
    nodes.push_back(std::move(node));
  }

  auto index_of = [&](const std::string& node_name, const char* context) {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].name == node_name) return static_cast<int>(i);
    throw ValidationError("network JSON: " + std::string(context) +
                          " references undeclared node '" + node_name + "'");
  };

  std::vector<Arc> arcs;
  if (doc.contains("arcs")) {
    for (const json& jarc : doc["arcs"]) {
      if (!jarc.is_array() || jarc.size() != 2) {
        throw ValidationError("network JSON: each arc must be a [parent, child] pair");
      }
      arcs.push_back({index_of(jarc[0].get<std::string>(), "an arc"),
                      index_of(jarc[1].get<std::string>(), "an arc")});
    }
  }

  std::vector<Cpt> cpts;
  const json& jcpts = require(doc, "cpts", "top-level object");
  if (!jcpts.is_object()) throw ValidationError("network JSON: 'cpts' must be an object");
  for (const auto& [node_name, jcpt] : jcpts.items()) {
    Cpt cpt;
    cpt.node = index_of(node_name, "a CPT");
    for (const json& p : require(jcpt, "parents", "CPT of '" + node_name + "'"))
      cpt.parents.push_back(index_of(p.get<std::string>(), "a CPT parent list"));
    for (const json& jrow : require(jcpt, "rows", "CPT of '" + node_name + "'")) {
      std::vector<double> row;
      for (const json& v : jrow) {
        if (!v.is_number()) {
          throw ValidationError("network JSON: non-numeric CPT entry for node '" +
                                node_name + "'");
        }
        row.push_back(v.get<double>());
      }
      cpt.rows.push_back(std::move(row));
    }
    cpts.push_back(std::move(cpt));
  }

  std::optional<RoleAssignment> roles;
  if (doc.contains("roles") && !doc["roles"].is_null()) {
    const json& jroles = doc["roles"];
    RoleAssignment r;
    std::string hyp = require(jroles, "hypothesis", "roles").get<std::string>();
    r.hypothesis = index_of(hyp, "roles");
    std::string hyp_state =
        require(jroles, "hypothesis_true_state", "roles").get<std::string>();
    {
      const NodeSpec& node = nodes[r.hypothesis];
      auto it = std::find(node.states.begin(), node.states.end(), hyp_state);
      if (it == node.states.end()) {
        throw ValidationError("network JSON: hypothesis true-state '" + hyp_state +
                              "' is not a state of '" + hyp + "'");
      }
      r.hypothesis_true_state = static_cast<int>(it - node.states.begin());
    }
    for (const json& jev : require(jroles, "evidence", "roles")) {
      std::string ev_name = require(jev, "node", "an evidence role").get<std::string>();
      int node = index_of(ev_name, "roles");
      std::string state =
          require(jev, "true_state", "evidence role '" + ev_name + "'").get<std::string>();
      auto it = std::find(nodes[node].states.begin(), nodes[node].states.end(), state);
      if (it == nodes[node].states.end()) {
        throw ValidationError("network JSON: evidence true-state '" + state +
                              "' is not a state of '" + ev_name + "'");
      }
      r.evidence.push_back({node, static_cast<int>(it - nodes[node].states.begin())});
    }
    roles = std::move(r);
  }

  return NetworkDefinition(std::move(name), std::move(nodes), std::move(arcs),
                           std::move(cpts), std::move(roles));
}

std::string serialize_network_json(const NetworkDefinition& net) {
  json doc;
  doc["name"] = net.name();
  doc["nodes"] = json::array();
  for (const NodeSpec& node : net.nodes()) {
    doc["nodes"].push_back({{"name", node.name}, {"states", node.states}});
  }
  doc["arcs"] = json::array();
  for (const Arc& arc : net.arcs()) {
    doc["arcs"].push_back(
        json::array({net.node(arc.parent).name, net.node(arc.child).name}));
  }
  doc["cpts"] = json::object();
  for (int v = 0; v < net.node_count(); ++v) {
    const Cpt& cpt = net.cpt(v);
    json jcpt;
    jcpt["parents"] = json::array();
    for (int p : cpt.parents) jcpt["parents"].push_back(net.node(p).name);
    jcpt["rows"] = json::array();
    for (const std::vector<double>& row : cpt.rows) {
      json jrow = json::array();
      // Emit through the shortest round-trip text so reparsing is exact.
      for (double p : row) jrow.push_back(json::parse(shortest_double(p)));
      jcpt["rows"].push_back(std::move(jrow));
    }
    doc["cpts"][net.node(v).name] = std::move(jcpt);
  }
  if (net.roles()) {
    const RoleAssignment& roles = *net.roles();
    json jroles;
    jroles["hypothesis"] = net.node(roles.hypothesis).name;
    jroles["hypothesis_true_state"] =
        net.node(roles.hypothesis).states[roles.hypothesis_true_state];
    jroles["evidence"] = json::array();
    for (const EvidenceRole& ev : roles.evidence) {
      jroles["evidence"].push_back(
          {{"node", net.node(ev.node).name},
           {"true_state", net.node(ev.node).states[ev.true_state]}});
    }
    doc["roles"] = std::move(jroles);
  }
  return doc.dump(2) + "\n";
}

}  // namespace norman
