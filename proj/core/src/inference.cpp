#include "norman/inference.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>
#include <string>

namespace norman {

namespace {

// A non-negative function over a set of variables, values row-major in the
// order of `vars` (first variable slowest).
struct Factor {
  std::vector<int> vars;
  std::vector<int> cards;
  std::vector<double> values;
};

Factor cpt_factor(const NetworkDefinition& net, int node) {
  const Cpt& cpt = net.cpt(node);
  Factor f;
  f.vars = cpt.parents;
  f.vars.push_back(node);
  for (int v : f.vars) f.cards.push_back(net.state_count(v));
  const std::size_t width = net.state_count(node);
  f.values.reserve(cpt.rows.size() * width);
  for (const std::vector<double>& row : cpt.rows) {
    f.values.insert(f.values.end(), row.begin(), row.end());
  }
  return f;
}

// Drops evidenced variables from a factor by selecting the observed slice.
Factor reduce(const Factor& f, const Evidence& evidence) {
  std::vector<int> kept;
  std::vector<int> kept_cards;
  bool any = false;
  for (std::size_t i = 0; i < f.vars.size(); ++i) {
    if (evidence.count(f.vars[i])) {
      any = true;
    } else {
      kept.push_back(f.vars[i]);
      kept_cards.push_back(f.cards[i]);
    }
  }
  if (!any) return f;

  Factor out;
  out.vars = kept;
  out.cards = kept_cards;
  std::size_t out_size = 1;
  for (int c : kept_cards) out_size *= c;
  out.values.assign(out_size, 0.0);

  std::vector<int> assign(f.vars.size(), 0);
  for (std::size_t i = 0; i < f.vars.size(); ++i) {
    auto it = evidence.find(f.vars[i]);
    if (it != evidence.end()) assign[i] = it->second;
  }
  // Walk the kept variables and read through to the full table.
  std::vector<std::size_t> kept_pos;
  for (std::size_t i = 0; i < f.vars.size(); ++i)
    if (!evidence.count(f.vars[i])) kept_pos.push_back(i);

  for (std::size_t out_index = 0; out_index < out_size; ++out_index) {
    std::size_t rest = out_index;
    for (std::size_t k = kept_pos.size(); k-- > 0;) {
      assign[kept_pos[k]] = static_cast<int>(rest % kept_cards[k]);
      rest /= kept_cards[k];
    }
    std::size_t in_index = 0;
    for (std::size_t i = 0; i < f.vars.size(); ++i)
      in_index = in_index * f.cards[i] + assign[i];
    out.values[out_index] = f.values[in_index];
  }
  return out;
}

// Multiplies a set of factors and sums out `var` (pass -1 to sum nothing).
Factor multiply_and_marginalize(const std::vector<const Factor*>& factors,
                                int var) {
  // Union of variables, ascending node index, minus the eliminated one.
  std::vector<int> vars;
  std::vector<int> cards;
  for (const Factor* f : factors) {
    for (std::size_t i = 0; i < f->vars.size(); ++i) {
      if (f->vars[i] == var) continue;
      auto it = std::lower_bound(vars.begin(), vars.end(), f->vars[i]);
      if (it == vars.end() || *it != f->vars[i]) {
        std::size_t pos = it - vars.begin();
        vars.insert(it, f->vars[i]);
        cards.insert(cards.begin() + pos, f->cards[i]);
      }
    }
  }
  int var_card = 0;
  for (const Factor* f : factors) {
    for (std::size_t i = 0; i < f->vars.size(); ++i)
      if (f->vars[i] == var) var_card = f->cards[i];
  }

  Factor out;
  out.vars = vars;
  out.cards = cards;
  std::size_t out_size = 1;
  for (int c : cards) out_size *= c;
  out.values.assign(out_size, 0.0);

  // Per-factor index strides for each output variable and for `var`.
  struct Reader {
    const Factor* f;
    std::vector<std::size_t> out_stride;  // stride in f per output var
    std::size_t var_stride = 0;
  };
  std::vector<Reader> readers;
  for (const Factor* f : factors) {
    Reader r;
    r.f = f;
    r.out_stride.assign(vars.size(), 0);
    std::size_t stride = 1;
    for (std::size_t i = f->vars.size(); i-- > 0;) {
      if (f->vars[i] == var) {
        r.var_stride = stride;
      } else {
        auto it = std::lower_bound(vars.begin(), vars.end(), f->vars[i]);
        r.out_stride[it - vars.begin()] = stride;
      }
      stride *= f->cards[i];
    }
    readers.push_back(std::move(r));
  }

  std::vector<int> assign(vars.size(), 0);
  for (std::size_t out_index = 0; out_index < out_size; ++out_index) {
    std::size_t rest = out_index;
    for (std::size_t k = vars.size(); k-- > 0;) {
      assign[k] = static_cast<int>(rest % cards[k]);
      rest /= cards[k];
    }
    std::vector<std::size_t> base(readers.size(), 0);
    for (std::size_t r = 0; r < readers.size(); ++r) {
      std::size_t idx = 0;
      for (std::size_t k = 0; k < vars.size(); ++k)
        idx += readers[r].out_stride[k] * assign[k];
      base[r] = idx;
    }
    double total;
    if (var_card == 0) {
      total = 1.0;
      for (std::size_t r = 0; r < readers.size(); ++r)
        total *= readers[r].f->values[base[r]];
    } else {
      total = 0.0;
      for (int s = 0; s < var_card; ++s) {
        double prod = 1.0;
        for (std::size_t r = 0; r < readers.size(); ++r)
          prod *= readers[r].f->values[base[r] + readers[r].var_stride * s];
        total += prod;
      }
    }
    out.values[out_index] = total;
  }
  return out;
}

void check_query(const NetworkDefinition& net, int target, int target_state,
                 const Evidence& evidence) {
  if (target < 0 || target >= net.node_count()) {
    throw ValidationError("query target node index " + std::to_string(target) +
                          " out of range in network '" + net.name() + "'");
  }
  if (target_state < 0 || target_state >= net.state_count(target)) {
    throw ValidationError("query target state index out of range for node '" +
                          net.node(target).name + "'");
  }
  for (const auto& [node, state] : evidence) {
    if (node < 0 || node >= net.node_count()) {
      throw ValidationError("evidence node index " + std::to_string(node) +
                            " out of range");
    }
    if (state < 0 || state >= net.state_count(node)) {
      throw ValidationError("evidence state index out of range for node '" +
                            net.node(node).name + "'");
    }
  }
}

std::string describe_evidence(const NetworkDefinition& net,
                              const Evidence& evidence) {
  std::string out = "{";
  bool first = true;
  for (const auto& [node, state] : evidence) {
    if (!first) out += ", ";
    first = false;
    out += net.node(node).name + "=" + net.node(node).states[state];
  }
  return out + "}";
}

// Eliminates every variable not in `keep` by repeated min-degree picks and
// returns the product of what remains, marginalized over nothing.
Factor eliminate_all_but(const NetworkDefinition& net, const Evidence& evidence,
                         int keep) {
  std::vector<Factor> pool;
  pool.reserve(net.node_count());
  for (int v = 0; v < net.node_count(); ++v)
    pool.push_back(reduce(cpt_factor(net, v), evidence));

  std::set<int> pending;
  for (int v = 0; v < net.node_count(); ++v)
    if (v != keep && !evidence.count(v)) pending.insert(v);

  while (!pending.empty()) {
    // Min-degree: fewest distinct co-occurring pending-or-kept variables.
    // Ties break to the lowest declared node index (std::set iterates
    // ascending, strict < keeps the first minimum).
    int best = -1;
    int best_degree = std::numeric_limits<int>::max();
    for (int v : pending) {
      std::set<int> neighbours;
      for (const Factor& f : pool) {
        if (std::find(f.vars.begin(), f.vars.end(), v) == f.vars.end())
          continue;
        neighbours.insert(f.vars.begin(), f.vars.end());
      }
      neighbours.erase(v);
      int degree = static_cast<int>(neighbours.size());
      if (degree < best_degree) {
        best_degree = degree;
        best = v;
      }
    }

    std::vector<const Factor*> involved;
    std::vector<Factor> rest;
    for (Factor& f : pool) {
      if (std::find(f.vars.begin(), f.vars.end(), best) != f.vars.end()) {
        involved.push_back(&f);
      } else {
        rest.push_back(std::move(f));
      }
    }
    Factor merged = multiply_and_marginalize(involved, best);
    rest.push_back(std::move(merged));
    pool = std::move(rest);
    pending.erase(best);
  }

  std::vector<const Factor*> remaining;
  for (const Factor& f : pool) remaining.push_back(&f);
  return multiply_and_marginalize(remaining, -1);
}

}  // namespace

double posterior(const NetworkDefinition& net, int target, int target_state,
                 const Evidence& evidence) {
  check_query(net, target, target_state, evidence);

  auto observed = evidence.find(target);
  if (observed != evidence.end()) {
    // The target itself is observed: the answer is an indicator, but the
    // evidence must still be possible.
    Factor f = eliminate_all_but(net, evidence, -1);
    double mass = 0.0;
    for (double v : f.values) mass += v;
    if (mass <= 0.0) {
      throw ZeroProbabilityEvidence("evidence " +
                                    describe_evidence(net, evidence) +
                                    " has probability zero in network '" +
                                    net.name() + "'");
    }
    return observed->second == target_state ? 1.0 : 0.0;
  }

  Factor f = eliminate_all_but(net, evidence, target);
  double norm = 0.0;
  for (double v : f.values) norm += v;
  if (norm <= 0.0) {
    throw ZeroProbabilityEvidence("evidence " +
                                  describe_evidence(net, evidence) +
                                  " has probability zero in network '" +
                                  net.name() + "'");
  }
  // f is over {target} alone; its vars may be empty only if target was
  // evidenced, handled above.
  return f.values[target_state] / norm;
}

double enumerate_joint(const NetworkDefinition& net, int target,
                       int target_state, const Evidence& evidence) {
  check_query(net, target, target_state, evidence);
  if (net.joint_configuration_count() > static_cast<double>(1 << 24)) {
    throw StateSpaceTooLarge("network '" + net.name() + "' has " +
                             std::to_string(net.joint_configuration_count()) +
                             " joint configurations; the enumeration oracle "
                             "caps at 2^24");
  }

  const int n = net.node_count();
  std::vector<int> assign(n, 0);
  double numerator = 0.0;
  double denominator = 0.0;
  while (true) {
    bool consistent = true;
    for (const auto& [node, state] : evidence) {
      if (assign[node] != state) {
        consistent = false;
        break;
      }
    }
    if (consistent) {
      double p = 1.0;
      for (int v = 0; v < n; ++v) {
        const Cpt& cpt = net.cpt(v);
        std::size_t row = 0;
        for (int parent : cpt.parents)
          row = row * net.state_count(parent) + assign[parent];
        p *= cpt.rows[row][assign[v]];
      }
      denominator += p;
      if (assign[target] == target_state) numerator += p;
    }
    // Next configuration, first node slowest.
    int pos = n - 1;
    while (pos >= 0) {
      if (++assign[pos] < net.state_count(pos)) break;
      assign[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }

  if (denominator <= 0.0) {
    throw ZeroProbabilityEvidence("evidence " +
                                  describe_evidence(net, evidence) +
                                  " has probability zero in network '" +
                                  net.name() + "'");
  }
  return numerator / denominator;
}

PosteriorCache::PosteriorCache(std::shared_ptr<const NetworkDefinition> net)
    : net_(std::move(net)) {
  if (!net_) throw ValidationError("PosteriorCache requires a network");
}

std::size_t PosteriorCache::KeyHash::operator()(
    const std::vector<int>& key) const {
  // FNV-1a over the int sequence.
  std::uint64_t h = 1469598103934665603ull;
  for (int v : key) {
    for (int b = 0; b < 4; ++b) {
      h ^= static_cast<std::uint64_t>((static_cast<std::uint32_t>(v) >> (8 * b)) & 0xff);
      h *= 1099511628211ull;
    }
  }
  return static_cast<std::size_t>(h);
}

double PosteriorCache::posterior(int target, int target_state,
                                 const Evidence& evidence) {
  std::vector<int> key;
  key.reserve(2 + 2 * evidence.size());
  key.push_back(target);
  key.push_back(target_state);
  for (const auto& [node, state] : evidence) {
    key.push_back(node);
    key.push_back(state);
  }
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  double value = norman::posterior(*net_, target, target_state, evidence);
  cache_.emplace(std::move(key), value);
  return value;
}

double PosteriorCache::hypothesis_posterior(const std::map<int, bool>& known) {
  if (!net_->roles()) {
    throw ValidationError("network '" + net_->name() +
                          "' has no role assignment");
  }
  const RoleAssignment& roles = *net_->roles();
  return posterior(roles.hypothesis, roles.hypothesis_true_state,
                   evidence_to_assignment(*net_, known));
}

}  // namespace norman
