#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "norman/bayesnet.hpp"

namespace norman {

// Exact conditional probability P(target = target_state | evidence) by
// variable elimination (min-degree ordering, ties to the lowest declared node
// index). With empty evidence this is the marginal. Throws
// ZeroProbabilityEvidence when the evidence has probability zero.
double posterior(const NetworkDefinition& net, int target, int target_state,
                 const Evidence& evidence);

// Same query by summing the full joint distribution. Deliberately naive;
// serves as the independent oracle for the elimination path and is only
// suitable for state spaces up to 2^24 configurations (throws
// StateSpaceTooLarge beyond that).
double enumerate_joint(const NetworkDefinition& net, int target,
                       int target_state, const Evidence& evidence);

// Memoizing front end for posterior(). Queries repeat heavily during a
// simulation run (many agents hold the same evidence), and because inference
// is exact the cache is semantically invisible. Not synchronized: use one
// instance per run/thread. The wrapped network itself is immutable and may be
// shared freely.
class PosteriorCache {
 public:
  explicit PosteriorCache(std::shared_ptr<const NetworkDefinition> net);

  double posterior(int target, int target_state, const Evidence& evidence);

  // P(H = true-state | known evidence truth values), via the role assignment.
  double hypothesis_posterior(const std::map<int, bool>& known);

  const NetworkDefinition& network() const { return *net_; }
  std::shared_ptr<const NetworkDefinition> network_ptr() const { return net_; }
  std::size_t size() const { return cache_.size(); }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<int>& key) const;
  };

  std::shared_ptr<const NetworkDefinition> net_;
  std::unordered_map<std::vector<int>, double, KeyHash> cache_;
};

}  // namespace norman
