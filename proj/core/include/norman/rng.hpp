#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace norman {

// Deterministic random stream with a fixed draw discipline: every call below
// consumes exactly one engine step, so the number of engine steps taken by a
// simulation is a function of the model trajectory alone. This is what makes
// byte-identical replay from a seed possible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [0, 1), 53 random bits, one engine step.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // True with probability p. p=0 never fires, p=1 always does.
  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, n), one engine step (multiply-shift reduction).
  std::uint32_t uniform_int(std::uint32_t n) {
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

  // Fisher-Yates, back to front; size-1 engine steps.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = uniform_int(static_cast<std::uint32_t>(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used for seed derivation only, never as a run stream.
std::uint64_t splitmix64(std::uint64_t x);

// Pure function from (master seed, cell index, repetition index, domain) to a
// run-stream seed. Domain 0 is the per-run stream; domains 1..3 seed the
// world / social-network / initial-evidence components when an experiment
// reuses them across repetitions. Any single run of a sweep can be reproduced
// in isolation from these four values.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell,
                          std::uint64_t repetition, std::uint64_t domain);

inline constexpr std::uint64_t kSeedDomainRun = 0;
inline constexpr std::uint64_t kSeedDomainWorld = 1;
inline constexpr std::uint64_t kSeedDomainGraph = 2;
inline constexpr std::uint64_t kSeedDomainInitialEvidence = 3;

}  // namespace norman
