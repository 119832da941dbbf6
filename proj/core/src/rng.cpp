#include "norman/rng.hpp"

namespace norman {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell,
                          std::uint64_t repetition, std::uint64_t domain) {
  std::uint64_t z = splitmix64(master ^ 0x243f6a8885a308d3ull * (domain + 1));
  z = splitmix64(z ^ 0x13198a2e03707344ull * (cell + 1));
  z = splitmix64(z ^ 0xa4093822299f31d0ull * (repetition + 1));
  return z;
}

}  // namespace norman
