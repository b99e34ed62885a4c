#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "netforge/types.hpp"

namespace netforge {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_name(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// One deterministic random stream.
class RngStream {
 public:
  RngStream() = default;
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::mt19937_64& engine() { return engine_; }

  Real uniform() { return std::uniform_real_distribution<Real>(0.0, 1.0)(engine_); }
  Real uniform(Real lo, Real hi) {
    return std::uniform_real_distribution<Real>(lo, hi)(engine_);
  }
  // Inclusive bounds.
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  Real normal() { return std::normal_distribution<Real>(0.0, 1.0)(engine_); }
  long poisson(Real mean) {
    if (mean <= 0.0) return 0;
    return std::poisson_distribution<long>(mean)(engine_);
  }

 private:
  std::mt19937_64 engine_{0};
};

// Named substreams split from one master seed, so adding a consumer to one
// stream never perturbs the draws seen by the others.
struct RngBundle {
  RngStream sojourn;
  RngStream green;
  RngStream policy;
  RngStream templates;

  explicit RngBundle(std::uint64_t master)
      : sojourn(derive_seed(master, "sojourn")),
        green(derive_seed(master, "green")),
        policy(derive_seed(master, "policy")),
        templates(derive_seed(master, "templates")) {}

  static std::uint64_t derive_seed(std::uint64_t master, std::string_view name) {
    return splitmix64(master ^ hash_name(name));
  }
  static RngStream derive(std::uint64_t master, std::string_view name) {
    return RngStream(derive_seed(master, name));
  }
};

}  // namespace netforge
