#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dcenter/model.hpp"

namespace support {

/// Small seeded generator for property tests.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin() { return uniform(0, 1) == 1; }
  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(uniform(0, static_cast<int>(xs.size()) - 1))];
  }
  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

inline dcenter::OmegaParams random_params(Rng& rng, int max_n, int max_m) {
  const int n = rng.uniform(1, max_n);
  return {rng.uniform(1, n), n, rng.uniform(0, max_m)};
}

/// A random existing vertex with coordinates in [-w, w]^2.
inline dcenter::model::Vertex random_vertex(Rng& rng, const dcenter::model::Model& m, int w) {
  const auto families = m.families();
  for (;;) {
    dcenter::model::Vertex v{rng.pick(families), rng.uniform(0, m.index_count() - 1),
                             {rng.uniform(-w, w), rng.uniform(-w, w)}};
    if (m.exists(v)) return v;
  }
}

}  // namespace support
