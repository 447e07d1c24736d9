#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mplex/network.hpp"
#include "mplex/solver.hpp"

namespace testsupport {

// Seeded source whose draws do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [lo, hi).
  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  // Uniform in [lo, hi].
  std::size_t index(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(engine_() % (hi - lo + 1));
  }
  bool coin(double p) { return uniform() < p; }

  std::vector<std::size_t> permutation(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

// Strictly positive symmetric layers (diagonal included), entries in [lo, hi).
mplex::MultiplexNetwork random_positive_network(Rng& rng, std::size_t n, std::size_t num_layers,
                                                double lo = 0.1, double hi = 1.0);

// Each off-diagonal pair present in a layer with probability p, weight in
// [0.5, 1.5).
mplex::MultiplexNetwork random_sparse_network(Rng& rng, std::size_t n, std::size_t num_layers,
                                              double p);

// Random spanning tree whose edges land in random layers, plus sparse
// extra edges: the aggregate is connected, layers usually are not.
mplex::MultiplexNetwork random_connected_aggregate(Rng& rng, std::size_t n,
                                                   std::size_t num_layers, double extra_p);

// Random strictly positive pair, not normalized.
mplex::NodeLayerScores random_positive_pair(Rng& rng, std::size_t n, std::size_t num_layers);

// Two disjoint edges {1,2} in layer 1 and {3,4} in layer 2.
mplex::MultiplexNetwork explanatory_multiplex();

}  // namespace testsupport
