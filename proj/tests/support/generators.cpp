#include "generators.hpp"

#include <numeric>
#include <utility>

namespace testsupport {

std::vector<std::size_t> Rng::permutation(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[index(0, i - 1)]);
  return p;
}

mplex::MultiplexNetwork random_positive_network(Rng& rng, std::size_t n, std::size_t num_layers,
                                                double lo, double hi) {
  std::vector<mplex::Edge> edges;
  for (std::size_t l = 0; l < num_layers; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) edges.push_back({l, i, j, rng.uniform(lo, hi)});
    }
  }
  return mplex::build_network(n, num_layers, edges);
}

mplex::MultiplexNetwork random_sparse_network(Rng& rng, std::size_t n, std::size_t num_layers,
                                              double p) {
  std::vector<mplex::Edge> edges;
  for (std::size_t l = 0; l < num_layers; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (rng.coin(p)) edges.push_back({l, i, j, rng.uniform(0.5, 1.5)});
      }
    }
  }
  return mplex::build_network(n, num_layers, edges);
}

mplex::MultiplexNetwork random_connected_aggregate(Rng& rng, std::size_t n,
                                                   std::size_t num_layers, double extra_p) {
  std::vector<mplex::Edge> edges;
  const std::vector<std::size_t> order = rng.permutation(n);
  for (std::size_t k = 1; k < n; ++k) {
    const std::size_t parent = order[rng.index(0, k - 1)];
    edges.push_back({rng.index(0, num_layers - 1), parent, order[k], rng.uniform(0.5, 1.5)});
  }
  for (std::size_t l = 0; l < num_layers; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (rng.coin(extra_p)) edges.push_back({l, i, j, rng.uniform(0.5, 1.5)});
      }
    }
  }
  return mplex::build_network(n, num_layers, edges);
}

mplex::NodeLayerScores random_positive_pair(Rng& rng, std::size_t n, std::size_t num_layers) {
  mplex::NodeLayerScores p;
  p.x.resize(static_cast<Eigen::Index>(n));
  p.t.resize(static_cast<Eigen::Index>(num_layers));
  for (Eigen::Index i = 0; i < p.x.size(); ++i) p.x(i) = rng.uniform(0.01, 1.0);
  for (Eigen::Index l = 0; l < p.t.size(); ++l) p.t(l) = rng.uniform(0.01, 1.0);
  return p;
}

mplex::MultiplexNetwork explanatory_multiplex() {
  const std::vector<mplex::Edge> edges{{0, 0, 1, 1.0}, {1, 2, 3, 1.0}};
  return mplex::build_network(4, 2, edges);
}

}  // namespace testsupport
