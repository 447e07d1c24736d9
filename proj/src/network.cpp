#include "mplex/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mplex/error.hpp"

namespace mplex {

namespace {

using Triplet = Eigen::Triplet<double>;

Eigen::Index as_index(std::size_t i) { return static_cast<Eigen::Index>(i); }

void check_layer(const SparseMatrix& a, std::size_t n, std::size_t l) {
  if (static_cast<std::size_t>(a.rows()) != n || static_cast<std::size_t>(a.cols()) != n) {
    throw DimensionError("layer " + std::to_string(l + 1) + " is " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + ", expected " + std::to_string(n) +
                         "x" + std::to_string(n));
  }
  for (Eigen::Index c = 0; c < a.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(a, c); it; ++it) {
      if (!std::isfinite(it.value()) || it.value() < 0.0) {
        throw ValidationError("layer " + std::to_string(l + 1) +
                              " has a negative or non-finite weight");
      }
    }
  }
  // Both matrices are compressed with sorted inner indices, so a lockstep
  // walk over the columns compares patterns and values exactly.
  const SparseMatrix t = a.transpose();
  for (Eigen::Index c = 0; c < a.outerSize(); ++c) {
    SparseMatrix::InnerIterator ia(a, c);
    SparseMatrix::InnerIterator it(t, c);
    for (; ia && it; ++ia, ++it) {
      if (ia.index() != it.index() || ia.value() != it.value()) {
        throw ValidationError("layer " + std::to_string(l + 1) + " is not symmetric");
      }
    }
    if (ia || it) {
      throw ValidationError("layer " + std::to_string(l + 1) + " is not symmetric");
    }
  }
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

bool is_connected_over_all_nodes(const SparseMatrix& a) {
  if (a.rows() == 0) return false;
  if (a.nonZeros() == 0) return false;
  return count_components(a) == 1;
}

void validate_permutation(std::span<const std::size_t> p, std::size_t size, const char* what) {
  if (p.size() != size) {
    throw ValidationError(std::string(what) + " permutation has length " +
                          std::to_string(p.size()) + ", expected " + std::to_string(size));
  }
  std::vector<bool> seen(size, false);
  for (std::size_t v : p) {
    if (v >= size || seen[v]) {
      throw ValidationError(std::string(what) + " permutation is not a bijection");
    }
    seen[v] = true;
  }
}

}  // namespace

MultiplexNetwork::MultiplexNetwork(std::size_t num_nodes, std::vector<SparseMatrix> layers,
                                   std::vector<std::string> node_labels,
                                   std::vector<std::string> layer_labels)
    : n_(num_nodes),
      layers_(std::move(layers)),
      node_labels_(std::move(node_labels)),
      layer_labels_(std::move(layer_labels)) {
  if (n_ == 0) throw ValidationError("a multiplex needs at least one node");
  if (layers_.empty()) throw ValidationError("a multiplex needs at least one layer");
  if (!node_labels_.empty() && node_labels_.size() != n_) {
    throw DimensionError("expected " + std::to_string(n_) + " node labels, got " +
                         std::to_string(node_labels_.size()));
  }
  if (!layer_labels_.empty() && layer_labels_.size() != layers_.size()) {
    throw DimensionError("expected " + std::to_string(layers_.size()) + " layer labels, got " +
                         std::to_string(layer_labels_.size()));
  }
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    SparseMatrix& a = layers_[l];
    a.prune(0.0, 0.0);
    a.makeCompressed();
    check_layer(a, n_, l);
  }
}

double MultiplexNetwork::weight(std::size_t l, std::size_t i, std::size_t j) const {
  if (l >= layers_.size() || i >= n_ || j >= n_) {
    throw InputError("tensor index out of range");
  }
  return layers_[l].coeff(as_index(i), as_index(j));
}

std::size_t MultiplexNetwork::num_stored_entries() const noexcept {
  std::size_t total = 0;
  for (const auto& a : layers_) total += static_cast<std::size_t>(a.nonZeros());
  return total;
}

std::string MultiplexNetwork::node_label(std::size_t i) const {
  return node_labels_.empty() ? std::to_string(i + 1) : node_labels_.at(i);
}

std::string MultiplexNetwork::layer_label(std::size_t l) const {
  return layer_labels_.empty() ? std::to_string(l + 1) : layer_labels_.at(l);
}

MultiplexNetwork MultiplexNetwork::with_labels(std::vector<std::string> node_labels,
                                               std::vector<std::string> layer_labels) const {
  return MultiplexNetwork(n_, layers_, std::move(node_labels), std::move(layer_labels));
}

std::vector<Edge> MultiplexNetwork::entries() const {
  std::vector<Edge> out;
  out.reserve(num_stored_entries());
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const SparseMatrix& a = layers_[l];
    for (Eigen::Index c = 0; c < a.outerSize(); ++c) {
      for (SparseMatrix::InnerIterator it(a, c); it; ++it) {
        out.push_back({l, static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col()),
                       it.value()});
      }
    }
  }
  return out;
}

InfluenceMatrix::InfluenceMatrix(DenseMatrix w) : w_(std::move(w)) {
  if (w_.rows() != w_.cols()) {
    throw DimensionError("influence matrix must be square");
  }
  if (!w_.allFinite() || (w_.array() < 0.0).any()) {
    throw ValidationError("influence matrix entries must be finite and non-negative");
  }
}

InfluenceMatrix InfluenceMatrix::identity(std::size_t num_layers) {
  return InfluenceMatrix(DenseMatrix::Identity(as_index(num_layers), as_index(num_layers)));
}

InfluenceMatrix InfluenceMatrix::ones(std::size_t num_layers) {
  return InfluenceMatrix(DenseMatrix::Ones(as_index(num_layers), as_index(num_layers)));
}

MultiplexNetwork build_network(std::size_t num_nodes, std::size_t num_layers,
                               std::span<const Edge> edges) {
  if (num_nodes == 0 || num_layers == 0) {
    throw ValidationError("node and layer counts must be positive");
  }
  std::vector<std::vector<Triplet>> triplets(num_layers);
  for (const Edge& e : edges) {
    if (e.layer >= num_layers || e.i >= num_nodes || e.j >= num_nodes) {
      throw InputError("edge (" + std::to_string(e.layer + 1) + ", " + std::to_string(e.i + 1) +
                       ", " + std::to_string(e.j + 1) + ") is out of range for n=" +
                       std::to_string(num_nodes) + ", L=" + std::to_string(num_layers));
    }
    if (!std::isfinite(e.weight) || e.weight < 0.0) {
      throw ValidationError("edge weights must be finite and non-negative");
    }
    if (e.weight == 0.0) continue;
    auto& t = triplets[e.layer];
    t.emplace_back(as_index(e.i), as_index(e.j), e.weight);
    if (e.i != e.j) t.emplace_back(as_index(e.j), as_index(e.i), e.weight);
  }
  std::vector<SparseMatrix> layers;
  layers.reserve(num_layers);
  for (auto& t : triplets) {
    SparseMatrix a(as_index(num_nodes), as_index(num_nodes));
    a.setFromTriplets(t.begin(), t.end());
    layers.push_back(std::move(a));
  }
  return MultiplexNetwork(num_nodes, std::move(layers));
}

SparseMatrix aggregate_matrix(const MultiplexNetwork& net, const Vector& omega) {
  if (static_cast<std::size_t>(omega.size()) != net.num_layers()) {
    throw DimensionError("weight vector has length " + std::to_string(omega.size()) +
                         ", expected " + std::to_string(net.num_layers()));
  }
  if (!omega.allFinite() || (omega.array() <= 0.0).any()) {
    throw ValidationError("layer weights must be positive and finite");
  }
  const auto n = as_index(net.num_nodes());
  SparseMatrix agg(n, n);
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    agg += omega(as_index(l)) * net.layer(l);
  }
  agg.makeCompressed();
  return agg;
}

Vector aggregate_degree(const MultiplexNetwork& net) {
  Vector degree = Vector::Zero(as_index(net.num_nodes()));
  for (const auto& a : net.layers()) {
    for (Eigen::Index c = 0; c < a.outerSize(); ++c) {
      for (SparseMatrix::InnerIterator it(a, c); it; ++it) degree(it.row()) += it.value();
    }
  }
  return degree;
}

SparseMatrix supra_adjacency(const MultiplexNetwork& net) {
  const std::size_t n = net.num_nodes();
  const std::size_t num_layers = net.num_layers();
  std::vector<Triplet> t;
  t.reserve(net.num_stored_entries() + n * num_layers * (num_layers - 1));
  for (std::size_t l = 0; l < num_layers; ++l) {
    const SparseMatrix& a = net.layer(l);
    const auto offset = as_index(l * n);
    for (Eigen::Index c = 0; c < a.outerSize(); ++c) {
      for (SparseMatrix::InnerIterator it(a, c); it; ++it) {
        t.emplace_back(offset + it.row(), offset + it.col(), it.value());
      }
    }
    for (std::size_t k = 0; k < num_layers; ++k) {
      if (k == l) continue;
      for (std::size_t i = 0; i < n; ++i) {
        t.emplace_back(as_index(l * n + i), as_index(k * n + i), 1.0);
      }
    }
  }
  const auto size = as_index(n * num_layers);
  SparseMatrix b(size, size);
  b.setFromTriplets(t.begin(), t.end());
  return b;
}

SparseMatrix khatri_rao_influence(const MultiplexNetwork& net, const InfluenceMatrix& w) {
  const std::size_t n = net.num_nodes();
  const std::size_t num_layers = net.num_layers();
  if (w.size() != num_layers) {
    throw DimensionError("influence matrix is " + std::to_string(w.size()) + "x" +
                         std::to_string(w.size()) + ", expected " + std::to_string(num_layers) +
                         "x" + std::to_string(num_layers));
  }
  std::vector<Triplet> t;
  for (std::size_t l = 0; l < num_layers; ++l) {
    for (std::size_t k = 0; k < num_layers; ++k) {
      const double wlk = w(l, k);
      if (wlk == 0.0) continue;
      const SparseMatrix& a = net.layer(k);
      for (Eigen::Index c = 0; c < a.outerSize(); ++c) {
        for (SparseMatrix::InnerIterator it(a, c); it; ++it) {
          t.emplace_back(as_index(l * n) + it.row(), as_index(k * n) + it.col(),
                         wlk * it.value());
        }
      }
    }
  }
  const auto size = as_index(n * num_layers);
  SparseMatrix m(size, size);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

std::size_t count_components(const SparseMatrix& symmetric) {
  const auto n = static_cast<std::size_t>(symmetric.rows());
  DisjointSets sets(n);
  std::size_t components = n;
  for (Eigen::Index c = 0; c < symmetric.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(symmetric, c); it; ++it) {
      if (it.value() != 0.0 &&
          sets.unite(static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col()))) {
        --components;
      }
    }
  }
  return components;
}

ConnectivityDiagnostics connectivity(const MultiplexNetwork& net) {
  ConnectivityDiagnostics d;
  d.layer_connected.reserve(net.num_layers());
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    const SparseMatrix& a = net.layer(l);
    d.layer_connected.push_back(is_connected_over_all_nodes(a));
    if (a.nonZeros() == 0) d.empty_layers.push_back(l);
  }
  const SparseMatrix agg = aggregate_matrix(net, Vector::Ones(as_index(net.num_layers())));
  d.aggregate_connected = is_connected_over_all_nodes(agg);

  std::vector<bool> has_entry(net.num_nodes(), false);
  for (const auto& a : net.layers()) {
    for (Eigen::Index c = 0; c < a.outerSize(); ++c) {
      for (SparseMatrix::InnerIterator it(a, c); it; ++it) {
        has_entry[static_cast<std::size_t>(it.row())] = true;
      }
    }
  }
  for (std::size_t i = 0; i < net.num_nodes(); ++i) {
    if (!has_entry[i]) d.isolated_nodes.push_back(i);
  }
  return d;
}

MultiplexNetwork permute(const MultiplexNetwork& net, std::span<const std::size_t> sigma,
                         std::span<const std::size_t> pi) {
  const std::size_t n = net.num_nodes();
  const std::size_t num_layers = net.num_layers();
  validate_permutation(sigma, n, "node");
  validate_permutation(pi, num_layers, "layer");

  // Output (i, j, l) reads input (sigma[i], sigma[j], pi[l]); invert sigma to
  // move each stored input entry to its output position.
  std::vector<std::size_t> sigma_inv(n);
  for (std::size_t i = 0; i < n; ++i) sigma_inv[sigma[i]] = i;

  std::vector<SparseMatrix> layers;
  layers.reserve(num_layers);
  for (std::size_t l = 0; l < num_layers; ++l) {
    const SparseMatrix& src = net.layer(pi[l]);
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(src.nonZeros()));
    for (Eigen::Index c = 0; c < src.outerSize(); ++c) {
      for (SparseMatrix::InnerIterator it(src, c); it; ++it) {
        t.emplace_back(as_index(sigma_inv[static_cast<std::size_t>(it.row())]),
                       as_index(sigma_inv[static_cast<std::size_t>(it.col())]), it.value());
      }
    }
    SparseMatrix a(as_index(n), as_index(n));
    a.setFromTriplets(t.begin(), t.end());
    layers.push_back(std::move(a));
  }

  std::vector<std::string> node_labels;
  if (!net.node_labels().empty()) {
    for (std::size_t i = 0; i < n; ++i) node_labels.push_back(net.node_labels()[sigma[i]]);
  }
  std::vector<std::string> layer_labels;
  if (!net.layer_labels().empty()) {
    for (std::size_t l = 0; l < num_layers; ++l) layer_labels.push_back(net.layer_labels()[pi[l]]);
  }
  return MultiplexNetwork(n, std::move(layers), std::move(node_labels), std::move(layer_labels));
}

}  // namespace mplex
