#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace mplex {

using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// One weighted entry of the adjacency tensor, 0-based.
struct Edge {
  std::size_t layer = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  double weight = 1.0;
};

/// Undirected weighted multiplex network: n nodes shared by L layers, each
/// layer a symmetric non-negative sparse matrix with both triangles stored.
///
/// Instances are immutable once constructed and can be shared between
/// threads for reading.
class MultiplexNetwork {
 public:
  /// Validates symmetry, finiteness and non-negativity of every layer and
  /// prunes explicit zeros. Throws ValidationError / DimensionError.
  MultiplexNetwork(std::size_t num_nodes, std::vector<SparseMatrix> layers,
                   std::vector<std::string> node_labels = {},
                   std::vector<std::string> layer_labels = {});

  std::size_t num_nodes() const noexcept { return n_; }
  std::size_t num_layers() const noexcept { return layers_.size(); }

  const SparseMatrix& layer(std::size_t l) const { return layers_.at(l); }
  const std::vector<SparseMatrix>& layers() const noexcept { return layers_; }

  /// Entry A_{ij}^{(l)}; zero when not stored.
  double weight(std::size_t l, std::size_t i, std::size_t j) const;

  /// Number of stored (nonzero) entries across all layers, both triangles.
  std::size_t num_stored_entries() const noexcept;

  bool is_empty() const noexcept { return num_stored_entries() == 0; }

  const std::vector<std::string>& node_labels() const noexcept { return node_labels_; }
  const std::vector<std::string>& layer_labels() const noexcept { return layer_labels_; }

  /// Label of node i, falling back to its 1-based index.
  std::string node_label(std::size_t i) const;
  std::string layer_label(std::size_t l) const;

  /// Copy of this network with new labels (lengths validated).
  MultiplexNetwork with_labels(std::vector<std::string> node_labels,
                               std::vector<std::string> layer_labels) const;

  /// Tensor entries (l, i, j, w) for every stored entry, in layer/column order.
  std::vector<Edge> entries() const;

 private:
  std::size_t n_;
  std::vector<SparseMatrix> layers_;
  std::vector<std::string> node_labels_;
  std::vector<std::string> layer_labels_;
};

/// Non-negative L x L matrix W; w(l, k) is the influence of layer k on layer l.
class InfluenceMatrix {
 public:
  explicit InfluenceMatrix(DenseMatrix w);

  static InfluenceMatrix identity(std::size_t num_layers);
  static InfluenceMatrix ones(std::size_t num_layers);

  std::size_t size() const noexcept { return static_cast<std::size_t>(w_.rows()); }
  double operator()(std::size_t l, std::size_t k) const {
    return w_(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(k));
  }
  const DenseMatrix& matrix() const noexcept { return w_; }

 private:
  DenseMatrix w_;
};

struct ConnectivityDiagnostics {
  /// Connected over all n nodes (isolated nodes make a layer disconnected).
  std::vector<bool> layer_connected;
  bool aggregate_connected = false;
  std::vector<std::size_t> isolated_nodes;
  std::vector<std::size_t> empty_layers;
};

/// Builds a network from 0-based tensor entries. Each entry is inserted
/// symmetrically; duplicates accumulate; self-loops are kept.
/// Throws InputError for out-of-range indices and ValidationError for
/// negative or non-finite weights.
MultiplexNetwork build_network(std::size_t num_nodes, std::size_t num_layers,
                               std::span<const Edge> edges);

/// sum_l omega_l A^{(l)}.
SparseMatrix aggregate_matrix(const MultiplexNetwork& net, const Vector& omega);

/// A_agg(1) 1, the total incident weight of each node across layers.
Vector aggregate_degree(const MultiplexNetwork& net);

/// nL x nL matrix diag(A^(1..L)) + (1 1^T - I) (x) I_n. Node i of layer l is
/// row l*n + i.
SparseMatrix supra_adjacency(const MultiplexNetwork& net);

/// nL x nL block matrix whose (l, k) block is w_{lk} A^{(k)}.
SparseMatrix khatri_rao_influence(const MultiplexNetwork& net, const InfluenceMatrix& w);

ConnectivityDiagnostics connectivity(const MultiplexNetwork& net);

/// Output entry (i, j, l) equals input entry (sigma[i], sigma[j], pi[l]).
/// Labels follow the same relabeling. Throws ValidationError when sigma or
/// pi is not a bijection of the right size.
MultiplexNetwork permute(const MultiplexNetwork& net, std::span<const std::size_t> sigma,
                         std::span<const std::size_t> pi);

/// Number of connected components of the undirected graph of a symmetric
/// pattern; every node (isolated or not) counts.
std::size_t count_components(const SparseMatrix& symmetric);

}  // namespace mplex
