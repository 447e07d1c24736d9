#include "mplex/baselines.hpp"

#include <string>

#include "mplex/error.hpp"

namespace mplex {

namespace {

Eigen::Index as_index(std::size_t i) { return static_cast<Eigen::Index>(i); }

Vector ones(std::size_t size) { return Vector::Ones(as_index(size)); }

void normalize_in_place(Vector& v) {
  const double s = v.sum();
  if (s > 0.0) v /= s;
}

std::string describe(const PerronResult& r) {
  if (r.reducible && r.plateau) return "reducible matrix and stalled power iteration";
  if (r.reducible) return "reducible matrix (graph not strongly connected)";
  if (r.plateau) return "power iteration stalled (non-simple dominant eigenvalue suspected)";
  return "power iteration did not converge";
}

// Fills column `col` of `out` from a Perron problem on `m`; zero matrices
// give a zero, flagged column.
void perron_column(const SparseMatrix& m, const PerronOptions& options, std::size_t col,
                   const std::string& what, CentralityMatrix& out) {
  if (m.nonZeros() == 0) {
    out.column_degenerate[col] = true;
    out.warnings.push_back(what + ": matrix is zero, column set to zero");
    return;
  }
  const PerronResult r = matrix_perron(m, options);
  out.scores.col(as_index(col)) = r.vector;
  if (r.degenerate_warning || !r.converged) {
    out.column_degenerate[col] = true;
    out.warnings.push_back(what + ": " + describe(r));
  }
}

CentralityMatrix empty_matrix(const MultiplexNetwork& net, std::string name) {
  CentralityMatrix out;
  out.scores = DenseMatrix::Zero(as_index(net.num_nodes()), as_index(net.num_layers()));
  out.measure_name = std::move(name);
  out.column_degenerate.assign(net.num_layers(), false);
  return out;
}

void finish(CentralityMatrix& out) {
  for (bool flag : out.column_degenerate) out.degenerate_warning = out.degenerate_warning || flag;
}

void check_omega(const MultiplexNetwork& net, const Vector& omega) {
  if (static_cast<std::size_t>(omega.size()) != net.num_layers()) {
    throw DimensionError("weight vector has length " + std::to_string(omega.size()) +
                         ", expected " + std::to_string(net.num_layers()));
  }
  if (!omega.allFinite() || (omega.array() <= 0.0).any()) {
    throw ValidationError("layer weights must be positive and finite");
  }
}

}  // namespace

CentralityMatrix layer_eigenvectors(const MultiplexNetwork& net, const PerronOptions& options) {
  CentralityMatrix out = empty_matrix(net, "layer_eig");
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    perron_column(net.layer(l), options, l, "layer " + net.layer_label(l), out);
  }
  finish(out);
  return out;
}

NodeScores eig_cen(const MultiplexNetwork& net, const Vector& omega,
                   const PerronOptions& options) {
  check_omega(net, omega);
  const CentralityMatrix q = layer_eigenvectors(net, options);
  NodeScores out;
  out.measure_name = "eig_cen";
  out.scores = q.scores * omega;
  normalize_in_place(out.scores);
  out.degenerate_warning = q.degenerate_warning;
  out.warnings = q.warnings;
  return out;
}

NodeScores eig_cen(const MultiplexNetwork& net) { return eig_cen(net, ones(net.num_layers())); }

NodeScores agg_eig(const MultiplexNetwork& net, const Vector& omega,
                   const PerronOptions& options) {
  const SparseMatrix agg = aggregate_matrix(net, omega);
  const PerronResult r = matrix_perron(agg, options);
  NodeScores out;
  out.measure_name = "agg_eig";
  out.scores = r.vector;
  out.degenerate_warning = r.degenerate_warning || !r.converged;
  if (out.degenerate_warning) out.warnings.push_back("aggregate matrix: " + describe(r));
  return out;
}

NodeScores agg_eig(const MultiplexNetwork& net) { return agg_eig(net, ones(net.num_layers())); }

CentralityMatrix local_heterogeneous(const MultiplexNetwork& net, const InfluenceMatrix& w,
                                     const PerronOptions& options) {
  const std::size_t num_layers = net.num_layers();
  if (w.size() != num_layers) {
    throw DimensionError("influence matrix size " + std::to_string(w.size()) +
                         " does not match " + std::to_string(num_layers) + " layers");
  }
  for (std::size_t l = 0; l < num_layers; ++l) {
    if (w.matrix().row(as_index(l)).sum() == 0.0) {
      throw ValidationError("influence matrix row " + std::to_string(l + 1) +
                            " is zero (empty mixture)");
    }
  }
  CentralityMatrix out = empty_matrix(net, "local_het");
  const auto n = as_index(net.num_nodes());
  for (std::size_t l = 0; l < num_layers; ++l) {
    SparseMatrix mixture(n, n);
    for (std::size_t k = 0; k < num_layers; ++k) {
      if (w(l, k) != 0.0) mixture += w(l, k) * net.layer(k);
    }
    mixture.prune(0.0, 0.0);
    perron_column(mixture, options, l, "layer " + net.layer_label(l) + " mixture", out);
  }
  finish(out);
  return out;
}

CentralityMatrix global_heterogeneous(const MultiplexNetwork& net, const InfluenceMatrix& w,
                                      const PerronOptions& options) {
  const SparseMatrix kr = khatri_rao_influence(net, w);
  const PerronResult r = matrix_perron(kr, options);
  CentralityMatrix out = empty_matrix(net, "global_het");
  const auto n = as_index(net.num_nodes());
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    Vector col = r.vector.segment(as_index(l) * n, n);
    normalize_in_place(col);
    out.scores.col(as_index(l)) = col;
  }
  if (r.degenerate_warning || !r.converged) {
    out.column_degenerate.assign(net.num_layers(), true);
    out.warnings.push_back("Khatri-Rao influence matrix: " + describe(r));
  }
  finish(out);
  return out;
}

CentralityMatrix versatility_matrix(const MultiplexNetwork& net, const PerronOptions& options) {
  const PerronResult r = matrix_perron(supra_adjacency(net), options);
  CentralityMatrix out = empty_matrix(net, "eig_ver");
  out.scores = Eigen::Map<const DenseMatrix>(r.vector.data(), as_index(net.num_nodes()),
                                             as_index(net.num_layers()));
  const bool aggregate_disconnected = !connectivity(net).aggregate_connected;
  if (r.degenerate_warning || !r.converged || aggregate_disconnected) {
    out.column_degenerate.assign(net.num_layers(), true);
    out.warnings.push_back(
        aggregate_disconnected
            ? std::string("supra-adjacency matrix is reducible (aggregate graph disconnected); "
                          "the versatility vector is not unique")
            : "supra-adjacency matrix: " + describe(r));
  }
  finish(out);
  return out;
}

NodeScores eig_versatility(const MultiplexNetwork& net, const Vector& omega,
                           const PerronOptions& options) {
  check_omega(net, omega);
  const CentralityMatrix f = versatility_matrix(net, options);
  NodeScores out;
  out.measure_name = "eig_ver";
  out.scores = f.scores * omega;
  normalize_in_place(out.scores);
  out.degenerate_warning = f.degenerate_warning;
  out.warnings = f.warnings;
  return out;
}

NodeScores eig_versatility(const MultiplexNetwork& net) {
  return eig_versatility(net, ones(net.num_layers()));
}

NodeScores agg_deg_centrality(const MultiplexNetwork& net) {
  NodeScores out;
  out.measure_name = "agg_deg";
  out.scores = aggregate_degree(net);
  if (!(out.scores.sum() > 0.0)) out.warnings.push_back("network has no edges");
  normalize_in_place(out.scores);
  return out;
}

}  // namespace mplex
