#pragma once

#include <string>
#include <vector>

#include "mplex/network.hpp"
#include "mplex/perron.hpp"

namespace mplex {

/// n x L matrix of node scores, one column per layer or context.
struct CentralityMatrix {
  DenseMatrix scores;
  std::string measure_name;
  /// Per column: the underlying Perron problem was degenerate (or the
  /// column is zero because its matrix is).
  std::vector<bool> column_degenerate;
  bool degenerate_warning = false;
  std::vector<std::string> warnings;
};

/// A 1-norm normalized node score vector with its diagnostics.
struct NodeScores {
  Vector scores;
  std::string measure_name;
  bool degenerate_warning = false;
  std::vector<std::string> warnings;
};

/// Columns are the Perron vectors of the individual layers; empty layers
/// give zero columns.
CentralityMatrix layer_eigenvectors(const MultiplexNetwork& net, const PerronOptions& options = {});

/// Q omega, normalized.
NodeScores eig_cen(const MultiplexNetwork& net, const Vector& omega,
                   const PerronOptions& options = {});
NodeScores eig_cen(const MultiplexNetwork& net);

/// Perron vector of the aggregate matrix A_agg(omega).
NodeScores agg_eig(const MultiplexNetwork& net, const Vector& omega,
                   const PerronOptions& options = {});
NodeScores agg_eig(const MultiplexNetwork& net);

/// Column l is the Perron vector of sum_k w_{lk} A^(k). Throws
/// ValidationError when W has a zero row.
CentralityMatrix local_heterogeneous(const MultiplexNetwork& net, const InfluenceMatrix& w,
                                     const PerronOptions& options = {});

/// Perron vector of the Khatri-Rao influence matrix reshaped column-major
/// into n x L (entry (i, l) is position l*n + i), columns normalized.
CentralityMatrix global_heterogeneous(const MultiplexNetwork& net, const InfluenceMatrix& w,
                                      const PerronOptions& options = {});

/// Perron vector of the supra-adjacency matrix reshaped into F (n x L);
/// returns F omega normalized.
NodeScores eig_versatility(const MultiplexNetwork& net, const Vector& omega,
                           const PerronOptions& options = {});
NodeScores eig_versatility(const MultiplexNetwork& net);

/// The raw n x L versatility matrix F, normalized to total mass 1.
CentralityMatrix versatility_matrix(const MultiplexNetwork& net,
                                    const PerronOptions& options = {});

/// Aggregate degree normalized to 1-norm 1.
NodeScores agg_deg_centrality(const MultiplexNetwork& net);

}  // namespace mplex
