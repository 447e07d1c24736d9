#pragma once

#include <cstddef>
#include <optional>

#include "mplex/network.hpp"

namespace mplex {

struct PerronOptions {
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  /// Iterations over which the eigen-residual must drop by at least 1%
  /// before the run is declared stalled.
  std::size_t plateau_window = 200;
  /// The iteration multiplies by (M + shift I). A positive shift keeps the
  /// Perron root strictly dominant on bipartite (periodic) graphs without
  /// changing any eigenvector.
  double shift = 1.0;
};

struct PerronResult {
  /// Dominant eigenvalue estimate ||M v||_1 of the original matrix.
  double value = 0.0;
  /// Non-negative, 1-norm 1.
  Vector vector;
  bool converged = false;
  /// Reducible pattern or a stalled iteration: the Perron vector may be
  /// neither unique nor positive.
  bool degenerate_warning = false;
  bool reducible = false;
  bool plateau = false;
  std::size_t iterations = 0;
  /// ||M v - value v||_max / value at the returned vector.
  double residual = 0.0;
};

/// Power iteration with 1-norm normalization from the uniform positive
/// vector (or `start`). Stops when ||M v - value v||_max <= tol * value.
/// Throws ValidationError for a zero, non-square or negative matrix.
PerronResult matrix_perron(const SparseMatrix& m, const PerronOptions& options = {},
                           const std::optional<Vector>& start = std::nullopt);

/// True when the directed graph with an arc i -> j for every nonzero m(i, j)
/// is strongly connected.
bool is_strongly_connected(const SparseMatrix& m);

}  // namespace mplex
