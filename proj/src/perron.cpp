#include "mplex/perron.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "mplex/error.hpp"

namespace mplex {

namespace {

std::size_t reach_count(const std::vector<std::vector<std::size_t>>& adjacency) {
  std::vector<bool> seen(adjacency.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : adjacency[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count;
}

}  // namespace

bool is_strongly_connected(const SparseMatrix& m) {
  const auto n = static_cast<std::size_t>(m.rows());
  if (n == 0) return false;
  std::vector<std::vector<std::size_t>> out(n);
  std::vector<std::vector<std::size_t>> in(n);
  for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(m, c); it; ++it) {
      if (it.value() == 0.0) continue;
      const auto r = static_cast<std::size_t>(it.row());
      const auto col = static_cast<std::size_t>(it.col());
      out[r].push_back(col);
      in[col].push_back(r);
    }
  }
  return reach_count(out) == n && reach_count(in) == n;
}

PerronResult matrix_perron(const SparseMatrix& m, const PerronOptions& options,
                           const std::optional<Vector>& start) {
  if (m.rows() != m.cols()) throw ValidationError("Perron vector needs a square matrix");
  if (m.rows() == 0) throw ValidationError("Perron vector needs a non-empty matrix");
  bool nonzero = false;
  for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(m, c); it; ++it) {
      if (it.value() < 0.0 || !std::isfinite(it.value())) {
        throw ValidationError("Perron vector needs a finite non-negative matrix");
      }
      nonzero = nonzero || it.value() > 0.0;
    }
  }
  if (!nonzero) throw ValidationError("Perron vector of the zero matrix is undefined");
  if (!(options.tol > 0.0) || options.max_iter == 0 || options.shift < 0.0) {
    throw ValidationError("invalid power-method options");
  }

  const Eigen::Index n = m.rows();
  Vector x;
  if (start) {
    if (start->size() != n || (start->array() <= 0.0).any()) {
      throw ValidationError("power-method start must be a positive vector of matching length");
    }
    x = *start / start->sum();
  } else {
    x = Vector::Constant(n, 1.0 / static_cast<double>(n));
  }

  PerronResult result;
  result.reducible = !is_strongly_connected(m);

  std::vector<double> history;
  Vector y(n);
  for (std::size_t k = 0;; ++k) {
    y.noalias() = m * x;
    const double value = y.sum();
    result.value = value;
    result.iterations = k;
    if (!(value > 0.0)) {
      // M x = 0 for a non-negative x: the iteration collapsed (nilpotent part).
      result.residual = std::numeric_limits<double>::infinity();
      result.plateau = true;
      break;
    }
    result.residual = (y - value * x).lpNorm<Eigen::Infinity>() / value;
    if (result.residual <= options.tol) {
      result.converged = true;
      break;
    }
    history.push_back(result.residual);
    if (options.plateau_window > 0 && history.size() > options.plateau_window &&
        result.residual > 0.99 * history[history.size() - 1 - options.plateau_window]) {
      result.plateau = true;
      break;
    }
    if (k == options.max_iter) break;
    y += options.shift * x;
    x = y / y.sum();
  }
  result.vector = std::move(x);
  result.degenerate_warning = result.reducible || result.plateau;
  return result;
}

}  // namespace mplex
