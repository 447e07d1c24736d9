#pragma once

#include <Eigen/Dense>

#include "mplex/network.hpp"
#include "mplex/solver.hpp"

namespace mplex {

/// Hilbert projective distance ln(max_i x_i/u_i * max_j u_j/x_j) over the
/// common support. Zero when both vectors are zero. Throws DomainError if
/// the supports differ or an entry is negative.
double hilbert_distance(const Vector& x, const Vector& u);

/// b_1 d(p.x, q.x) + b_2 d(p.t, q.t).
double product_metric(const NodeLayerScores& p, const NodeLayerScores& q,
                      const Eigen::Vector2d& weights);

}  // namespace mplex
