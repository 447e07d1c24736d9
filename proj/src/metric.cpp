#include "mplex/metric.hpp"

#include <cmath>
#include <string>

#include "mplex/error.hpp"

namespace mplex {

double hilbert_distance(const Vector& x, const Vector& u) {
  if (x.size() != u.size()) {
    throw DimensionError("vectors have lengths " + std::to_string(x.size()) + " and " +
                         std::to_string(u.size()));
  }
  double max_xu = 0.0;
  double max_ux = 0.0;
  bool any = false;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double xi = x(i);
    const double ui = u(i);
    if (xi < 0.0 || ui < 0.0 || !std::isfinite(xi) || !std::isfinite(ui)) {
      throw DomainError("Hilbert distance needs finite non-negative vectors");
    }
    if ((xi > 0.0) != (ui > 0.0)) {
      throw DomainError("Hilbert distance needs identical supports (entry " +
                        std::to_string(i + 1) + " differs)");
    }
    if (xi == 0.0) continue;
    any = true;
    max_xu = std::max(max_xu, xi / ui);
    max_ux = std::max(max_ux, ui / xi);
  }
  if (!any) return 0.0;
  // The product is >= 1 mathematically; clamp rounding below it.
  return std::max(0.0, std::log(max_xu) + std::log(max_ux));
}

double product_metric(const NodeLayerScores& p, const NodeLayerScores& q,
                      const Eigen::Vector2d& weights) {
  if (!(weights(0) > 0.0) || !(weights(1) > 0.0)) {
    throw DomainError("metric weights must be positive");
  }
  return weights(0) * hilbert_distance(p.x, q.x) + weights(1) * hilbert_distance(p.t, q.t);
}

}  // namespace mplex
