#include "mplex/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mplex/error.hpp"

namespace mplex {

std::vector<std::size_t> Ranking::positions() const {
  std::vector<std::size_t> pos(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) pos[order[r]] = r;
  return pos;
}

Ranking rank(const Vector& scores) {
  if (!scores.allFinite()) throw ValidationError("cannot rank non-finite scores");
  Ranking r;
  r.scores = scores;
  r.order.resize(static_cast<std::size_t>(scores.size()));
  std::iota(r.order.begin(), r.order.end(), std::size_t{0});
  std::stable_sort(r.order.begin(), r.order.end(), [&](std::size_t a, std::size_t b) {
    return scores(static_cast<Eigen::Index>(a)) > scores(static_cast<Eigen::Index>(b));
  });
  return r;
}

double pearson(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionError("correlated vectors differ in length");
  if (a.size() < 2) throw DimensionError("correlation needs at least two entries");
  const Vector da = a.array() - a.mean();
  const Vector db = b.array() - b.mean();
  const double saa = da.squaredNorm();
  const double sbb = db.squaredNorm();
  if (saa == 0.0 || sbb == 0.0) {
    throw DomainError("correlation is undefined for a constant vector");
  }
  const double r = da.dot(db) / std::sqrt(saa * sbb);
  return std::clamp(r, -1.0, 1.0);
}

std::vector<double> isim_curve(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  const std::size_t len = std::min(a.size(), b.size());
  std::size_t universe = 0;
  for (std::size_t v : a) universe = std::max(universe, v + 1);
  for (std::size_t v : b) universe = std::max(universe, v + 1);
  std::vector<char> in_a(universe, 0);
  std::vector<char> in_b(universe, 0);

  std::vector<double> curve;
  curve.reserve(len);
  std::size_t common = 0;
  double running = 0.0;
  for (std::size_t k = 1; k <= len; ++k) {
    const std::size_t x = a[k - 1];
    const std::size_t y = b[k - 1];
    if (in_a[x] || in_b[y]) throw ValidationError("ranked lists must not repeat an index");
    in_a[x] = 1;
    if (in_b[x]) ++common;
    in_b[y] = 1;
    if (in_a[y]) ++common;
    // |A_k symdiff B_k| = 2 (k - |A_k intersect B_k|)
    running += static_cast<double>(k - common) / static_cast<double>(k);
    curve.push_back(running / static_cast<double>(k));
  }
  return curve;
}

std::vector<double> isim_curve(const Ranking& a, const Ranking& b) {
  return isim_curve(a.order, b.order);
}

double intersection_similarity(std::span<const std::size_t> a, std::span<const std::size_t> b,
                               std::size_t k) {
  if (k == 0 || k > a.size() || k > b.size()) {
    throw ValidationError("K=" + std::to_string(k) + " is outside 1.." +
                          std::to_string(std::min(a.size(), b.size())));
  }
  return isim_curve(a.first(k), b.first(k)).back();
}

double intersection_similarity(const Ranking& a, const Ranking& b, std::size_t k) {
  return intersection_similarity(a.order, b.order, k);
}

}  // namespace mplex
