#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mplex/network.hpp"
#include "mplex/solver.hpp"

namespace mplex {

/// Indices ordered best first: scores non-increasing, ties by ascending index.
struct Ranking {
  std::vector<std::size_t> order;
  Vector scores;

  /// positions()[i] is the 0-based rank of index i.
  std::vector<std::size_t> positions() const;
};

/// Throws ValidationError for non-finite scores.
Ranking rank(const Vector& scores);

/// Sample Pearson correlation. Throws DimensionError for mismatched or
/// too-short vectors and DomainError when either vector is constant.
double pearson(const Vector& a, const Vector& b);

/// isim_K = (1/K) sum_{k=1..K} |top_k(a) symdiff top_k(b)| / (2k).
/// Throws ValidationError when K is 0 or exceeds either list length.
double intersection_similarity(std::span<const std::size_t> a, std::span<const std::size_t> b,
                               std::size_t k);
double intersection_similarity(const Ranking& a, const Ranking& b, std::size_t k);

/// isim_K for K = 1..min(|a|, |b|).
std::vector<double> isim_curve(std::span<const std::size_t> a, std::span<const std::size_t> b);
std::vector<double> isim_curve(const Ranking& a, const Ranking& b);

struct SweepEntry {
  double alpha = 0.0;
  /// Empty when the parameters were rejected or the solve failed.
  std::string error;
  bool ok() const noexcept { return error.empty(); }
  CentralityResult result;
  Ranking node_ranking;
  Ranking layer_ranking;
};

struct SweepResult {
  double beta = 0.0;
  std::vector<SweepEntry> entries;
};

/// Runs f_centrality for every alpha with the given beta. Entries failing
/// the parameter gate (or any solver error) record the message and the
/// sweep continues.
SweepResult alpha_sweep(const MultiplexNetwork& net, std::span<const double> alphas, double beta,
                        const SolverParams& params = {});

}  // namespace mplex
