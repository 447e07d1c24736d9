#include "mplex/ranking.hpp"

#include "mplex/error.hpp"

namespace mplex {

SweepResult alpha_sweep(const MultiplexNetwork& net, std::span<const double> alphas, double beta,
                        const SolverParams& params) {
  SweepResult out;
  out.beta = beta;
  out.entries.reserve(alphas.size());
  for (double alpha : alphas) {
    SweepEntry entry;
    entry.alpha = alpha;
    SolverParams p = params;
    p.alpha = alpha;
    p.beta = beta;
    try {
      entry.result = f_centrality(net, p);
      entry.node_ranking = rank(entry.result.scores.x);
      entry.layer_ranking = rank(entry.result.scores.t);
    } catch (const Error& e) {
      entry.error = e.what();
    }
    out.entries.push_back(std::move(entry));
  }
  return out;
}

}  // namespace mplex
