#include "mplex/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "mplex/error.hpp"

namespace mplex {

namespace {

Eigen::Index as_index(std::size_t i) { return static_cast<Eigen::Index>(i); }

// v^e for v >= 0 via exp(e log v), with 0^e = 0.
double fractional_power(double v, double e) { return v > 0.0 ? std::exp(e * std::log(v)) : 0.0; }

void check_block(const Vector& v, std::size_t expected, const char* name) {
  if (static_cast<std::size_t>(v.size()) != expected) {
    throw DimensionError(std::string(name) + " has length " + std::to_string(v.size()) +
                         ", expected " + std::to_string(expected));
  }
  if (!v.allFinite()) throw ValidationError(std::string(name) + " has non-finite entries");
  if ((v.array() < 0.0).any()) throw ValidationError(std::string(name) + " has negative entries");
}

void check_exponents(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw ValidationError("exponents alpha and beta must be positive and finite");
  }
}

double vector_norm(const Vector& v, StoppingNorm norm) {
  switch (norm) {
    case StoppingNorm::One:
      return v.lpNorm<1>();
    case StoppingNorm::Max:
      return v.lpNorm<Eigen::Infinity>();
    case StoppingNorm::Euclidean:
      break;
  }
  return v.norm();
}

double relative_change(const Vector& next, const Vector& prev, StoppingNorm norm) {
  const double denom = vector_norm(next, norm);
  return denom > 0.0 ? vector_norm(next - prev, norm) / denom : 0.0;
}

// Left-hand sides of the model equations, sharing the per-layer products A^(l) x.
struct ModelSums {
  Vector node;   // sum_{j,l} A_{ijl} x_j t_l
  Vector layer;  // x^T A^(l) x
};

ModelSums model_sums(const MultiplexNetwork& net, const Vector& x, const Vector& t) {
  ModelSums s{Vector::Zero(as_index(net.num_nodes())), Vector::Zero(as_index(net.num_layers()))};
  Vector ax(as_index(net.num_nodes()));
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    const SparseMatrix& a = net.layer(l);
    if (a.nonZeros() == 0) continue;
    ax.noalias() = a * x;
    s.layer(as_index(l)) = x.dot(ax);
    const double tl = t(as_index(l));
    if (tl != 0.0) s.node.noalias() += tl * ax;
  }
  return s;
}

// Minimax scalar for one block of the model equations: chooses s > 0 that
// minimizes max_i |1 - s q_i| with q_i = v_i^power / lhs_i over supported i.
struct BlockFit {
  double scale = 0.0;
  double violation = 0.0;
};

BlockFit fit_block(const Vector& lhs, const Vector& v, double power) {
  double q_min = std::numeric_limits<double>::infinity();
  double q_max = 0.0;
  double violation = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double vi = v(i);
    const double li = lhs(i);
    if (vi == 0.0) {
      if (li > 0.0) violation = 1.0;
      continue;
    }
    if (li == 0.0) {
      violation = 1.0;
      continue;
    }
    const double q = fractional_power(vi, power) / li;
    q_min = std::min(q_min, q);
    q_max = std::max(q_max, q);
  }
  if (q_max == 0.0) return {0.0, violation};
  BlockFit fit;
  fit.scale = 2.0 / (q_min + q_max);
  fit.violation = std::max(violation, (q_max - q_min) / (q_max + q_min));
  return fit;
}

}  // namespace

std::string_view to_string(StoppingNorm norm) {
  switch (norm) {
    case StoppingNorm::One:
      return "one";
    case StoppingNorm::Max:
      return "max";
    case StoppingNorm::Euclidean:
      break;
  }
  return "euclidean";
}

StoppingNorm parse_stopping_norm(std::string_view text) {
  if (text == "euclidean" || text == "2") return StoppingNorm::Euclidean;
  if (text == "one" || text == "1") return StoppingNorm::One;
  if (text == "max" || text == "inf") return StoppingNorm::Max;
  throw ValidationError("unknown stopping norm '" + std::string(text) +
                        "' (expected euclidean, one or max)");
}

bool satisfies_uniqueness_condition(double alpha, double beta) noexcept {
  return alpha > 0.0 && beta > 0.0 && 2.0 / beta < alpha - 1.0;
}

void validate(const SolverParams& params) {
  check_exponents(params.alpha, params.beta);
  if (!(params.tol > 0.0) || !std::isfinite(params.tol)) {
    throw ValidationError("tolerance must be positive");
  }
  if (params.max_iter == 0) throw ValidationError("max_iter must be positive");
  if (!params.unsafe_params && !satisfies_uniqueness_condition(params.alpha, params.beta)) {
    std::ostringstream msg;
    msg << "alpha=" << params.alpha << ", beta=" << params.beta
        << " violate 2/beta < alpha - 1; the solution may not be unique "
           "(pass unsafe_params to run anyway)";
    throw ValidationError(msg.str());
  }
}

FValues apply_f(const MultiplexNetwork& net, const Vector& x, const Vector& t, double alpha,
                double beta) {
  check_exponents(alpha, beta);
  check_block(x, net.num_nodes(), "node vector");
  check_block(t, net.num_layers(), "layer vector");
  ModelSums s = model_sums(net, x, t);
  const double node_exp = 1.0 / alpha;
  const double layer_exp = 1.0 / beta;
  for (Eigen::Index i = 0; i < s.node.size(); ++i) s.node(i) = fractional_power(s.node(i), node_exp);
  for (Eigen::Index l = 0; l < s.layer.size(); ++l) {
    s.layer(l) = fractional_power(s.layer(l), layer_exp);
  }
  return {std::move(s.node), std::move(s.layer)};
}

NodeLayerScores apply_g(const MultiplexNetwork& net, const Vector& x, const Vector& t,
                        double alpha, double beta) {
  FValues f = apply_f(net, x, t, alpha, beta);
  const double node_sum = f.node.sum();
  const double layer_sum = f.layer.sum();
  if (!(node_sum > 0.0) || !(layer_sum > 0.0)) {
    throw DegenerateInputError(
        "the nonlinear map vanishes on this pair: the support of the scores does not meet the "
        "tensor");
  }
  return {f.node / node_sum, f.layer / layer_sum};
}

double contraction_factor(double alpha, double beta) {
  check_exponents(alpha, beta);
  const double sb = std::sqrt(beta);
  return (std::sqrt(8.0 * alpha + beta) + sb) / (2.0 * alpha * sb);
}

ContractionData contraction_data(double alpha, double beta) {
  ContractionData d;
  d.rho = contraction_factor(alpha, beta);
  d.theta << 1.0 / alpha, 1.0 / alpha, 2.0 / beta, 0.0;
  d.weights << alpha * d.rho, 1.0;
  return d;
}

IterationBound iteration_bound(const MultiplexNetwork& net, double alpha, double beta,
                               double epsilon) {
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  IterationBound out;
  out.rho = contraction_factor(alpha, beta);
  // Tested on the parameters: at the boundary rho rounds to either side of 1.
  if (!(2.0 / beta < alpha - 1.0) || !(out.rho < 1.0)) {
    throw DomainError("contraction factor rho=" + std::to_string(out.rho) +
                      " is not below 1; the a priori bound requires 2/beta < alpha - 1");
  }
  if (net.is_empty()) throw ValidationError("the adjacency tensor is zero");

  const Vector node_sums = aggregate_degree(net);
  double node_min = std::numeric_limits<double>::infinity();
  double node_max = 0.0;
  for (Eigen::Index i = 0; i < node_sums.size(); ++i) {
    if (node_sums(i) > 0.0) {
      node_min = std::min(node_min, node_sums(i));
      node_max = std::max(node_max, node_sums(i));
    }
  }
  double layer_min = std::numeric_limits<double>::infinity();
  double layer_max = 0.0;
  for (const auto& a : net.layers()) {
    const double s = a.sum();
    if (s > 0.0) {
      layer_min = std::min(layer_min, s);
      layer_max = std::max(layer_max, s);
    }
  }
  out.constant = out.rho * std::log(node_max / node_min) + std::log(layer_max / layer_min) / beta;
  if (out.constant <= 0.0) {
    out.constant = 0.0;
    out.start_is_fixed_point = true;
    out.k = 0;
    return out;
  }
  const double bound =
      (std::log((1.0 - out.rho) * epsilon) - std::log(out.constant)) / std::log(out.rho);
  out.k = bound > 0.0 ? static_cast<std::size_t>(std::ceil(bound)) : 0;
  return out;
}

CentralityResult f_centrality(const MultiplexNetwork& net, const SolverParams& params,
                              const std::optional<NodeLayerScores>& start) {
  validate(params);
  if (net.is_empty()) throw ValidationError("the adjacency tensor is zero");

  const auto n = as_index(net.num_nodes());
  const auto num_layers = as_index(net.num_layers());
  Vector x;
  Vector t;
  if (start) {
    check_block(start->x, net.num_nodes(), "start node vector");
    check_block(start->t, net.num_layers(), "start layer vector");
    if ((start->x.array() <= 0.0).any() || (start->t.array() <= 0.0).any()) {
      throw ValidationError("start vectors must be strictly positive");
    }
    x = start->x / start->x.sum();
    t = start->t / start->t.sum();
  } else {
    x = Vector::Constant(n, 1.0 / static_cast<double>(n));
    t = Vector::Constant(num_layers, 1.0 / static_cast<double>(num_layers));
  }

  CentralityResult result;
  ConvergenceReport& report = result.report;
  report.alpha = params.alpha;
  report.beta = params.beta;
  report.tol = params.tol;
  report.stopping_norm = params.stopping_norm;
  report.rho = contraction_factor(params.alpha, params.beta);
  report.node_residuals.reserve(std::min<std::size_t>(params.max_iter, 4096));
  report.layer_residuals.reserve(std::min<std::size_t>(params.max_iter, 4096));

  for (std::size_t k = 1; k <= params.max_iter; ++k) {
    NodeLayerScores next = apply_g(net, x, t, params.alpha, params.beta);
    const double node_res = relative_change(next.x, x, params.stopping_norm);
    const double layer_res = relative_change(next.t, t, params.stopping_norm);
    report.node_residuals.push_back(node_res);
    report.layer_residuals.push_back(layer_res);
    if (!report.node_converged_at && node_res < params.tol) report.node_converged_at = k;
    if (!report.layer_converged_at && layer_res < params.tol) report.layer_converged_at = k;
    x = std::move(next.x);
    t = std::move(next.t);
    report.iterations = k;
    if (std::max(node_res, layer_res) < params.tol) {
      report.converged = true;
      break;
    }
  }

  const FValues f = apply_f(net, x, t, params.alpha, params.beta);
  report.mu = f.node.sum();
  report.lambda = f.layer.sum();

  if (!start && 2.0 / params.beta < params.alpha - 1.0 && report.rho < 1.0) {
    const IterationBound bound = iteration_bound(net, params.alpha, params.beta, params.tol);
    report.a_priori_bound_k = bound.k;
    report.bound_constant = bound.constant;
  }
  result.scores = {std::move(x), std::move(t)};
  return result;
}

ModelResidual residual(const MultiplexNetwork& net, const NodeLayerScores& scores, double alpha,
                       double beta) {
  check_exponents(alpha, beta);
  check_block(scores.x, net.num_nodes(), "node scores");
  check_block(scores.t, net.num_layers(), "layer scores");
  if (!(scores.x.sum() > 0.0) || !(scores.t.sum() > 0.0)) {
    throw ValidationError("score vectors must be nonzero");
  }
  const ModelSums s = model_sums(net, scores.x, scores.t);
  const BlockFit node_fit = fit_block(s.node, scores.x, alpha);
  const BlockFit layer_fit = fit_block(s.layer, scores.t, beta);
  return {node_fit.scale, layer_fit.scale, std::max(node_fit.violation, layer_fit.violation)};
}

}  // namespace mplex
