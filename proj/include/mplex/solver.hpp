#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "mplex/network.hpp"

namespace mplex {

enum class StoppingNorm { Euclidean, One, Max };

std::string_view to_string(StoppingNorm norm);
/// Accepts "euclidean"/"2", "one"/"1", "max"/"inf". Throws ValidationError.
StoppingNorm parse_stopping_norm(std::string_view text);

struct SolverParams {
  double alpha = 2.1;
  double beta = 2.0;
  double tol = 1e-6;
  std::size_t max_iter = 1000;
  StoppingNorm stopping_norm = StoppingNorm::Euclidean;
  /// Skip the 2/beta < alpha - 1 gate (uniqueness is then not guaranteed).
  bool unsafe_params = false;
};

/// True when 2/beta < alpha - 1, the condition under which the normalized
/// map is a strict contraction and the fixed point is unique.
bool satisfies_uniqueness_condition(double alpha, double beta) noexcept;

/// Throws ValidationError for non-positive or non-finite values and for
/// exponent pairs failing the uniqueness condition (unless unsafe_params).
void validate(const SolverParams& params);

/// Node scores x (length n) and layer scores t (length L).
struct NodeLayerScores {
  Vector x;
  Vector t;
};

/// Unnormalized blocks of the nonlinear map:
///   node_i  = (sum_{j,l} A_{ijl} x_j t_l)^(1/alpha)
///   layer_l = (sum_{i,j} A_{ijl} x_i x_j)^(1/beta)
struct FValues {
  Vector node;
  Vector layer;
};

FValues apply_f(const MultiplexNetwork& net, const Vector& x, const Vector& t, double alpha,
                double beta);

/// apply_f with each block divided by its 1-norm. Throws
/// DegenerateInputError if either block vanishes.
NodeLayerScores apply_g(const MultiplexNetwork& net, const Vector& x, const Vector& t,
                        double alpha, double beta);

/// Homogeneity matrix, Lipschitz constant and metric weights of the map.
struct ContractionData {
  Eigen::Matrix2d theta;
  double rho = 0.0;
  /// (alpha * rho, 1): the positive eigenvector of theta^T.
  Eigen::Vector2d weights;
};

/// rho = (sqrt(8 alpha + beta) + sqrt(beta)) / (2 alpha sqrt(beta)).
double contraction_factor(double alpha, double beta);
ContractionData contraction_data(double alpha, double beta);

struct IterationBound {
  /// Smallest k with rho^k C / (1 - rho) <= epsilon.
  std::size_t k = 0;
  /// rho ln(max node-sum ratio) + (1/beta) ln(max layer-sum ratio), both
  /// ratios taken over nonzero sums only.
  double constant = 0.0;
  double rho = 0.0;
  /// C == 0: the all-ones start already points at the fixed point.
  bool start_is_fixed_point = false;
};

/// Throws DomainError when rho >= 1, ValidationError for an empty network
/// or non-positive epsilon.
IterationBound iteration_bound(const MultiplexNetwork& net, double alpha, double beta,
                               double epsilon);

struct ConvergenceReport {
  std::size_t iterations = 0;
  /// Relative successive differences ||x_k - x_{k-1}|| / ||x_k||, one per
  /// iteration, in the configured norm.
  std::vector<double> node_residuals;
  std::vector<double> layer_residuals;
  /// First iteration at which each block met the tolerance.
  std::optional<std::size_t> node_converged_at;
  std::optional<std::size_t> layer_converged_at;
  double rho = 0.0;
  /// Only for the default start with rho < 1.
  std::optional<std::size_t> a_priori_bound_k;
  std::optional<double> bound_constant;
  /// ||f_1(x, t)||_1 and ||f_2(x, t)||_1 at the returned pair.
  double mu = 0.0;
  double lambda = 0.0;
  bool converged = false;

  double alpha = 0.0;
  double beta = 0.0;
  double tol = 0.0;
  StoppingNorm stopping_norm = StoppingNorm::Euclidean;
};

struct CentralityResult {
  NodeLayerScores scores;
  ConvergenceReport report;
};

/// Power iteration (x, t) <- g(x, t) from `start` (default: uniform
/// positive pair) until the larger of the two relative successive
/// differences drops below params.tol. Exhausting max_iter is not an error;
/// the report then has converged == false.
///
/// Throws ValidationError for an all-zero tensor, invalid parameters or a
/// start that is not strictly positive.
CentralityResult f_centrality(const MultiplexNetwork& net, const SolverParams& params = {},
                              const std::optional<NodeLayerScores>& start = std::nullopt);

/// How well a score pair satisfies
///   sum_{j,l} A_{ijl} x_j t_l = mu x_i^alpha,  sum_{i,j} A_{ijl} x_i x_j = lambda t_l^beta.
struct ModelResidual {
  double mu = 0.0;
  double lambda = 0.0;
  /// Largest relative violation over the equations of supported entries;
  /// an unsupported entry with a nonzero left-hand side counts as 1.
  double residual = 0.0;
};

/// mu and lambda are chosen to minimize the largest relative violation of
/// their block; at an exact fixed point mu = ||f_1||_1^alpha and
/// lambda = ||f_2||_1^beta. Throws ValidationError for a zero block.
ModelResidual residual(const MultiplexNetwork& net, const NodeLayerScores& scores, double alpha,
                       double beta);

}  // namespace mplex
