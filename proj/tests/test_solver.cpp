#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "generators.hpp"
#include "mplex/error.hpp"
#include "mplex/metric.hpp"
#include "mplex/solver.hpp"
#include "oracle.hpp"

using namespace mplex;
using testsupport::explanatory_multiplex;
using testsupport::Rng;

namespace {

double max_diff(const Vector& a, const Vector& b) { return (a - b).cwiseAbs().maxCoeff(); }

double pair_diff(const NodeLayerScores& a, const NodeLayerScores& b) {
  return std::max(max_diff(a.x, b.x), max_diff(a.t, b.t));
}

SolverParams strict(double alpha = 2.1, double beta = 2.0) {
  SolverParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.tol = 1e-13;
  p.max_iter = 100000;
  return p;
}

}  // namespace

TEST_CASE("contraction factor closed form") {
  CHECK(contraction_factor(2.0, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(contraction_factor(2.1, 2.0) - 0.9680814150836138) < 1e-15);
  CHECK(std::abs(contraction_factor(3.0, 2.0) - 0.7675918792439981) < 1e-15);

  for (double alpha : {1.5, 2.1, 3.0, 7.0}) {
    for (double beta : {0.5, 2.0, 5.0}) {
      const ContractionData c = contraction_data(alpha, beta);
      CHECK(c.weights(0) == doctest::Approx(alpha * c.rho));
      CHECK(c.weights(1) == 1.0);
      const Eigen::Vector2d lhs = c.theta.transpose() * c.weights;
      CHECK((lhs - c.rho * c.weights).norm() <= 1e-12 * c.rho * c.weights.norm());
      CHECK((c.rho < 1.0) == satisfies_uniqueness_condition(alpha, beta));
    }
  }
}

TEST_CASE("parameter gate") {
  SolverParams p;
  CHECK_NOTHROW(validate(p));
  p.alpha = 2.0;
  CHECK_THROWS_AS(validate(p), ValidationError);
  p.unsafe_params = true;
  CHECK_NOTHROW(validate(p));
  p.alpha = -1.0;
  CHECK_THROWS_AS(validate(p), ValidationError);
  p = {};
  p.tol = 0.0;
  CHECK_THROWS_AS(validate(p), ValidationError);
  p = {};
  p.max_iter = 0;
  CHECK_THROWS_AS(validate(p), ValidationError);

  SolverParams defaults;
  CHECK(defaults.alpha == 2.1);
  CHECK(defaults.beta == 2.0);
  CHECK(defaults.tol == 1e-6);
  CHECK(defaults.max_iter == 1000);
  CHECK(defaults.stopping_norm == StoppingNorm::Euclidean);
}

TEST_CASE("stopping norm names") {
  CHECK(parse_stopping_norm("euclidean") == StoppingNorm::Euclidean);
  CHECK(parse_stopping_norm("one") == StoppingNorm::One);
  CHECK(parse_stopping_norm("max") == StoppingNorm::Max);
  CHECK_THROWS_AS(parse_stopping_norm("frobenius"), ValidationError);
  for (StoppingNorm s : {StoppingNorm::Euclidean, StoppingNorm::One, StoppingNorm::Max}) {
    CHECK(parse_stopping_norm(to_string(s)) == s);
  }
}

TEST_CASE("apply_f on the uniform pair of the two-edge multiplex") {
  const MultiplexNetwork net = explanatory_multiplex();
  const Vector x = Vector::Constant(4, 0.25);
  const Vector t = Vector::Constant(2, 0.5);
  for (double alpha : {1.0, 2.1, 4.0}) {
    const FValues f = apply_f(net, x, t, alpha, 2.0);
    for (Eigen::Index i = 0; i < 4; ++i) {
      CHECK(f.node(i) == doctest::Approx(std::pow(1.0 / 8.0, 1.0 / alpha)).epsilon(1e-14));
    }
    for (Eigen::Index l = 0; l < 2; ++l) {
      CHECK(f.layer(l) == doctest::Approx(std::pow(1.0 / 8.0, 0.5)).epsilon(1e-14));
    }
  }
}

TEST_CASE("apply_f matches the dense triple loop") {
  Rng rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = rng.index(1, 8);
    const std::size_t num_layers = rng.index(1, 4);
    const MultiplexNetwork net = testsupport::random_sparse_network(rng, n, num_layers, 0.5);
    const NodeLayerScores p = testsupport::random_positive_pair(rng, n, num_layers);
    const double alpha = rng.uniform(1.0, 5.0);
    const double beta = rng.uniform(0.5, 4.0);
    const FValues f = apply_f(net, p.x, p.t, alpha, beta);
    const oracle::Pair o = oracle::f(oracle::dense_tensor(net), oracle::to_vec(p.x),
                                     oracle::to_vec(p.t), alpha, beta);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(f.node(static_cast<Eigen::Index>(i)) == doctest::Approx(o.x[i]).epsilon(1e-12));
    }
    for (std::size_t l = 0; l < num_layers; ++l) {
      CHECK(f.layer(static_cast<Eigen::Index>(l)) == doctest::Approx(o.t[l]).epsilon(1e-12));
    }
  }
}

TEST_CASE("apply_f zero rows and empty layers") {
  const std::vector<Edge> edges{{0, 0, 1, 1.0}};
  const MultiplexNetwork net = build_network(3, 2, edges);
  const FValues f = apply_f(net, Vector::Ones(3), Vector::Ones(2), 2.1, 2.0);
  CHECK(f.node(2) == 0.0);
  CHECK(f.layer(1) == 0.0);
  CHECK_THROWS_AS(apply_f(net, Vector::Ones(2), Vector::Ones(2), 2.1, 2.0), DimensionError);
  Vector bad = Vector::Ones(3);
  bad(0) = std::nan("");
  CHECK_THROWS_AS(apply_f(net, bad, Vector::Ones(2), 2.1, 2.0), ValidationError);
}

TEST_CASE("apply_g") {
  const MultiplexNetwork net = explanatory_multiplex();
  const NodeLayerScores g =
      apply_g(net, Vector::Constant(4, 0.25), Vector::Constant(2, 0.5), 2.1, 2.0);
  CHECK(max_diff(g.x, Vector::Constant(4, 0.25)) < 1e-15);
  CHECK(max_diff(g.t, Vector::Constant(2, 0.5)) < 1e-15);

  SUBCASE("single edge swaps and damps the node ratio") {
    const MultiplexNetwork edge = build_network(2, 1, std::vector<Edge>{{0, 0, 1, 3.0}});
    Rng rng(4);
    for (int i = 0; i < 5; ++i) {
      const NodeLayerScores p = testsupport::random_positive_pair(rng, 2, 1);
      const NodeLayerScores q = apply_g(edge, p.x, p.t, 2.1, 2.0);
      CHECK(q.x(0) / q.x(1) == doctest::Approx(std::pow(p.x(1) / p.x(0), 1.0 / 2.1)));
      CHECK(q.x.sum() == doctest::Approx(1.0));
      CHECK(q.t(0) == 1.0);
    }
  }
  SUBCASE("scale invariance and normalization") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const MultiplexNetwork r = testsupport::random_positive_network(rng, 6, 3);
      const NodeLayerScores p = testsupport::random_positive_pair(rng, 6, 3);
      const NodeLayerScores a = apply_g(r, p.x, p.t, 2.1, 2.0);
      const NodeLayerScores b = apply_g(r, 7.5 * p.x, 0.01 * p.t, 2.1, 2.0);
      CHECK(pair_diff(a, b) < 1e-14);
      CHECK(std::abs(a.x.sum() - 1.0) < 1e-14);
      CHECK(std::abs(a.t.sum() - 1.0) < 1e-14);
    }
  }
  SUBCASE("zero block is degenerate") {
    const std::vector<Edge> edges{{0, 0, 1, 1.0}};
    const MultiplexNetwork r = build_network(4, 1, edges);
    Vector x(4);
    x << 0, 0, 1, 1;
    CHECK_THROWS_AS(apply_g(r, x, Vector::Ones(1), 2.1, 2.0), DegenerateInputError);
  }
}

TEST_CASE("f_centrality on the two-edge multiplex") {
  const CentralityResult r = f_centrality(explanatory_multiplex());
  CHECK(r.report.converged);
  CHECK(max_diff(r.scores.x, Vector::Constant(4, 0.25)) < 1e-15);
  CHECK(max_diff(r.scores.t, Vector::Constant(2, 0.5)) < 1e-15);
  CHECK(r.report.iterations == 1);
  CHECK(r.report.a_priori_bound_k == std::optional<std::size_t>(0));
  CHECK(r.report.bound_constant == std::optional<double>(0.0));
  CHECK(r.report.rho == contraction_factor(2.1, 2.0));
}

TEST_CASE("f_centrality agrees with the dense fixed-point oracle") {
  Rng rng(202);
  for (int trial = 0; trial < 10; ++trial) {
    const MultiplexNetwork net = testsupport::random_positive_network(rng, 5, 3);
    const CentralityResult r = f_centrality(net, strict());
    REQUIRE(r.report.converged);
    const oracle::Pair o = oracle::fixed_point(oracle::dense_tensor(net), 2.1, 2.0);
    CHECK(oracle::max_abs_diff(oracle::to_vec(r.scores.x), o.x) < 1e-8);
    CHECK(oracle::max_abs_diff(oracle::to_vec(r.scores.t), o.t) < 1e-8);
  }
}

TEST_CASE("f_centrality report bookkeeping") {
  Rng rng(303);
  const MultiplexNetwork net = testsupport::random_sparse_network(rng, 30, 4, 0.15);
  const CentralityResult r = f_centrality(net);
  REQUIRE(r.report.converged);
  CHECK(r.report.node_residuals.size() == r.report.iterations);
  CHECK(r.report.layer_residuals.size() == r.report.iterations);
  CHECK(r.report.node_residuals.back() < 1e-6);
  CHECK(r.report.layer_residuals.back() < 1e-6);
  REQUIRE(r.report.node_converged_at);
  REQUIRE(r.report.layer_converged_at);
  const std::size_t kn = *r.report.node_converged_at;
  CHECK(r.report.node_residuals[kn - 1] < 1e-6);
  for (std::size_t k = 1; k < kn; ++k) CHECK(r.report.node_residuals[k - 1] >= 1e-6);
  CHECK(std::max(kn, *r.report.layer_converged_at) <= r.report.iterations);

  const FValues f = apply_f(net, r.scores.x, r.scores.t, 2.1, 2.0);
  CHECK(r.report.mu == doctest::Approx(f.node.sum()).epsilon(1e-14));
  CHECK(r.report.lambda == doctest::Approx(f.layer.sum()).epsilon(1e-14));

  // Fixed-point property.
  const NodeLayerScores g = apply_g(net, r.scores.x, r.scores.t, 2.1, 2.0);
  CHECK(pair_diff(g, r.scores) < 10 * 1e-6);
  CHECK(std::abs(r.scores.x.sum() - 1.0) < 1e-14);
  CHECK(std::abs(r.scores.t.sum() - 1.0) < 1e-14);
}

TEST_CASE("f_centrality stopping norms give the same ranking") {
  Rng rng(304);
  const MultiplexNetwork net = testsupport::random_sparse_network(rng, 25, 3, 0.2);
  SolverParams p;
  std::vector<NodeLayerScores> out;
  for (StoppingNorm s : {StoppingNorm::Euclidean, StoppingNorm::One, StoppingNorm::Max}) {
    p.stopping_norm = s;
    const CentralityResult r = f_centrality(net, p);
    CHECK(r.report.converged);
    out.push_back(r.scores);
  }
  CHECK(pair_diff(out[0], out[1]) < 1e-5);
  CHECK(pair_diff(out[0], out[2]) < 1e-5);
}

TEST_CASE("f_centrality failure modes") {
  CHECK_THROWS_AS(f_centrality(build_network(3, 2, {})), ValidationError);
  SolverParams bad;
  bad.alpha = 2.0;
  CHECK_THROWS_AS(f_centrality(explanatory_multiplex(), bad), ValidationError);

  NodeLayerScores start{Vector::Ones(4), Vector::Ones(2)};
  start.x(1) = 0.0;
  CHECK_THROWS_AS(f_centrality(explanatory_multiplex(), {}, start), ValidationError);
  start.x = Vector::Ones(3);
  CHECK_THROWS_AS(f_centrality(explanatory_multiplex(), {}, start), DimensionError);

  Rng rng(9);
  const MultiplexNetwork net = testsupport::random_sparse_network(rng, 20, 3, 0.2);
  SolverParams one;
  one.max_iter = 1;
  const CentralityResult r = f_centrality(net, one);
  CHECK_FALSE(r.report.converged);
  CHECK(r.report.iterations == 1);
  CHECK(std::abs(r.scores.x.sum() - 1.0) < 1e-14);
}

TEST_CASE("f_centrality start independence") {
  Rng rng(505);
  for (int trial = 0; trial < 5; ++trial) {
    const MultiplexNetwork net = testsupport::random_sparse_network(rng, 12, 3, 0.3);
    const CentralityResult base = f_centrality(net, strict());
    for (int s = 0; s < 5; ++s) {
      const CentralityResult r =
          f_centrality(net, strict(), testsupport::random_positive_pair(rng, 12, 3));
      CHECK(pair_diff(r.scores, base.scores) < 1e-9);
      CHECK_FALSE(r.report.a_priori_bound_k);
    }
  }
}

TEST_CASE("f_centrality zero pattern") {
  // Node 5 isolated, layer 3 empty.
  const std::vector<Edge> edges{{0, 0, 1, 1}, {0, 1, 2, 1}, {1, 2, 3, 2}, {1, 0, 3, 1}};
  const MultiplexNetwork net = build_network(5, 3, edges);
  const CentralityResult r = f_centrality(net);
  CHECK(r.report.converged);
  CHECK(r.scores.x(4) == 0.0);
  CHECK(r.scores.t(2) == 0.0);
  CHECK((r.scores.x.head(4).array() > 0.0).all());
  CHECK((r.scores.t.head(2).array() > 0.0).all());
}

TEST_CASE("f_centrality permutation equivariance and tensor scaling") {
  Rng rng(606);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = rng.index(3, 15);
    const std::size_t num_layers = rng.index(1, 4);
    const MultiplexNetwork net = testsupport::random_sparse_network(rng, n, num_layers, 0.35);
    if (net.is_empty()) continue;
    const std::vector<std::size_t> sigma = rng.permutation(n);
    const std::vector<std::size_t> pi = rng.permutation(num_layers);
    const CentralityResult a = f_centrality(net, strict());
    const CentralityResult b = f_centrality(permute(net, sigma, pi), strict());
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(b.scores.x(static_cast<Eigen::Index>(i)) -
                     a.scores.x(static_cast<Eigen::Index>(sigma[i]))) < 1e-10);
    }
    for (std::size_t l = 0; l < num_layers; ++l) {
      CHECK(std::abs(b.scores.t(static_cast<Eigen::Index>(l)) -
                     a.scores.t(static_cast<Eigen::Index>(pi[l]))) < 1e-10);
    }

    std::vector<SparseMatrix> scaled;
    for (const SparseMatrix& m : net.layers()) scaled.push_back(3.7 * m);
    const CentralityResult c = f_centrality(MultiplexNetwork(n, scaled), strict());
    CHECK(pair_diff(c.scores, a.scores) < 1e-10);
  }
}

TEST_CASE("iteration_bound") {
  SUBCASE("uniform sums") {
    const IterationBound b = iteration_bound(explanatory_multiplex(), 2.1, 2.0, 1e-6);
    CHECK(b.constant == 0.0);
    CHECK(b.k == 0);
    CHECK(b.start_is_fixed_point);
  }
  SUBCASE("node-sum ratio e, layer-sum ratio 1") {
    // Two layers, each diag(e, 1): node sums (2e, 2), layer sums e + 1.
    const double e = std::exp(1.0);
    const std::vector<Edge> edges{{0, 0, 0, e}, {0, 1, 1, 1.0}, {1, 0, 0, e}, {1, 1, 1, 1.0}};
    const MultiplexNetwork net = build_network(2, 2, edges);
    const IterationBound b = iteration_bound(net, 2.1, 2.0, 1e-6);
    const double rho = contraction_factor(2.1, 2.0);
    CHECK(b.constant == doctest::Approx(rho).epsilon(1e-14));
    CHECK(b.constant == doctest::Approx(0.96808).epsilon(1e-5));
    const double expected = std::ceil((std::log((1 - rho) * 1e-6) - std::log(rho)) / std::log(rho));
    CHECK(b.k == static_cast<std::size_t>(expected));
    CHECK_FALSE(b.start_is_fixed_point);
  }
  SUBCASE("decreasing in alpha") {
    Rng rng(7);
    const MultiplexNetwork net = testsupport::random_sparse_network(rng, 30, 4, 0.2);
    std::size_t previous = SIZE_MAX;
    for (double alpha : {2.1, 2.5, 3.0, 4.0, 10.0}) {
      const std::size_t k = iteration_bound(net, alpha, 2.0, 1e-6).k;
      CHECK(k <= previous);
      previous = k;
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(iteration_bound(explanatory_multiplex(), 2.0, 2.0, 1e-6), DomainError);
    CHECK_THROWS_AS(iteration_bound(build_network(2, 1, {}), 2.1, 2.0, 1e-6), ValidationError);
  }
}

TEST_CASE("hilbert_distance") {
  Vector a(2);
  a << 1, 2;
  Vector b(2);
  b << 2, 1;
  CHECK(hilbert_distance(a, b) == doctest::Approx(std::log(4.0)).epsilon(1e-15));
  CHECK(hilbert_distance(a, a) == 0.0);
  CHECK(hilbert_distance(a, 3.0 * a) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("residual of the model equations") {
  const MultiplexNetwork net = explanatory_multiplex();
  const CentralityResult r = f_centrality(net);
  CHECK(residual(net, r.scores, 2.1, 2.0).residual < 1e-8);

  Rng rng(808);
  const MultiplexNetwork rn = testsupport::random_positive_network(rng, 6, 3);
  const CentralityResult rr = f_centrality(rn, strict());
  const ModelResidual good = residual(rn, rr.scores, 2.1, 2.0);
  CHECK(good.residual < 1e-8);
  CHECK(good.mu == doctest::Approx(std::pow(rr.report.mu, 2.1)).epsilon(1e-8));
  CHECK(good.lambda == doctest::Approx(std::pow(rr.report.lambda, 2.0)).epsilon(1e-8));

  NodeLayerScores bumped = rr.scores;
  bumped.x(2) *= 1.1;
  bumped.x /= bumped.x.sum();
  CHECK(residual(rn, bumped, 2.1, 2.0).residual > 1e-3);

  // alpha = beta = 1, support on the first layer only.
  NodeLayerScores half{Vector::Zero(4), Vector::Zero(2)};
  half.x << 0.5, 0.5, 0, 0;
  half.t << 1, 0;
  CHECK(residual(net, half, 1.0, 1.0).residual == 0.0);

  CHECK_THROWS_AS(residual(net, {Vector::Zero(4), Vector::Ones(2)}, 1.0, 1.0), ValidationError);
}

TEST_CASE("small asymmetric tensor with two claimed solutions at alpha = beta = 1") {
  // B given as B[a][b][c] with 1-based (a, b, c); A = B / 25.
  const double b[2][2][2] = {{{6.0, 61.0 / 7}, {199.0 / 7, 6.0}},
                             {{16.0 / 7, 29.0}, {11.0, 16.0 / 7}}};
  const std::vector<std::vector<double>> pairs_x{{2.0 / 3, 1.0 / 3}, {0.25, 0.75}};
  const std::vector<std::vector<double>> pairs_t{{1.0 / 3, 2.0 / 3}, {0.75, 0.25}};

  // Relative spread of lhs_i / x_i and lhs_l / t_l; zero for a solution.
  auto spread = [&](auto entry, const std::vector<double>& x, const std::vector<double>& t) {
    double worst = 0.0;
    std::vector<double> q1;
    std::vector<double> q2;
    for (int i = 0; i < 2; ++i) {
      double s = 0.0;
      for (int j = 0; j < 2; ++j) {
        for (int l = 0; l < 2; ++l) s += entry(i, j, l) * x[j] * t[l];
      }
      q1.push_back(s / x[i]);
    }
    for (int l = 0; l < 2; ++l) {
      double s = 0.0;
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) s += entry(i, j, l) * x[i] * x[j];
      }
      q2.push_back(s / t[l]);
    }
    worst = std::max(std::abs(q1[0] - q1[1]) / q1[0], std::abs(q2[0] - q2[1]) / q2[0]);
    return worst;
  };
  auto direct = [&](int i, int j, int l) { return b[i][j][l] / 25.0; };
  auto rotated = [&](int i, int j, int l) { return b[j][l][i] / 25.0; };

  for (std::size_t p = 0; p < 2; ++p) {
    // Direct index reading: not a solution.
    CHECK(spread(direct, pairs_x[p], pairs_t[p]) > 1e-2);
    // A_{ijl} = B_{j,l,i}: both pairs solve the system.
    CHECK(spread(rotated, pairs_x[p], pairs_t[p]) < 1e-12);
  }
}
