#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "generators.hpp"
#include "mplex/error.hpp"
#include "mplex/ranking.hpp"
#include "oracle.hpp"

using namespace mplex;
using testsupport::Rng;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST_CASE("rank orders by score with ascending-index ties") {
  CHECK(rank(vec({0.1, 0.3, 0.2})).order == std::vector<std::size_t>{1, 2, 0});
  CHECK(rank(vec({1, 1, 1, 1})).order == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(rank(vec({0.2, 0.5, 0.2, 0.5})).order == std::vector<std::size_t>{1, 3, 0, 2});
  CHECK(rank(vec({0.1, 0.3, 0.2})).positions() == std::vector<std::size_t>{2, 0, 1});
  CHECK_THROWS_AS(rank(vec({1, std::nan("")})), ValidationError);

  Rng rng(1);
  Vector s(20);
  for (Eigen::Index i = 0; i < 20; ++i) s(i) = rng.uniform();
  CHECK(rank(s).order == rank(13.0 * s).order);
}

TEST_CASE("pearson") {
  CHECK(pearson(vec({1, 2, 3}), vec({2, 4, 6})) == doctest::Approx(1.0));
  CHECK(pearson(vec({1, 2, 3}), vec({3, 2, 1})) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(pearson(vec({1, 1, 1}), vec({1, 2, 3})), DomainError);
  CHECK_THROWS_AS(pearson(vec({1, 2}), vec({1, 2, 3})), DimensionError);
  CHECK_THROWS_AS(pearson(vec({1}), vec({1})), DimensionError);

  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    Vector a(10);
    Vector b(10);
    for (Eigen::Index i = 0; i < 10; ++i) {
      a(i) = rng.uniform();
      b(i) = rng.uniform();
    }
    const double r = pearson(a, b);
    CHECK(r == doctest::Approx(oracle::pearson(oracle::to_vec(a), oracle::to_vec(b))));
    CHECK(pearson((3.0 * a.array() + 7.0).matrix(), (0.5 * b.array() - 1.0).matrix()) ==
          doctest::Approx(r).epsilon(1e-12));
    CHECK(std::abs(r) <= 1.0);
  }
}

TEST_CASE("intersection_similarity examples") {
  const std::vector<std::size_t> a{0, 1, 2};
  const std::vector<std::size_t> b{1, 0, 2};
  CHECK(intersection_similarity(a, b, 3) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(intersection_similarity(a, a, 3) == 0.0);

  const std::vector<std::size_t> c{0, 1, 2, 3, 4, 5};
  const std::vector<std::size_t> d{3, 4, 5, 0, 1, 2};
  CHECK(intersection_similarity(c, d, 3) == 1.0);
  CHECK_THROWS_AS(intersection_similarity(a, b, 0), ValidationError);
  CHECK_THROWS_AS(intersection_similarity(a, b, 4), ValidationError);

  const std::vector<std::size_t> repeated{0, 0, 2};
  CHECK_THROWS_AS(isim_curve(repeated, a), ValidationError);
}

TEST_CASE("isim_curve matches the set-based oracle on all permutations up to length 6") {
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::vector<std::vector<std::size_t>> perms;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    for (const auto& x : perms) {
      for (const auto& y : perms) {
        const std::vector<double> curve = isim_curve(x, y);
        REQUIRE(curve.size() == n);
        for (std::size_t k = 1; k <= n; ++k) {
          CHECK(curve[k - 1] == doctest::Approx(oracle::isim(x, y, k)).epsilon(1e-14));
        }
      }
    }
  }
}

TEST_CASE("isim_curve properties") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = rng.index(1, 40);
    const std::vector<std::size_t> a = rng.permutation(n);
    const std::vector<std::size_t> b = rng.permutation(n);
    const std::vector<double> ab = isim_curve(a, b);
    const std::vector<double> ba = isim_curve(b, a);
    CHECK(ab == ba);
    for (double v : ab) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    for (double v : isim_curve(a, a)) CHECK(v == 0.0);
  }
  std::vector<std::size_t> fwd{0, 1, 2, 3};
  std::vector<std::size_t> rev{3, 2, 1, 0};
  CHECK(isim_curve(fwd, rev).front() == 1.0);

  const Ranking ra = rank(vec({0.4, 0.3, 0.2, 0.1}));
  const Ranking rb = rank(vec({0.1, 0.2, 0.3, 0.4}));
  CHECK(isim_curve(ra, rb) == isim_curve(fwd, rev));
  CHECK(intersection_similarity(ra, rb, 2) == intersection_similarity(fwd, rev, 2));
}

TEST_CASE("alpha_sweep") {
  SUBCASE("uniform scores keep the tie-break ranking") {
    const MultiplexNetwork net = testsupport::explanatory_multiplex();
    const std::vector<double> alphas{2.1, 3.0, 10.0};
    const SweepResult s = alpha_sweep(net, alphas, 2.0);
    REQUIRE(s.entries.size() == 3);
    for (const SweepEntry& e : s.entries) {
      CHECK(e.ok());
      CHECK(e.node_ranking.order == std::vector<std::size_t>{0, 1, 2, 3});
      CHECK(e.layer_ranking.order == std::vector<std::size_t>{0, 1});
    }
  }
  SUBCASE("rejected alphas are recorded and the sweep continues") {
    const MultiplexNetwork net = testsupport::explanatory_multiplex();
    const std::vector<double> alphas{1.5, 2.1};
    const SweepResult s = alpha_sweep(net, alphas, 2.0);
    CHECK_FALSE(s.entries[0].ok());
    CHECK(s.entries[1].ok());
    CHECK(s.beta == 2.0);
  }
  SUBCASE("iteration counts shrink with alpha") {
    Rng rng(4);
    const MultiplexNetwork net = testsupport::random_positive_network(rng, 8, 3);
    const std::vector<double> alphas{2.1, 2.5, 2.7, 3, 4, 5, 10};
    const SweepResult s = alpha_sweep(net, alphas, 2.0);
    for (std::size_t i = 1; i < s.entries.size(); ++i) {
      REQUIRE(s.entries[i].ok());
      CHECK(s.entries[i].result.report.iterations <=
            s.entries[i - 1].result.report.iterations + 2);
    }
  }
}
