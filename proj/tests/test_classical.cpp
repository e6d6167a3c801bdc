#include "qwalk/classical.hpp"

#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "qwalk/rng.hpp"

using namespace qwalk;
using namespace qwalk::classical;

TEST_SUITE_BEGIN("classical");

TEST_CASE("binomial line distribution, 100 steps") {
  const ProbDist d = binomial_line_distribution(100, 0.5);
  CHECK(std::abs(d.at(0) - 0.0795) < 0.0005);
  CHECK(d.total() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("binomial line distribution, degenerate cases") {
  const ProbDist d0 = binomial_line_distribution(0, 0.5);
  CHECK(d0.at(0) == doctest::Approx(1.0));

  // oracle: enumerate the four two-step paths RR, RL, LR, LL
  const ProbDist d2 = binomial_line_distribution(2, 0.5);
  CHECK(d2.at(2) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(d2.at(0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(d2.at(-2) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("binomial parity: off-parity sites carry exactly zero") {
  for (int n : {3, 4, 7, 10}) {
    const ProbDist d = binomial_line_distribution(n, 0.37);
    for (int k = -n; k <= n; ++k) {
      if ((k + n) % 2 != 0) CHECK(d.at(k) == 0.0);
    }
    CHECK(d.total() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("line walk variance") {
  CHECK(line_walk_variance(100, 0.5) == doctest::Approx(100.0));
  CHECK(line_walk_variance(25, 0.0) == 0.0);
  CHECK(line_walk_variance(50, 0.3) == doctest::Approx(42.0));

  // moment-sum oracle over the exact distribution
  const ProbDist d = binomial_line_distribution(50, 0.3);
  CHECK(std::abs(d.variance() - line_walk_variance(50, 0.3)) < 1e-9);
}

TEST_CASE("stationary distribution on named graphs") {
  const ProbDist cyc = stationary_distribution(Graph::cycle(7));
  for (int v = 0; v < 7; ++v) {
    CHECK(cyc.at(v) == doctest::Approx(1.0 / 7.0).epsilon(1e-13));
  }

  const ProbDist k4 = stationary_distribution(Graph::complete(4));
  for (int v = 0; v < 4; ++v) {
    CHECK(k4.at(v) == doctest::Approx(0.25).epsilon(1e-13));
  }

  const ProbDist star = stationary_distribution(Graph::star(4));
  CHECK(star.at(0) == doctest::Approx(0.5).epsilon(1e-13));
  for (int leaf = 1; leaf <= 4; ++leaf) {
    CHECK(star.at(leaf) == doctest::Approx(0.125).epsilon(1e-13));
  }
}

TEST_CASE("stationary distribution rejects disconnected graphs") {
  Graph g;
  g.adjacency = {{1}, {0}, {3}, {2}};
  CHECK_THROWS_AS(stationary_distribution(g), Error);
}

TEST_CASE("stationary distribution is a fixed point on random graphs") {
  CounterRng rng(101);
  for (int it = 0; it < 50; ++it) {
    const int n = 3 + static_cast<int>(rng.below(18));
    const Graph g = testing::random_connected_graph(n, rng);
    const ProbDist pi = stationary_distribution(g);
    const StochasticMatrix chain = StochasticMatrix::from_graph(g);
    const RVector before = pi.probs;
    const RVector after = chain.p.transpose() * before;
    CHECK((after - before).cwiseAbs().sum() < 1e-12);
  }
}

TEST_CASE("hitting time estimate basics") {
  const Graph cyc = Graph::cycle(8);
  const auto same = hitting_time_estimate(cyc, 3, 3, 100, 7);
  CHECK(same.mean == 0.0);

  // two-state chain flipping with probability 1/2: geometric with mean 2
  StochasticMatrix flip;
  flip.p.resize(2, 2);
  flip.p << 0.5, 0.5, 0.5, 0.5;
  const auto est = hitting_time_estimate(flip, 0, 1, 20000, 7);
  CHECK(std::abs(est.mean - 2.0) < 4.0 * est.standard_error + 1e-9);
  CHECK(est.standard_error > 0.0);
}

TEST_CASE("hitting time estimate: unreachable target") {
  StochasticMatrix p;
  p.p.resize(2, 2);
  p.p << 1.0, 0.0, 0.5, 0.5;
  CHECK_THROWS_AS(hitting_time_estimate(p, 0, 1, 10, 1), Error);
}

TEST_CASE("circle hitting time scales quadratically") {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int sizes[] = {8, 16, 32};
  for (int n : sizes) {
    const auto est = hitting_time_estimate(Graph::cycle(n), 0, n / 2, 3000, 5);
    const double x = std::log(static_cast<double>(n));
    const double y = std::log(est.mean);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
  CHECK(std::abs(slope - 2.0) < 0.2);
}

TEST_CASE("line-regime hitting proxies reproduce the two asymptotic orders") {
  // central region: inverse occupation probability grows like sqrt(n)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int ns[] = {64, 128, 256, 512, 1024};
  for (int n : ns) {
    const double h = line_hitting_time_inverse_probability(n, 0);
    const double x = std::log(static_cast<double>(n));
    const double y = std::log(h);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double npts = 5.0;
  const double slope = (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
  CHECK(std::abs(slope - 0.5) < 0.05);

  // tail region k = n: exactly 2^n
  for (int n : {4, 8, 12}) {
    CHECK(line_hitting_time_inverse_probability(n, n) ==
          doctest::Approx(std::pow(2.0, n)).epsilon(1e-9));
  }
}

TEST_CASE("fundamental hitting time: all marked and geometric chain") {
  StochasticMatrix flip;
  flip.p.resize(2, 2);
  flip.p << 0.5, 0.5, 0.5, 0.5;

  ProbDist start;
  start.support = {0, 1};
  start.probs.resize(2);
  start.probs << 1.0, 0.0;

  CHECK(fundamental_hitting_time(flip, {0, 1}, start) == 0.0);
  CHECK(fundamental_hitting_time(flip, {1}, start) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("fundamental hitting time matches Monte Carlo on the 10-cycle") {
  const Graph cyc = Graph::cycle(10);
  const StochasticMatrix chain = StochasticMatrix::from_graph(cyc);
  ProbDist uniform;
  uniform.support.resize(10);
  uniform.probs = RVector::Constant(10, 0.1);
  for (int v = 0; v < 10; ++v) uniform.support[static_cast<std::size_t>(v)] = v;

  const double exact = fundamental_hitting_time(chain, {0}, uniform);

  // Monte Carlo oracle: draw the start uniformly, walk until vertex 0.
  double sum = 0, sum_sq = 0;
  const std::int64_t trials = 100000;
  for (std::int64_t i = 0; i < trials; ++i) {
    CounterRng rng(derive_seed(404, static_cast<std::uint64_t>(i)));
    int v = static_cast<int>(rng.below(10));
    std::int64_t steps = 0;
    while (v != 0) {
      v = rng.bernoulli(0.5) ? (v + 1) % 10 : (v + 9) % 10;
      ++steps;
    }
    sum += static_cast<double>(steps);
    sum_sq += static_cast<double>(steps) * static_cast<double>(steps);
  }
  const double mean = sum / trials;
  const double se =
      std::sqrt((sum_sq / trials - mean * mean) / static_cast<double>(trials));
  CHECK(std::abs(exact - mean) < 3.0 * se);
}

TEST_CASE("fundamental hitting time agrees with simulation on small chains") {
  CounterRng rng(505);
  for (int it = 0; it < 10; ++it) {
    const int n = 3 + static_cast<int>(rng.below(6));
    const Graph g = testing::random_connected_graph(n, rng);
    const StochasticMatrix chain = StochasticMatrix::from_graph(g);
    const int marked = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    ProbDist start;
    start.support = {static_cast<std::int64_t>((marked + 1) % n)};
    start.probs = RVector::Ones(1);

    const double exact = fundamental_hitting_time(chain, {marked}, start);
    const auto mc = hitting_time_estimate(chain, (marked + 1) % n, marked,
                                          20000, 606 + it);
    CHECK(std::abs(exact - mc.mean) < 3.0 * mc.standard_error + 1e-9);
  }
}

TEST_CASE("fundamental hitting time: non-absorbing chain is singular") {
  StochasticMatrix p;
  p.p.resize(3, 3);
  p.p << 0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0;  // {0,1} closed
  ProbDist start;
  start.support = {0};
  start.probs = RVector::Ones(1);
  CHECK_THROWS_AS(fundamental_hitting_time(p, {2}, start), Error);
}

TEST_CASE("stochastic matrix text round trip") {
  StochasticMatrix m;
  m.p.resize(2, 2);
  m.p << 0.25, 0.75, 0.5, 0.5;
  const std::string path = "/tmp/qwalk_test_matrix.txt";
  m.save(path);
  const StochasticMatrix loaded = StochasticMatrix::load(path);
  CHECK((loaded.p - m.p).cwiseAbs().maxCoeff() == 0.0);
}

TEST_SUITE_END();
