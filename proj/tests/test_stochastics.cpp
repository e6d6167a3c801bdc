#include "qwalk/stochastics.hpp"

#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "qwalk/classical.hpp"
#include "qwalk/core.hpp"

using namespace qwalk;
using namespace qwalk::stochastics;
using qwalk::line::CoinSpec;

namespace {

InitSpec right_init() { return InitSpec::coin(Complex(1, 0), Complex(0, 0)); }

}  // namespace

TEST_SUITE_BEGIN("stochastics");

TEST_CASE("zero rates reproduce the unitary walk exactly") {
  DecoherenceModel m;
  const auto coin = CoinSpec::hadamard();
  const ProbDist noisy =
      decohere_evolve(60, coin, right_init(), m, EvolveMode::trajectories(3));
  const ProbDist unitary =
      core::position_distribution(line::evolve(60, coin, right_init()));
  CHECK((noisy.probs - unitary.probs).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("fully measured coin gives the classical binomial") {
  DecoherenceModel m;
  m.coin_measure_p = 1.0;
  const ProbDist exact = decohere_evolve(50, CoinSpec::hadamard(), right_init(),
                                         m, EvolveMode::exact_classical());
  const ProbDist binomial = classical::binomial_line_distribution(50, 0.5);
  CHECK(core::total_variation(exact, binomial) <= 1e-10);

  // position measurement at rate one is the same markov chain
  DecoherenceModel mp;
  mp.position_measure_p = 1.0;
  const ProbDist exact_pos = decohere_evolve(
      50, CoinSpec::hadamard(), right_init(), mp, EvolveMode::exact_classical());
  CHECK(core::total_variation(exact_pos, binomial) <= 1e-10);
}

TEST_CASE("exact mode requires a fully measured walk") {
  DecoherenceModel m;
  m.coin_measure_p = 0.5;
  CHECK_THROWS_AS(decohere_evolve(10, CoinSpec::hadamard(), right_init(), m,
                                  EvolveMode::exact_classical()),
                  Error);
}

TEST_CASE("fully broken links freeze the walker") {
  DecoherenceModel m;
  m.broken_link_p = 1.0;
  m.seed = 3;
  const ProbDist d = decohere_evolve(30, CoinSpec::hadamard(), right_init(), m,
                                     EvolveMode::trajectories(20));
  CHECK(d.at(0) == doctest::Approx(1.0));

  // the bounce convention is exposed; the mirrored phase freezes too
  DecoherenceModel m2 = m;
  m2.broken_link_phase = -1.0;
  const ProbDist d2 = decohere_evolve(30, CoinSpec::hadamard(), right_init(),
                                      m2, EvolveMode::trajectories(20));
  CHECK(d2.at(0) == doctest::Approx(1.0));
}

TEST_CASE("trajectory averages conserve probability") {
  DecoherenceModel m;
  m.coin_measure_p = 0.2;
  m.position_measure_p = 0.05;
  m.broken_link_p = 0.04;
  m.seed = 8;
  const ProbDist d = decohere_evolve(80, CoinSpec::hadamard(), right_init(), m,
                                     EvolveMode::trajectories(400));
  CHECK(std::abs(d.total() - 1.0) < 1e-10);
  CHECK(d.probs.minCoeff() >= 0.0);
}

TEST_CASE("identical seeds give bit-identical averages") {
  DecoherenceModel m;
  m.coin_measure_p = 0.3;
  m.position_measure_p = 0.05;
  m.broken_link_p = 0.02;
  m.seed = 77;
  const auto coin = CoinSpec::hadamard();
  const ProbDist a =
      decohere_evolve(40, coin, right_init(), m, EvolveMode::trajectories(500));
  const ProbDist b =
      decohere_evolve(40, coin, right_init(), m, EvolveMode::trajectories(500));
  CHECK((a.probs - b.probs).cwiseAbs().maxCoeff() == 0.0);

  DecoherenceModel other = m;
  other.seed = 78;
  const ProbDist c = decohere_evolve(40, coin, right_init(), other,
                                     EvolveMode::trajectories(500));
  CHECK((a.probs - c.probs).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("trajectory sampling converges to the exact propagation") {
  DecoherenceModel m;
  m.coin_measure_p = 1.0;
  m.seed = 21;
  const auto coin = CoinSpec::hadamard();
  const ProbDist exact = decohere_evolve(60, coin, right_init(), m,
                                         EvolveMode::exact_classical());
  const ProbDist sampled = decohere_evolve(60, coin, right_init(), m,
                                           EvolveMode::trajectories(30000));
  CHECK(core::total_variation(sampled, exact) < 0.02);
}

TEST_CASE("variance exponent: ballistic, diffusive, and in between") {
  const auto coin = CoinSpec::hadamard();
  const std::vector<std::int64_t> grid{10, 20, 50, 100, 200};

  DecoherenceModel clean;
  CHECK(std::abs(variance_exponent(clean, coin, right_init(), grid,
                                   EvolveMode::trajectories(1)) -
                 2.0) <= 0.1);

  DecoherenceModel measured;
  measured.coin_measure_p = 1.0;
  CHECK(std::abs(variance_exponent(measured, coin, right_init(), grid,
                                   EvolveMode::exact_classical()) -
                 1.0) <= 0.1);

  DecoherenceModel partial;
  partial.coin_measure_p = 0.1;
  partial.seed = 11;
  const double mid =
      variance_exponent(partial, coin, right_init(), {10, 20, 50, 100},
                        EvolveMode::trajectories(10000));
  CHECK(mid > 1.05);
  CHECK(mid < 1.95);
}

TEST_CASE("variance exponent rejects bad grids and degenerate variance") {
  const auto coin = CoinSpec::hadamard();
  DecoherenceModel m;
  CHECK_THROWS_AS(variance_exponent(m, coin, right_init(), {10, 20, 30},
                                    EvolveMode::trajectories(1)),
                  Error);
  CHECK_THROWS_AS(variance_exponent(m, coin, right_init(), {10, 20, 30, 40},
                                    EvolveMode::trajectories(1)),
                  Error);

  DecoherenceModel frozen;
  frozen.broken_link_p = 1.0;
  CHECK_THROWS_AS(variance_exponent(frozen, coin, right_init(),
                                    {10, 20, 50, 100},
                                    EvolveMode::trajectories(5)),
                  Error);
}

TEST_CASE("distance to the classical binomial shrinks with the rate") {
  const auto coin = CoinSpec::hadamard();
  const ProbDist binomial = classical::binomial_line_distribution(100, 0.5);
  double previous = 2.0;
  for (double p : {0.0, 0.25, 0.5, 1.0}) {
    DecoherenceModel m;
    m.coin_measure_p = p;
    m.seed = 5;
    ProbDist d;
    if (p == 0.0) {
      d = decohere_evolve(100, coin, right_init(), m,
                          EvolveMode::trajectories(1));
    } else if (p == 1.0) {
      d = decohere_evolve(100, coin, right_init(), m,
                          EvolveMode::exact_classical());
    } else {
      d = decohere_evolve(100, coin, right_init(), m,
                          EvolveMode::trajectories(20000));
    }
    const double tv = core::total_variation(d, binomial);
    CHECK(tv <= previous + 0.01);
    previous = tv;
  }
}

TEST_SUITE_END();
