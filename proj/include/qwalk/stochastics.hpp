// Decoherence on line walks: per-step coin/position measurement and broken
// links, sampled as seeded trajectories or propagated exactly when the walk
// is fully measured.
#pragma once

#include <cstdint>

#include "qwalk/line_walks.hpp"
#include "qwalk/types.hpp"

namespace qwalk::stochastics {

struct DecoherenceModel {
  double coin_measure_p = 0.0;
  double position_measure_p = 0.0;
  double broken_link_p = 0.0;
  std::uint64_t seed = 0;
  // Amplitude bouncing off a broken edge keeps phase +1 by default; the
  // opposite convention is available behind this flag.
  double broken_link_phase = 1.0;

  void validate() const;
  bool is_noiseless() const {
    return coin_measure_p == 0.0 && position_measure_p == 0.0 &&
           broken_link_p == 0.0;
  }
};

struct EvolveMode {
  enum class Kind { Trajectories, ExactClassical };
  Kind kind = Kind::Trajectories;
  std::int64_t count = 1000;

  static EvolveMode trajectories(std::int64_t count);
  static EvolveMode exact_classical();
};

// Mean position distribution over seeded trajectories (deterministic for a
// fixed seed, independent of worker count), or exact classical propagation
// of the fully measured walk. Exact mode requires coin_measure_p = 1 or
// position_measure_p = 1.
ProbDist decohere_evolve(std::int64_t steps, const line::CoinSpec& coin,
                         const InitSpec& init, const DecoherenceModel& model,
                         const EvolveMode& mode);

// Least-squares slope of log Var(t) against log t over the grid, using
// decohere_evolve at each t. The grid needs >= 4 points spanning at least a
// decade.
double variance_exponent(const DecoherenceModel& model,
                         const line::CoinSpec& coin, const InitSpec& init,
                         const std::vector<std::int64_t>& t_grid,
                         const EvolveMode& mode);

}  // namespace qwalk::stochastics
