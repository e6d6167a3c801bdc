// Coined discrete-time quantum walks on the integer line: direct evolution,
// momentum-space evolution, path-counting amplitudes, absorbing boundaries,
// and walks driven by several coins.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "qwalk/types.hpp"

namespace qwalk::line {

class CoinSpec {
 public:
  enum class Kind { Hadamard, GeneralSU2, Grover, Explicit, Sequence };

  static CoinSpec hadamard();
  // C2(rho, theta, phi) = [[sqrt(rho),            sqrt(1-rho) e^{i theta}],
  //                        [sqrt(1-rho) e^{i phi}, -sqrt(rho) e^{i(theta+phi)}]]
  static CoinSpec general_su2(double rho, double theta, double phi);
  static CoinSpec grover(int d);
  static CoinSpec from_matrix(const CMatrix& u);
  // Step s of a multi-coin walk uses coins[schedule(s)].
  static CoinSpec sequence(std::vector<CoinSpec> coins,
                           std::function<int(std::int64_t)> schedule);

  Kind kind() const { return kind_; }
  int dimension() const;
  CMatrix matrix() const;  // realized unitary; throws for Sequence
  CMatrix matrix_at(std::int64_t step) const;

  const std::vector<CoinSpec>& coins() const { return coins_; }
  const std::function<int(std::int64_t)>& schedule() const { return schedule_; }

 private:
  CoinSpec() = default;
  Kind kind_ = Kind::Hadamard;
  double rho_ = 0.0, theta_ = 0.0, phi_ = 0.0;
  int grover_dim_ = 0;
  CMatrix explicit_;
  std::vector<CoinSpec> coins_;
  std::function<int(std::int64_t)> schedule_;
};

// 0,1,0,0,1,0,1,0,... from the substitution 0 -> 01, 1 -> 0.
std::function<int(std::int64_t)> fibonacci_schedule(std::int64_t steps);
std::function<int(std::int64_t)> periodic_schedule(int period);

struct BarrierSpec {
  enum class Mode { None, SemiInfinite, TwoBarriers };
  Mode mode = Mode::None;
  std::int64_t barrier = 0;        // SemiInfinite
  std::int64_t left = 0, right = 0;  // TwoBarriers, left < start < right

  static BarrierSpec none();
  static BarrierSpec semi_infinite(std::int64_t barrier);
  static BarrierSpec two_barriers(std::int64_t left, std::int64_t right);
};

// State after t applications of shift * (coin x I), stored on the light cone
// [start - t, start + t].
WalkState evolve(std::int64_t steps, const CoinSpec& coin, const InitSpec& init);

// Momentum-space evolution on a grid of size >= 2t+1 (default: next power of
// two >= 2t+2). Agrees with evolve() entrywise to 1e-10.
WalkState evolve_fourier(std::int64_t steps, const CoinSpec& coin,
                         const InitSpec& init, std::int64_t grid_size = 0);

// Per-momentum one-step propagator diag(e^{ik}, e^{-ik}) * C.
CMatrix momentum_step_matrix(const CMatrix& coin, double k);

// Momentum grid k_j = -pi + 2 pi j / N used by evolve_fourier.
std::vector<double> momentum_grid(std::int64_t grid_size);

// Hadamard-walk amplitudes at position n after t steps from |0>_c (x) |0>_p,
// by summing signed path counts. Returns (psi_L, psi_R) = amplitudes of coin
// index 1 (left-mover) and coin index 0 (right-mover). Exact zeros off the
// parity class.
std::pair<Complex, Complex> path_counting_amplitudes(std::int64_t n,
                                                     std::int64_t t);

struct AbsorptionRecord {
  // cumulative absorbed probability after the measurement at step s = 0..T
  std::vector<double> cumulative_left;
  std::vector<double> cumulative_right;  // all zero for a single barrier
  double survivor_norm = 0.0;            // squared norm remaining at T

  double absorbed_left() const { return cumulative_left.back(); }
  double absorbed_right() const { return cumulative_right.back(); }
};

// Stopped walk: projective measurement at the barrier site(s) every step,
// starting with one measurement before the first step. Probability leaving
// the lattice is accounted exactly; absorbed + survivor = 1 up to rounding.
AbsorptionRecord absorbing_walk(const BarrierSpec& barriers,
                                const CoinSpec& coin, const InitSpec& init,
                                std::int64_t max_steps);

// Walk whose coin at step s is coins[schedule(s)].
WalkState multi_coin_evolve(std::int64_t steps,
                            const std::vector<CoinSpec>& coins,
                            const std::function<int(std::int64_t)>& schedule,
                            const InitSpec& init);

}  // namespace qwalk::line
