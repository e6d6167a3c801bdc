// Closed-form limit laws used as ground truth: the weak-limit density of the
// rescaled walk position, the symmetric-initial-state classifier, and the
// coin-walker entanglement entropy.
#pragma once

#include <cstdint>

#include "qwalk/line_walks.hpp"
#include "qwalk/types.hpp"

namespace qwalk::oracles {

// Limit density of X_t / t for a 2x2-coin walk:
//   f(x) = sqrt(1-|a|^2) / (pi (1-x^2) sqrt(|a|^2-x^2)) * (1 - weight * x)
// supported on (-|a|, |a|). Requires every coin entry nonzero. The stored
// (a, b, c, d, alpha, beta) are in the left-mover-first convention the
// closed form is written in; the constructors below accept this library's
// coin order (index 0 = right-mover) and reverse internally.
struct LimitDensity {
  Complex a, b, c, d;
  Complex alpha, beta;
  double weight = 0.0;      // |alpha|^2-|beta|^2 + 2 Re(a alpha conj(b beta))/|a|^2
  double half_width = 0.0;  // |a|

  double operator()(double x) const;  // 0 outside (-|a|, |a|)
  // integral of x^m f(x) over the support, via the substitution
  // x = |a| sin(u) that removes the endpoint singularities
  double moment(int m, double tol = 1e-12) const;
  double mass(double x_lo, double x_hi) const;  // integral of f over a window
  double mean_closed_form() const;              // -weight (1 - sqrt(1-|a|^2))
  double second_moment_closed_form() const;     // 1 - sqrt(1-|a|^2)
};

LimitDensity limit_density(const CMatrix& coin, Complex coin0_amplitude,
                           Complex coin1_amplitude);

double konno_density(double x, const CMatrix& coin, Complex coin0_amplitude,
                     Complex coin1_amplitude);

// L1 distance between the empirical distribution of X_t/t and the limit
// density. Bins aggregate whole adjacent site pairs (the walk populates
// every other site only) and span roughly bin_width in pseudovelocity.
double empirical_limit_distance(std::int64_t t, const line::CoinSpec& coin,
                                const InitSpec& init, double bin_width = 0.025);

// True iff the initial coin state is balanced and phase-orthogonal for the
// given coin (within 1e-10); such states give exactly symmetric
// distributions at every step.
bool is_symmetric_init(const CMatrix& coin, Complex coin0_amplitude,
                       Complex coin1_amplitude);

// Von Neumann entropy (base 2) of the reduced coin state; coin_dim must be 2.
double coin_entropy(const WalkState& state);

}  // namespace qwalk::oracles
