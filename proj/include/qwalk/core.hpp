// State and operator algebra shared by all walk engines.
#pragma once

#include "qwalk/types.hpp"

namespace qwalk::core {

enum class Subsystem { Coin, Full };

// Applies a unitary to the coin register (op is coin_dim x coin_dim) or to
// the flattened coin (x) position space. Output norm matches input norm.
WalkState apply_unitary(const WalkState& state, const CMatrix& op,
                        Subsystem subsystem);

// P(n) = sum over coin indices of |amp(coin, n)|^2.
ProbDist position_distribution(const WalkState& state);

// 1/2 sum_i |p_i - q_i| over the union of supports; entries absent from one
// support read as zero.
double total_variation(const ProbDist& p, const ProbDist& q);

ProbDist uniform_distribution(std::int64_t n);

// 2x2 Hadamard coin, entries 1/sqrt(2) * {{1,1},{1,-1}}.
CMatrix hadamard();

}  // namespace qwalk::core
