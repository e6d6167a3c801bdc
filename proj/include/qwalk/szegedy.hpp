// Szegedy quantization of Markov chains: the isometries A and B, the walk
// operator W from the two reflections, spectral pairing with the chain
// discriminant, and the marked-element detection experiment.
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "qwalk/classical.hpp"
#include "qwalk/types.hpp"

namespace qwalk::szegedy {

struct SzegedyWalk {
  int n = 0;
  RMatrix p;  // forward chain
  RMatrix q;  // reverse chain; defaults to p
  RMatrix a;  // n^2 x n, columns phi_x = sum_y sqrt(p_{x,y}) |x,y>
  RMatrix b;  // n^2 x n, columns psi_y = sum_x sqrt(q_{y,x}) |x,y>
  RMatrix w;  // (2 A A^T - I)(2 B B^T - I)

  // D_{x,y} = sqrt(p_{x,y} q_{y,x}); its singular values are the cosines of
  // the principal angles between the column spans of A and B.
  RMatrix discriminant() const;
};

// Quantization of the bipartite walk (P, Q). The single-chain form sets
// Q = P, which keeps both column families normalized for any row-stochastic
// P. Size is capped at n = 32 (W is dense n^2 x n^2).
SzegedyWalk quantize(const classical::StochasticMatrix& p);
SzegedyWalk quantize_bipartite(const classical::StochasticMatrix& p,
                               const classical::StochasticMatrix& q);

struct DetectionResult {
  std::vector<double> marked_probability;  // after 0..max_steps applications
  std::optional<std::int64_t> first_crossing;
  double threshold = 0.0;
  // Szegedy's detection statistic 1 - <psi_0|psi_t>^2: exactly zero for all t
  // when M is empty (the start state is then stationary), so any deviation
  // certifies a marked element. On chains where the walk cannot localize
  // (one-dimensional cycles), the marked probability itself stays flat and
  // this is the quantity that moves.
  std::vector<double> deviation_from_start;
  std::optional<std::int64_t> first_deviation_crossing;
};

// Walk of the chain with marked rows replaced by self-loops, started from the
// uniform superposition of the unmodified phi_x; reports the probability of
// measuring the first register inside M after each step, plus the deviation
// statistic.
DetectionResult detect_marked(const classical::StochasticMatrix& p,
                              const std::set<int>& marked,
                              std::int64_t max_steps, double threshold);

}  // namespace qwalk::szegedy
