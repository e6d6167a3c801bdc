// Classical random-walk baselines: exact line-walk distributions, stationary
// distributions of graph-induced chains, and hitting times (Monte Carlo and
// fundamental-matrix).
#pragma once

#include <cstdint>
#include <set>
#include <string>

#include "qwalk/graph.hpp"
#include "qwalk/types.hpp"

namespace qwalk::classical {

// Row-stochastic transition matrix.
struct StochasticMatrix {
  RMatrix p;

  int size() const { return static_cast<int>(p.rows()); }
  void validate(double tol = 1e-12) const;  // rows sum to 1, entries >= 0

  static StochasticMatrix from_graph(const Graph& g);  // p_uv = 1/deg(u)
  // Whitespace-separated text, row-major, preceded by a size header line.
  static StochasticMatrix load(const std::string& path);
  void save(const std::string& path) const;
};

// pr(Z_n = k | Z_0 = 0) over positions -n..n; zero at parity-violating sites.
ProbDist binomial_line_distribution(int n, double p);

// 4 n p (1-p).
double line_walk_variance(int n, double p);

// pi_i = deg(v_i) / 2m for a connected undirected graph.
ProbDist stationary_distribution(const Graph& g);

struct HittingEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::int64_t trials = 0;
};

// Monte Carlo mean first-passage time of the chain from source to target.
// Deterministic under a fixed seed; trial i draws from hash(seed, i).
HittingEstimate hitting_time_estimate(const StochasticMatrix& chain, int source,
                                      int target, std::int64_t trials,
                                      std::uint64_t seed,
                                      std::int64_t max_steps = 100000000);
HittingEstimate hitting_time_estimate(const Graph& g, int source, int target,
                                      std::int64_t trials, std::uint64_t seed,
                                      std::int64_t max_steps = 100000000);

// Line-regime proxy used by the scaling checks: the inverse of the exact
// n-step occupation probability at position k (a geometric-mean reading of
// the hitting time; the walk itself has no finite mean first passage on Z).
double line_hitting_time_inverse_probability(int n, int k);

// Expected steps to absorption in M via a linear solve on (I - P_M),
// averaged over the start distribution. Marked starts contribute zero.
double fundamental_hitting_time(const StochasticMatrix& chain,
                                const std::set<int>& marked,
                                const ProbDist& start);

}  // namespace qwalk::classical
