// Coined walks on finite graphs: edge-labeled shifts on d-regular graphs,
// averaged distributions and mixing times, the Grover-coin hypercube walk,
// and hypercube search with a marked-vertex coin.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qwalk/graph.hpp"
#include "qwalk/line_walks.hpp"
#include "qwalk/types.hpp"

namespace qwalk::graphs {

// Shift conventions for S|a,v> with u the a-th neighbor of v: Moving keeps
// the coin label, FlipFlop replaces it with the label of the reverse edge.
// Both are permutations of (coin, vertex) space, hence unitary.
enum class ShiftKind { Moving, FlipFlop };

// Localized start: coin amplitudes over the d directions at one vertex.
WalkState graph_basis_state(const Graph& g, int vertex,
                            const CVector& coin_amplitudes);

// Uniform over coin directions at one vertex.
WalkState graph_symmetric_state(const Graph& g, int vertex);

WalkState graph_walk_step(const Graph& g, const line::CoinSpec& coin,
                          const WalkState& state,
                          ShiftKind shift = ShiftKind::Moving);

WalkState graph_walk_evolve(const Graph& g, const line::CoinSpec& coin,
                            const WalkState& init, std::int64_t steps,
                            ShiftKind shift = ShiftKind::Moving);

// (1/T) sum_{t=0}^{T-1} P_t.
ProbDist averaged_distribution(const Graph& g, const line::CoinSpec& coin,
                               const WalkState& init, std::int64_t T,
                               ShiftKind shift = ShiftKind::Moving);

// Builds the explicit shift permutation matrix on (coin x vertex) space,
// mainly for construction audits in tests.
CMatrix shift_matrix(const Graph& g, ShiftKind shift = ShiftKind::Moving);

// Grover-coin walk on the n-dimensional hypercube, S|d,x> = |d, x xor e_d>.
WalkState hypercube_walk(int dim, std::int64_t steps, const WalkState& init);
WalkState hypercube_symmetric_state(int dim, int vertex = 0);

// Marked coin used at the flagged vertex of the search walk; everywhere else
// the coin is the Grover coin.
enum class MarkedCoin { NegIdentity, NegGrover };

struct SearchResult {
  std::int64_t t_final = 0;
  double success_probability = 0.0;         // P(marked) at t_final
  std::vector<double> trajectory;           // P(marked) after steps 0..t_final
};

// Search on the hypercube from the uniform state; t_final defaults to
// round(pi/2 * sqrt(2^n)).
SearchResult skw_search(int dim, int marked, std::int64_t steps = 0,
                        MarkedCoin marked_coin = MarkedCoin::NegIdentity);

// First index in traj whose total variation distance to target is <= eps.
std::optional<std::int64_t> instantaneous_mixing_time(
    const std::vector<ProbDist>& traj, const ProbDist& target, double eps);

}  // namespace qwalk::graphs
