// Continuous-time quantum walks: graph Hamiltonians, spectral time evolution,
// the arcsine limit law, glued-trees traversal, and a scattering solver for
// graphs with semi-infinite leads.
#pragma once

#include <cstdint>
#include <vector>

#include "qwalk/graph.hpp"
#include "qwalk/types.hpp"

namespace qwalk::ctqw {

enum class Convention { Adjacency, Laplacian };

struct CTQWConfig {
  double gamma = 1.0;
  Graph graph;
  Convention convention = Convention::Laplacian;
};

// -gamma A (adjacency) or gamma (D - A) (the generator form).
RMatrix hamiltonian(const CTQWConfig& cfg);

// Holds the eigendecomposition of a symmetric Hamiltonian so many times can
// be sampled cheaply.
class Propagator {
 public:
  explicit Propagator(const RMatrix& h);
  CVector evolve(const CVector& init, double t) const;

 private:
  RMatrix vectors_;
  RVector values_;
};

// exp(-iHt) applied to a vertex-amplitude vector; coin_dim = 1 in the result.
WalkState ctqw_evolve(const CTQWConfig& cfg, double t, const CVector& init);

// (asin(b) - asin(a)) / pi for -1 <= a < b <= 1.
double arcsine_cdf(double a, double b);

enum class GluedVariant { Identified, RandomCycle };

struct GluedTrees {
  Graph graph;
  int entrance = 0;
  int exit_vertex = 0;
  std::vector<int> column_of;  // distance layer from the entrance root
  int depth = 0;

  int num_columns() const;
};

// Two balanced binary trees of height depth joined at the leaf layer, either
// by identifying the leaves or by a seeded random cycle alternating between
// the two leaf layers.
GluedTrees glued_trees(int depth, GluedVariant variant, std::uint64_t seed = 0);

struct TraversalResult {
  double quantum_max_exit_probability = 0.0;
  double quantum_argmax_time = 0.0;
  double classical_max_exit_probability = 0.0;  // over integer steps 0..horizon
};

// Quantum side: CTQW from ENTRANCE, P(EXIT) sampled at `samples` times in
// (0, horizon]. Classical side: exact propagation of the induced chain.
TraversalResult traversal_experiment(const GluedTrees& g, double gamma,
                                     double horizon, int samples);

struct ScatteringResult {
  double k = 0.0;
  CVector reflection;       // R_j per incoming lead j
  CMatrix transmission;     // T(j, j') for j' != j; diagonal is zero
  CMatrix vertex_amplitudes;  // column j: in-graph amplitudes for incoming j

  // |R_j|^2 + sum_{j' != j} |T_{j,j'}|^2
  double flux(int j) const;
};

// Plane-wave scattering at energy 2 cos k on the adjacency Hamiltonian of g
// with semi-infinite leads attached at the given vertices (repeats allowed).
// Substitutes the lead ansatz e^{-ikx} + R e^{ikx} / T e^{ikx} into the
// eigenequation at every graph vertex and solves the resulting linear system
// once per incoming lead.
ScatteringResult scattering_solve(const Graph& g, const std::vector<int>& leads,
                                  double k);

// 8 / (8 + i cos(2k) csc^3(k) sec(k)); singular momenta are rejected.
Complex childs_transmission(double k);

}  // namespace qwalk::ctqw
