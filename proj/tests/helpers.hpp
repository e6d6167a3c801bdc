// Deterministic random generators shared by the test suites.
#pragma once

#include <cmath>
#include <utility>

#include "qwalk/graph.hpp"
#include "qwalk/rng.hpp"
#include "qwalk/types.hpp"

namespace qwalk::testing {

inline double normal(CounterRng& rng) {
  // Box-Muller; uniform() never returns 0 exactly from above.
  const double u1 = 1.0 - rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline Complex random_complex(CounterRng& rng) {
  return {normal(rng), normal(rng)};
}

// Haar-distributed unitary: QR of a Ginibre matrix with the phase fix.
inline CMatrix random_unitary(int dim, CounterRng& rng) {
  CMatrix z(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) z(i, j) = random_complex(rng);
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

inline CVector random_state_vector(int dim, CounterRng& rng) {
  CVector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = random_complex(rng);
  v /= v.norm();
  return v;
}

inline WalkState random_walk_state(int coin_dim, int positions,
                                   CounterRng& rng) {
  WalkState s;
  s.coin_dim = coin_dim;
  s.positions.resize(static_cast<std::size_t>(positions));
  for (int j = 0; j < positions; ++j) s.positions[static_cast<std::size_t>(j)] = j;
  s.amp = CMatrix(coin_dim, positions);
  for (int c = 0; c < coin_dim; ++c) {
    for (int j = 0; j < positions; ++j) s.amp(c, j) = random_complex(rng);
  }
  s.amp /= std::sqrt(s.amp.squaredNorm());
  return s;
}

inline ProbDist random_prob_dist(int n, CounterRng& rng) {
  ProbDist d;
  d.support.resize(static_cast<std::size_t>(n));
  d.probs.resize(n);
  for (int j = 0; j < n; ++j) {
    d.support[static_cast<std::size_t>(j)] = j;
    d.probs[j] = rng.uniform() + 1e-12;
  }
  d.probs /= d.probs.sum();
  return d;
}

// Connected undirected simple graph on n vertices: a random spanning tree
// plus extra random edges.
inline Graph random_connected_graph(int n, CounterRng& rng) {
  Graph g;
  g.adjacency.resize(static_cast<std::size_t>(n));
  auto has_edge = [&](int u, int v) {
    for (int w : g.adjacency[static_cast<std::size_t>(u)]) {
      if (w == v) return true;
    }
    return false;
  };
  auto add_edge = [&](int u, int v) {
    g.adjacency[static_cast<std::size_t>(u)].push_back(v);
    g.adjacency[static_cast<std::size_t>(v)].push_back(u);
  };
  for (int v = 1; v < n; ++v) {
    add_edge(v, static_cast<int>(rng.below(static_cast<std::uint64_t>(v))));
  }
  const int extra = n / 2;
  for (int e = 0; e < extra; ++e) {
    const int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    if (u != v && !has_edge(u, v)) add_edge(u, v);
  }
  return g;
}

}  // namespace qwalk::testing
