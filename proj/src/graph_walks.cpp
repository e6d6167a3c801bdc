#include "qwalk/graph_walks.hpp"

#include <cmath>

#include "qwalk/core.hpp"

namespace qwalk::graphs {

namespace {

// Pairs each directed edge slot (v, a) with its reverse slot (u, b). For
// simple graphs this is the unique back edge; parallel edges are paired by
// occurrence order, which still yields an involution.
std::vector<std::vector<int>> reverse_labels(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<std::vector<int>> rev(n);
  for (int v = 0; v < n; ++v) rev[v].assign(g.adjacency[v].size(), -1);
  for (int v = 0; v < n; ++v) {
    for (std::size_t a = 0; a < g.adjacency[v].size(); ++a) {
      if (rev[v][a] != -1) continue;
      const int u = g.adjacency[v][a];
      if (u == v) {
        rev[v][a] = static_cast<int>(a);
        continue;
      }
      // occurrence index of this parallel edge within adj(v)
      int occurrence = 0;
      for (std::size_t b = 0; b < a; ++b) {
        if (g.adjacency[v][b] == u) ++occurrence;
      }
      int seen = 0;
      for (std::size_t b = 0; b < g.adjacency[u].size(); ++b) {
        if (g.adjacency[u][b] == v) {
          if (seen == occurrence) {
            rev[v][a] = static_cast<int>(b);
            rev[u][b] = static_cast<int>(a);
            break;
          }
          ++seen;
        }
      }
      if (rev[v][a] == -1) {
        throw Error(ErrorCode::BadInput,
                    "graph shift: adjacency is not undirected-consistent");
      }
    }
  }
  return rev;
}

void check_regular_coin(const Graph& g, int coin_dim) {
  const int d = g.regular_degree();
  if (d == -1 || d != coin_dim) {
    throw Error(ErrorCode::DimensionMismatch,
                "graph walk: coin dimension must equal the regular degree");
  }
}

}  // namespace

WalkState graph_basis_state(const Graph& g, int vertex,
                            const CVector& coin_amplitudes) {
  const int n = g.num_vertices();
  if (vertex < 0 || vertex >= n) {
    throw Error(ErrorCode::BadInput, "graph state: vertex out of range");
  }
  WalkState s;
  s.coin_dim = static_cast<int>(coin_amplitudes.size());
  s.positions.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) s.positions[static_cast<std::size_t>(v)] = v;
  s.amp = CMatrix::Zero(s.coin_dim, n);
  s.amp.col(vertex) = coin_amplitudes;
  return s;
}

WalkState graph_symmetric_state(const Graph& g, int vertex) {
  const int d = g.degree(vertex);
  return graph_basis_state(
      g, vertex, CVector::Constant(d, Complex(1.0 / std::sqrt(double(d)), 0)));
}

WalkState graph_walk_step(const Graph& g, const line::CoinSpec& coin,
                          const WalkState& state, ShiftKind shift) {
  check_regular_coin(g, state.coin_dim);
  if (coin.dimension() != state.coin_dim) {
    throw Error(ErrorCode::DimensionMismatch, "graph walk: coin mismatch");
  }
  const int n = g.num_vertices();
  const CMatrix coined = coin.matrix() * state.amp;
  WalkState out = state;
  out.amp.setZero();
  if (shift == ShiftKind::Moving) {
    for (int v = 0; v < n; ++v) {
      for (std::size_t a = 0; a < g.adjacency[v].size(); ++a) {
        out.amp(static_cast<int>(a), g.adjacency[v][a]) +=
            coined(static_cast<int>(a), v);
      }
    }
  } else {
    const auto rev = reverse_labels(g);
    for (int v = 0; v < n; ++v) {
      for (std::size_t a = 0; a < g.adjacency[v].size(); ++a) {
        out.amp(rev[v][a], g.adjacency[v][a]) += coined(static_cast<int>(a), v);
      }
    }
  }
  return out;
}

WalkState graph_walk_evolve(const Graph& g, const line::CoinSpec& coin,
                            const WalkState& init, std::int64_t steps,
                            ShiftKind shift) {
  WalkState s = init;
  for (std::int64_t t = 0; t < steps; ++t) s = graph_walk_step(g, coin, s, shift);
  return s;
}

ProbDist averaged_distribution(const Graph& g, const line::CoinSpec& coin,
                               const WalkState& init, std::int64_t T,
                               ShiftKind shift) {
  if (T < 1) throw Error(ErrorCode::DomainError, "averaged distribution: T >= 1");
  WalkState s = init;
  RVector acc = RVector::Zero(g.num_vertices());
  for (std::int64_t t = 0; t < T; ++t) {
    acc += s.amp.cwiseAbs2().colwise().sum().transpose();
    if (t + 1 < T) s = graph_walk_step(g, coin, s, shift);
  }
  ProbDist d;
  d.support = s.positions;
  d.probs = acc / static_cast<double>(T);
  return d;
}

CMatrix shift_matrix(const Graph& g, ShiftKind shift) {
  const int d = g.regular_degree();
  if (d == -1) {
    throw Error(ErrorCode::DimensionMismatch, "shift matrix: graph not regular");
  }
  const int n = g.num_vertices();
  CMatrix s = CMatrix::Zero(d * n, d * n);
  const auto rev = reverse_labels(g);
  for (int v = 0; v < n; ++v) {
    for (int a = 0; a < d; ++a) {
      const int u = g.adjacency[v][static_cast<std::size_t>(a)];
      const int b = shift == ShiftKind::Moving ? a : rev[v][static_cast<std::size_t>(a)];
      // column index (a, v), row index (b, u); coin-major flattening
      s(b + d * u, a + d * v) = Complex(1, 0);
    }
  }
  return s;
}

namespace {

void hypercube_grover_coin_in_place(CMatrix& amp) {
  const double d = static_cast<double>(amp.rows());
  const Eigen::RowVectorXcd sums = amp.colwise().sum();
  amp = ((2.0 / d) * CVector::Ones(amp.rows()) * sums - amp).eval();
}

void hypercube_shift_in_place(CMatrix& amp, int dim) {
  for (int d = 0; d < dim; ++d) {
    const int mask = 1 << d;
    for (int x = 0; x < (1 << dim); ++x) {
      if (x < (x ^ mask)) {
        std::swap(amp(d, x), amp(d, x ^ mask));
      }
    }
  }
}

}  // namespace

WalkState hypercube_symmetric_state(int dim, int vertex) {
  if (dim < 1) throw Error(ErrorCode::BadInput, "hypercube: dim >= 1");
  WalkState s;
  s.coin_dim = dim;
  const int n = 1 << dim;
  s.positions.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) s.positions[static_cast<std::size_t>(v)] = v;
  s.amp = CMatrix::Zero(dim, n);
  s.amp.col(vertex).setConstant(Complex(1.0 / std::sqrt(double(dim)), 0));
  return s;
}

WalkState hypercube_walk(int dim, std::int64_t steps, const WalkState& init) {
  if (dim < 1 || dim > 16) {
    throw Error(ErrorCode::TooLarge,
                "hypercube walk: dim must lie in [1,16] for the dense engine");
  }
  if (init.coin_dim != dim ||
      init.num_positions() != (std::int64_t(1) << dim)) {
    throw Error(ErrorCode::DimensionMismatch, "hypercube walk: bad init shape");
  }
  WalkState s = init;
  for (std::int64_t t = 0; t < steps; ++t) {
    hypercube_grover_coin_in_place(s.amp);
    hypercube_shift_in_place(s.amp, dim);
  }
  return s;
}

SearchResult skw_search(int dim, int marked, std::int64_t steps,
                        MarkedCoin marked_coin) {
  if (dim < 2 || dim > 16) {
    throw Error(ErrorCode::BadInput, "search: dim must lie in [2,16]");
  }
  const int n = 1 << dim;
  if (marked < 0 || marked >= n) {
    throw Error(ErrorCode::BadInput, "search: marked vertex out of range");
  }
  SearchResult res;
  res.t_final = steps > 0
                    ? steps
                    : std::llround(M_PI / 2.0 * std::sqrt(static_cast<double>(n)));

  CMatrix amp = CMatrix::Constant(
      dim, n, Complex(1.0 / std::sqrt(double(dim) * double(n)), 0));
  auto marked_prob = [&] { return amp.col(marked).squaredNorm(); };
  res.trajectory.push_back(marked_prob());

  const double d = static_cast<double>(dim);
  for (std::int64_t t = 0; t < res.t_final; ++t) {
    const CVector marked_col = amp.col(marked);
    hypercube_grover_coin_in_place(amp);
    switch (marked_coin) {
      case MarkedCoin::NegIdentity:
        amp.col(marked) = -marked_col;
        break;
      case MarkedCoin::NegGrover:
        amp.col(marked) =
            marked_col - (2.0 / d) * CVector::Ones(dim) * marked_col.sum();
        break;
    }
    hypercube_shift_in_place(amp, dim);
    res.trajectory.push_back(marked_prob());
  }
  res.success_probability = res.trajectory.back();
  return res;
}

std::optional<std::int64_t> instantaneous_mixing_time(
    const std::vector<ProbDist>& traj, const ProbDist& target, double eps) {
  if (traj.empty()) {
    throw Error(ErrorCode::BadInput, "mixing time: empty trajectory");
  }
  for (std::size_t t = 0; t < traj.size(); ++t) {
    if (core::total_variation(traj[t], target) <= eps) {
      return static_cast<std::int64_t>(t);
    }
  }
  return std::nullopt;
}

}  // namespace qwalk::graphs
