#include "qwalk/ctqw.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qwalk/classical.hpp"
#include "qwalk/rng.hpp"

namespace qwalk::ctqw {

RMatrix hamiltonian(const CTQWConfig& cfg) {
  if (!(cfg.gamma > 0.0) || !std::isfinite(cfg.gamma)) {
    throw Error(ErrorCode::DomainError, "ctqw: gamma must be finite positive");
  }
  const int n = cfg.graph.num_vertices();
  RMatrix h = RMatrix::Zero(n, n);
  for (int v = 0; v < n; ++v) {
    for (int u : cfg.graph.adjacency[v]) h(v, u) -= cfg.gamma;
    if (cfg.convention == Convention::Laplacian) {
      h(v, v) = cfg.gamma * cfg.graph.degree(v);
    }
  }
  return h;
}

Propagator::Propagator(const RMatrix& h) {
  if (h.rows() != h.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "propagator: square matrix only");
  }
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorCode::BadInput, "propagator: Hamiltonian not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(h);
  vectors_ = solver.eigenvectors();
  values_ = solver.eigenvalues();
}

CVector Propagator::evolve(const CVector& init, double t) const {
  if (init.size() != vectors_.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "propagator: init size mismatch");
  }
  const CVector coeffs = vectors_.transpose() * init;
  CVector scaled(coeffs.size());
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    scaled[i] = coeffs[i] * std::polar(1.0, -values_[i] * t);
  }
  return vectors_ * scaled;
}

WalkState ctqw_evolve(const CTQWConfig& cfg, double t, const CVector& init) {
  const int n = cfg.graph.num_vertices();
  if (n > 4096) {
    throw Error(ErrorCode::TooLarge,
                "ctqw: dense spectral path is capped at 4096 vertices");
  }
  if (init.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "ctqw: init size mismatch");
  }
  Propagator prop(hamiltonian(cfg));
  WalkState s;
  s.coin_dim = 1;
  s.positions.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) s.positions[static_cast<std::size_t>(v)] = v;
  s.amp = prop.evolve(init, t).transpose();
  return s;
}

double arcsine_cdf(double a, double b) {
  if (!(a >= -1.0 && a < b && b <= 1.0)) {
    throw Error(ErrorCode::DomainError,
                "arcsine cdf: need -1 <= a < b <= 1");
  }
  return (std::asin(b) - std::asin(a)) / M_PI;
}

int GluedTrees::num_columns() const {
  return *std::max_element(column_of.begin(), column_of.end()) + 1;
}

GluedTrees glued_trees(int depth, GluedVariant variant, std::uint64_t seed) {
  if (depth < 1) throw Error(ErrorCode::BadInput, "glued trees: depth >= 1");
  if (depth > 14) throw Error(ErrorCode::TooLarge, "glued trees: depth <= 14");
  const int n = depth;
  GluedTrees gt;
  gt.depth = depth;

  // Left tree columns 0..n, right tree mirrored. The identified variant
  // shares the leaf layer; the cycle variant keeps both layers and joins
  // them with a random alternating cycle.
  const bool identified = variant == GluedVariant::Identified;
  const int columns = identified ? 2 * n + 1 : 2 * n + 2;
  std::vector<int> col_size(static_cast<std::size_t>(columns));
  for (int j = 0; j < columns; ++j) {
    const int left_level = j;
    const int right_level = columns - 1 - j;
    col_size[static_cast<std::size_t>(j)] =
        1 << std::min(std::min(left_level, right_level), n);
  }
  std::vector<int> col_start(static_cast<std::size_t>(columns) + 1, 0);
  for (int j = 0; j < columns; ++j) {
    col_start[static_cast<std::size_t>(j) + 1] =
        col_start[static_cast<std::size_t>(j)] + col_size[static_cast<std::size_t>(j)];
  }
  const int total = col_start.back();
  gt.graph.adjacency.resize(static_cast<std::size_t>(total));
  gt.column_of.resize(static_cast<std::size_t>(total));
  for (int j = 0; j < columns; ++j) {
    for (int i = 0; i < col_size[static_cast<std::size_t>(j)]; ++i) {
      gt.column_of[static_cast<std::size_t>(col_start[static_cast<std::size_t>(j)] + i)] = j;
    }
  }
  auto vid = [&](int j, int i) { return col_start[static_cast<std::size_t>(j)] + i; };
  auto link = [&](int a, int b) {
    gt.graph.adjacency[static_cast<std::size_t>(a)].push_back(b);
    gt.graph.adjacency[static_cast<std::size_t>(b)].push_back(a);
  };

  // Doubling edges on the left half, halving on the right half.
  for (int j = 0; j + 1 < columns; ++j) {
    const int a = col_size[static_cast<std::size_t>(j)];
    const int b = col_size[static_cast<std::size_t>(j) + 1];
    if (b == 2 * a) {
      for (int i = 0; i < a; ++i) {
        link(vid(j, i), vid(j + 1, 2 * i));
        link(vid(j, i), vid(j + 1, 2 * i + 1));
      }
    } else if (a == 2 * b) {
      for (int i = 0; i < a; ++i) link(vid(j, i), vid(j + 1, i / 2));
    } else {
      // equal-size leaf layers of the cycle variant: seeded alternating cycle
      const int leaves = a;
      std::vector<int> left(static_cast<std::size_t>(leaves));
      std::vector<int> right(static_cast<std::size_t>(leaves));
      std::iota(left.begin(), left.end(), 0);
      std::iota(right.begin(), right.end(), 0);
      CounterRng rng(derive_seed(seed, 0x676c7565ULL));
      for (int i = leaves - 1; i > 0; --i) {
        std::swap(left[static_cast<std::size_t>(i)],
                  left[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1))]);
      }
      for (int i = leaves - 1; i > 0; --i) {
        std::swap(right[static_cast<std::size_t>(i)],
                  right[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1))]);
      }
      for (int i = 0; i < leaves; ++i) {
        link(vid(j, left[static_cast<std::size_t>(i)]),
             vid(j + 1, right[static_cast<std::size_t>(i)]));
        link(vid(j + 1, right[static_cast<std::size_t>(i)]),
             vid(j, left[static_cast<std::size_t>((i + 1) % leaves)]));
      }
    }
  }

  gt.entrance = vid(0, 0);
  gt.exit_vertex = vid(columns - 1, 0);
  gt.graph.marked = {gt.entrance, gt.exit_vertex};
  return gt;
}

TraversalResult traversal_experiment(const GluedTrees& g, double gamma,
                                     double horizon, int samples) {
  if (samples < 1 || horizon <= 0.0) {
    throw Error(ErrorCode::DomainError, "traversal: samples >= 1, horizon > 0");
  }
  const int n = g.graph.num_vertices();
  CTQWConfig cfg;
  cfg.gamma = gamma;
  cfg.graph = g.graph;
  cfg.convention = Convention::Adjacency;
  Propagator prop(hamiltonian(cfg));
  CVector init = CVector::Zero(n);
  init[g.entrance] = Complex(1, 0);

  TraversalResult res;
  for (int s = 1; s <= samples; ++s) {
    const double t = horizon * static_cast<double>(s) / samples;
    const CVector psi = prop.evolve(init, t);
    const double p = std::norm(psi[g.exit_vertex]);
    if (p > res.quantum_max_exit_probability) {
      res.quantum_max_exit_probability = p;
      res.quantum_argmax_time = t;
    }
  }

  const auto chain = classical::StochasticMatrix::from_graph(g.graph);
  RVector dist = RVector::Zero(n);
  dist[g.entrance] = 1.0;
  res.classical_max_exit_probability = dist[g.exit_vertex];
  const auto steps = static_cast<std::int64_t>(std::floor(horizon));
  for (std::int64_t t = 1; t <= steps; ++t) {
    dist = (chain.p.transpose() * dist).eval();
    res.classical_max_exit_probability =
        std::max(res.classical_max_exit_probability, dist[g.exit_vertex]);
  }
  return res;
}

double ScatteringResult::flux(int j) const {
  double acc = std::norm(reflection[j]);
  for (Eigen::Index jj = 0; jj < transmission.cols(); ++jj) {
    if (jj != j) acc += std::norm(transmission(j, jj));
  }
  return acc;
}

ScatteringResult scattering_solve(const Graph& g, const std::vector<int>& leads,
                                  double k) {
  if (!(k > -M_PI && k < 0.0)) {
    throw Error(ErrorCode::DomainError, "scattering: k must lie in (-pi, 0)");
  }
  const int n = g.num_vertices();
  const int nl = static_cast<int>(leads.size());
  if (nl < 1) throw Error(ErrorCode::BadInput, "scattering: need >= 1 lead");
  for (int v : leads) {
    if (v < 0 || v >= n) {
      throw Error(ErrorCode::BadInput, "scattering: lead vertex out of range");
    }
  }
  g.check_undirected();

  const Complex eik = std::polar(1.0, k);
  const Complex emik = std::polar(1.0, -k);
  const double energy = 2.0 * std::cos(k);

  // Unknowns: the graph-vertex amplitudes psi(v). Lead coefficients follow
  // from the boundary value: c_l = psi(v_l) - [l == incoming]. The
  // eigenequation at vertex v reads
  //   sum_u psi(u) + sum_{leads at v} psi_l(1) = 2 cos(k) psi(v)
  // with psi_l(1) = [l == j] e^{-ik} + c_l e^{ik}.
  CMatrix system = CMatrix::Zero(n, n);
  for (int v = 0; v < n; ++v) {
    system(v, v) -= energy;
    for (int u : g.adjacency[v]) system(v, u) += Complex(1, 0);
  }
  for (int l = 0; l < nl; ++l) system(leads[l], leads[l]) += eik;

  Eigen::FullPivLU<CMatrix> lu(system);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::Singular,
                "scattering: singular system at k = " + std::to_string(k));
  }

  ScatteringResult res;
  res.k = k;
  res.reflection = CVector::Zero(nl);
  res.transmission = CMatrix::Zero(nl, nl);
  res.vertex_amplitudes = CMatrix::Zero(n, nl);

  for (int j = 0; j < nl; ++j) {
    CVector rhs = CVector::Zero(n);
    // Incoming wave contributes (e^{-ik} - e^{ik}) at its attachment vertex.
    rhs[leads[j]] -= emik - eik;
    const CVector psi = lu.solve(rhs);
    res.vertex_amplitudes.col(j) = psi;
    for (int l = 0; l < nl; ++l) {
      const Complex c = psi[leads[l]] - (l == j ? Complex(1, 0) : Complex(0, 0));
      if (l == j) {
        res.reflection[j] = c;
      } else {
        res.transmission(j, l) = c;
      }
    }
  }
  return res;
}

Complex childs_transmission(double k) {
  if (!(k > -M_PI && k < 0.0)) {
    throw Error(ErrorCode::DomainError, "transmission: k must lie in (-pi, 0)");
  }
  const double s = std::sin(k);
  const double c = std::cos(k);
  if (std::abs(s) < 1e-9 || std::abs(c) < 1e-9) {
    throw Error(ErrorCode::Singular,
                "transmission: closed form singular at k = " + std::to_string(k));
  }
  const double csc = 1.0 / s;
  const double sec = 1.0 / c;
  return 8.0 / (8.0 + Complex(0, 1) * std::cos(2.0 * k) * csc * csc * csc * sec);
}

}  // namespace qwalk::ctqw
