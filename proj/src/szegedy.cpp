#include "qwalk/szegedy.hpp"

#include <cmath>

namespace qwalk::szegedy {

namespace {

constexpr int kMaxChainSize = 32;

SzegedyWalk build(const RMatrix& p, const RMatrix& q) {
  const int n = static_cast<int>(p.rows());
  SzegedyWalk walk;
  walk.n = n;
  walk.p = p;
  walk.q = q;
  // Pair basis index (x, y) -> x * n + y.
  walk.a = RMatrix::Zero(n * n, n);
  walk.b = RMatrix::Zero(n * n, n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      walk.a(x * n + y, x) = std::sqrt(std::max(p(x, y), 0.0));
      walk.b(x * n + y, y) = std::sqrt(std::max(q(y, x), 0.0));
    }
  }
  const RMatrix ident = RMatrix::Identity(n * n, n * n);
  const RMatrix ref_a = 2.0 * walk.a * walk.a.transpose() - ident;
  const RMatrix ref_b = 2.0 * walk.b * walk.b.transpose() - ident;
  walk.w = ref_a * ref_b;
  return walk;
}

}  // namespace

RMatrix SzegedyWalk::discriminant() const {
  RMatrix d(n, n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      d(x, y) = std::sqrt(std::max(p(x, y) * q(y, x), 0.0));
    }
  }
  return d;
}

SzegedyWalk quantize(const classical::StochasticMatrix& p) {
  return quantize_bipartite(p, p);
}

SzegedyWalk quantize_bipartite(const classical::StochasticMatrix& p,
                               const classical::StochasticMatrix& q) {
  p.validate(1e-9);
  q.validate(1e-9);
  if (p.size() != q.size()) {
    throw Error(ErrorCode::DimensionMismatch, "quantize: P and Q sizes differ");
  }
  if (p.size() > kMaxChainSize) {
    throw Error(ErrorCode::TooLarge,
                "quantize: dense walk operator is capped at n = 32");
  }
  return build(p.p, q.p);
}

DetectionResult detect_marked(const classical::StochasticMatrix& p,
                              const std::set<int>& marked,
                              std::int64_t max_steps, double threshold) {
  p.validate(1e-9);
  const int n = p.size();
  if (marked.empty()) {
    throw Error(ErrorCode::BadInput, "detect: marked set must be nonempty");
  }
  for (int v : marked) {
    if (v < 0 || v >= n) {
      throw Error(ErrorCode::BadInput, "detect: marked vertex out of range");
    }
  }
  if (max_steps < 0) {
    throw Error(ErrorCode::DomainError, "detect: max_steps >= 0");
  }

  // Absorbing modification: marked rows become self-loops.
  classical::StochasticMatrix modified = p;
  for (int x : marked) {
    modified.p.row(x).setZero();
    modified.p(x, x) = 1.0;
  }
  const SzegedyWalk walk = quantize(modified);
  const SzegedyWalk plain = quantize(p);

  const RVector psi0 =
      plain.a * RVector::Constant(n, 1.0 / std::sqrt(double(n)));
  RVector state = psi0;

  DetectionResult res;
  res.threshold = threshold;
  auto marked_mass = [&](const RVector& s) {
    double acc = 0.0;
    for (int x : marked) acc += s.segment(x * n, n).squaredNorm();
    return acc;
  };
  auto deviation = [&](const RVector& s) {
    const double overlap = psi0.dot(s);
    return 1.0 - overlap * overlap;
  };
  res.marked_probability.push_back(marked_mass(state));
  res.deviation_from_start.push_back(deviation(state));
  for (std::int64_t t = 1; t <= max_steps; ++t) {
    state = (walk.w * state).eval();
    res.marked_probability.push_back(marked_mass(state));
    res.deviation_from_start.push_back(deviation(state));
  }
  for (std::size_t t = 0; t < res.marked_probability.size(); ++t) {
    if (res.marked_probability[t] > threshold) {
      res.first_crossing = static_cast<std::int64_t>(t);
      break;
    }
  }
  for (std::size_t t = 0; t < res.deviation_from_start.size(); ++t) {
    if (res.deviation_from_start[t] > threshold) {
      res.first_deviation_crossing = static_cast<std::int64_t>(t);
      break;
    }
  }
  return res;
}

}  // namespace qwalk::szegedy
