#include "qwalk/core.hpp"

#include <cmath>
#include <map>

namespace qwalk {

std::int64_t WalkState::find_position(std::int64_t label) const {
  for (std::size_t j = 0; j < positions.size(); ++j) {
    if (positions[j] == label) return static_cast<std::int64_t>(j);
  }
  return -1;
}

double ProbDist::at(std::int64_t label) const {
  for (std::size_t j = 0; j < support.size(); ++j) {
    if (support[j] == label) return probs[static_cast<Eigen::Index>(j)];
  }
  return 0.0;
}

double ProbDist::mean() const {
  double m = 0.0;
  for (std::size_t j = 0; j < support.size(); ++j) {
    m += static_cast<double>(support[j]) * probs[static_cast<Eigen::Index>(j)];
  }
  return m;
}

double ProbDist::variance() const {
  const double m = mean();
  double v = 0.0;
  for (std::size_t j = 0; j < support.size(); ++j) {
    const double d = static_cast<double>(support[j]) - m;
    v += d * d * probs[static_cast<Eigen::Index>(j)];
  }
  return v;
}

InitSpec InitSpec::coin(Complex a0, Complex a1, std::int64_t start) {
  InitSpec s;
  s.coin_amplitudes = CVector(2);
  s.coin_amplitudes << a0, a1;
  s.start_position = start;
  return s;
}

InitSpec InitSpec::unbiased(double eta, double alpha_phase,
                            std::int64_t start) {
  if (eta < 0.0 || eta > 1.0) {
    throw Error(ErrorCode::DomainError, "init: eta must lie in [0,1]");
  }
  return coin(std::sqrt(eta),
              std::polar(std::sqrt(1.0 - eta), alpha_phase), start);
}

void InitSpec::validate() const {
  if (coin_amplitudes.size() < 1) {
    throw Error(ErrorCode::BadInput, "init: empty coin amplitude vector");
  }
  if (std::abs(coin_amplitudes.squaredNorm() - 1.0) > 1e-12) {
    throw Error(ErrorCode::BadInput, "init: coin amplitudes must be unit norm");
  }
}

void require_unitary(const CMatrix& u, double tol) {
  if (!is_unitary(u, tol)) {
    throw Error(ErrorCode::NotUnitary, "matrix is not unitary within tolerance");
  }
}

}  // namespace qwalk

namespace qwalk::core {

WalkState apply_unitary(const WalkState& state, const CMatrix& op,
                        Subsystem subsystem) {
  WalkState out = state;
  if (subsystem == Subsystem::Coin) {
    if (op.rows() != state.coin_dim || op.cols() != state.coin_dim) {
      throw Error(ErrorCode::DimensionMismatch,
                  "apply_unitary: coin operator dimension mismatch");
    }
    out.amp = op * state.amp;
  } else {
    const Eigen::Index dim = state.amp.size();
    if (op.rows() != dim || op.cols() != dim) {
      throw Error(ErrorCode::DimensionMismatch,
                  "apply_unitary: full operator dimension mismatch");
    }
    // Column-major flattening: index = coin + coin_dim * position.
    CVector flat = Eigen::Map<const CVector>(state.amp.data(), dim);
    CVector res = op * flat;
    out.amp = Eigen::Map<const CMatrix>(res.data(), state.amp.rows(),
                                        state.amp.cols());
  }
  return out;
}

ProbDist position_distribution(const WalkState& state) {
  ProbDist d;
  d.support = state.positions;
  d.probs = state.amp.cwiseAbs2().colwise().sum().transpose();
  return d;
}

namespace {

bool is_sorted_support(const std::vector<std::int64_t>& s) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i - 1] >= s[i]) return false;
  }
  return true;
}

double total_variation_generic(const ProbDist& p, const ProbDist& q) {
  std::map<std::int64_t, double> diff;
  for (std::size_t i = 0; i < p.support.size(); ++i) {
    diff[p.support[i]] += p.probs[static_cast<Eigen::Index>(i)];
  }
  for (std::size_t j = 0; j < q.support.size(); ++j) {
    diff[q.support[j]] -= q.probs[static_cast<Eigen::Index>(j)];
  }
  double acc = 0.0;
  for (const auto& [label, d] : diff) acc += std::abs(d);
  return 0.5 * acc;
}

}  // namespace

double total_variation(const ProbDist& p, const ProbDist& q) {
  if (!is_sorted_support(p.support) || !is_sorted_support(q.support)) {
    return total_variation_generic(p, q);
  }
  double acc = 0.0;
  std::size_t i = 0, j = 0;
  while (i < p.support.size() || j < q.support.size()) {
    if (j >= q.support.size() ||
        (i < p.support.size() && p.support[i] < q.support[j])) {
      acc += std::abs(p.probs[static_cast<Eigen::Index>(i)]);
      ++i;
    } else if (i >= p.support.size() || q.support[j] < p.support[i]) {
      acc += std::abs(q.probs[static_cast<Eigen::Index>(j)]);
      ++j;
    } else {
      acc += std::abs(p.probs[static_cast<Eigen::Index>(i)] -
                      q.probs[static_cast<Eigen::Index>(j)]);
      ++i;
      ++j;
    }
  }
  return 0.5 * acc;
}

ProbDist uniform_distribution(std::int64_t n) {
  ProbDist d;
  d.support.resize(static_cast<std::size_t>(n));
  for (std::int64_t v = 0; v < n; ++v) d.support[static_cast<std::size_t>(v)] = v;
  d.probs = RVector::Constant(n, 1.0 / static_cast<double>(n));
  return d;
}

CMatrix hadamard() {
  CMatrix h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

}  // namespace qwalk::core
