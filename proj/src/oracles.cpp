#include "qwalk/oracles.hpp"

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "qwalk/core.hpp"

namespace qwalk::oracles {

namespace {

void check_abcd(const CMatrix& coin) {
  require_unitary(coin);
  if (coin.rows() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "limit law: 2x2 coins only");
  }
  if (coin.cwiseAbs().minCoeff() < 1e-12) {
    throw Error(ErrorCode::DomainError,
                "limit law: assume abcd != 0 (no zero coin entry)");
  }
}

// Adaptive Simpson on [lo, hi].
double adaptive_simpson(const std::function<double(double)>& f, double lo,
                        double hi, double tol) {
  struct Frame {
    double a, b, fa, fm, fb, whole;
  };
  auto simpson = [&](double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  };
  const double m0 = 0.5 * (lo + hi);
  double flo = f(lo), fm0 = f(m0), fhi = f(hi);
  std::vector<std::pair<Frame, double>> stack;
  stack.push_back({{lo, hi, flo, fm0, fhi, simpson(lo, hi, flo, fm0, fhi)}, tol});
  double total = 0.0;
  int guard = 0;
  while (!stack.empty()) {
    if (++guard > 2000000) {
      throw Error(ErrorCode::DomainError, "quadrature failed to converge");
    }
    auto [fr, eps] = stack.back();
    stack.pop_back();
    const double m = 0.5 * (fr.a + fr.b);
    const double lm = 0.5 * (fr.a + m), rm = 0.5 * (m + fr.b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(fr.a, m, fr.fa, flm, fr.fm);
    const double right = simpson(m, fr.b, fr.fm, frm, fr.fb);
    if (std::abs(left + right - fr.whole) <= 15.0 * eps ||
        (fr.b - fr.a) < 1e-13) {
      total += left + right + (left + right - fr.whole) / 15.0;
    } else {
      stack.push_back({{fr.a, m, fr.fa, flm, fr.fm, left}, eps / 2.0});
      stack.push_back({{m, fr.b, fr.fm, frm, fr.fb, right}, eps / 2.0});
    }
  }
  return total;
}

}  // namespace

LimitDensity limit_density(const CMatrix& coin, Complex coin0_amplitude,
                           Complex coin1_amplitude) {
  check_abcd(coin);
  if (std::abs(std::norm(coin0_amplitude) + std::norm(coin1_amplitude) - 1.0) >
      1e-10) {
    throw Error(ErrorCode::BadInput, "limit law: init must be unit norm");
  }
  // The closed form is stated for evolution written as
  //   Psi_{t+1}(x) = [top row] Psi_t(x+1) + [bottom row] Psi_t(x-1),
  // whose first component is the left-mover. This library stores coin index
  // 0 as the right-mover, so both the matrix and the initial amplitudes are
  // index-reversed here.
  LimitDensity f;
  f.a = coin(1, 1);
  f.b = coin(1, 0);
  f.c = coin(0, 1);
  f.d = coin(0, 0);
  f.alpha = coin1_amplitude;
  f.beta = coin0_amplitude;
  f.half_width = std::abs(f.a);
  const Complex cross = f.a * f.alpha * std::conj(f.b * f.beta);
  f.weight = std::norm(f.alpha) - std::norm(f.beta) +
             2.0 * cross.real() / std::norm(f.a);
  return f;
}

double LimitDensity::operator()(double x) const {
  if (!(std::abs(x) < half_width)) return 0.0;
  const double a2 = half_width * half_width;
  return std::sqrt(1.0 - a2) / (M_PI * (1.0 - x * x) * std::sqrt(a2 - x * x)) *
         (1.0 - weight * x);
}

double LimitDensity::moment(int m, double tol) const {
  // x = |a| sin(u) turns the inverse-square-root endpoints into a smooth
  // integrand on [-pi/2, pi/2].
  const double a2 = half_width * half_width;
  auto g = [&](double u) {
    const double s = std::sin(u);
    const double x = half_width * s;
    double val = std::sqrt(1.0 - a2) * (1.0 - weight * x) /
                 (M_PI * (1.0 - a2 * s * s));
    for (int i = 0; i < m; ++i) val *= x;
    return val;
  };
  return adaptive_simpson(g, -M_PI / 2.0, M_PI / 2.0, tol);
}

double LimitDensity::mass(double x_lo, double x_hi) const {
  const double lo = std::max(x_lo, -half_width);
  const double hi = std::min(x_hi, half_width);
  if (lo >= hi) return 0.0;
  auto clamp_asin = [&](double x) {
    return std::asin(std::min(1.0, std::max(-1.0, x / half_width)));
  };
  const double a2 = half_width * half_width;
  auto g = [&](double u) {
    const double s = std::sin(u);
    return std::sqrt(1.0 - a2) * (1.0 - weight * half_width * s) /
           (M_PI * (1.0 - a2 * s * s));
  };
  return adaptive_simpson(g, clamp_asin(lo), clamp_asin(hi), 1e-12);
}

double LimitDensity::mean_closed_form() const {
  return -weight * (1.0 - std::sqrt(1.0 - half_width * half_width));
}

double LimitDensity::second_moment_closed_form() const {
  return 1.0 - std::sqrt(1.0 - half_width * half_width);
}

double konno_density(double x, const CMatrix& coin, Complex alpha,
                     Complex beta) {
  return limit_density(coin, alpha, beta)(x);
}

double empirical_limit_distance(std::int64_t t, const line::CoinSpec& coin,
                                const InitSpec& init, double bin_width) {
  if (t < 100) {
    throw Error(ErrorCode::DomainError, "limit distance: t >= 100 required");
  }
  if (!(bin_width > 0.0 && bin_width <= 2.0)) {
    throw Error(ErrorCode::BadInput, "limit distance: bad bin width");
  }
  // Bins aggregate whole occupied/empty site pairs; a fixed pseudovelocity
  // width keeps the comparison consistent across different t.
  const auto pairs_per_bin = std::max<std::int64_t>(
      1, std::llround(bin_width * static_cast<double>(t) / 2.0));
  const LimitDensity density =
      limit_density(coin.matrix(), init.coin_amplitudes[0],
                    init.coin_amplitudes[1]);
  const WalkState state = line::evolve(t, coin, init);
  const ProbDist dist = core::position_distribution(state);

  // Bins hold `pairs_per_bin` adjacent occupied-site pairs, so the empirical
  // histogram is comparable with the continuous density.
  const std::int64_t sites_per_bin = 2 * pairs_per_bin;
  double l1 = 0.0;
  const double td = static_cast<double>(t);
  for (std::int64_t n_lo = -t; n_lo <= t; n_lo += sites_per_bin) {
    const std::int64_t n_hi = std::min(n_lo + sites_per_bin, t + 1);
    double empirical = 0.0;
    for (std::int64_t n = n_lo; n < n_hi; ++n) {
      const std::int64_t col = n - (init.start_position - t);
      if (col >= 0 && col < dist.probs.size()) {
        empirical += dist.probs[col];
      }
    }
    const double x_lo = (static_cast<double>(n_lo) - 0.5) / td;
    const double x_hi = (static_cast<double>(n_hi) - 0.5) / td;
    l1 += std::abs(empirical - density.mass(x_lo, x_hi));
  }
  return l1;
}

bool is_symmetric_init(const CMatrix& coin, Complex coin0_amplitude,
                       Complex coin1_amplitude) {
  check_abcd(coin);
  const double tol = 1e-10;
  const double half = 1.0 / std::sqrt(2.0);
  if (std::abs(std::abs(coin0_amplitude) - half) > tol) return false;
  if (std::abs(std::abs(coin1_amplitude) - half) > tol) return false;
  // index-reversed entries, matching limit_density
  const Complex cross = coin(1, 1) * coin1_amplitude *
                        std::conj(coin(1, 0) * coin0_amplitude);
  return std::abs(2.0 * cross.real()) <= tol;
}

double coin_entropy(const WalkState& state) {
  if (state.coin_dim != 2) {
    throw Error(ErrorCode::DimensionMismatch, "coin entropy: coin_dim = 2 only");
  }
  const CMatrix rho = state.amp * state.amp.adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho);
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = solver.eigenvalues()[i];
    if (lambda > 1e-300) entropy -= lambda * std::log2(lambda);
  }
  return entropy;
}

}  // namespace qwalk::oracles
