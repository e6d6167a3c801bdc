#include "qwalk/line_walks.hpp"

#include <algorithm>
#include <cmath>

#include "qwalk/core.hpp"

namespace qwalk::line {

CoinSpec CoinSpec::hadamard() {
  CoinSpec c;
  c.kind_ = Kind::Hadamard;
  return c;
}

CoinSpec CoinSpec::general_su2(double rho, double theta, double phi) {
  if (rho < 0.0 || rho > 1.0) {
    throw Error(ErrorCode::DomainError, "coin: rho must lie in [0,1]");
  }
  CoinSpec c;
  c.kind_ = Kind::GeneralSU2;
  c.rho_ = rho;
  c.theta_ = theta;
  c.phi_ = phi;
  return c;
}

CoinSpec CoinSpec::grover(int d) {
  if (d < 2) throw Error(ErrorCode::DomainError, "grover coin: d >= 2");
  CoinSpec c;
  c.kind_ = Kind::Grover;
  c.grover_dim_ = d;
  return c;
}

CoinSpec CoinSpec::from_matrix(const CMatrix& u) {
  require_unitary(u);
  CoinSpec c;
  c.kind_ = Kind::Explicit;
  c.explicit_ = u;
  return c;
}

CoinSpec CoinSpec::sequence(std::vector<CoinSpec> coins,
                            std::function<int(std::int64_t)> schedule) {
  if (coins.empty()) {
    throw Error(ErrorCode::BadInput, "coin sequence: need at least one coin");
  }
  const int dim = coins.front().dimension();
  for (const auto& c : coins) {
    if (c.kind() == Kind::Sequence) {
      throw Error(ErrorCode::BadInput, "coin sequence: no nesting");
    }
    if (c.dimension() != dim) {
      throw Error(ErrorCode::DimensionMismatch,
                  "coin sequence: mixed coin dimensions");
    }
  }
  CoinSpec c;
  c.kind_ = Kind::Sequence;
  c.coins_ = std::move(coins);
  c.schedule_ = std::move(schedule);
  return c;
}

int CoinSpec::dimension() const {
  switch (kind_) {
    case Kind::Hadamard:
    case Kind::GeneralSU2:
      return 2;
    case Kind::Grover:
      return grover_dim_;
    case Kind::Explicit:
      return static_cast<int>(explicit_.rows());
    case Kind::Sequence:
      return coins_.front().dimension();
  }
  return 0;
}

CMatrix CoinSpec::matrix() const {
  switch (kind_) {
    case Kind::Hadamard:
      return core::hadamard();
    case Kind::GeneralSU2: {
      CMatrix c(2, 2);
      const double sr = std::sqrt(rho_);
      const double sq = std::sqrt(1.0 - rho_);
      c << sr, sq * std::polar(1.0, theta_), sq * std::polar(1.0, phi_),
          -sr * std::polar(1.0, theta_ + phi_);
      return c;
    }
    case Kind::Grover: {
      CMatrix g = CMatrix::Constant(grover_dim_, grover_dim_,
                                    2.0 / static_cast<double>(grover_dim_));
      g.diagonal().array() -= 1.0;
      return g;
    }
    case Kind::Explicit:
      return explicit_;
    case Kind::Sequence:
      throw Error(ErrorCode::BadInput,
                  "coin sequence has no single matrix; use matrix_at(step)");
  }
  throw Error(ErrorCode::BadInput, "coin: unknown kind");
}

CMatrix CoinSpec::matrix_at(std::int64_t step) const {
  if (kind_ != Kind::Sequence) return matrix();
  const int idx = schedule_(step);
  if (idx < 0 || idx >= static_cast<int>(coins_.size())) {
    throw Error(ErrorCode::BadInput, "coin schedule index out of range");
  }
  return coins_[static_cast<std::size_t>(idx)].matrix();
}

std::function<int(std::int64_t)> fibonacci_schedule(std::int64_t steps) {
  // Expand the substitution 0 -> 01, 1 -> 0 until it covers `steps` symbols.
  std::vector<int> word{0};
  while (static_cast<std::int64_t>(word.size()) < steps) {
    std::vector<int> next;
    next.reserve(word.size() * 2);
    for (int s : word) {
      if (s == 0) {
        next.push_back(0);
        next.push_back(1);
      } else {
        next.push_back(0);
      }
    }
    word.swap(next);
  }
  return [word](std::int64_t s) {
    return word[static_cast<std::size_t>(s % static_cast<std::int64_t>(word.size()))];
  };
}

std::function<int(std::int64_t)> periodic_schedule(int period) {
  if (period < 1) throw Error(ErrorCode::BadInput, "schedule period >= 1");
  return [period](std::int64_t s) { return static_cast<int>(s % period); };
}

BarrierSpec BarrierSpec::none() { return {}; }

BarrierSpec BarrierSpec::semi_infinite(std::int64_t barrier) {
  BarrierSpec b;
  b.mode = Mode::SemiInfinite;
  b.barrier = barrier;
  return b;
}

BarrierSpec BarrierSpec::two_barriers(std::int64_t left, std::int64_t right) {
  if (left >= right) {
    throw Error(ErrorCode::BadInput, "barriers: need left < right");
  }
  BarrierSpec b;
  b.mode = Mode::TwoBarriers;
  b.left = left;
  b.right = right;
  return b;
}

namespace {

void check_line_init(const CoinSpec& coin, const InitSpec& init) {
  init.validate();
  if (coin.dimension() != 2 || init.coin_amplitudes.size() != 2) {
    throw Error(ErrorCode::DimensionMismatch,
                "line walk: coin and init must be 2-dimensional");
  }
}

// One step of coin-then-shift on a dense window. amp has 2 rows; column j
// holds position offset + j. Row 0 moves right, row 1 moves left.
void step_in_place(CMatrix& amp, const CMatrix& coin) {
  const Eigen::Index w = amp.cols();
  CVector r0 = coin(0, 0) * amp.row(0).transpose() +
               coin(0, 1) * amp.row(1).transpose();
  CVector r1 = coin(1, 0) * amp.row(0).transpose() +
               coin(1, 1) * amp.row(1).transpose();
  amp.row(0).tail(w - 1) = r0.head(w - 1).transpose();
  amp.row(0)(0) = Complex(0, 0);
  amp.row(1).head(w - 1) = r1.tail(w - 1).transpose();
  amp.row(1)(w - 1) = Complex(0, 0);
}

}  // namespace

WalkState multi_coin_evolve(std::int64_t steps,
                            const std::vector<CoinSpec>& coins,
                            const std::function<int(std::int64_t)>& schedule,
                            const InitSpec& init) {
  if (steps < 0) throw Error(ErrorCode::DomainError, "evolve: steps >= 0");
  if (coins.empty()) throw Error(ErrorCode::BadInput, "evolve: no coins");
  check_line_init(coins.front(), init);

  WalkState state;
  state.coin_dim = 2;
  const std::int64_t w = 2 * steps + 1;
  state.positions.resize(static_cast<std::size_t>(w));
  for (std::int64_t j = 0; j < w; ++j) {
    state.positions[static_cast<std::size_t>(j)] = init.start_position - steps + j;
  }
  state.amp = CMatrix::Zero(2, w);
  state.amp(0, steps) = init.coin_amplitudes[0];
  state.amp(1, steps) = init.coin_amplitudes[1];

  for (std::int64_t s = 0; s < steps; ++s) {
    const int idx = schedule(s);
    if (idx < 0 || idx >= static_cast<int>(coins.size())) {
      throw Error(ErrorCode::BadInput, "evolve: schedule index out of range");
    }
    step_in_place(state.amp, coins[static_cast<std::size_t>(idx)].matrix());
  }
  return state;
}

WalkState evolve(std::int64_t steps, const CoinSpec& coin,
                 const InitSpec& init) {
  if (coin.kind() == CoinSpec::Kind::Sequence) {
    return multi_coin_evolve(steps, coin.coins(), coin.schedule(), init);
  }
  return multi_coin_evolve(
      steps, {coin}, [](std::int64_t) { return 0; }, init);
}

CMatrix momentum_step_matrix(const CMatrix& coin, double k) {
  CMatrix m = coin;
  m.row(0) *= std::polar(1.0, k);
  m.row(1) *= std::polar(1.0, -k);
  return m;
}

std::vector<double> momentum_grid(std::int64_t grid_size) {
  std::vector<double> ks(static_cast<std::size_t>(grid_size));
  for (std::int64_t j = 0; j < grid_size; ++j) {
    ks[static_cast<std::size_t>(j)] =
        -M_PI + 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(grid_size);
  }
  return ks;
}

namespace {

CMatrix matrix_power_2x2(CMatrix base, std::int64_t t) {
  CMatrix acc = CMatrix::Identity(2, 2);
  while (t > 0) {
    if (t & 1) acc = base * acc;
    base = (base * base).eval();
    t >>= 1;
  }
  return acc;
}

}  // namespace

WalkState evolve_fourier(std::int64_t steps, const CoinSpec& coin,
                         const InitSpec& init, std::int64_t grid_size) {
  if (steps < 0) throw Error(ErrorCode::DomainError, "evolve: steps >= 0");
  if (coin.kind() == CoinSpec::Kind::Sequence) {
    throw Error(ErrorCode::BadInput, "fourier engine: single coin only");
  }
  check_line_init(coin, init);

  if (grid_size == 0) {
    grid_size = 2;
    while (grid_size < 2 * steps + 2) grid_size *= 2;
  }
  if (grid_size < 2 * steps + 1) {
    throw Error(ErrorCode::TooLarge,
                "fourier engine: grid smaller than the walk support");
  }

  const CMatrix c = coin.matrix();
  const std::vector<double> ks = momentum_grid(grid_size);

  // Transform of a point start: psi~(k) = coin_amplitudes * e^{i k start};
  // evolve each momentum with M_k^t, then invert onto the light cone.
  std::vector<CVector> transformed(ks.size());
  for (std::size_t j = 0; j < ks.size(); ++j) {
    const CMatrix mkt = matrix_power_2x2(momentum_step_matrix(c, ks[j]), steps);
    transformed[j] =
        mkt * (init.coin_amplitudes *
               std::polar(1.0, ks[j] * static_cast<double>(init.start_position)));
  }

  WalkState state;
  state.coin_dim = 2;
  const std::int64_t w = 2 * steps + 1;
  state.positions.resize(static_cast<std::size_t>(w));
  state.amp = CMatrix::Zero(2, w);
  for (std::int64_t col = 0; col < w; ++col) {
    const std::int64_t n = init.start_position - steps + col;
    state.positions[static_cast<std::size_t>(col)] = n;
    Complex a0(0, 0), a1(0, 0);
    for (std::size_t j = 0; j < ks.size(); ++j) {
      const Complex phase = std::polar(1.0, -ks[j] * static_cast<double>(n));
      a0 += transformed[j][0] * phase;
      a1 += transformed[j][1] * phase;
    }
    state.amp(0, col) = a0 / static_cast<double>(grid_size);
    state.amp(1, col) = a1 / static_cast<double>(grid_size);
  }
  return state;
}

namespace {

double binomial_coeff(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n || n < 0) return 0.0;
  k = std::min(k, n - k);
  double acc = 1.0;
  for (std::int64_t i = 1; i <= k; ++i) {
    acc *= static_cast<double>(n - k + i);
    acc /= static_cast<double>(i);
  }
  return acc;
}

}  // namespace

std::pair<Complex, Complex> path_counting_amplitudes(std::int64_t n,
                                                     std::int64_t t) {
  if (t < 0) throw Error(ErrorCode::DomainError, "path counting: t >= 0");
  if (t == 0) {
    return {Complex(0, 0), n == 0 ? Complex(1, 0) : Complex(0, 0)};
  }
  if (std::llabs(n) > t || ((n + t) % 2) != 0) {
    return {Complex(0, 0), Complex(0, 0)};
  }
  const std::int64_t l = (t - n) / 2;  // number of left steps
  const double scale = std::pow(2.0, -static_cast<double>(t) / 2.0);
  if (l == 0) {
    // All-right path; it never produces a left-moving component.
    return {Complex(0, 0), Complex(scale, 0)};
  }
  double sum_l = 0.0;
  for (std::int64_t k = 0; k <= std::min(l - 1, t - l); ++k) {
    const double term = binomial_coeff(l - 1, k) * binomial_coeff(t - l, k);
    sum_l += (((l - k - 1) % 2) == 0 ? term : -term);
  }
  double sum_r = 0.0;
  for (std::int64_t k = 1; k <= std::min(l, t - l); ++k) {
    const double term = binomial_coeff(l - 1, k - 1) * binomial_coeff(t - l, k);
    sum_r += (((l - k) % 2) == 0 ? term : -term);
  }
  return {Complex(scale * sum_l, 0), Complex(scale * sum_r, 0)};
}

namespace {

// Absorbing run over a dense window with a compile-time scalar.
//
// Single-barrier runs are clipped to the sites that can still influence the
// barrier before max_steps (influence travels one site per step): after step
// s only sites within max_steps - s of the barrier are kept. Amplitude that
// crosses the moving cut can neither reach the barrier in time nor re-enter
// the kept region, and it lands on (site, coin) slots fed solely by the
// crossing itself, so its squared magnitude is banked as escaped mass. The
// kept-region amplitudes then match the infinite-lattice walk exactly and
// absorbed + survivor stays 1 to rounding, at quadratic instead of cubic
// total cost.
template <typename Scalar>
AbsorptionRecord absorb_run(const BarrierSpec& barriers,
                            const Eigen::Matrix2<Scalar>& coin,
                            Scalar init0, Scalar init1, std::int64_t start,
                            std::int64_t max_steps) {
  const bool two = barriers.mode == BarrierSpec::Mode::TwoBarriers;
  const bool mirrored = !two && barriers.barrier > start;  // open side on the left
  std::int64_t lo, hi;  // allocated window, absolute coordinates
  if (two) {
    if (!(barriers.left <= start && start <= barriers.right)) {
      throw Error(ErrorCode::BadInput,
                  "barriers: start must lie between the barriers");
    }
    lo = barriers.left;
    hi = barriers.right;
  } else if (!mirrored) {
    lo = barriers.barrier;
    hi = std::max(start, barriers.barrier + max_steps) + 1;
  } else {
    lo = std::min(start, barriers.barrier - max_steps) - 1;
    hi = barriers.barrier;
  }
  const std::int64_t width = hi - lo + 1;
  std::vector<Scalar> a0(static_cast<std::size_t>(width), Scalar(0));
  std::vector<Scalar> a1 = a0;
  std::vector<Scalar> b0 = a0, b1 = a0;
  a0[static_cast<std::size_t>(start - lo)] = init0;
  a1[static_cast<std::size_t>(start - lo)] = init1;

  AbsorptionRecord rec;
  rec.cumulative_left.reserve(static_cast<std::size_t>(max_steps) + 1);
  rec.cumulative_right.reserve(static_cast<std::size_t>(max_steps) + 1);
  double left_acc = 0.0, right_acc = 0.0;
  double escaped = 0.0;

  auto measure = [&](std::int64_t site, double& acc) {
    const std::int64_t j = site - lo;
    const auto u0 = a0[static_cast<std::size_t>(j)];
    const auto u1 = a1[static_cast<std::size_t>(j)];
    acc += std::norm(Complex(u0)) + std::norm(Complex(u1));
    a0[static_cast<std::size_t>(j)] = Scalar(0);
    a1[static_cast<std::size_t>(j)] = Scalar(0);
  };

  auto record = [&] {
    rec.cumulative_left.push_back(left_acc);
    rec.cumulative_right.push_back(right_acc);
  };

  // Step 0 measurement happens before any evolution.
  if (two) {
    measure(barriers.left, left_acc);
    measure(barriers.right, right_acc);
  } else {
    measure(barriers.barrier, left_acc);
  }
  record();

  const Scalar c00 = coin(0, 0), c01 = coin(0, 1);
  const Scalar c10 = coin(1, 0), c11 = coin(1, 1);

  // Kept set after step s: sites within max_steps - s of the barrier.
  std::int64_t read_lo = std::max(lo, start - 0), read_hi = std::min(hi, start + 0);
  for (std::int64_t s = 1; s <= max_steps; ++s) {
    std::int64_t keep_lo = lo, keep_hi = hi;
    if (!two) {
      if (!mirrored) {
        keep_hi = barriers.barrier + (max_steps - s);
      } else {
        keep_lo = barriers.barrier - (max_steps - s);
      }
    }
    const std::int64_t jlo = read_lo - lo, jhi = read_hi - lo;
    for (std::int64_t j = std::max<std::int64_t>(0, jlo - 1);
         j <= std::min(width - 1, jhi + 1); ++j) {
      b0[static_cast<std::size_t>(j)] = Scalar(0);
      b1[static_cast<std::size_t>(j)] = Scalar(0);
    }
    for (std::int64_t j = jlo; j <= jhi; ++j) {
      const Scalar u0 = a0[static_cast<std::size_t>(j)];
      const Scalar u1 = a1[static_cast<std::size_t>(j)];
      if (u0 == Scalar(0) && u1 == Scalar(0)) continue;
      const Scalar r = c00 * u0 + c01 * u1;  // moves right
      const Scalar l = c10 * u0 + c11 * u1;  // moves left
      const std::int64_t xr = lo + j + 1, xl = lo + j - 1;
      if (xr <= keep_hi) {
        b0[static_cast<std::size_t>(j + 1)] += r;
      } else {
        escaped += std::norm(Complex(r));
      }
      if (xl >= keep_lo) {
        b1[static_cast<std::size_t>(j - 1)] += l;
      } else {
        escaped += std::norm(Complex(l));
      }
    }
    a0.swap(b0);
    a1.swap(b1);
    if (two) {
      measure(barriers.left, left_acc);
      measure(barriers.right, right_acc);
    } else {
      measure(barriers.barrier, left_acc);
    }
    record();
    read_lo = std::max({lo, start - (s + 1), keep_lo});
    read_hi = std::min({hi, start + (s + 1), keep_hi});
  }

  double surv = escaped;
  for (std::int64_t j = read_lo - lo; j <= read_hi - lo; ++j) {
    surv += std::norm(Complex(a0[static_cast<std::size_t>(j)])) +
            std::norm(Complex(a1[static_cast<std::size_t>(j)]));
  }
  rec.survivor_norm = surv;
  return rec;
}

// Tight kernel for the long semi-infinite runs with a real coin. Target
// slots receive amplitude from exactly one source site, so the update is a
// pure two-band map written with assignments; only the two sites nearest the
// moving cut need escape checks. Assumes barrier < start (callers mirror).
AbsorptionRecord absorb_run_semi_real(const Eigen::Matrix2d& coin, double init0,
                                      double init1, std::int64_t start,
                                      std::int64_t barrier,
                                      std::int64_t max_steps) {
  const std::int64_t lo = barrier;
  const std::int64_t hi = std::max(start, barrier + max_steps) + 2;
  const std::int64_t width = hi - lo + 1;
  std::vector<double> a0(static_cast<std::size_t>(width), 0.0);
  std::vector<double> a1 = a0, b0 = a0, b1 = a0;
  a0[static_cast<std::size_t>(start - lo)] = init0;
  a1[static_cast<std::size_t>(start - lo)] = init1;

  AbsorptionRecord rec;
  rec.cumulative_left.reserve(static_cast<std::size_t>(max_steps) + 1);
  rec.cumulative_right.assign(static_cast<std::size_t>(max_steps) + 1, 0.0);
  double absorbed = 0.0, escaped = 0.0;

  auto measure = [&] {
    absorbed += a0[0] * a0[0] + a1[0] * a1[0];
    a0[0] = 0.0;
    a1[0] = 0.0;
    rec.cumulative_left.push_back(absorbed);
  };
  measure();

  const double c00 = coin(0, 0), c01 = coin(0, 1);
  const double c10 = coin(1, 0), c11 = coin(1, 1);

  std::int64_t jlo = start - lo, jhi = start - lo;
  for (std::int64_t s = 1; s <= max_steps; ++s) {
    const std::int64_t keep = barrier + (max_steps - s) - lo;  // last kept index
    // Sites beyond the cut cannot influence the barrier in the remaining
    // steps; their outflow is banked as escaped (surviving) mass.
    const std::int64_t free_hi = std::min(jhi, keep - 1);
    const double* __restrict__ pa0 = a0.data();
    const double* __restrict__ pa1 = a1.data();
    double* __restrict__ pb0 = b0.data();
    double* __restrict__ pb1 = b1.data();
    for (std::int64_t j = std::max<std::int64_t>(jlo - 2, 0);
         j <= std::min(jlo + 1, width - 1); ++j) {
      pb0[j] = pb1[j] = 0.0;
    }
    for (std::int64_t j = std::max<std::int64_t>(jhi - 1, 0);
         j <= std::min(jhi + 2, width - 1); ++j) {
      pb0[j] = pb1[j] = 0.0;
    }
    const std::int64_t first = std::max<std::int64_t>(jlo, 1);
    for (std::int64_t j = first; j <= free_hi; ++j) {
      const double u0 = pa0[j];
      const double u1 = pa1[j];
      pb0[j + 1] = c00 * u0 + c01 * u1;
      pb1[j - 1] = c10 * u0 + c11 * u1;
    }
    for (std::int64_t j = std::max(first, free_hi + 1); j <= jhi; ++j) {
      const double u0 = pa0[j];
      const double u1 = pa1[j];
      const double r = c00 * u0 + c01 * u1;
      pb1[j - 1] = c10 * u0 + c11 * u1;
      if (j + 1 <= keep) {
        pb0[j + 1] = r;
      } else {
        escaped += r * r;
        if (j + 1 < width) pb0[j + 1] = 0.0;
      }
    }
    a0.swap(b0);
    a1.swap(b1);
    measure();
    jlo = std::max<std::int64_t>(0, jlo - 1);
    jhi = std::min({width - 1, jhi + 1, keep});
  }

  double surv = escaped;
  for (std::int64_t j = jlo; j <= jhi; ++j) {
    surv += a0[static_cast<std::size_t>(j)] * a0[static_cast<std::size_t>(j)] +
            a1[static_cast<std::size_t>(j)] * a1[static_cast<std::size_t>(j)];
  }
  rec.survivor_norm = surv;
  return rec;
}

}  // namespace

AbsorptionRecord absorbing_walk(const BarrierSpec& barriers,
                                const CoinSpec& coin, const InitSpec& init,
                                std::int64_t max_steps) {
  if (max_steps < 1) {
    throw Error(ErrorCode::DomainError, "absorbing walk: max_steps >= 1");
  }
  if (barriers.mode == BarrierSpec::Mode::None) {
    throw Error(ErrorCode::BadInput, "absorbing walk: no barrier given");
  }
  check_line_init(coin, init);
  const CMatrix c = coin.matrix();
  const Complex i0 = init.coin_amplitudes[0];
  const Complex i1 = init.coin_amplitudes[1];

  if (barriers.mode == BarrierSpec::Mode::SemiInfinite &&
      std::llabs(init.start_position - barriers.barrier) > max_steps) {
    // The barrier is out of causal reach; nothing is ever absorbed.
    AbsorptionRecord rec;
    rec.cumulative_left.assign(static_cast<std::size_t>(max_steps) + 1, 0.0);
    rec.cumulative_right = rec.cumulative_left;
    rec.survivor_norm = 1.0;
    return rec;
  }

  const bool real_case = c.imag().cwiseAbs().maxCoeff() == 0.0 &&
                         i0.imag() == 0.0 && i1.imag() == 0.0;
  if (real_case && barriers.mode == BarrierSpec::Mode::SemiInfinite) {
    Eigen::Matrix2d cr = c.real();
    if (barriers.barrier <= init.start_position) {
      return absorb_run_semi_real(cr, i0.real(), i1.real(),
                                  init.start_position, barriers.barrier,
                                  max_steps);
    }
    // Mirror x -> -x: coin indices swap, so the reflected coin is X C X.
    Eigen::Matrix2d mirrored;
    mirrored << cr(1, 1), cr(1, 0), cr(0, 1), cr(0, 0);
    return absorb_run_semi_real(mirrored, i1.real(), i0.real(),
                                -init.start_position, -barriers.barrier,
                                max_steps);
  }
  if (real_case) {
    Eigen::Matrix2<double> cr = c.real();
    return absorb_run<double>(barriers, cr, i0.real(), i1.real(),
                              init.start_position, max_steps);
  }
  Eigen::Matrix2<Complex> cc = c;
  return absorb_run<Complex>(barriers, cc, i0, i1, init.start_position,
                             max_steps);
}

}  // namespace qwalk::line
