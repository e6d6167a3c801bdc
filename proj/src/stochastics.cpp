#include "qwalk/stochastics.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "qwalk/core.hpp"
#include "qwalk/rng.hpp"

namespace qwalk::stochastics {

void DecoherenceModel::validate() const {
  for (double r : {coin_measure_p, position_measure_p, broken_link_p}) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw Error(ErrorCode::DomainError,
                  "decoherence: rates must lie in [0,1]");
    }
  }
  if (broken_link_phase != 1.0 && broken_link_phase != -1.0) {
    throw Error(ErrorCode::DomainError,
                "decoherence: bounce phase must be +1 or -1");
  }
}

EvolveMode EvolveMode::trajectories(std::int64_t count) {
  if (count < 1) throw Error(ErrorCode::DomainError, "trajectories: count >= 1");
  EvolveMode m;
  m.kind = Kind::Trajectories;
  m.count = count;
  return m;
}

EvolveMode EvolveMode::exact_classical() {
  EvolveMode m;
  m.kind = Kind::ExactClassical;
  return m;
}

namespace {

// One trajectory over the dense window [start - steps, start + steps].
// Column j holds position start - steps + j; out must have 2*steps+1 slots
// and receives the final position distribution.
void run_trajectory(std::int64_t steps, const Eigen::Matrix2cd& coin,
                    const CVector& init_coin, const DecoherenceModel& model,
                    std::uint64_t trial_key, double* out) {
  const std::int64_t width = 2 * steps + 1;
  std::vector<Complex> a0(static_cast<std::size_t>(width), Complex(0, 0));
  std::vector<Complex> a1 = a0;
  std::vector<Complex> b0 = a0, b1 = a0;
  a0[static_cast<std::size_t>(steps)] = init_coin[0];
  a1[static_cast<std::size_t>(steps)] = init_coin[1];
  std::int64_t lo = steps, hi = steps;  // active column range

  CounterRng rng(trial_key);
  const Complex c00 = coin(0, 0), c01 = coin(0, 1);
  const Complex c10 = coin(1, 0), c11 = coin(1, 1);
  const Complex bounce(model.broken_link_phase, 0.0);
  std::vector<char> broken;
  if (model.broken_link_p > 0.0) {
    broken.resize(static_cast<std::size_t>(width) + 1, 0);
  }

  for (std::int64_t s = 0; s < steps; ++s) {
    const std::int64_t nlo = std::max<std::int64_t>(0, lo - 1);
    const std::int64_t nhi = std::min(width - 1, hi + 1);
    for (std::int64_t j = nlo; j <= nhi; ++j) {
      b0[static_cast<std::size_t>(j)] = Complex(0, 0);
      b1[static_cast<std::size_t>(j)] = Complex(0, 0);
    }
    if (model.broken_link_p > 0.0) {
      // broken[j] is the edge between columns j-1 and j
      for (std::int64_t j = nlo; j <= nhi + 1; ++j) {
        broken[static_cast<std::size_t>(j)] =
            rng.bernoulli(model.broken_link_p) ? 1 : 0;
      }
    }
    for (std::int64_t j = lo; j <= hi; ++j) {
      const Complex u0 = a0[static_cast<std::size_t>(j)];
      const Complex u1 = a1[static_cast<std::size_t>(j)];
      const Complex r = c00 * u0 + c01 * u1;
      const Complex l = c10 * u0 + c11 * u1;
      if (!broken.empty() && broken[static_cast<std::size_t>(j + 1)]) {
        b1[static_cast<std::size_t>(j)] += bounce * r;  // right edge broken
      } else if (j + 1 < width) {
        b0[static_cast<std::size_t>(j + 1)] += r;
      }
      if (!broken.empty() && broken[static_cast<std::size_t>(j)]) {
        b0[static_cast<std::size_t>(j)] += bounce * l;  // left edge broken
      } else if (j - 1 >= 0) {
        b1[static_cast<std::size_t>(j - 1)] += l;
      }
    }
    a0.swap(b0);
    a1.swap(b1);
    lo = nlo;
    hi = nhi;

    if (model.coin_measure_p > 0.0 && rng.bernoulli(model.coin_measure_p)) {
      double p0 = 0.0, p1 = 0.0;
      for (std::int64_t j = lo; j <= hi; ++j) {
        p0 += std::norm(a0[static_cast<std::size_t>(j)]);
        p1 += std::norm(a1[static_cast<std::size_t>(j)]);
      }
      const bool keep_zero = rng.uniform() * (p0 + p1) < p0;
      const double scale = 1.0 / std::sqrt(keep_zero ? p0 : p1);
      for (std::int64_t j = lo; j <= hi; ++j) {
        if (keep_zero) {
          a0[static_cast<std::size_t>(j)] *= scale;
          a1[static_cast<std::size_t>(j)] = Complex(0, 0);
        } else {
          a1[static_cast<std::size_t>(j)] *= scale;
          a0[static_cast<std::size_t>(j)] = Complex(0, 0);
        }
      }
    }
    if (model.position_measure_p > 0.0 &&
        rng.bernoulli(model.position_measure_p)) {
      double total = 0.0;
      for (std::int64_t j = lo; j <= hi; ++j) {
        total += std::norm(a0[static_cast<std::size_t>(j)]) +
                 std::norm(a1[static_cast<std::size_t>(j)]);
      }
      double target = rng.uniform() * total;
      std::int64_t picked = hi;
      for (std::int64_t j = lo; j <= hi; ++j) {
        target -= std::norm(a0[static_cast<std::size_t>(j)]) +
                  std::norm(a1[static_cast<std::size_t>(j)]);
        if (target < 0.0) {
          picked = j;
          break;
        }
      }
      const double site = std::norm(a0[static_cast<std::size_t>(picked)]) +
                          std::norm(a1[static_cast<std::size_t>(picked)]);
      const double scale = 1.0 / std::sqrt(site);
      for (std::int64_t j = lo; j <= hi; ++j) {
        if (j == picked) {
          a0[static_cast<std::size_t>(j)] *= scale;
          a1[static_cast<std::size_t>(j)] *= scale;
        } else {
          a0[static_cast<std::size_t>(j)] = Complex(0, 0);
          a1[static_cast<std::size_t>(j)] = Complex(0, 0);
        }
      }
      lo = hi = picked;
    }
  }

  // The swap buffers hold stale data outside the active window (position
  // collapses shrink it), so only [lo, hi] is meaningful.
  for (std::int64_t j = 0; j < width; ++j) out[j] = 0.0;
  for (std::int64_t j = lo; j <= hi; ++j) {
    out[j] = std::norm(a0[static_cast<std::size_t>(j)]) +
             std::norm(a1[static_cast<std::size_t>(j)]);
  }
}

ProbDist exact_classical_propagation(std::int64_t steps,
                                     const Eigen::Matrix2cd& coin,
                                     const InitSpec& init,
                                     const DecoherenceModel& model) {
  const std::int64_t width = 2 * steps + 1;
  // Joint classical state (coin, position); measurement keeps it diagonal.
  RMatrix mu = RMatrix::Zero(2, width);
  mu(0, steps) = std::norm(init.coin_amplitudes[0]);
  mu(1, steps) = std::norm(init.coin_amplitudes[1]);
  const double w00 = std::norm(coin(0, 0)), w01 = std::norm(coin(0, 1));
  const double w10 = std::norm(coin(1, 0)), w11 = std::norm(coin(1, 1));
  const double pb = model.broken_link_p;
  RMatrix next = RMatrix::Zero(2, width);
  for (std::int64_t s = 0; s < steps; ++s) {
    next.setZero();
    for (std::int64_t j = 0; j < width; ++j) {
      const double m0 = mu(0, j), m1 = mu(1, j);
      if (m0 == 0.0 && m1 == 0.0) continue;
      const double right = w00 * m0 + w01 * m1;
      const double left = w10 * m0 + w11 * m1;
      if (j + 1 < width) next(0, j + 1) += right * (1.0 - pb);
      next(1, j) += right * pb;
      if (j - 1 >= 0) next(1, j - 1) += left * (1.0 - pb);
      next(0, j) += left * pb;
    }
    mu.swap(next);
  }
  ProbDist d;
  d.support.resize(static_cast<std::size_t>(width));
  for (std::int64_t j = 0; j < width; ++j) {
    d.support[static_cast<std::size_t>(j)] = init.start_position - steps + j;
  }
  d.probs = mu.colwise().sum().transpose();
  return d;
}

}  // namespace

ProbDist decohere_evolve(std::int64_t steps, const line::CoinSpec& coin,
                         const InitSpec& init, const DecoherenceModel& model,
                         const EvolveMode& mode) {
  if (steps < 0) throw Error(ErrorCode::DomainError, "decohere: steps >= 0");
  model.validate();
  init.validate();
  if (coin.dimension() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "decohere: 2d coins only");
  }

  if (mode.kind == EvolveMode::Kind::ExactClassical) {
    if (model.coin_measure_p != 1.0 && model.position_measure_p != 1.0) {
      throw Error(ErrorCode::BadInput,
                  "exact classical mode needs coin_measure_p = 1 or "
                  "position_measure_p = 1 (fully measured walk)");
    }
    return exact_classical_propagation(steps, coin.matrix(), init, model);
  }

  if (model.is_noiseless()) {
    // All trajectories coincide with the unitary walk.
    return core::position_distribution(line::evolve(steps, coin, init));
  }

  const std::int64_t width = 2 * steps + 1;
  const Eigen::Matrix2cd cm = coin.matrix();

  // Trials are grouped in fixed blocks; each block accumulates serially and
  // block sums are combined in block order, so the result is bit-identical
  // for any worker count.
  constexpr std::int64_t kBlock = 128;
  const std::int64_t blocks = (mode.count + kBlock - 1) / kBlock;
  RMatrix block_sums = RMatrix::Zero(blocks, width);

  std::atomic<std::int64_t> next_block{0};
  const unsigned workers =
      std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                         static_cast<unsigned>(blocks));
  auto work = [&] {
    std::vector<double> traj(static_cast<std::size_t>(width));
    for (;;) {
      const std::int64_t blk = next_block.fetch_add(1);
      if (blk >= blocks) break;
      const std::int64_t first = blk * kBlock;
      const std::int64_t last = std::min(first + kBlock, mode.count);
      for (std::int64_t i = first; i < last; ++i) {
        run_trajectory(steps, cm, init.coin_amplitudes, model,
                       derive_seed(model.seed, static_cast<std::uint64_t>(i)),
                       traj.data());
        for (std::int64_t j = 0; j < width; ++j) {
          block_sums(blk, j) += traj[static_cast<std::size_t>(j)];
        }
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  ProbDist d;
  d.support.resize(static_cast<std::size_t>(width));
  for (std::int64_t j = 0; j < width; ++j) {
    d.support[static_cast<std::size_t>(j)] = init.start_position - steps + j;
  }
  d.probs = RVector::Zero(width);
  for (std::int64_t blk = 0; blk < blocks; ++blk) {
    d.probs += block_sums.row(blk).transpose();
  }
  d.probs /= static_cast<double>(mode.count);
  return d;
}

double variance_exponent(const DecoherenceModel& model,
                         const line::CoinSpec& coin, const InitSpec& init,
                         const std::vector<std::int64_t>& t_grid,
                         const EvolveMode& mode) {
  if (t_grid.size() < 4) {
    throw Error(ErrorCode::BadInput, "variance exponent: need >= 4 grid points");
  }
  std::int64_t tmin = t_grid.front(), tmax = t_grid.front();
  for (std::int64_t t : t_grid) {
    tmin = std::min(tmin, t);
    tmax = std::max(tmax, t);
    if (t < 1) throw Error(ErrorCode::DomainError, "variance exponent: t >= 1");
  }
  if (tmax < 10 * tmin) {
    throw Error(ErrorCode::BadInput,
                "variance exponent: grid must span at least a decade");
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::int64_t t : t_grid) {
    const ProbDist d = decohere_evolve(t, coin, init, model, mode);
    const double var = d.variance();
    if (!(var > 0.0)) {
      throw Error(ErrorCode::DomainError,
                  "variance exponent: degenerate (zero) variance");
    }
    const double x = std::log(static_cast<double>(t));
    const double y = std::log(var);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(t_grid.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace qwalk::stochastics
