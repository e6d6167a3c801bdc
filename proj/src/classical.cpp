#include "qwalk/classical.hpp"

#include <cmath>
#include <fstream>
#include <vector>

#include "qwalk/rng.hpp"

namespace qwalk::classical {

void StochasticMatrix::validate(double tol) const {
  if (p.rows() != p.cols() || p.rows() < 1) {
    throw Error(ErrorCode::NotStochastic, "stochastic matrix must be square");
  }
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    if (p.row(i).minCoeff() < -tol) {
      throw Error(ErrorCode::NotStochastic,
                  "stochastic matrix has a negative entry");
    }
    if (std::abs(p.row(i).sum() - 1.0) > tol) {
      throw Error(ErrorCode::NotStochastic,
                  "stochastic matrix row does not sum to 1");
    }
  }
}

StochasticMatrix StochasticMatrix::from_graph(const Graph& g) {
  const int n = g.num_vertices();
  StochasticMatrix m;
  m.p = RMatrix::Zero(n, n);
  for (int v = 0; v < n; ++v) {
    if (g.degree(v) == 0) {
      throw Error(ErrorCode::BadInput, "chain from graph: isolated vertex");
    }
    const double w = 1.0 / g.degree(v);
    for (int u : g.adjacency[v]) m.p(v, u) += w;
  }
  return m;
}

StochasticMatrix StochasticMatrix::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadInput, "cannot open matrix file: " + path);
  int n = 0;
  if (!(in >> n) || n < 1) {
    throw Error(ErrorCode::BadInput, "matrix file: bad size header");
  }
  StochasticMatrix m;
  m.p.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!(in >> m.p(i, j))) {
        throw Error(ErrorCode::BadInput, "matrix file: not enough entries");
      }
    }
  }
  m.validate(1e-9);
  return m;
}

void StochasticMatrix::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::BadInput, "cannot write matrix file: " + path);
  out << size() << "\n";
  out.precision(17);
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      out << p(i, j) << (j + 1 == p.cols() ? '\n' : ' ');
    }
  }
}

ProbDist binomial_line_distribution(int n, double p) {
  if (n < 0) throw Error(ErrorCode::DomainError, "binomial: n >= 0 required");
  if (p < 0.0 || p > 1.0) {
    throw Error(ErrorCode::DomainError, "binomial: p must lie in [0,1]");
  }
  ProbDist d;
  d.support.resize(2 * n + 1);
  d.probs = RVector::Zero(2 * n + 1);
  const double q = 1.0 - p;
  for (int k = -n; k <= n; ++k) {
    d.support[k + n] = k;
    if ((k + n) % 2 != 0) continue;
    const int r = (k + n) / 2;  // number of right steps
    // log C(n, r) + r log p + (n - r) log q, degenerate p handled exactly
    double prob;
    if (p == 0.0) {
      prob = (r == 0) ? 1.0 : 0.0;
    } else if (p == 1.0) {
      prob = (r == n) ? 1.0 : 0.0;
    } else {
      const double logc = std::lgamma(n + 1.0) - std::lgamma(r + 1.0) -
                          std::lgamma(n - r + 1.0);
      prob = std::exp(logc + r * std::log(p) + (n - r) * std::log(q));
    }
    d.probs[k + n] = prob;
  }
  return d;
}

double line_walk_variance(int n, double p) {
  if (n < 0) throw Error(ErrorCode::DomainError, "variance: n >= 0 required");
  return 4.0 * n * p * (1.0 - p);
}

ProbDist stationary_distribution(const Graph& g) {
  g.check_undirected();
  if (!g.is_connected()) {
    throw Error(ErrorCode::Disconnected,
                "stationary distribution requires a connected graph");
  }
  const std::int64_t m = g.num_edges();
  if (m < 1) throw Error(ErrorCode::BadInput, "graph has no edges");
  ProbDist d;
  const int n = g.num_vertices();
  d.support.resize(n);
  d.probs.resize(n);
  for (int v = 0; v < n; ++v) {
    d.support[v] = v;
    d.probs[v] = static_cast<double>(g.degree(v)) / (2.0 * m);
  }
  return d;
}

HittingEstimate hitting_time_estimate(const StochasticMatrix& chain, int source,
                                      int target, std::int64_t trials,
                                      std::uint64_t seed,
                                      std::int64_t max_steps) {
  chain.validate(1e-9);
  const int n = chain.size();
  if (source < 0 || source >= n || target < 0 || target >= n) {
    throw Error(ErrorCode::BadInput, "hitting time: vertex id out of range");
  }
  if (trials < 1) throw Error(ErrorCode::BadInput, "hitting time: trials >= 1");
  if (source == target) return {0.0, 0.0, trials};

  // Reachability by BFS over nonzero transitions.
  {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{source};
    seen[source] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int u = 0; u < n; ++u) {
        if (chain.p(v, u) > 0.0 && !seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
    if (!seen[target]) {
      throw Error(ErrorCode::Unreachable, "hitting time: target unreachable");
    }
  }

  double sum = 0.0, sum_sq = 0.0;
  for (std::int64_t i = 0; i < trials; ++i) {
    CounterRng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    int v = source;
    std::int64_t steps = 0;
    while (v != target && steps < max_steps) {
      double u = rng.uniform();
      int next = n - 1;
      for (int w = 0; w < n; ++w) {
        u -= chain.p(v, w);
        if (u < 0.0) {
          next = w;
          break;
        }
      }
      v = next;
      ++steps;
    }
    const double s = static_cast<double>(steps);
    sum += s;
    sum_sq += s * s;
  }
  HittingEstimate est;
  est.trials = trials;
  est.mean = sum / trials;
  const double var = (sum_sq / trials) - est.mean * est.mean;
  est.standard_error = trials > 1 ? std::sqrt(std::max(var, 0.0) / trials) : 0.0;
  return est;
}

HittingEstimate hitting_time_estimate(const Graph& g, int source, int target,
                                      std::int64_t trials, std::uint64_t seed,
                                      std::int64_t max_steps) {
  return hitting_time_estimate(StochasticMatrix::from_graph(g), source, target,
                               trials, seed, max_steps);
}

double line_hitting_time_inverse_probability(int n, int k) {
  const ProbDist d = binomial_line_distribution(n, 0.5);
  const double prob = d.at(k);
  if (prob <= 0.0) {
    throw Error(ErrorCode::DomainError,
                "line hitting proxy: zero occupation probability at k");
  }
  return 1.0 / prob;
}

double fundamental_hitting_time(const StochasticMatrix& chain,
                                const std::set<int>& marked,
                                const ProbDist& start) {
  chain.validate(1e-9);
  const int n = chain.size();
  for (int v : marked) {
    if (v < 0 || v >= n) {
      throw Error(ErrorCode::BadInput, "marked vertex out of range");
    }
  }
  std::vector<int> unmarked;
  for (int v = 0; v < n; ++v) {
    if (!marked.count(v)) unmarked.push_back(v);
  }
  if (unmarked.empty()) return 0.0;

  const int m = static_cast<int>(unmarked.size());
  RMatrix pm(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) pm(i, j) = chain.p(unmarked[i], unmarked[j]);
  }
  const RMatrix system = RMatrix::Identity(m, m) - pm;
  Eigen::FullPivLU<RMatrix> lu(system);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::Singular,
                "fundamental hitting time: chain is not absorbing into M");
  }
  const RVector tau = lu.solve(RVector::Ones(m));

  double expected = 0.0;
  for (int i = 0; i < m; ++i) {
    expected += start.at(unmarked[i]) * tau[i];
  }
  return expected;
}

}  // namespace qwalk::classical
