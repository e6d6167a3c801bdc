#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qwalk/classical.hpp"
#include "qwalk/core.hpp"
#include "qwalk/ctqw.hpp"
#include "qwalk/graph_walks.hpp"
#include "qwalk/line_walks.hpp"
#include "qwalk/oracles.hpp"
#include "qwalk/stochastics.hpp"
#include "qwalk/szegedy.hpp"
#include "qwalk/universality.hpp"

namespace qwalk::cli {

namespace {

constexpr int kSchemaVersion = 1;

std::string fnum(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Collected run output: resolved config, scalar report lines, and at most
// one table. CSV prints "key=value" lines then the table; JSON mirrors both
// under fixed keys with a config echo.
struct Report {
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::pair<std::string, std::string>> scalars;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void cfg(const std::string& k, const std::string& v) { config.emplace_back(k, v); }
  void cfg(const std::string& k, double v) { config.emplace_back(k, fnum(v)); }
  void cfg(const std::string& k, std::int64_t v) {
    config.emplace_back(k, std::to_string(v));
  }
  void scalar(const std::string& k, const std::string& v) {
    scalars.emplace_back(k, v);
  }
  void scalar(const std::string& k, double v) { scalars.emplace_back(k, fnum(v)); }
  void scalar(const std::string& k, std::int64_t v) {
    scalars.emplace_back(k, std::to_string(v));
  }

  std::string to_csv() const {
    std::ostringstream out;
    for (const auto& [k, v] : scalars) out << k << '=' << v << '\n';
    if (!columns.empty()) {
      for (std::size_t c = 0; c < columns.size(); ++c) {
        out << columns[c] << (c + 1 == columns.size() ? '\n' : ',');
      }
      for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
          out << row[c] << (c + 1 == row.size() ? '\n' : ',');
        }
      }
    }
    return out.str();
  }

  std::string to_json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    nlohmann::ordered_json cfg_obj;
    for (const auto& [k, v] : config) cfg_obj[k] = v;
    j["config"] = cfg_obj;
    nlohmann::ordered_json rep;
    for (const auto& [k, v] : scalars) rep[k] = v;
    j["report"] = rep;
    if (!columns.empty()) {
      nlohmann::ordered_json table;
      table["columns"] = columns;
      nlohmann::ordered_json jrows = nlohmann::ordered_json::array();
      for (const auto& row : rows) jrows.push_back(row);
      table["rows"] = jrows;
      j["table"] = table;
    }
    return j.dump(2) + "\n";
  }
};

struct OutputOptions {
  std::string format = "csv";
  std::string out_path;
};

void add_output_flags(CLI::App* cmd, OutputOptions* opts) {
  cmd->add_option("--format", opts->format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", opts->out_path,
                  "output file (default stdout; relative paths resolve "
                  "against QWALK_OUT_DIR when set)");
}

void emit(const Report& report, const OutputOptions& opts) {
  // The resolved configuration goes to stderr on every run; JSON output
  // additionally embeds it, and CSV files stay schema-clean.
  std::ostringstream log;
  log << "config:";
  for (const auto& [k, v] : report.config) log << ' ' << k << '=' << v;
  std::cerr << log.str() << "\n";

  const std::string payload =
      opts.format == "json" ? report.to_json() : report.to_csv();
  if (opts.out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::string path = opts.out_path;
  const char* dir = std::getenv("QWALK_OUT_DIR");
  if (dir != nullptr && *dir != '\0' && path.front() != '/') {
    path = std::string(dir) + "/" + path;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::BadInput, "cannot open output file " + path);
  out << payload;
}

// Complex literal of the form a, bi, or a+bi (also a-bi, i, -i).
Complex parse_complex(std::string text) {
  auto fail = [&] {
    throw Error(ErrorCode::BadInput, "cannot parse complex literal '" + text + "'");
  };
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) fail();
  // split at the last +/- that is not an exponent sign and not leading
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto parse_part = [&](std::string part, bool* imaginary) {
    *imaginary = !part.empty() && part.back() == 'i';
    if (*imaginary) part.pop_back();
    if (part.empty() || part == "+") part = "1";
    if (part == "-") part = "-1";
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(part, &used);
    } catch (...) {
      fail();
    }
    if (used != part.size()) fail();
    return value;
  };
  bool imag_a = false, imag_b = false;
  if (split == std::string::npos) {
    const double v = parse_part(s, &imag_a);
    return imag_a ? Complex(0, v) : Complex(v, 0);
  }
  const double first = parse_part(s.substr(0, split), &imag_a);
  const double second = parse_part(s.substr(split), &imag_b);
  if (imag_a == imag_b) fail();
  return imag_a ? Complex(second, first) : Complex(first, second);
}

// "a+bi,c+di" with normalization enforced: hard error beyond 1e-6, silent
// renormalization inside.
CVector parse_state(const std::string& text) {
  std::vector<Complex> amps;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) amps.push_back(parse_complex(item));
  if (amps.empty()) throw Error(ErrorCode::BadInput, "empty state literal");
  CVector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = amps[i];
  }
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > 1e-6) {
    throw Error(ErrorCode::BadInput,
                "state norm deviates from 1 by more than 1e-6");
  }
  return v / norm;
}

struct CoinFlags {
  std::string name = "hadamard";
  double rho = 0.5, theta = 0.0, phi = 0.0;
  int grover_dim = 2;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--coin", name, "coin kind")
        ->check(CLI::IsMember({"hadamard", "su2", "grover"}))
        ->capture_default_str();
    cmd->add_option("--rho", rho, "su2 coin rho")->capture_default_str();
    cmd->add_option("--theta", theta, "su2 coin theta")->capture_default_str();
    cmd->add_option("--phi", phi, "su2 coin phi")->capture_default_str();
    cmd->add_option("--grover-dim", grover_dim, "grover coin dimension")
        ->capture_default_str();
  }

  line::CoinSpec realize() const {
    if (name == "hadamard") return line::CoinSpec::hadamard();
    if (name == "su2") return line::CoinSpec::general_su2(rho, theta, phi);
    return line::CoinSpec::grover(grover_dim);
  }

  void echo(Report* rep) const {
    rep->cfg("coin", name);
    if (name == "su2") {
      rep->cfg("rho", rho);
      rep->cfg("theta", theta);
      rep->cfg("phi", phi);
    }
    if (name == "grover") rep->cfg("grover_dim", std::int64_t(grover_dim));
  }
};

void distribution_table(Report* rep, const ProbDist& d,
                        const std::string& index_name, bool skip_zero_parity,
                        std::int64_t parity_reference) {
  rep->columns = {index_name, "probability"};
  for (std::size_t i = 0; i < d.support.size(); ++i) {
    const std::int64_t label = d.support[i];
    if (skip_zero_parity && ((label + parity_reference) % 2 + 2) % 2 != 0) {
      continue;
    }
    rep->rows.push_back({std::to_string(label),
                         fnum(d.probs[static_cast<Eigen::Index>(i)])});
  }
}

void amplitude_table(Report* rep, const WalkState& s) {
  rep->columns = {"index", "re", "im"};
  for (std::int64_t c = 0; c < s.coin_dim; ++c) {
    for (std::int64_t j = 0; j < s.num_positions(); ++j) {
      const Complex a = s.amp(c, j);
      rep->rows.push_back(
          {std::to_string(s.positions[static_cast<std::size_t>(j)] * s.coin_dim + c),
           fnum(a.real()), fnum(a.imag())});
    }
  }
}

// "hadamard", "grover:d", or "su2:rho,theta,phi".
line::CoinSpec parse_coin_token(const std::string& token) {
  const auto colon = token.find(':');
  const std::string kind = token.substr(0, colon);
  std::vector<double> params;
  if (colon != std::string::npos) {
    std::stringstream ss(token.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) params.push_back(std::stod(item));
  }
  if (kind == "hadamard") return line::CoinSpec::hadamard();
  if (kind == "grover") {
    return line::CoinSpec::grover(
        params.empty() ? 2 : static_cast<int>(params[0]));
  }
  if (kind == "su2") {
    if (params.size() != 3) {
      throw Error(ErrorCode::BadInput, "su2 coin token needs rho,theta,phi");
    }
    return line::CoinSpec::general_su2(params[0], params[1], params[2]);
  }
  throw Error(ErrorCode::BadInput, "unknown coin token '" + token + "'");
}

Graph graph_from_flags(const std::string& file, int cycle_n, int line_n,
                       int complete_n) {
  const int given = (!file.empty()) + (cycle_n > 0) + (line_n > 0) + (complete_n > 0);
  if (given != 1) {
    throw Error(ErrorCode::BadInput,
                "give exactly one of --graph, --cycle, --line, --complete");
  }
  if (!file.empty()) return Graph::load_edge_list(file);
  if (cycle_n > 0) return Graph::cycle(cycle_n);
  if (line_n > 0) return Graph::path(line_n);
  return Graph::complete(complete_n);
}

// ---------------------------------------------------------------------------
// subcommands

void run_line(const CoinFlags& coin, std::int64_t steps,
              const std::string& init_text, std::int64_t start,
              const std::string& engine, const std::string& barrier_text,
              std::int64_t barrier_steps, bool amplitudes,
              const std::string& coins_text, const std::string& schedule,
              Report* rep) {
  const CVector init_coin = parse_state(init_text);
  if (init_coin.size() != 2) {
    throw Error(ErrorCode::BadInput, "line walks use 2-component coin inits");
  }
  const InitSpec init = InitSpec::coin(init_coin[0], init_coin[1], start);

  if (!coins_text.empty()) {
    // multi-coin walk: semicolon-separated coin tokens under a schedule
    std::vector<line::CoinSpec> coins;
    std::stringstream ss(coins_text);
    std::string token;
    while (std::getline(ss, token, ';')) coins.push_back(parse_coin_token(token));
    const auto sched =
        schedule == "fibonacci"
            ? line::fibonacci_schedule(steps)
            : line::periodic_schedule(static_cast<int>(coins.size()));
    const WalkState state = line::multi_coin_evolve(steps, coins, sched, init);
    if (amplitudes) {
      amplitude_table(rep, state);
    } else {
      distribution_table(rep, core::position_distribution(state), "position",
                         true, steps + start);
    }
    return;
  }

  if (!barrier_text.empty()) {
    std::stringstream ss(barrier_text);
    std::string item;
    std::vector<std::int64_t> positions;
    while (std::getline(ss, item, ',')) positions.push_back(std::stoll(item));
    line::BarrierSpec spec =
        positions.size() == 1
            ? line::BarrierSpec::semi_infinite(positions[0])
            : line::BarrierSpec::two_barriers(positions.at(0), positions.at(1));
    const auto rec =
        line::absorbing_walk(spec, coin.realize(), init, barrier_steps);
    rep->scalar("absorbed_left", rec.absorbed_left());
    rep->scalar("absorbed_right", rec.absorbed_right());
    rep->scalar("survivor_norm", rec.survivor_norm);
    rep->columns = {"step", "left", "right", "survivor_bound"};
    for (std::size_t t = 0; t < rec.cumulative_left.size(); ++t) {
      rep->rows.push_back({std::to_string(t), fnum(rec.cumulative_left[t]),
                           fnum(rec.cumulative_right[t]),
                           fnum(1.0 - rec.cumulative_left[t] -
                                rec.cumulative_right[t])});
    }
    return;
  }

  const WalkState state = engine == "fourier"
                              ? line::evolve_fourier(steps, coin.realize(), init)
                              : line::evolve(steps, coin.realize(), init);
  if (amplitudes) {
    amplitude_table(rep, state);
  } else {
    distribution_table(rep, core::position_distribution(state), "position",
                       true, steps + start);
  }
}

void run_cycle(const CoinFlags& coin, int n, std::int64_t steps,
               std::int64_t averaged, int init_vertex,
               const std::string& init_coin_text, const std::string& shift,
               Report* rep) {
  const Graph g = Graph::cycle(n);
  const CVector c = parse_state(init_coin_text);
  const WalkState init = graphs::graph_basis_state(g, init_vertex, c);
  const auto kind = shift == "flipflop" ? graphs::ShiftKind::FlipFlop
                                        : graphs::ShiftKind::Moving;
  if (averaged > 0) {
    const ProbDist d =
        graphs::averaged_distribution(g, coin.realize(), init, averaged, kind);
    distribution_table(rep, d, "index", false, 0);
    return;
  }
  const WalkState s =
      graphs::graph_walk_evolve(g, coin.realize(), init, steps, kind);
  distribution_table(rep, core::position_distribution(s), "index", false, 0);
}

void run_hypercube(int dim, std::int64_t steps, int start, Report* rep) {
  WalkState s = graphs::hypercube_symmetric_state(dim, start);
  s = graphs::hypercube_walk(dim, steps, s);
  distribution_table(rep, core::position_distribution(s), "index", false, 0);
}

void run_search(int dim, int marked, std::int64_t steps,
                const std::string& marked_coin, Report* rep) {
  const auto kind = marked_coin == "neg-identity"
                        ? graphs::MarkedCoin::NegIdentity
                        : graphs::MarkedCoin::NegGrover;
  const auto res = graphs::skw_search(dim, marked, steps, kind);
  rep->scalar("t_final", res.t_final);
  rep->scalar("success_probability", res.success_probability);
  rep->scalar("classical_baseline",
              static_cast<double>(res.t_final) / std::pow(2.0, dim));
  rep->columns = {"step", "value"};
  for (std::size_t t = 0; t < res.trajectory.size(); ++t) {
    rep->rows.push_back({std::to_string(t), fnum(res.trajectory[t])});
  }
}

void run_ctqw(const std::string& graph_file, int cycle_n, int line_n,
              int complete_n, double gamma, double time, int start,
              const std::string& convention, bool amplitudes, Report* rep) {
  ctqw::CTQWConfig cfg;
  cfg.gamma = gamma;
  cfg.graph = graph_from_flags(graph_file, cycle_n, line_n, complete_n);
  cfg.convention = convention == "laplacian" ? ctqw::Convention::Laplacian
                                             : ctqw::Convention::Adjacency;
  if (start < 0 || start >= cfg.graph.num_vertices()) {
    throw Error(ErrorCode::BadInput, "ctqw: start vertex out of range");
  }
  CVector init = CVector::Zero(cfg.graph.num_vertices());
  init[start] = Complex(1, 0);
  const WalkState s = ctqw::ctqw_evolve(cfg, time, init);
  if (amplitudes) {
    amplitude_table(rep, s);
  } else {
    distribution_table(rep, core::position_distribution(s), "index", false, 0);
  }
}

void run_gluedtrees(int depth, const std::string& variant, std::uint64_t seed,
                    double gamma, double horizon, int samples, Report* rep) {
  const auto kind = variant == "random-cycle" ? ctqw::GluedVariant::RandomCycle
                                              : ctqw::GluedVariant::Identified;
  const ctqw::GluedTrees g = ctqw::glued_trees(depth, kind, seed);
  const auto res = ctqw::traversal_experiment(g, gamma, horizon, samples);
  rep->scalar("vertices", std::int64_t(g.graph.num_vertices()));
  rep->scalar("entrance", std::int64_t(g.entrance));
  rep->scalar("exit", std::int64_t(g.exit_vertex));
  rep->scalar("quantum_max_exit_probability", res.quantum_max_exit_probability);
  rep->scalar("quantum_argmax_time", res.quantum_argmax_time);
  rep->scalar("classical_max_exit_probability",
              res.classical_max_exit_probability);
  rep->scalar("quantum_classical_ratio",
              res.quantum_max_exit_probability /
                  std::max(res.classical_max_exit_probability, 1e-300));
}

void run_scatter(const std::string& graph_file, const std::string& leads_text,
                 double k, bool childs, Report* rep) {
  if (childs) {
    const Complex t = ctqw::childs_transmission(k);
    rep->scalar("t_re", t.real());
    rep->scalar("t_im", t.imag());
    rep->scalar("t_abs", std::abs(t));
    return;
  }
  if (graph_file.empty()) {
    throw Error(ErrorCode::BadInput, "scatter: --graph required");
  }
  const Graph g = Graph::load_edge_list(graph_file);
  std::vector<int> leads;
  std::stringstream ss(leads_text);
  std::string item;
  while (std::getline(ss, item, ',')) leads.push_back(std::stoi(item));
  const auto res = ctqw::scattering_solve(g, leads, k);
  for (std::size_t j = 0; j < leads.size(); ++j) {
    rep->scalar("flux_" + std::to_string(j), res.flux(static_cast<int>(j)));
  }
  rep->columns = {"in_lead", "out_lead", "re", "im", "probability"};
  for (int j = 0; j < static_cast<int>(leads.size()); ++j) {
    for (int l = 0; l < static_cast<int>(leads.size()); ++l) {
      const Complex a = j == l ? res.reflection[j] : res.transmission(j, l);
      rep->rows.push_back({std::to_string(j), std::to_string(l),
                           fnum(a.real()), fnum(a.imag()), fnum(std::norm(a))});
    }
  }
}

void run_szegedy(const std::string& matrix_file, int cycle_n, int complete_n,
                 const std::string& marked_text, std::int64_t max_steps,
                 double threshold, bool audit, Report* rep) {
  classical::StochasticMatrix p;
  const int given = (!matrix_file.empty()) + (cycle_n > 0) + (complete_n > 0);
  if (given != 1) {
    throw Error(ErrorCode::BadInput,
                "give exactly one of --matrix, --cycle, --complete");
  }
  if (!matrix_file.empty()) {
    p = classical::StochasticMatrix::load(matrix_file);
  } else if (cycle_n > 0) {
    p = classical::StochasticMatrix::from_graph(Graph::cycle(cycle_n));
  } else {
    p = classical::StochasticMatrix::from_graph(Graph::complete(complete_n));
  }

  if (audit) {
    const auto walk = szegedy::quantize(p);
    const int n = walk.n;
    const RMatrix in = RMatrix::Identity(n, n);
    const RMatrix inn = RMatrix::Identity(n * n, n * n);
    rep->scalar("isometry_a_error",
                (walk.a.transpose() * walk.a - in).cwiseAbs().maxCoeff());
    rep->scalar("isometry_b_error",
                (walk.b.transpose() * walk.b - in).cwiseAbs().maxCoeff());
    rep->scalar("unitarity_error",
                (walk.w.transpose() * walk.w - inn).cwiseAbs().maxCoeff());
    return;
  }

  std::set<int> marked;
  std::stringstream ss(marked_text);
  std::string item;
  while (std::getline(ss, item, ',')) marked.insert(std::stoi(item));
  const auto res = szegedy::detect_marked(p, marked, max_steps, threshold);
  rep->scalar("threshold", threshold);
  rep->scalar("first_crossing", res.first_crossing
                                    ? std::to_string(*res.first_crossing)
                                    : std::string("none"));
  rep->scalar("first_deviation_crossing",
              res.first_deviation_crossing
                  ? std::to_string(*res.first_deviation_crossing)
                  : std::string("none"));
  rep->columns = {"step", "marked_probability", "deviation"};
  for (std::size_t t = 0; t < res.marked_probability.size(); ++t) {
    rep->rows.push_back({std::to_string(t), fnum(res.marked_probability[t]),
                         fnum(res.deviation_from_start[t])});
  }
}

void run_decohere(const CoinFlags& coin, std::int64_t steps,
                  const std::string& init_text, double coin_p, double pos_p,
                  double link_p, std::int64_t trials, const std::string& mode,
                  std::uint64_t seed, double bounce_phase, Report* rep) {
  const CVector c = parse_state(init_text);
  if (c.size() != 2) {
    throw Error(ErrorCode::BadInput, "decohere: 2-component coin inits");
  }
  stochastics::DecoherenceModel model;
  model.coin_measure_p = coin_p;
  model.position_measure_p = pos_p;
  model.broken_link_p = link_p;
  model.seed = seed;
  model.broken_link_phase = bounce_phase;
  const auto evolve_mode = mode == "exact"
                               ? stochastics::EvolveMode::exact_classical()
                               : stochastics::EvolveMode::trajectories(trials);
  const ProbDist d =
      stochastics::decohere_evolve(steps, coin.realize(),
                                   InitSpec::coin(c[0], c[1]), model, evolve_mode);
  distribution_table(rep, d, "position", false, 0);
}

void run_oracle(const std::string& check, std::int64_t t, const CoinFlags& coin,
                const std::string& init_text, Report* rep) {
  const CVector c = parse_state(init_text);
  const InitSpec init = InitSpec::coin(c[0], c[1]);
  if (check == "konno") {
    const double l1 = oracles::empirical_limit_distance(t, coin.realize(), init);
    const auto density = oracles::limit_density(coin.realize().matrix(), c[0], c[1]);
    rep->scalar("l1_distance", l1);
    rep->scalar("density_integral", density.moment(0));
    rep->scalar("density_second_moment", density.moment(2));
  } else if (check == "symmetry") {
    rep->scalar("is_symmetric",
                oracles::is_symmetric_init(coin.realize().matrix(), c[0], c[1])
                    ? "true"
                    : "false");
  } else if (check == "entropy") {
    const WalkState s = line::evolve(t, coin.realize(), init);
    rep->scalar("coin_entropy", oracles::coin_entropy(s));
  } else {  // stddev
    const ProbDist d =
        core::position_distribution(line::evolve(t, coin.realize(), init));
    const double ratio = std::sqrt(d.variance()) / static_cast<double>(t);
    rep->scalar("sigma_over_t", ratio);
    rep->scalar("limit", std::sqrt((std::sqrt(2.0) - 1.0) / 2.0));
  }
}

void run_gate(const std::string& name, const std::string& alpha_text,
              const std::string& beta_text, int grover_dim, Report* rep) {
  if (name == "grover") {
    const CMatrix g = universality::grover_coin(grover_dim);
    rep->columns = {"index", "re", "im"};
    for (int i = 0; i < g.rows(); ++i) {
      for (int j = 0; j < g.cols(); ++j) {
        rep->rows.push_back({std::to_string(i * g.cols() + j),
                             fnum(g(i, j).real()), fnum(g(i, j).imag())});
      }
    }
    return;
  }
  const Complex alpha = parse_complex(alpha_text);
  const Complex beta = parse_complex(beta_text);
  const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (std::abs(norm - 1.0) > 1e-6) {
    throw Error(ErrorCode::BadInput, "gate: |alpha|^2 + |beta|^2 must be 1");
  }
  const Complex a = alpha / norm, b = beta / norm;

  if (name == "phase") {
    const auto res = universality::phase_gate_run(a, b);
    const Complex expect0 = std::polar(1.0, -5.0 * M_PI / 4.0);
    const Complex expect1 = std::polar(1.0, -M_PI);
    const bool match0 = std::abs(res.phase0 - expect0) <= 1e-12;
    const bool match1 = std::abs(res.phase1 - expect1) <= 1e-12;
    if (match0) rep->scalar("phase0", "e^{-5i*pi/4}");
    if (match1) rep->scalar("phase1", "e^{-i*pi}");
    rep->scalar("phase0_re", res.phase0.real());
    rep->scalar("phase0_im", res.phase0.imag());
    rep->scalar("phase1_re", res.phase1.real());
    rep->scalar("phase1_im", res.phase1.imag());
    rep->scalar("relative_phase_re", res.relative_phase.real());
    rep->scalar("relative_phase_im", res.relative_phase.imag());
    rep->scalar("phase0_match", match0 ? "true" : "false");
    rep->scalar("phase1_match", match1 ? "true" : "false");
  } else if (name == "wire") {
    universality::WireState w;
    w << a, a, b, b;
    const universality::WireState out = universality::wire_step(w);
    rep->columns = {"index", "re", "im"};
    for (int i = 0; i < 4; ++i) {
      rep->rows.push_back(
          {std::to_string(i), fnum(out[i].real()), fnum(out[i].imag())});
    }
  } else if (name == "widget") {
    const universality::WidgetWiring wiring;
    const auto res = universality::hadamard_widget_run(a, b, wiring);
    rep->scalar("fidelity", res.fidelity);
    rep->scalar("matches_hadamard", res.matches_hadamard ? "true" : "false");
  } else {  // cnot
    universality::WireStreams streams;
    streams.labels = {"00", "01", "10", "11"};
    streams.states[0] << a, a, 0, 0;
    streams.states[1] << b, b, 0, 0;
    streams.states[2] << a, a, 0, 0;
    streams.states[3] << b, b, 0, 0;
    const auto out = universality::cnot_permute(streams);
    rep->columns = {"wire", "front_re", "front_im"};
    for (int i = 0; i < 4; ++i) {
      rep->rows.push_back({std::string(out.labels[static_cast<std::size_t>(i)]),
                           fnum(out.states[static_cast<std::size_t>(i)][0].real()),
                           fnum(out.states[static_cast<std::size_t>(i)][0].imag())});
    }
  }
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"quantum walk workbench"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "global seed")->capture_default_str();

  // line ---------------------------------------------------------------
  auto* line_cmd = app.add_subcommand("line", "coined walk on the integer line");
  OutputOptions line_out;
  CoinFlags line_coin;
  std::int64_t line_steps = 100;
  std::string line_init = "1,0";
  std::int64_t line_start = 0;
  std::string line_engine = "direct";
  std::string line_barrier;
  std::int64_t line_barrier_steps = 1000;
  bool line_amps = false;
  std::string line_coins, line_schedule = "periodic";
  line_cmd->add_option("--steps", line_steps, "number of steps")
      ->capture_default_str();
  line_cmd->add_option("--init", line_init, "coin init 'a+bi,c+di'")
      ->capture_default_str();
  line_cmd->add_option("--start", line_start, "start position")
      ->capture_default_str();
  line_cmd->add_option("--engine", line_engine, "evolution engine")
      ->check(CLI::IsMember({"direct", "fourier"}))
      ->capture_default_str();
  line_cmd->add_option("--barrier", line_barrier,
                       "absorbing barrier position(s) 'b' or 'l,r'");
  line_cmd->add_option("--barrier-steps", line_barrier_steps,
                       "steps for the absorbing run")
      ->capture_default_str();
  line_cmd->add_flag("--amplitudes", line_amps, "emit amplitudes, not P");
  line_cmd->add_option("--coins", line_coins,
                       "multi-coin walk: tokens like "
                       "'hadamard;su2:0.8,0.2,0.9' separated by ';'");
  line_cmd->add_option("--schedule", line_schedule, "multi-coin schedule")
      ->check(CLI::IsMember({"periodic", "fibonacci"}))
      ->capture_default_str();
  line_coin.add_to(line_cmd);
  add_output_flags(line_cmd, &line_out);

  // cycle ----------------------------------------------------------------
  auto* cycle_cmd = app.add_subcommand("cycle", "coined walk on an n-cycle");
  OutputOptions cycle_out;
  CoinFlags cycle_coin;
  int cycle_n = 11;
  std::int64_t cycle_steps = 100, cycle_avg = 0;
  int cycle_vertex = 0;
  std::string cycle_init = "1,0";
  std::string cycle_shift = "moving";
  cycle_cmd->add_option("--n", cycle_n, "cycle size")->capture_default_str();
  cycle_cmd->add_option("--steps", cycle_steps, "steps")->capture_default_str();
  cycle_cmd->add_option("--averaged", cycle_avg,
                        "emit the averaged distribution over this many steps");
  cycle_cmd->add_option("--init-vertex", cycle_vertex, "start vertex")
      ->capture_default_str();
  cycle_cmd->add_option("--init", cycle_init, "coin init")->capture_default_str();
  cycle_cmd->add_option("--shift", cycle_shift, "shift convention")
      ->check(CLI::IsMember({"moving", "flipflop"}))
      ->capture_default_str();
  cycle_coin.add_to(cycle_cmd);
  add_output_flags(cycle_cmd, &cycle_out);

  // hypercube --------------------------------------------------------------
  auto* hyper_cmd =
      app.add_subcommand("hypercube", "Grover-coin walk on the hypercube");
  OutputOptions hyper_out;
  int hyper_dim = 8;
  std::int64_t hyper_steps = 6;
  int hyper_start = 0;
  hyper_cmd->add_option("--dim", hyper_dim, "dimension")->capture_default_str();
  hyper_cmd->add_option("--steps", hyper_steps, "steps")->capture_default_str();
  hyper_cmd->add_option("--start", hyper_start, "start vertex")
      ->capture_default_str();
  add_output_flags(hyper_cmd, &hyper_out);

  // search -------------------------------------------------------------
  auto* search_cmd = app.add_subcommand("search", "marked-vertex hypercube search");
  OutputOptions search_out;
  int search_dim = 8, search_marked = 0;
  std::int64_t search_steps = 0;
  std::string search_coin = "neg-grover";
  search_cmd->add_option("--dim", search_dim, "dimension")->capture_default_str();
  search_cmd->add_option("--marked", search_marked, "marked vertex")
      ->capture_default_str();
  search_cmd->add_option("--steps", search_steps,
                         "steps (0 means round(pi/2 sqrt(2^n)))")
      ->capture_default_str();
  search_cmd->add_option("--marked-coin", search_coin, "coin at the marked vertex")
      ->check(CLI::IsMember({"neg-grover", "neg-identity"}))
      ->capture_default_str();
  add_output_flags(search_cmd, &search_out);

  // ctqw ---------------------------------------------------------------
  auto* ctqw_cmd = app.add_subcommand("ctqw", "continuous-time walk");
  OutputOptions ctqw_out;
  std::string ctqw_graph;
  int ctqw_cycle = 0, ctqw_line = 0, ctqw_complete = 0, ctqw_start = 0;
  double ctqw_gamma = 1.0, ctqw_time = 1.0;
  std::string ctqw_conv = "laplacian";
  bool ctqw_amps = false;
  ctqw_cmd->add_option("--graph", ctqw_graph, "edge-list file");
  ctqw_cmd->add_option("--cycle", ctqw_cycle, "cycle size");
  ctqw_cmd->add_option("--line", ctqw_line, "path-graph size");
  ctqw_cmd->add_option("--complete", ctqw_complete, "complete-graph size");
  ctqw_cmd->add_option("--gamma", ctqw_gamma, "hopping rate")->capture_default_str();
  ctqw_cmd->add_option("--time", ctqw_time, "evolution time")->capture_default_str();
  ctqw_cmd->add_option("--start", ctqw_start, "start vertex")->capture_default_str();
  ctqw_cmd->add_option("--convention", ctqw_conv, "hamiltonian convention")
      ->check(CLI::IsMember({"adjacency", "laplacian"}))
      ->capture_default_str();
  ctqw_cmd->add_flag("--amplitudes", ctqw_amps, "emit amplitudes, not P");
  add_output_flags(ctqw_cmd, &ctqw_out);

  // gluedtrees ------------------------------------------------------------
  auto* glued_cmd = app.add_subcommand("gluedtrees", "glued-trees traversal");
  OutputOptions glued_out;
  int glued_depth = 4, glued_samples = 64;
  std::string glued_variant = "identified";
  double glued_gamma = 1.0, glued_horizon = 0.0;
  glued_cmd->add_option("--depth", glued_depth, "tree height")->capture_default_str();
  glued_cmd->add_option("--variant", glued_variant, "joining rule")
      ->check(CLI::IsMember({"identified", "random-cycle"}))
      ->capture_default_str();
  glued_cmd->add_option("--gamma", glued_gamma, "hopping rate")->capture_default_str();
  glued_cmd->add_option("--horizon", glued_horizon,
                        "time horizon (0 means 4 * depth)");
  glued_cmd->add_option("--samples", glued_samples, "quantum time samples")
      ->capture_default_str();
  add_output_flags(glued_cmd, &glued_out);

  // scatter -------------------------------------------------------------
  auto* scatter_cmd = app.add_subcommand("scatter", "lead scattering solver");
  OutputOptions scatter_out;
  std::string scatter_graph, scatter_leads = "0,1";
  double scatter_k = -M_PI / 4.0;
  bool scatter_childs = false;
  scatter_cmd->add_option("--graph", scatter_graph, "edge-list file");
  scatter_cmd->add_option("--leads", scatter_leads, "attachment vertices")
      ->capture_default_str();
  scatter_cmd->add_option("--k", scatter_k, "momentum in (-pi, 0)")
      ->capture_default_str();
  scatter_cmd->add_flag("--childs", scatter_childs,
                        "evaluate the closed-form widget transmission");
  add_output_flags(scatter_cmd, &scatter_out);

  // szegedy --------------------------------------------------------------
  auto* sz_cmd = app.add_subcommand("szegedy", "quantized Markov chain");
  OutputOptions sz_out;
  std::string sz_matrix, sz_marked = "0";
  int sz_cycle = 0, sz_complete = 0;
  std::int64_t sz_steps = 50;
  double sz_threshold = 0.2;
  bool sz_audit = false;
  sz_cmd->add_option("--matrix", sz_matrix, "stochastic matrix file");
  sz_cmd->add_option("--cycle", sz_cycle, "cycle-chain size");
  sz_cmd->add_option("--complete", sz_complete, "complete-chain size");
  sz_cmd->add_option("--marked", sz_marked, "marked states 'a,b,...'")
      ->capture_default_str();
  sz_cmd->add_option("--max-steps", sz_steps, "steps")->capture_default_str();
  sz_cmd->add_option("--threshold", sz_threshold, "crossing threshold")
      ->capture_default_str();
  sz_cmd->add_flag("--audit", sz_audit, "report isometry/unitarity errors only");
  add_output_flags(sz_cmd, &sz_out);

  // decohere ------------------------------------------------------------
  auto* dec_cmd = app.add_subcommand("decohere", "noisy line walk");
  OutputOptions dec_out;
  CoinFlags dec_coin;
  std::int64_t dec_steps = 100, dec_trials = 1000;
  std::string dec_init = "1,0", dec_mode = "trajectories";
  double dec_coin_p = 0.0, dec_pos_p = 0.0, dec_link_p = 0.0, dec_phase = 1.0;
  dec_cmd->add_option("--steps", dec_steps, "steps")->capture_default_str();
  dec_cmd->add_option("--init", dec_init, "coin init")->capture_default_str();
  dec_cmd->add_option("--coin-measure-p", dec_coin_p, "per-step coin rate")
      ->capture_default_str();
  dec_cmd->add_option("--position-measure-p", dec_pos_p, "per-step position rate")
      ->capture_default_str();
  dec_cmd->add_option("--broken-link-p", dec_link_p, "per-edge break rate")
      ->capture_default_str();
  dec_cmd->add_option("--trials", dec_trials, "trajectory count")
      ->capture_default_str();
  dec_cmd->add_option("--mode", dec_mode, "evolution mode")
      ->check(CLI::IsMember({"trajectories", "exact"}))
      ->capture_default_str();
  dec_cmd->add_option("--bounce-phase", dec_phase, "broken-link phase (+1/-1)")
      ->capture_default_str();
  dec_coin.add_to(dec_cmd);
  add_output_flags(dec_cmd, &dec_out);

  // oracle --------------------------------------------------------------
  auto* oracle_cmd = app.add_subcommand("oracle", "limit-law checks");
  OutputOptions oracle_out;
  CoinFlags oracle_coin;
  std::string oracle_check = "konno", oracle_init = "0.7071067811865476,0.7071067811865476i";
  std::int64_t oracle_t = 2000;
  oracle_cmd->add_option("--check", oracle_check, "which oracle")
      ->check(CLI::IsMember({"konno", "symmetry", "entropy", "stddev"}))
      ->capture_default_str();
  oracle_cmd->add_option("--t", oracle_t, "walk length")->capture_default_str();
  oracle_cmd->add_option("--init", oracle_init, "coin init")->capture_default_str();
  oracle_coin.add_to(oracle_cmd);
  add_output_flags(oracle_cmd, &oracle_out);

  // gate ----------------------------------------------------------------
  auto* gate_cmd = app.add_subcommand("gate", "universality gadgets");
  OutputOptions gate_out;
  std::string gate_name = "phase", gate_alpha = "1", gate_beta = "0";
  int gate_dim = 4;
  gate_cmd->add_option("--name", gate_name, "gadget")
      ->check(CLI::IsMember({"phase", "wire", "cnot", "grover", "widget"}))
      ->capture_default_str();
  gate_cmd->add_option("--alpha", gate_alpha, "qubit amplitude on |0>")
      ->capture_default_str();
  gate_cmd->add_option("--beta", gate_beta, "qubit amplitude on |1>")
      ->capture_default_str();
  gate_cmd->add_option("--d", gate_dim, "grover coin dimension")
      ->capture_default_str();
  add_output_flags(gate_cmd, &gate_out);

  // allow global flags like --seed after the subcommand name too
  for (auto* sub : app.get_subcommands(
           [](const CLI::App*) { return true; })) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    Report rep;
    OutputOptions out;
    rep.cfg("seed", std::int64_t(seed));
    if (line_cmd->parsed()) {
      out = line_out;
      rep.cfg("subcommand", "line");
      rep.cfg("steps", line_steps);
      rep.cfg("init", line_init);
      rep.cfg("start", line_start);
      rep.cfg("engine", line_engine);
      if (!line_barrier.empty()) {
        rep.cfg("barrier", line_barrier);
        rep.cfg("barrier_steps", line_barrier_steps);
      }
      if (!line_coins.empty()) {
        rep.cfg("coins", line_coins);
        rep.cfg("schedule", line_schedule);
      }
      line_coin.echo(&rep);
      run_line(line_coin, line_steps, line_init, line_start, line_engine,
               line_barrier, line_barrier_steps, line_amps, line_coins,
               line_schedule, &rep);
    } else if (cycle_cmd->parsed()) {
      out = cycle_out;
      rep.cfg("subcommand", "cycle");
      rep.cfg("n", std::int64_t(cycle_n));
      rep.cfg("steps", cycle_steps);
      if (cycle_avg > 0) rep.cfg("averaged", cycle_avg);
      rep.cfg("init_vertex", std::int64_t(cycle_vertex));
      rep.cfg("init", cycle_init);
      rep.cfg("shift", cycle_shift);
      cycle_coin.echo(&rep);
      run_cycle(cycle_coin, cycle_n, cycle_steps, cycle_avg, cycle_vertex,
                cycle_init, cycle_shift, &rep);
    } else if (hyper_cmd->parsed()) {
      out = hyper_out;
      rep.cfg("subcommand", "hypercube");
      rep.cfg("dim", std::int64_t(hyper_dim));
      rep.cfg("steps", hyper_steps);
      rep.cfg("start", std::int64_t(hyper_start));
      run_hypercube(hyper_dim, hyper_steps, hyper_start, &rep);
    } else if (search_cmd->parsed()) {
      out = search_out;
      rep.cfg("subcommand", "search");
      rep.cfg("dim", std::int64_t(search_dim));
      rep.cfg("marked", std::int64_t(search_marked));
      rep.cfg("steps", search_steps);
      rep.cfg("marked_coin", search_coin);
      run_search(search_dim, search_marked, search_steps, search_coin, &rep);
    } else if (ctqw_cmd->parsed()) {
      out = ctqw_out;
      rep.cfg("subcommand", "ctqw");
      if (!ctqw_graph.empty()) rep.cfg("graph", ctqw_graph);
      if (ctqw_cycle > 0) rep.cfg("cycle", std::int64_t(ctqw_cycle));
      if (ctqw_line > 0) rep.cfg("line", std::int64_t(ctqw_line));
      if (ctqw_complete > 0) rep.cfg("complete", std::int64_t(ctqw_complete));
      rep.cfg("gamma", ctqw_gamma);
      rep.cfg("time", ctqw_time);
      rep.cfg("start", std::int64_t(ctqw_start));
      rep.cfg("convention", ctqw_conv);
      run_ctqw(ctqw_graph, ctqw_cycle, ctqw_line, ctqw_complete, ctqw_gamma,
               ctqw_time, ctqw_start, ctqw_conv, ctqw_amps, &rep);
    } else if (glued_cmd->parsed()) {
      out = glued_out;
      if (glued_horizon <= 0.0) glued_horizon = 4.0 * glued_depth;
      rep.cfg("subcommand", "gluedtrees");
      rep.cfg("depth", std::int64_t(glued_depth));
      rep.cfg("variant", glued_variant);
      rep.cfg("gamma", glued_gamma);
      rep.cfg("horizon", glued_horizon);
      rep.cfg("samples", std::int64_t(glued_samples));
      run_gluedtrees(glued_depth, glued_variant, seed, glued_gamma,
                     glued_horizon, glued_samples, &rep);
    } else if (scatter_cmd->parsed()) {
      out = scatter_out;
      rep.cfg("subcommand", "scatter");
      if (!scatter_graph.empty()) rep.cfg("graph", scatter_graph);
      rep.cfg("leads", scatter_leads);
      rep.cfg("k", scatter_k);
      if (scatter_childs) rep.cfg("childs", "true");
      run_scatter(scatter_graph, scatter_leads, scatter_k, scatter_childs, &rep);
    } else if (sz_cmd->parsed()) {
      out = sz_out;
      rep.cfg("subcommand", "szegedy");
      if (!sz_matrix.empty()) rep.cfg("matrix", sz_matrix);
      if (sz_cycle > 0) rep.cfg("cycle", std::int64_t(sz_cycle));
      if (sz_complete > 0) rep.cfg("complete", std::int64_t(sz_complete));
      rep.cfg("marked", sz_marked);
      rep.cfg("max_steps", sz_steps);
      rep.cfg("threshold", sz_threshold);
      run_szegedy(sz_matrix, sz_cycle, sz_complete, sz_marked, sz_steps,
                  sz_threshold, sz_audit, &rep);
    } else if (dec_cmd->parsed()) {
      out = dec_out;
      rep.cfg("subcommand", "decohere");
      rep.cfg("steps", dec_steps);
      rep.cfg("init", dec_init);
      rep.cfg("coin_measure_p", dec_coin_p);
      rep.cfg("position_measure_p", dec_pos_p);
      rep.cfg("broken_link_p", dec_link_p);
      rep.cfg("trials", dec_trials);
      rep.cfg("mode", dec_mode);
      dec_coin.echo(&rep);
      run_decohere(dec_coin, dec_steps, dec_init, dec_coin_p, dec_pos_p,
                   dec_link_p, dec_trials, dec_mode, seed, dec_phase, &rep);
    } else if (oracle_cmd->parsed()) {
      out = oracle_out;
      rep.cfg("subcommand", "oracle");
      rep.cfg("check", oracle_check);
      rep.cfg("t", oracle_t);
      rep.cfg("init", oracle_init);
      oracle_coin.echo(&rep);
      run_oracle(oracle_check, oracle_t, oracle_coin, oracle_init, &rep);
    } else if (gate_cmd->parsed()) {
      out = gate_out;
      rep.cfg("subcommand", "gate");
      rep.cfg("name", gate_name);
      rep.cfg("alpha", gate_alpha);
      rep.cfg("beta", gate_beta);
      if (gate_name == "grover") rep.cfg("d", std::int64_t(gate_dim));
      run_gate(gate_name, gate_alpha, gate_beta, gate_dim, &rep);
    }
    emit(rep, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace qwalk::cli
