#include "qwalk/ctqw.hpp"

#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "qwalk/core.hpp"

using namespace qwalk;
using namespace qwalk::ctqw;

TEST_SUITE_BEGIN("ctqw");

TEST_CASE("hamiltonian conventions") {
  CTQWConfig cfg;
  cfg.gamma = 2.0;
  cfg.graph = Graph::path(3);

  cfg.convention = Convention::Adjacency;
  const RMatrix ha = hamiltonian(cfg);
  CHECK(ha(0, 1) == -2.0);
  CHECK(ha(0, 0) == 0.0);

  cfg.convention = Convention::Laplacian;
  const RMatrix hl = hamiltonian(cfg);
  CHECK(hl(0, 0) == 2.0);   // degree 1 times gamma
  CHECK(hl(1, 1) == 4.0);   // degree 2 times gamma
  CHECK(hl(0, 1) == -2.0);
}

TEST_CASE("evolution basics: t = 0 and unit norm") {
  CTQWConfig cfg;
  cfg.gamma = 1.0;
  cfg.graph = Graph::cycle(7);
  CVector init = CVector::Zero(7);
  init[2] = Complex(1, 0);
  const WalkState s0 = ctqw_evolve(cfg, 0.0, init);
  CHECK(std::abs(s0.amp(0, 2) - Complex(1, 0)) < 1e-12);
  const WalkState s = ctqw_evolve(cfg, 13.7, init);
  CHECK(std::abs(s.norm_squared() - 1.0) < 1e-10);
}

TEST_CASE("two-vertex graph oscillates as sin^2(t)") {
  CTQWConfig cfg;
  cfg.gamma = 1.0;
  cfg.graph = Graph::path(2);
  cfg.convention = Convention::Adjacency;
  CVector init = CVector::Zero(2);
  init[0] = Complex(1, 0);
  for (double t : {0.3, 1.1, 2.9}) {
    const WalkState s = ctqw_evolve(cfg, t, init);
    CHECK(std::norm(s.amp(0, 1)) ==
          doctest::Approx(std::sin(t) * std::sin(t)).epsilon(1e-12));
  }
}

TEST_CASE("time additivity on random graphs") {
  CounterRng rng(311);
  for (int it = 0; it < 5; ++it) {
    const int n = 5 + static_cast<int>(rng.below(40));
    CTQWConfig cfg;
    cfg.gamma = 0.5 + rng.uniform();
    cfg.graph = testing::random_connected_graph(n, rng);
    const Propagator prop(hamiltonian(cfg));
    const CVector init = testing::random_state_vector(n, rng);
    const double t1 = 2.0 * rng.uniform(), t2 = 2.0 * rng.uniform();
    const CVector once = prop.evolve(init, t1 + t2);
    const CVector twice = prop.evolve(prop.evolve(init, t1), t2);
    CHECK((once - twice).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("arcsine cdf closed form") {
  CHECK(arcsine_cdf(-1.0, 1.0) == doctest::Approx(1.0));
  CHECK(arcsine_cdf(0.0, 1.0) == doctest::Approx(0.5));
  CHECK(arcsine_cdf(-0.5, 0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(arcsine_cdf(-2.0, 0.5), Error);
  CHECK_THROWS_AS(arcsine_cdf(0.5, 0.5), Error);
}

TEST_CASE("pseudovelocity on the line follows the arcsine law") {
  CTQWConfig cfg;
  cfg.gamma = 1.0;
  cfg.graph = Graph::path(801);
  cfg.convention = Convention::Adjacency;
  CVector init = CVector::Zero(801);
  init[400] = Complex(1, 0);
  const double t = 200.0;
  const ProbDist d = core::position_distribution(ctqw_evolve(cfg, t, init));

  // ballistic support check: nothing escapes speed 2 gamma
  CHECK(d.total() == doctest::Approx(1.0).epsilon(1e-10));

  // Kolmogorov-Smirnov distance of X / (2 gamma t) against the arcsine cdf
  const double scale = 1.0 / (2.0 * cfg.gamma * t);
  double ks = 0.0, cum = 0.0;
  for (int v = 0; v < 801; ++v) {
    const double x = (v - 400) * scale;
    const double model = x <= -1.0 ? 0.0 : (x >= 1.0 ? 1.0 : arcsine_cdf(-1.0, x));
    ks = std::max(ks, std::abs(cum - model));
    cum += d.at(v);
    ks = std::max(ks, std::abs(cum - model));
  }
  CHECK(ks <= 0.05);
}

TEST_CASE("glued trees construction audit") {
  for (int depth : {1, 3, 4}) {
    const GluedTrees gs = glued_trees(depth, GluedVariant::Identified);
    CHECK(gs.graph.num_vertices() ==
          2 * ((1 << (depth + 1)) - 1) - (1 << depth));
    CHECK(gs.graph.is_connected());
    CHECK(gs.graph.degree(gs.entrance) == 2);
    CHECK(gs.graph.degree(gs.exit_vertex) == 2);
    gs.graph.check_undirected();
    // shared leaf layer: degree 2 (one parent per side)
    for (int v = 0; v < gs.graph.num_vertices(); ++v) {
      if (gs.column_of[v] == depth) CHECK(gs.graph.degree(v) == 2);
    }

    const GluedTrees gr = glued_trees(depth, GluedVariant::RandomCycle, 42);
    CHECK(gr.graph.num_vertices() == 2 * ((1 << (depth + 1)) - 1));
    CHECK(gr.graph.is_connected());
    for (int v = 0; v < gr.graph.num_vertices(); ++v) {
      const int expected =
          (v == gr.entrance || v == gr.exit_vertex) ? 2 : 3;
      CHECK(gr.graph.degree(v) == expected);
    }
  }

  // identical seeds rebuild the identical graph
  const GluedTrees a = glued_trees(4, GluedVariant::RandomCycle, 7);
  const GluedTrees b = glued_trees(4, GluedVariant::RandomCycle, 7);
  CHECK(a.graph.adjacency == b.graph.adjacency);
  const GluedTrees c = glued_trees(4, GluedVariant::RandomCycle, 8);
  CHECK(a.graph.adjacency != c.graph.adjacency);
}

TEST_CASE("glued trees traversal beats the classical chain") {
  const GluedTrees g2 = glued_trees(2, GluedVariant::Identified);
  const auto res2 = traversal_experiment(g2, 1.0, 8.0, 64);
  CHECK(res2.quantum_max_exit_probability >
        res2.classical_max_exit_probability);

  const GluedTrees g6 = glued_trees(6, GluedVariant::Identified);
  const auto res6 = traversal_experiment(g6, 1.0, 24.0, 96);
  CHECK(res6.quantum_max_exit_probability >=
        10.0 * res6.classical_max_exit_probability);
}

TEST_CASE("column-uniform reduction matches the full simulation") {
  const GluedTrees g = glued_trees(4, GluedVariant::Identified);
  const int cols = g.num_columns();
  CTQWConfig cfg;
  cfg.gamma = 0.7;
  cfg.graph = g.graph;
  cfg.convention = Convention::Adjacency;
  const Propagator full(hamiltonian(cfg));

  // oracle relationship: the chain with sqrt(2) gamma hoppings
  RMatrix hr = RMatrix::Zero(cols, cols);
  for (int j = 0; j + 1 < cols; ++j) {
    hr(j, j + 1) = hr(j + 1, j) = -std::sqrt(2.0) * cfg.gamma;
  }
  const Propagator reduced(hr);

  CVector init_full = CVector::Zero(g.graph.num_vertices());
  init_full[g.entrance] = Complex(1, 0);
  CVector init_red = CVector::Zero(cols);
  init_red[0] = Complex(1, 0);
  std::vector<int> col_size(static_cast<std::size_t>(cols), 0);
  for (int v = 0; v < g.graph.num_vertices(); ++v) {
    col_size[static_cast<std::size_t>(g.column_of[v])]++;
  }

  for (double t : {1.0, 3.0, 7.0}) {
    const CVector pf = full.evolve(init_full, t);
    const CVector pr = reduced.evolve(init_red, t);
    for (int v = 0; v < g.graph.num_vertices(); ++v) {
      const int j = g.column_of[v];
      CHECK(std::abs(pf[v] -
                     pr[j] / std::sqrt(static_cast<double>(
                                col_size[static_cast<std::size_t>(j)]))) <
            1e-9);
    }
  }
}

TEST_CASE("free propagation through a single vertex with two leads") {
  Graph g;
  g.adjacency = {{}};
  const auto res = scattering_solve(g, {0, 0}, -M_PI / 3);
  CHECK(std::abs(res.reflection[0]) <= 1e-12);
  CHECK(std::abs(std::abs(res.transmission(0, 1)) - 1.0) <= 1e-12);
}

TEST_CASE("scattering conserves flux on random graphs") {
  CounterRng rng(99);
  for (int it = 0; it < 100; ++it) {
    const int n = 2 + static_cast<int>(rng.below(6));
    const Graph g = testing::random_connected_graph(n, rng);
    const int l1 = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const int l2 = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const double k = -0.1 - 2.9 * rng.uniform();
    try {
      const auto res = scattering_solve(g, {l1, l2}, k);
      CHECK(std::abs(res.flux(0) - 1.0) <= 1e-9);
      CHECK(std::abs(res.flux(1) - 1.0) <= 1e-9);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Singular);  // isolated momenta only
    }
  }
}

TEST_CASE("diamond transmission matches a wave-packet run") {
  Graph dia;
  dia.adjacency = {{1, 2}, {0, 3}, {0, 3}, {1, 2}};
  const double k0 = -M_PI / 3;
  const auto solved = scattering_solve(dia, {0, 3}, k0);
  const double predicted = std::norm(solved.transmission(0, 1));

  // oracle: Gaussian packet on a 402-site truncated lattice, H = +A so the
  // dispersion matches the solver's 2 cos k convention
  Graph comp;
  comp.adjacency.resize(402);
  auto link = [&](int u, int v) {
    comp.adjacency[static_cast<std::size_t>(u)].push_back(v);
    comp.adjacency[static_cast<std::size_t>(v)].push_back(u);
  };
  for (int i = 0; i + 1 <= 197; ++i) link(i, i + 1);
  link(197, 198);
  link(198, 199);
  link(198, 200);
  link(199, 201);
  link(200, 201);
  link(201, 202);
  for (int i = 202; i + 1 <= 401; ++i) link(i, i + 1);
  RMatrix a = RMatrix::Zero(402, 402);
  for (int v = 0; v < 402; ++v) {
    for (int u : comp.adjacency[static_cast<std::size_t>(v)]) a(v, u) += 1.0;
  }
  const Propagator prop(a);

  CVector psi = CVector::Zero(402);
  const double x0 = 120.0, sigma = 22.0;
  for (int x = 0; x < 402; ++x) {
    const double dx = x - x0;
    psi[x] = std::polar(std::exp(-dx * dx / (4.0 * sigma * sigma)), k0 * x);
  }
  psi /= psi.norm();
  const CVector out = prop.evolve(psi, 90.0);
  double transmitted = 0.0;
  for (int x = 202; x < 402; ++x) transmitted += std::norm(out[x]);
  CHECK(std::abs(transmitted - predicted) < 0.02);
}

TEST_CASE("diamond scattering is singular exactly at k = -pi/2") {
  // E = 0 meets a dark eigenstate that vanishes on both attachment points.
  Graph dia;
  dia.adjacency = {{1, 2}, {0, 3}, {0, 3}, {1, 2}};
  CHECK_THROWS_AS(scattering_solve(dia, {0, 3}, -M_PI / 2), Error);
}

TEST_CASE("phase-gate widget transmission closed form") {
  CHECK(std::abs(childs_transmission(-M_PI / 4) - Complex(1, 0)) <= 1e-12);

  CounterRng rng(17);
  for (int it = 0; it < 1000; ++it) {
    const double k = -0.05 - rng.uniform() * (M_PI - 0.1);
    if (std::abs(k + M_PI / 2) < 1e-6) continue;
    CHECK(std::abs(childs_transmission(k)) <= 1.0 + 1e-12);
  }

  // |T| collapses approaching the sec-singularity at -pi/2
  CHECK(std::abs(childs_transmission(-M_PI / 2 + 1e-3)) < 0.1);
  CHECK_THROWS_AS(childs_transmission(-M_PI / 2), Error);
  CHECK_THROWS_AS(childs_transmission(0.5), Error);
}

TEST_CASE("argument guards") {
  CTQWConfig big;
  big.gamma = 1.0;
  big.graph = Graph::path(4097);
  CHECK_THROWS_AS(ctqw_evolve(big, 1.0, CVector::Zero(4097)), qwalk::Error);

  CTQWConfig bad;
  bad.gamma = -1.0;
  bad.graph = Graph::path(3);
  CHECK_THROWS_AS(hamiltonian(bad), qwalk::Error);

  CHECK_THROWS_AS(glued_trees(0, GluedVariant::Identified), qwalk::Error);

  Graph g;
  g.adjacency = {{}};
  CHECK_THROWS_AS(scattering_solve(g, {0}, 0.5), qwalk::Error);
  CHECK_THROWS_AS(scattering_solve(g, {3}, -0.5), qwalk::Error);
}

TEST_SUITE_END();
