#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "ume/errors.hpp"
#include "ume/evaluator.hpp"

using namespace ume;
using namespace ume::test;

TEST_CASE("graph construction rejects invalid input") {
  CHECK_THROWS_AS(Graph(2, {Edge{0, 0, 0, 1.0, 0.5}}), DataError);  // self loop
  CHECK_THROWS_AS(
      Graph(2, {Edge{0, 0, 1, 1.0, 0.5}, Edge{1, 0, 1, 1.0, 0.5}}),
      DataError);  // duplicate arc
  CHECK_THROWS_AS(Graph(2, {Edge{1, 0, 1, 1.0, 0.5}}), DataError);  // sparse id
  CHECK_THROWS_AS(Graph(2, {Edge{0, 0, 1, -1.0, 0.5}}), DataError);
  CHECK_THROWS_AS(Graph(2, {Edge{0, 0, 1, 1.0, 1.5}}), DataError);
  CHECK_THROWS_AS(Graph(2, {Edge{0, 0, 2, 1.0, 0.5}}), DataError);  // range

  const Graph g(3, {Edge{0, 0, 1, 1.0, 0.5}, Edge{1, 1, 2, 2.0, 0.0}});
  CHECK(g.edge_count() == 2);
  CHECK(g.find_edge(0, 1) == 0);
  CHECK(g.find_edge(1, 0) == std::nullopt);
  CHECK(g.out_edges(1).size() == 1);
  CHECK(g.in_edges(1).size() == 1);
}

TEST_CASE("build_evader_transition: single allowed move per node") {
  const ProblemInstance p = chain_instance();
  const TransitionMatrix& m = p.evaders[0].matrix;
  CHECK(m.row(0).size() == 1);
  CHECK(m.row(0)[0].prob == doctest::Approx(1.0));
  CHECK(m.row(1)[0].prob == doctest::Approx(1.0));
  CHECK(m.row(2).empty());
}

TEST_CASE("build_evader_transition: symmetric diamond at large lambda") {
  Graph g(4, {Edge{0, 0, 1, 1.0, 0.0}, Edge{1, 0, 2, 1.0, 0.0},
              Edge{2, 1, 3, 1.0, 0.0}, Edge{3, 2, 3, 1.0, 0.0}});
  const TransitionMatrix m = build_evader_transition(g, 3, 1e9);
  CHECK(m.row(0)[0].prob == doctest::Approx(0.5));
  CHECK(m.row(0)[1].prob == doctest::Approx(0.5));
}

TEST_CASE("build_evader_transition: softmax over progress slack") {
  // c_sa=1, c_sb=2, arms unit cost, lambda=1:
  // slack(s->a) = 0, slack(s->b) = 1 -> M_sa = 1/(1+e^-1)
  Graph g(4, {Edge{0, 0, 1, 1.0, 0.0}, Edge{1, 0, 2, 2.0, 0.0},
              Edge{2, 1, 3, 1.0, 0.0}, Edge{3, 2, 3, 1.0, 0.0}});
  const TransitionMatrix m = build_evader_transition(g, 3, 1.0);
  const double expect_sa = 1.0 / (1.0 + std::exp(-1.0));
  CHECK(m.row(0)[0].prob == doctest::Approx(expect_sa).epsilon(1e-12));
  CHECK(m.row(0)[1].prob == doctest::Approx(1.0 - expect_sa).epsilon(1e-12));
  CHECK(m.row_sum(0) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(build_evader_transition(g, 9, 1.0), DataError);
  CHECK_THROWS_AS(build_evader_transition(g, 3, 0.0), DataError);
  CHECK_THROWS_AS(build_evader_transition(g, 3, -2.0), DataError);
}

TEST_CASE("validate_chain") {
  const ProblemInstance p = chain_instance();
  SUBCASE("valid chain passes with empty Z") {
    const ChainReport r = validate_chain(p.evaders[0].matrix, 2, &p.graph);
    CHECK(r.pass());
    CHECK(r.unreachable.empty());
    CHECK(r.row_sums[0] == doctest::Approx(1.0));
  }
  SUBCASE("isolated dead end is allowed and reported in Z") {
    Graph g(4, {Edge{0, 0, 1, 1.0, 0.5}, Edge{1, 1, 2, 1.0, 0.5}});
    std::vector<double> probs{1.0, 1.0};
    const TransitionMatrix m(g, probs);
    const ChainReport r = validate_chain(m, 2, &g);
    CHECK(r.pass());
    CHECK(r.unreachable == std::vector<NodeId>{3});
  }
  SUBCASE("nonzero target row fails") {
    Graph g(3, {Edge{0, 0, 1, 1.0, 0.5}, Edge{1, 1, 2, 1.0, 0.5},
                Edge{2, 2, 0, 1.0, 0.5}});
    std::vector<double> probs{1.0, 1.0, 0.5};
    const TransitionMatrix m(g, probs);
    const ChainReport r = validate_chain(m, 2);
    CHECK_FALSE(r.pass());
    CHECK_FALSE(r.target_row_zero);
    REQUIRE_FALSE(r.failures.empty());
    CHECK(r.failures.front() == "target row nonzero");
  }
}

TEST_CASE("apply_interdiction") {
  const ProblemInstance p = chain_instance(0.5);
  const TransitionMatrix& m = p.evaders[0].matrix;
  SUBCASE("empty set is the identity") {
    const TransitionMatrix hat =
        apply_interdiction(m, InterdictionSet(p.graph.edge_count()), p.graph);
    CHECK(hat.row(0)[0].prob == doctest::Approx(1.0));
    CHECK(hat.row(1)[0].prob == doctest::Approx(1.0));
  }
  SUBCASE("scales the interdicted entry, leaves the rest") {
    const auto s = InterdictionSet::from_edges(std::vector<EdgeId>{0}, 2);
    const TransitionMatrix hat = apply_interdiction(m, s, p.graph);
    CHECK(hat.row(0)[0].prob == doctest::Approx(0.5));
    CHECK(hat.row(1)[0].prob == doctest::Approx(1.0));
    CHECK(m.row(0)[0].prob == doctest::Approx(1.0));  // input untouched
  }
  SUBCASE("full removal at d = 1") {
    const ProblemInstance q = chain_instance(1.0);
    const auto s = InterdictionSet::from_edges(std::vector<EdgeId>{1}, 2);
    const TransitionMatrix hat =
        apply_interdiction(q.evaders[0].matrix, s, q.graph);
    CHECK(hat.row(1).empty());
  }
  SUBCASE("idempotent in r and order independent") {
    Rng rng(7);
    const ProblemInstance q = random_dag_instance(rng, 10, 2);
    auto ids = random_edge_subset(rng, q.graph.edge_count(), 3);
    const auto s = InterdictionSet::from_edges(ids, q.graph.edge_count());
    const TransitionMatrix once =
        apply_interdiction(q.evaders[0].matrix, s, q.graph);
    // Same indicator applied from the same base: bitwise identical result.
    const TransitionMatrix again =
        apply_interdiction(q.evaders[0].matrix, s, q.graph);
    std::reverse(ids.begin(), ids.end());
    const auto rs = InterdictionSet::from_edges(ids, q.graph.edge_count());
    const TransitionMatrix reordered =
        apply_interdiction(q.evaders[0].matrix, rs, q.graph);
    REQUIRE(once.entry_count() == again.entry_count());
    REQUIRE(once.entry_count() == reordered.entry_count());
    for (std::size_t i = 0; i < once.entry_count(); ++i) {
      CHECK(once.entries()[i].prob == again.entries()[i].prob);
      CHECK(once.entries()[i].prob == reordered.entries()[i].prob);
    }
  }
  SUBCASE("edge absent from graph") {
    InterdictionSet s(5);
    s.add(4);
    CHECK_THROWS_AS(apply_interdiction(m, s, p.graph), DataError);
  }
}

TEST_CASE("expected_visits on the chain") {
  const ProblemInstance p = chain_instance(0.5);
  const std::vector<double> a{1.0, 0.0, 0.0};
  SUBCASE("deterministic path visits every node once") {
    const VisitVector pi = expected_visits(a, p.evaders[0].matrix);
    CHECK(pi[0] == doctest::Approx(1.0));
    CHECK(pi[1] == doctest::Approx(1.0));
    CHECK(pi[2] == doctest::Approx(1.0));
  }
  SUBCASE("halved first transition halves everything downstream") {
    const auto s = InterdictionSet::from_edges(std::vector<EdgeId>{0}, 2);
    const TransitionMatrix hat =
        apply_interdiction(p.evaders[0].matrix, s, p.graph);
    const VisitVector pi = expected_visits(a, hat);
    CHECK(pi[0] == doctest::Approx(1.0));
    CHECK(pi[1] == doctest::Approx(0.5));
    CHECK(pi[2] == doctest::Approx(0.5));
  }
}

TEST_CASE("expected_visits on the diamond matches the Neumann oracle") {
  const ProblemInstance p = diamond_instance(0.5, 0.0, 1);
  const std::vector<double> a{1.0, 0.0, 0.0, 0.0};
  const VisitVector pi = expected_visits(a, p.evaders[0].matrix);
  const std::vector<double> oracle = neumann_visits(a, p.evaders[0].matrix, 8);
  for (NodeId i = 0; i < 4; ++i) {
    CHECK(pi[i] == doctest::Approx(oracle[i]).epsilon(1e-12));
  }
  CHECK(pi[1] == doctest::Approx(0.5));
  CHECK(pi[3] == doctest::Approx(1.0));
}

TEST_CASE("expected_visits handles cyclic absorbing chains") {
  // s <-> v with escape to t: pi has revisits, needs the LU path.
  Graph g(3, {Edge{0, 0, 1, 1.0, 0.0}, Edge{1, 1, 0, 1.0, 0.0},
              Edge{2, 1, 2, 1.0, 0.0}});
  const std::vector<double> probs{1.0, 0.5, 0.5};
  const TransitionMatrix m(g, probs);
  const std::vector<double> a{1.0, 0.0, 0.0};
  const VisitVector pi = expected_visits(a, m);
  // Geometric series: pi_s = 1 / (1 - 0.5) = 2, pi_v = 2, pi_t = 1.
  CHECK(pi[0] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(pi[1] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(pi[2] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("expected_visits refuses a non-absorbing chain") {
  // Pure 2-cycle, target unreachable and rows nonzero: singular system.
  Graph g(3, {Edge{0, 0, 1, 1.0, 0.0}, Edge{1, 1, 0, 1.0, 0.0}});
  const std::vector<double> probs{1.0, 1.0};
  const TransitionMatrix m(g, probs);
  const std::vector<double> a{1.0, 0.0, 0.0};
  CHECK_THROWS_AS(expected_visits(a, m), NumericalError);
}

TEST_CASE("evader_objective on the chain") {
  const ProblemInstance p = chain_instance(0.5);
  const EdgeId m = p.graph.edge_count();
  CHECK(evader_objective(p.evaders[0], InterdictionSet(m), p.graph) ==
        doctest::Approx(0.0));
  CHECK(evader_objective(p.evaders[0],
                         InterdictionSet::from_edges(std::vector<EdgeId>{0}, m),
                         p.graph) == doctest::Approx(0.5));
  CHECK(evader_objective(
            p.evaders[0],
            InterdictionSet::from_edges(std::vector<EdgeId>{0, 1}, m),
            p.graph) == doctest::Approx(0.75));
}

TEST_CASE("objective combines evaders by weight") {
  SUBCASE("two identical evaders equal the single-evader value") {
    ProblemInstance p = chain_instance(0.5);
    EvaderSpec copy = p.evaders[0];
    p.evaders[0].weight = 0.5;
    copy.weight = 0.5;
    p.evaders.push_back(std::move(copy));
    p.validate();
    const auto s =
        InterdictionSet::from_edges(std::vector<EdgeId>{0}, p.graph.edge_count());
    CHECK(objective(p, s) == doctest::Approx(0.5));
  }
  SUBCASE("unreachable mass plus a full cut reaches J = 1") {
    // Evader 1 starts on an isolated node (Z-mass 1, w = 0.3); evader 2 on
    // the chain with both edges fully interdicted (w = 0.7).
    Graph g(4, {Edge{0, 0, 1, 1.0, 1.0}, Edge{1, 1, 2, 1.0, 1.0}});
    EvaderSpec stranded;
    stranded.weight = 0.3;
    stranded.source = {{3, 1.0}};
    stranded.target = 2;
    stranded.matrix = TransitionMatrix(g, std::vector<double>{0.0, 0.0});
    EvaderSpec runner;
    runner.weight = 0.7;
    runner.source = {{0, 1.0}};
    runner.target = 2;
    runner.matrix = TransitionMatrix(g, std::vector<double>{1.0, 1.0});
    ProblemInstance p{std::move(g), {stranded, runner}, 2, 1e-9};
    p.validate();
    CHECK(unreachable_mass(p.evaders[0]) == doctest::Approx(1.0));
    const auto s =
        InterdictionSet::from_edges(std::vector<EdgeId>{0, 1}, 2);
    CHECK(objective(p, s) == doctest::Approx(1.0));
  }
  SUBCASE("cut that only blocks one evader scores that weight") {
    // Both evaders start at s on the diamond; evader 2's target is node a,
    // so cutting both arms (d = 1) stops only evader 1.
    Graph g(4, {Edge{0, 0, 1, 1.0, 1.0}, Edge{1, 0, 2, 1.0, 1.0},
                Edge{2, 1, 3, 1.0, 1.0}, Edge{3, 2, 3, 1.0, 1.0}});
    EvaderSpec to_t;
    to_t.weight = 0.6;
    to_t.source = {{0, 1.0}};
    to_t.target = 3;
    to_t.matrix = TransitionMatrix(g, std::vector<double>{0.5, 0.5, 1.0, 1.0});
    EvaderSpec to_a;
    to_a.weight = 0.4;
    to_a.source = {{0, 1.0}};
    to_a.target = 1;
    to_a.matrix = TransitionMatrix(g, std::vector<double>{1.0, 0.0, 0.0, 0.0});
    ProblemInstance p{std::move(g), {to_t, to_a}, 2, 1e-9};
    p.validate();
    const auto s = InterdictionSet::from_edges(std::vector<EdgeId>{2, 3}, 4);
    CHECK(objective(p, s) == doctest::Approx(0.6).epsilon(1e-12));
  }
}

TEST_CASE("unreachable_mass") {
  const ProblemInstance p = chain_instance();
  CHECK(unreachable_mass(p.evaders[0]) == doctest::Approx(0.0));

  Graph g(4, {Edge{0, 0, 1, 1.0, 0.5}, Edge{1, 1, 2, 1.0, 0.5}});
  EvaderSpec ev;
  ev.weight = 1.0;
  ev.source = {{0, 0.75}, {3, 0.25}};
  ev.target = 2;
  ev.matrix = TransitionMatrix(g, std::vector<double>{1.0, 1.0});
  CHECK(unreachable_mass(ev) == doctest::Approx(0.25));

  // Uniform sources over 4 nodes; node 4 has no route to the target.
  Graph g3(5, {Edge{0, 0, 1, 1.0, 0.5}, Edge{1, 1, 2, 1.0, 0.5},
               Edge{2, 3, 2, 1.0, 0.5}});
  EvaderSpec ev2;
  ev2.weight = 1.0;
  ev2.source = {{0, 0.25}, {1, 0.25}, {3, 0.25}, {4, 0.25}};
  ev2.target = 2;
  ev2.matrix = TransitionMatrix(g3, std::vector<double>{1.0, 1.0, 1.0});
  CHECK(unreachable_mass(ev2) == doctest::Approx(0.25));
}

TEST_CASE("full cut at d = 1 captures the evader with certainty") {
  const ProblemInstance p = diamond_instance(0.8, 1.0, 2);
  // Both {0,1} (source side) and {2,3} (target side) are s-t cuts.
  for (const std::vector<EdgeId> cut : {std::vector<EdgeId>{0, 1},
                                        std::vector<EdgeId>{2, 3}}) {
    const auto s = InterdictionSet::from_edges(cut, 4);
    CHECK(evader_objective(p.evaders[0], s, p.graph) ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("objective bounds and monotonicity on random instances") {
  Rng rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const ProblemInstance p = trial % 3 == 2
                                  ? random_cyclic_instance(rng, 12, 2)
                                  : random_dag_instance(rng, 14, 2);
    const EdgeId m = p.graph.edge_count();
    const auto s2_ids = random_edge_subset(
        rng, m, static_cast<std::size_t>(rng.uniform_int(1, std::min(m, 6))));
    std::vector<EdgeId> s1_ids(
        s2_ids.begin(),
        s2_ids.begin() + rng.uniform_int(0, static_cast<std::int64_t>(
                                                s2_ids.size())));
    const double j1 = objective(p, InterdictionSet::from_edges(s1_ids, m));
    const double j2 = objective(p, InterdictionSet::from_edges(s2_ids, m));
    CHECK(j1 >= -1e-9);
    CHECK(j2 <= 1.0 + 1e-9);
    CHECK(j1 <= j2 + 1e-9);  // S1 subset of S2
  }
}

TEST_CASE("visit vectors are nonnegative") {
  Rng rng(606);
  for (int trial = 0; trial < 15; ++trial) {
    const ProblemInstance p = trial % 3 == 0
                                  ? random_cyclic_instance(rng, 12, 1)
                                  : random_dag_instance(rng, 12, 1);
    for (const EvaderSpec& ev : p.evaders) {
      const auto a = ev.dense_source(p.graph.node_count());
      for (double v : expected_visits(a, ev.matrix)) CHECK(v >= -1e-12);
    }
  }
}

TEST_CASE("empty-set objective equals the weighted unreachable mass") {
  Rng rng(555);
  for (int trial = 0; trial < 20; ++trial) {
    // Unit-row chains from the assembler: J(empty) is exactly the Z-mass.
    const ProblemInstance p = random_dag_instance(rng, 12, 1, 2);
    double z = 0.0;
    for (const EvaderSpec& ev : p.evaders) {
      z += ev.weight * unreachable_mass(ev);
    }
    const double j =
        objective(p, InterdictionSet(p.graph.edge_count()));
    CHECK(j == doctest::Approx(z).epsilon(1e-9));
  }
}
