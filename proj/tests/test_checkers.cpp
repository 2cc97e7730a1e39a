#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gwa/checkers.hpp"
#include "gwa/formats.hpp"
#include "gwa/gadgets.hpp"
#include "gwa/simulate.hpp"
#include "gwa/transform.hpp"
#include "gwa/witnesses.hpp"
#include "helpers.hpp"

using namespace gwa;

TEST_CASE("check_returning") {
  CHECK(check_returning(to_returning(test::witness(2)).output).pass);

  auto rep = check_returning(test::witness(2));
  CHECK(!rep.pass);
  CHECK(rep.description.find("q1") != std::string::npos);
  CHECK(rep.description.find("cacc") != std::string::npos);

  AutomatonBuilder b(test::stilde());
  b.add_state("q", true);
  b.add_trans("q", "c0", "q", "a");
  CHECK(check_returning(b.build()).pass);  // empty acceptance set: vacuous
}

TEST_CASE("check_reversible") {
  auto sig = test::stilde();
  Automaton dd = test::dirdet_clean(test::witness(2));
  CHECK(check_reversible(to_reversible(dd, *direction_map_of(dd)).output).pass);
  CHECK(!check_reversible(to_returning(test::witness(2)).output).pass);

  AutomatonBuilder b(sig);
  b.add_state("q", true);
  CHECK(check_reversible(b.build()).pass);  // one state, nothing defined
}

TEST_CASE("check_halting_on") {
  auto sig = test::stilde();
  Corpus c = enumerate_graphs(sig, 4);
  Automaton dd = test::dirdet_clean(test::witness(2));
  auto dm = direction_map_of(dd);

  CHECK(check_halting_on(to_halting(dd, *dm).output, c).pass);
  CHECK(check_halting_on(to_reversible(dd, *dm).output, c).pass);

  // A one-state automaton that spins on b-loops fails with a loop witness.
  AutomatonBuilder b(sig);
  b.add_state("q", true);
  b.add_trans("q", "c0", "q", "a");
  b.add_trans("q", "c", "q", "b");
  auto rep = check_halting_on(b.build(), c);
  CHECK(!rep.pass);
  CHECK(rep.witness_graph.has_value());
  CHECK(rep.description.find("loop") != std::string::npos);
}

TEST_CASE("check_equivalent") {
  auto sig = test::stilde();
  Corpus c = enumerate_graphs(sig, 4);
  Automaton a2 = test::witness(2);
  Automaton a3 = test::witness(3);

  SUBCASE("transform outputs agree with their input") {
    CHECK(check_equivalent(a2, to_returning(a2).output, c).pass);
  }

  SUBCASE("reflexive and symmetric") {
    CHECK(check_equivalent(a2, a2, c).pass);
    auto r1 = check_equivalent(a2, a3, c);
    auto r2 = check_equivalent(a3, a2, c);
    CHECK(r1.pass == r2.pass);
  }

  SUBCASE("different witness automata disagree on witness graphs") {
    Corpus cw;
    cw.sig = sig;
    cw.provenance = "witness:n=3";
    WitnessBundle w = build_witness_graphs({3, 4, 12}, sig, 0);
    cw.graphs = {w.accept_graph, w.reject_graph};
    auto rep = check_equivalent(a2, a3, cw);
    CHECK(!rep.pass);
    CHECK(rep.witness_graph.has_value());
  }

  SUBCASE("signature mismatch is an error") {
    Automaton m = rebase_automaton(a2, test::merged(4));
    CHECK_THROWS_AS(check_equivalent(a2, m, c), std::invalid_argument);
  }
}

TEST_CASE("structural halting evidence implies corpus halting") {
  // If the reversibility check passes and the initial state is never a
  // transition target, a loop would have to pass through the initial
  // configuration twice, which that structure forbids.
  auto sig = test::stilde();
  Corpus c = enumerate_graphs(sig, 4);
  for (int n : {2, 3}) {
    Automaton dd = test::dirdet_clean(test::witness(n));
    Automaton rev = to_reversible(dd, *direction_map_of(dd)).output;
    REQUIRE(check_reversible(rev).pass);
    bool reenterable = false;
    for (StateId q = 0; q < rev.state_count(); ++q) {
      for (LabelId l = 0; l < sig->label_count(); ++l) {
        auto t = rev.trans(q, l);
        if (t && t->state == rev.initial) reenterable = true;
      }
    }
    REQUIRE(!reenterable);
    CHECK(check_halting_on(rev, c).pass);
  }
}

TEST_CASE("serial and parallel corpus runs agree") {
  auto sig = test::stilde();
  Corpus c = enumerate_graphs(sig, 4);
  for (const Automaton& a : {test::witness(2), to_returning(test::witness(3)).output}) {
    CHECK(accepts_over(a, c, ExecMode::Serial) == accepts_over(a, c, ExecMode::Parallel));
  }
}

TEST_CASE("enumerate_graphs") {
  auto sig = test::stilde();

  SUBCASE("restricted to {c0, cr}, two nodes: exactly the one chain") {
    EnumOptions opts;
    opts.label_subset = {"c0", "cr"};
    Corpus c = enumerate_graphs(sig, 2, opts);
    REQUIRE(c.size() == 1);
    const Graph& g = c.graphs[0];
    CHECK(g.node_count() == 2);
    CHECK(sig->labels.name(g.label(g.initial)) == "c0");
    NodeId other = 1 - g.initial;
    CHECK(sig->labels.name(g.label(other)) == "cr");
    CHECK(g.target(g.initial, sig->dir("a")) == other);
  }

  SUBCASE("max_nodes = 0 yields an empty corpus") {
    CHECK(enumerate_graphs(sig, 0).size() == 0);
  }

  SUBCASE("every member validates; deterministic across calls") {
    Corpus c1 = enumerate_graphs(sig, 4);
    Corpus c2 = enumerate_graphs(sig, 4);
    REQUIRE(c1.size() == c2.size());
    for (size_t i = 0; i < c1.size(); ++i) {
      CHECK(validate_graph(c1.graphs[i], *sig).ok());
      CHECK(serialize(c1.graphs[i]) == serialize(c2.graphs[i]));
    }
  }

  SUBCASE("regression constants for the full corpus sizes") {
    // The 2- and 3-node counts are checkable by hand: chains c0-{cr,cacc} and
    // c0-c-{cr,cacc}. The 4-node count adds the b-loop/b-bridge variants of
    // the length-3 chain and was frozen on the first enumeration run.
    CHECK(enumerate_graphs(sig, 2).size() == 2);
    CHECK(enumerate_graphs(sig, 3).size() == 4);
    CHECK(enumerate_graphs(sig, 4).size() == 10);
  }

  SUBCASE("the cap guard throws") {
    EnumOptions opts;
    opts.cap = 3;
    CHECK_THROWS_AS(enumerate_graphs(sig, 4, opts), std::runtime_error);
  }
}

TEST_CASE("random_graphs is reproducible and valid") {
  auto sig = test::stilde();
  Corpus c1 = random_graphs(sig, 25, 40, 17);
  Corpus c2 = random_graphs(sig, 25, 40, 17);
  REQUIRE(c1.size() == 25);
  for (size_t i = 0; i < c1.size(); ++i) {
    CHECK(validate_graph(c1.graphs[i], *sig).ok());
    CHECK(serialize(c1.graphs[i]) == serialize(c2.graphs[i]));
  }
  // A different seed gives a different corpus.
  Corpus c3 = random_graphs(sig, 25, 40, 18);
  bool any_diff = false;
  for (size_t i = 0; i < c1.size(); ++i) {
    if (!(serialize(c1.graphs[i]) == serialize(c3.graphs[i]))) any_diff = true;
  }
  CHECK(any_diff);
}

TEST_CASE("random_graphs over the merged signature") {
  auto sig = test::merged(4);
  Corpus c = random_graphs(sig, 10, 25, 5);
  for (const auto& g : c.graphs) CHECK(validate_graph(g, *sig).ok());
}

TEST_CASE("backward_exit_states") {
  auto sig = test::merged(4);
  DiodeContext ctx = DiodeContext::resolve(sig, {4, 12});
  OpenGraph diode = build_diode(ctx);

  SUBCASE("the forward-extended witness automaton never comes back out") {
    Automaton a = extend_automaton_over_diodes(test::witness(2), ctx);
    auto rep = backward_exit_states(a, diode);
    CHECK(rep.states.empty());
    CHECK(rep.h == 0);
  }

  SUBCASE("an automaton with no diode rules never comes back out") {
    AutomatonBuilder b(sig);
    b.add_state("q", true);
    auto rep = backward_exit_states(b.build(), diode);
    CHECK(rep.states.empty());
  }

  SUBCASE("the bound column is 2h(k-3)") {
    Automaton a = extend_automaton_over_diodes(test::witness(2), ctx);
    auto rep = backward_exit_states(a, diode);
    CHECK(rep.state_bound == 2L * rep.h * (sig->direction_count() - 3));
  }

  SUBCASE("the returning transform of the extension does cross backwards") {
    // Its homeward walk must carry it through diodes against the grain, so
    // probing every entry state at the exit port finds at least one state
    // that comes out of the entrance. The magnitude is measured, not pinned.
    Automaton ext = extend_automaton_over_diodes(test::witness(2), ctx);
    Automaton ret = to_returning(ext).output;
    auto rep = backward_exit_states(ret, diode);
    CHECK(rep.h >= 1);
  }
}
