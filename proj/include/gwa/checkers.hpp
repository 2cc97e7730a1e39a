#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gwa/automaton.hpp"
#include "gwa/graph.hpp"

namespace gwa {

// A reproducible set of test graphs over one signature.
struct Corpus {
  SignaturePtr sig;
  std::vector<Graph> graphs;
  std::string provenance;  // e.g. "exhaustive:5", "random:100:40:17"

  size_t size() const { return graphs.size(); }
};

struct CheckReport {
  std::string property;
  bool pass = true;
  std::string description;              // reason / counterexample configuration
  std::optional<Graph> witness_graph;   // replayable counterexample, when failing on a graph

  std::string line() const { return (pass ? "pass: " : "FAIL: ") + property +
                                    (description.empty() ? "" : " — " + description); }
};

// Corpus runs are independent per graph; the parallel path fans out with
// OpenMP and must produce byte-identical results to the serial reference.
enum class ExecMode { Serial, Parallel };

// Acceptance verdict per corpus graph (the corpus-check kernel).
std::vector<char> accepts_over(const Automaton& a, const Corpus& c,
                               ExecMode mode = ExecMode::Parallel);

// Acceptance only at initial labels.
CheckReport check_returning(const Automaton& a);

// Direction-determinate, backward-deterministic, returning, and at most one
// accepting state per initial label.
CheckReport check_reversible(const Automaton& a);

// No corpus graph loops. Evidence, not proof: halting quantifies over all
// graphs.
CheckReport check_halting_on(const Automaton& a, const Corpus& c,
                             ExecMode mode = ExecMode::Parallel);

// Accept/not-accept agree on every corpus graph.
CheckReport check_equivalent(const Automaton& a1, const Automaton& a2, const Corpus& c,
                             ExecMode mode = ExecMode::Parallel);

struct EnumOptions {
  size_t cap = 500000;                    // guard against combinatorial blow-up
  std::vector<std::string> label_subset;  // empty = all labels
};

// All valid connected graphs over s with at most max_nodes nodes, one graph
// per isomorphism class (canonical breadth-first renumbering from the initial
// node), in a deterministic order. Throws when the cap is exceeded.
Corpus enumerate_graphs(SignaturePtr s, int max_nodes, const EnumOptions& opts = {});

// Seeded sample of valid connected graphs; reproducible from the seed.
Corpus random_graphs(SignaturePtr s, int count, int max_nodes, uint64_t seed);

struct BackwardExitReport {
  std::vector<StateId> states;  // exit states through the entrance port
  int h = 0;
  long state_bound = 0;  // 2h(k-3)
};

// Probes every entry state at the diode's exit port and collects the states
// in which the automaton comes out of the entrance port (backward traversal).
BackwardExitReport backward_exit_states(const Automaton& b, const OpenGraph& diode);

}  // namespace gwa
