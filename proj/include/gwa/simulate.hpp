#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gwa/automaton.hpp"
#include "gwa/graph.hpp"

namespace gwa {

struct Configuration {
  StateId state;
  NodeId node;
  bool operator==(const Configuration&) const = default;
};

enum class OutcomeKind { Accept, RejectUndefined, Loop, Exit };

struct RunOutcome {
  OutcomeKind kind;
  Configuration at;        // accept/reject site; first-repeated for Loop; (exit state, port node) for Exit
  int64_t steps = 0;       // moves made
  int64_t cycle_length = 0;  // Loop only
  DirId exit_dir = kNone;    // Exit only

  bool accepted() const { return kind == OutcomeKind::Accept; }
};

// Step-by-step record. The full configuration sequence is kept only while it
// fits under `trace_cap`; the per-direction statistics are always complete.
struct Trace {
  bool full = true;
  std::vector<Configuration> configs;  // configs[i] before move i
  std::vector<DirId> moves;            // move taken from configs[i]; kNone terminal
  std::vector<std::vector<char>> entered_via;  // [dir][state]

  std::vector<StateId> entered_states(DirId d) const;
};

struct RunResult {
  RunOutcome outcome;
  Trace trace;
};

struct RunLimits {
  size_t trace_cap = 4'000'000;  // configurations kept
  bool record_trace = true;
};

// Deterministic execution from the initial configuration. Throws on signature
// mismatch or if the graph has no initial node.
RunResult run(const Automaton& a, const Graph& g, const RunLimits& limits = {});

// Same contract from an arbitrary start configuration.
RunResult run_from(const Automaton& a, const Graph& g, Configuration start,
                   const RunLimits& limits = {});

// Open-boundary execution: the automaton is placed on the port's node as if it
// had just moved through the port. A move through any port yields Exit.
RunResult run_open(const Automaton& a, const OpenGraph& og, Port entry, StateId state,
                   const RunLimits& limits = {});

// Open-boundary execution from a free start inside the fragment (no entering
// move is recorded).
RunResult run_open_from(const Automaton& a, const OpenGraph& og, Configuration start,
                        const RunLimits& limits = {});

std::vector<StateId> trace_direction_stats(const Trace& t, DirId d);

std::string describe(const RunOutcome& o, const Automaton& a, const Graph& g);

}  // namespace gwa
