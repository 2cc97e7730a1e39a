#pragma once

#include <string>
#include <vector>

#include "gwa/automaton.hpp"

namespace gwa {

// Output automaton plus state-count accounting. Unreachable states are kept
// so that output_states matches the bound formula exactly; reachable_states
// reports the pruned count separately.
struct TransformReport {
  Automaton output;
  int input_states = 0;
  int output_states = 0;
  int reachable_states = 0;
  std::string bound_formula;
  long bound_value = 0;
  std::vector<std::string> provenance;  // per output state: construction layer

  std::string summary() const;
};

// States reachable from the initial state through transition targets,
// regardless of labels. 0 if there is no initial state.
int count_reachable_states(const Automaton& a);

// Deletes transitions and acceptances at non-initial pairs (q, a) whose entry
// direction is not supported by a (-d(q) not allowed). Behavior on every
// graph is unchanged. Throws if dm is inconsistent with a.
Automaton remove_inaccessible(const Automaton& a, const DirectionMap& dm);

bool is_inaccessible_free(const Automaton& a, const DirectionMap& dm);

// Product construction over Q x D: state (q, d) is entered only via d.
// Recognizes the same set of graphs; output has exactly n*k states.
TransformReport to_direction_determinate(const Automaton& a);

// Ids of the forward/backward states of the backtracker, per input state,
// and its direction map as defined by the construction: fwd[q] is entered via
// d(q), bwd[q] via -d(q). States the search never enters keep these intended
// directions too, which a recomputed map could not know.
struct BacktrackerLink {
  std::vector<StateId> fwd, bwd;
  DirectionMap dm;
};

// The backtracking automaton: a depth-first search of the predecessor tree of
// an accepting configuration, looking for the initial configuration. Input
// must be direction-determinate with an initial state and without
// inaccessible transitions. The output has 2n states, no initial state, is
// direction-determinate and backward-deterministic.
Automaton build_backtracker(const Automaton& a, const DirectionMap& dm,
                            BacktrackerLink* link = nullptr);

// Ids of the reversed states, per backtracker state, plus the fresh initial.
struct ReversedLink {
  std::vector<StateId> rev;
  StateId fresh = kNone;
};

// Runs a backward-deterministic automaton backwards: starts in a fresh
// initial state, walks the computation of b in reverse, and accepts where the
// source automaton accepted. 2n+1 states. Throws if b is not
// backward-deterministic.
Automaton reverse_reversible(const Automaton& b, const DirectionMap& dm_b,
                             const std::vector<std::pair<StateId, LabelId>>& accept_of_a,
                             const std::vector<std::pair<LabelId, StateId>>& delta_init_of_a,
                             StateId a_initial, const BacktrackerLink& link,
                             ReversedLink* rlink = nullptr);

// Returning automaton with 2nk+n states: simulates the input, and from an
// accepting configuration runs the backtracker home, cycling through the
// possible last directions.
TransformReport to_returning(const Automaton& a_hat);

// Halting automaton with 2n+1 states from a direction-determinate n-state
// input (backtracker reversed, with a fresh non-reenterable initial state).
TransformReport to_halting(const Automaton& a, const DirectionMap& dm);

// Reversible and halting automaton with 4n+1 states from a
// direction-determinate n-state input: the reversed backtracker finds the
// accepting configuration, then control transfers to the backtracker to
// return to the initial node.
TransformReport to_reversible(const Automaton& a, const DirectionMap& dm);

}  // namespace gwa
