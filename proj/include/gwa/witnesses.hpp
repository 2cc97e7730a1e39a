#pragma once

#include <string>
#include <vector>

#include "gwa/automaton.hpp"
#include "gwa/graph.hpp"

namespace gwa {

// Directions a,-a,b,-b; labels c0 (initial), c, cl, cr, cacc. Chain interiors
// are c; the ends pin down where a walk can stop.
Signature build_signature_tilde();

// The witness signature joined with the diode signature for k directions,
// identifying b/-b with b1/-b1.
Signature build_merged_signature(int k);

// The n-state seeker: walks right counting to n-1 states, crosses the first
// bridge, then runs right until it sees cacc. Never moves in direction -a.
Automaton build_witness_automaton(int n, SignaturePtr sig);

struct WitnessParams {
  int n = 2;
  int k = 4;
  long M = 12;
};

// Two-chain graphs with bridges at x = 0 and x = M. accept/reject differ in a
// single label at the upper right end; joint merges the two upper ends into
// one c-labelled node, closing the upper chain into a cycle; gx[x] prolongs
// that cycle by x extra nodes.
struct WitnessBundle {
  Graph accept_graph;
  Graph reject_graph;
  Graph joint_graph;
  std::vector<Graph> gx;  // x = 0..gx_cap

  std::string initial_name, lower_right_name;  // lower chain ends
  std::string upper_left_name, upper_right_name;
  std::string joint_name;
};

// gx_cap < 0 means the default cap 4nk.
WitnessBundle build_witness_graphs(const WitnessParams& p, SignaturePtr sig, int gx_cap = 0);

struct ExperimentReport {
  std::string name;
  bool applicable = false;
  std::string note;
  int measured = 0;  // distinct states entered via -a on the analyzed segment
  int bound = 0;
  bool bound_met = false;
  bool advisory_met = false;  // M divisible by every period <= state count
  std::vector<std::string> states;
  bool period_found = false;
  long period = 0;
  long drift = 0;  // (#a - #-a) per period on the analyzed segment
  int union_measured = -1;  // escape experiment on returning+halting automata
  int union_bound = 0;
  bool union_bound_met = false;

  std::string format() const;
};

// Runs a on the accept witness and counts the distinct states entered via -a
// after the last visit to an upper-chain end (the return walk).
ExperimentReport measure_return_states(const Automaton& a, const WitnessParams& p);

// Runs a on the joint witness and counts the distinct states entered via -a
// between the last visit to the joint node and the arrival at a lower-chain
// end (the escape walk). For returning automata also reports the union with
// the return-walk states against the doubled bound.
ExperimentReport measure_escape_states(const Automaton& a, const WitnessParams& p);

}  // namespace gwa
