#pragma once

#include <string>
#include <vector>

#include "gwa/automaton.hpp"
#include "gwa/graph.hpp"

namespace gwa {

// k: direction count of the diode signature; M: cycle length unit. The
// construction needs M to exceed and divide every period an adversary
// automaton can have; callers check that advisory against a state count.
struct DiodeParams {
  int k = 4;
  long M = 12;

  int r() const { return (k - 2) / 2; }
};

// True iff M is divisible by every period length s <= state_bound.
bool diode_period_advisory(long M, int state_bound);

// The diode signature: directions a, -a, b1, -b1, ..., br, -br; labels
// m1..mr, m-1..m-r (entry points), m (plain), me (exit-cycle marker),
// ma (exit). No initial labels: diode graphs are subgraphs. Throws if k < 4.
Signature build_signature_sk(int k);

// Direction/label ids of the diode vocabulary resolved in a signature that
// embeds it (the pure S_k, or a merged signature where b1/-b1 may be named
// b/-b).
struct DiodeContext {
  SignaturePtr sig;
  DiodeParams params;
  DirId dir_a = kNone, dir_ma = kNone;
  std::vector<std::pair<DirId, DirId>> dir_b;    // per i=1..r: (b_i, -b_i)
  LabelId lab_m = kNone, lab_me = kNone, lab_ma = kNone;
  std::vector<std::pair<LabelId, LabelId>> lab_mi;  // per i=1..r: (m_i, m_-i)

  static DiodeContext resolve(SignaturePtr sig, DiodeParams params);
};

// One diode stage: an 8M-cycle in a/-a with b_i-trap wiring, an M-cycle
// decoy, an entry point u_in and an exit u_out. i in {-r..-1, 1..r}; negative
// indices swap b_i with -b_i in the trap system. 9M+2 nodes, two ports.
OpenGraph build_element(int i, const DiodeContext& ctx, const std::string& prefix = "");

// Chain of elements E_1, E_-1, ..., E_r, E_-r joined out -a- in; entrance
// port on the -a side of E_1, exit port on the a side of E_-r.
OpenGraph build_diode(const DiodeContext& ctx, const std::string& prefix = "");

// Replaces every (a,-a)-edge of g with a fresh diode copy. g's labels must be
// disjoint from the diode labels; the result lives over ctx's signature.
Graph substitute_diodes(const Graph& g, const DiodeContext& ctx);

// Adds the transitions that carry any state through a diode forward:
// (q, m_i) -> b_i, (q, m) -> a, (q, me) -> b1, (q, ma) -> a. The input must
// never move in direction -a (throws otherwise). Same state set; accepts G
// iff the output accepts the diode-substituted G.
Automaton extend_automaton_over_diodes(const Automaton& a, const DiodeContext& ctx);

// The probe fragment for the inverse substitution: one f-labelled node whose
// a/-a edges are routed through diodes and whose other allowed directions are
// boundary ports. Throws if f is a diode label.
struct TfGraph {
  OpenGraph open;
  NodeId center = kNone;
};
TfGraph build_tf(LabelId f, const DiodeContext& ctx);

// Collapses b's behavior across diodes into single transitions: for each
// (state, label) the outcome of running b on T_f from the center defines the
// output's transition (Exit), acceptance (Accept inside), or nothing
// (Loop / undefined). The output is over `base` with b's state set and
// accepts G iff b accepts the diode-substituted G.
Automaton inverse_substitution(const Automaton& b, SignaturePtr base, const DiodeContext& ctx);

}  // namespace gwa
