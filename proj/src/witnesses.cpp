#include "gwa/witnesses.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "gwa/checkers.hpp"
#include "gwa/gadgets.hpp"
#include "gwa/simulate.hpp"

namespace gwa {

Signature build_signature_tilde() {
  return make_signature(
      "stilde", {{"a", "-a"}, {"b", "-b"}},
      {{"c0", true, {"a"}},
       {"c", false, {"a", "-a", "b", "-b"}},
       {"cl", false, {"a"}},
       {"cr", false, {"-a"}},
       {"cacc", false, {"-a"}}});
}

Signature build_merged_signature(int k) {
  return merge_signatures(build_signature_tilde(), build_signature_sk(k),
                          {{"b", "b1"}, {"-b", "-b1"}});
}

Automaton build_witness_automaton(int n, SignaturePtr sig) {
  if (n < 2) throw std::invalid_argument("witness automaton needs n >= 2");
  AutomatonBuilder b(sig);
  auto q = [](int i) { return "q" + std::to_string(i); };
  for (int i = 0; i < n; ++i) b.add_state(q(i), i == 0);
  b.add_trans(q(0), "c0", q(0), "a");
  for (int i = 0; i <= n - 3; ++i) b.add_trans(q(i), "c", q(i + 1), "a");
  b.add_trans(q(n - 2), "c", q(n - 1), "b");
  b.add_trans(q(n - 1), "c", q(n - 1), "a");
  b.add_accept(q(n - 1), "cacc");
  return b.build();
}

namespace {

std::string lo(long x) { return "lo:" + std::to_string(x); }
std::string up(long x) { return "up:" + std::to_string(x); }

// Chains run left to right in direction a; every interior node has a b-loop
// except at the bridge columns x = 0 and x = M.
void emit_chain(GraphBuilder& b, const WitnessParams& p, bool lower,
                const std::string& left_label, const std::string& right_label) {
  const long lo_x = lower ? -(p.n - 1) : -8L * p.n * p.k;
  const long hi_x = p.M + 8L * p.n * p.k;
  auto name = [&](long x) { return lower ? lo(x) : up(x); };
  for (long x = lo_x; x <= hi_x; ++x) {
    if (x == lo_x) {
      b.add_node(name(x), left_label, left_label == "c0");
    } else if (x == hi_x) {
      b.add_node(name(x), right_label);
    } else {
      b.add_node(name(x), "c");
    }
    if (x > lo_x) b.add_edge(name(x - 1), "a", name(x));
    if (x > lo_x && x < hi_x && x != 0 && x != p.M) b.add_edge(name(x), "b", name(x));
  }
}

Graph build_two_chain(const WitnessParams& p, SignaturePtr sig, const std::string& acc_label) {
  GraphBuilder b(sig);
  emit_chain(b, p, true, "c0", "cr");
  emit_chain(b, p, false, "cl", acc_label);
  // Bridges: parallel b and -b edges between the chains.
  b.add_edge(up(0), "b", lo(0));
  b.add_edge(up(0), "-b", lo(0));
  b.add_edge(up(p.M), "b", lo(p.M));
  b.add_edge(up(p.M), "-b", lo(p.M));
  return b.build();
}

Graph build_joint(const WitnessParams& p, SignaturePtr sig, int extra) {
  GraphBuilder b(sig);
  emit_chain(b, p, true, "c0", "cr");
  const long left = -8L * p.n * p.k;
  const long right = p.M + 8L * p.n * p.k;
  // Upper cycle: interior nodes plus the joint node closing it.
  for (long x = left + 1; x <= right - 1; ++x) {
    b.add_node(up(x), "c");
    if (x > left + 1) b.add_edge(up(x - 1), "a", up(x));
    if (x != 0 && x != p.M) b.add_edge(up(x), "b", up(x));
  }
  b.add_node("jo", "c");
  b.add_edge("jo", "b", "jo");
  b.add_edge(up(right - 1), "a", "jo");
  if (extra == 0) {
    b.add_edge("jo", "a", up(left + 1));
  } else {
    for (int i = 1; i <= extra; ++i) {
      b.add_node("ex:" + std::to_string(i), "c");
      b.add_edge("ex:" + std::to_string(i), "b", "ex:" + std::to_string(i));
      b.add_edge(i == 1 ? "jo" : "ex:" + std::to_string(i - 1), "a", "ex:" + std::to_string(i));
    }
    b.add_edge("ex:" + std::to_string(extra), "a", up(left + 1));
  }
  b.add_edge(up(0), "b", lo(0));
  b.add_edge(up(0), "-b", lo(0));
  b.add_edge(up(p.M), "b", lo(p.M));
  b.add_edge(up(p.M), "-b", lo(p.M));
  return b.build();
}

}  // namespace

WitnessBundle build_witness_graphs(const WitnessParams& p, SignaturePtr sig, int gx_cap) {
  if (p.n < 2 || p.k < 4 || p.M < 1) throw std::invalid_argument("bad witness parameters");
  if (gx_cap < 0) gx_cap = 4 * p.n * p.k;
  WitnessBundle w;
  w.accept_graph = build_two_chain(p, sig, "cacc");
  w.reject_graph = build_two_chain(p, sig, "cr");
  w.joint_graph = build_joint(p, sig, 0);
  for (int x = 0; x <= gx_cap; ++x) w.gx.push_back(build_joint(p, sig, x));
  w.initial_name = lo(-(p.n - 1));
  w.lower_right_name = lo(p.M + 8L * p.n * p.k);
  w.upper_left_name = up(-8L * p.n * p.k);
  w.upper_right_name = up(p.M + 8L * p.n * p.k);
  w.joint_name = "jo";
  return w;
}

std::string ExperimentReport::format() const {
  std::string out = name + ": ";
  if (!applicable) return out + "inapplicable (" + note + ")";
  out += std::to_string(measured) + " distinct states entered via -a (bound " +
         std::to_string(bound) + ", " + (bound_met ? "met" : "NOT met") + "); divisibility advisory " +
         (advisory_met ? "holds" : "does not hold");
  if (period_found) {
    out += "; period " + std::to_string(period) + ", drift " + std::to_string(drift);
  }
  if (union_measured >= 0) {
    out += "; return+escape union " + std::to_string(union_measured) + " (bound " +
           std::to_string(union_bound) + ", " + (union_bound_met ? "met" : "NOT met") + ")";
  }
  if (!note.empty()) out += " [" + note + "]";
  return out;
}

namespace {

Graph over_signature(const Graph& g, const SignaturePtr& sig) {
  if (*g.sig == *sig) return g;
  return rebase_graph(g, sig);
}

// Distinct states entered by a -a move within [from, to) of the trace.
std::set<StateId> minus_a_states(const Trace& t, DirId minus_a, size_t from, size_t to) {
  std::set<StateId> out;
  for (size_t i = from; i + 1 < t.configs.size() && i < to; ++i) {
    if (t.moves[i] == minus_a) out.insert(t.configs[i + 1].state);
  }
  return out;
}

// Longest periodic stretch of the (state, move) sequence on [from, to);
// instrumentation for the period/drift the walk settles into.
void analyze_period(const Trace& t, size_t from, size_t to, int max_period, DirId dir_a,
                    DirId dir_ma, ExperimentReport& r) {
  if (to > t.configs.size()) to = t.configs.size();
  if (from >= to) return;
  size_t len = to - from;
  for (int p = 1; p <= max_period && static_cast<size_t>(3 * p) <= len; ++p) {
    size_t best = 0, cur = 0, best_end = 0;
    for (size_t j = from; j + static_cast<size_t>(p) < to; ++j) {
      bool match = t.configs[j].state == t.configs[j + static_cast<size_t>(p)].state &&
                   t.moves[j] == t.moves[j + static_cast<size_t>(p)];
      cur = match ? cur + 1 : 0;
      if (cur > best) {
        best = cur;
        best_end = j;
      }
    }
    if (best >= static_cast<size_t>(3 * p)) {
      r.period_found = true;
      r.period = p;
      r.drift = 0;
      for (size_t j = best_end; j > best_end - static_cast<size_t>(p); --j) {
        if (t.moves[j] == dir_a) ++r.drift;
        if (t.moves[j] == dir_ma) --r.drift;
      }
      return;
    }
  }
}

size_t last_visit(const Trace& t, const std::vector<NodeId>& nodes, bool* found) {
  size_t idx = 0;
  *found = false;
  for (size_t i = 0; i < t.configs.size(); ++i) {
    for (NodeId v : nodes) {
      if (t.configs[i].node == v) {
        idx = i;
        *found = true;
      }
    }
  }
  return idx;
}

}  // namespace

ExperimentReport measure_return_states(const Automaton& a, const WitnessParams& p) {
  ExperimentReport r;
  r.name = "return-states(n=" + std::to_string(p.n) + ",k=" + std::to_string(p.k) +
           ",M=" + std::to_string(p.M) + ")";
  r.bound = p.n - 1;
  r.union_measured = -1;
  r.advisory_met = diode_period_advisory(p.M, a.state_count());

  auto stilde = std::make_shared<Signature>(build_signature_tilde());
  WitnessBundle w = build_witness_graphs(p, stilde, 0);
  Graph g = over_signature(w.accept_graph, a.sig);

  auto rr = run(a, g);
  if (rr.outcome.kind != OutcomeKind::Accept) {
    r.note = "automaton does not accept the accept witness";
    return r;
  }
  if (!rr.trace.full) {
    r.note = "trace capped; raise the trace limit";
    return r;
  }
  bool found = false;
  size_t t0 = last_visit(rr.trace, {g.node(w.upper_left_name), g.node(w.upper_right_name)}, &found);
  if (!found) {
    r.note = "never visits an upper-chain end";
    return r;
  }
  r.applicable = true;
  DirId minus_a = a.sig->dir("-a");
  auto states = minus_a_states(rr.trace, minus_a, t0, rr.trace.configs.size());
  r.measured = static_cast<int>(states.size());
  for (StateId q : states) r.states.push_back(a.states.name(q));
  r.bound_met = r.measured >= r.bound;
  analyze_period(rr.trace, t0, rr.trace.configs.size(), a.state_count(), a.sig->dir("a"), minus_a,
                 r);
  return r;
}

ExperimentReport measure_escape_states(const Automaton& a, const WitnessParams& p) {
  ExperimentReport r;
  r.name = "escape-states(n=" + std::to_string(p.n) + ",k=" + std::to_string(p.k) +
           ",M=" + std::to_string(p.M) + ")";
  r.bound = p.n - 1;
  r.advisory_met = diode_period_advisory(p.M, a.state_count());

  auto stilde = std::make_shared<Signature>(build_signature_tilde());
  WitnessBundle w = build_witness_graphs(p, stilde, 0);
  Graph g = over_signature(w.joint_graph, a.sig);

  auto rr = run(a, g);
  if (rr.outcome.kind == OutcomeKind::Loop) {
    r.note = "loops on the joint witness: not halting";
    return r;
  }
  if (!rr.trace.full) {
    r.note = "trace capped; raise the trace limit";
    return r;
  }
  bool found = false;
  size_t t0 = last_visit(rr.trace, {g.node(w.joint_name)}, &found);
  if (!found) {
    r.note = "never visits the joint node";
    return r;
  }
  NodeId lo_left = g.node(w.initial_name);
  NodeId lo_right = g.node(w.lower_right_name);
  size_t t1 = rr.trace.configs.size();
  for (size_t i = t0; i < rr.trace.configs.size(); ++i) {
    if (rr.trace.configs[i].node == lo_left || rr.trace.configs[i].node == lo_right) {
      t1 = i;
      break;
    }
  }
  if (t1 == rr.trace.configs.size()) {
    r.note = "never escapes to a lower-chain end";
    return r;
  }
  r.applicable = true;
  DirId minus_a = a.sig->dir("-a");
  auto states = minus_a_states(rr.trace, minus_a, t0, t1);
  r.measured = static_cast<int>(states.size());
  for (StateId q : states) r.states.push_back(a.states.name(q));
  r.bound_met = r.measured >= r.bound;
  analyze_period(rr.trace, t0, t1, a.state_count(), a.sig->dir("a"), minus_a, r);

  if (check_returning(a).pass) {
    ExperimentReport ret = measure_return_states(a, p);
    if (ret.applicable) {
      std::set<std::string> joint(r.states.begin(), r.states.end());
      joint.insert(ret.states.begin(), ret.states.end());
      r.union_measured = static_cast<int>(joint.size());
      r.union_bound = 2 * (p.n - 1);
      r.union_bound_met = r.union_measured >= r.union_bound;
    } else {
      r.note = "return segment inapplicable: " + ret.note;
    }
  }
  return r;
}

}  // namespace gwa
