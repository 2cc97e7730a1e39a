#include "gwa/simulate.hpp"

#include <stdexcept>

namespace gwa {

std::vector<StateId> Trace::entered_states(DirId d) const {
  std::vector<StateId> out;
  if (d < 0 || static_cast<size_t>(d) >= entered_via.size()) return out;
  const auto& row = entered_via[static_cast<size_t>(d)];
  for (size_t q = 0; q < row.size(); ++q) {
    if (row[q]) out.push_back(static_cast<StateId>(q));
  }
  return out;
}

std::vector<StateId> trace_direction_stats(const Trace& t, DirId d) {
  return t.entered_states(d);
}

namespace {

void require_compatible(const Automaton& a, const Graph& g) {
  if (!(*a.sig == *g.sig)) throw std::invalid_argument("signature mismatch");
}

// Core stepping loop. `og` is null for whole-graph runs. Loop detection uses
// an exact visited map over configurations, so the outcome is decided within
// |Q| * |V| + 1 steps.
RunResult drive(const Automaton& a, const Graph& g, const OpenGraph* og, Configuration start,
                DirId entry_dir, const RunLimits& limits) {
  const Signature& s = *a.sig;
  const size_t nq = static_cast<size_t>(a.state_count());
  const size_t nv = static_cast<size_t>(g.node_count());
  if (start.state < 0 || static_cast<size_t>(start.state) >= nq) {
    throw std::invalid_argument("start state not in automaton");
  }
  if (start.node < 0 || static_cast<size_t>(start.node) >= nv) {
    throw std::invalid_argument("start node not in graph");
  }

  RunResult r;
  Trace& t = r.trace;
  t.entered_via.assign(static_cast<size_t>(s.direction_count()),
                       std::vector<char>(nq, 0));
  if (entry_dir != kNone) t.entered_via[static_cast<size_t>(entry_dir)][static_cast<size_t>(start.state)] = 1;

  std::vector<int64_t> seen_at(nq * nv, -1);
  auto slot = [&](Configuration c) -> int64_t& {
    return seen_at[static_cast<size_t>(c.state) * nv + static_cast<size_t>(c.node)];
  };

  auto record = [&](Configuration c, DirId move) {
    if (!limits.record_trace) return;
    if (t.configs.size() >= limits.trace_cap) {
      t.full = false;
      return;
    }
    t.configs.push_back(c);
    t.moves.push_back(move);
  };

  Configuration cur = start;
  int64_t step = 0;
  while (true) {
    slot(cur) = step;
    LabelId label = g.label(cur.node);
    if (a.is_accept(cur.state, label)) {
      record(cur, kNone);
      r.outcome = {OutcomeKind::Accept, cur, step, 0, kNone};
      return r;
    }
    auto tr = a.trans(cur.state, label);
    if (!tr) {
      record(cur, kNone);
      r.outcome = {OutcomeKind::RejectUndefined, cur, step, 0, kNone};
      return r;
    }
    if (og != nullptr && og->is_port(cur.node, tr->dir)) {
      record(cur, tr->dir);
      t.entered_via[static_cast<size_t>(tr->dir)][static_cast<size_t>(tr->state)] = 1;
      r.outcome = {OutcomeKind::Exit, {tr->state, cur.node}, step + 1, 0, tr->dir};
      return r;
    }
    NodeId next = g.target(cur.node, tr->dir);
    if (next == kNone) {
      throw std::logic_error("undefined edge at (" + g.nodes.name(cur.node) + ", " +
                             s.dirs.name(tr->dir) + "): graph/automaton pair is invalid");
    }
    record(cur, tr->dir);
    Configuration nxt{tr->state, next};
    t.entered_via[static_cast<size_t>(tr->dir)][static_cast<size_t>(tr->state)] = 1;
    ++step;
    int64_t prev = slot(nxt);
    if (prev >= 0) {
      record(nxt, kNone);
      r.outcome = {OutcomeKind::Loop, nxt, step, step - prev, kNone};
      return r;
    }
    cur = nxt;
  }
}

}  // namespace

RunResult run(const Automaton& a, const Graph& g, const RunLimits& limits) {
  require_compatible(a, g);
  if (g.initial == kNone) throw std::invalid_argument("graph has no initial node");
  if (a.initial == kNone) throw std::invalid_argument("automaton has no initial state");
  return drive(a, g, nullptr, {a.initial, g.initial}, kNone, limits);
}

RunResult run_from(const Automaton& a, const Graph& g, Configuration start,
                   const RunLimits& limits) {
  require_compatible(a, g);
  return drive(a, g, nullptr, start, kNone, limits);
}

RunResult run_open(const Automaton& a, const OpenGraph& og, Port entry, StateId state,
                   const RunLimits& limits) {
  require_compatible(a, og.graph);
  if (!og.is_port(entry.first, entry.second)) throw std::invalid_argument("entry is not a port");
  // Entering through the port means the last move was in the direction
  // opposite to the port's.
  DirId entered = a.sig->opp(entry.second);
  return drive(a, og.graph, &og, {state, entry.first}, entered, limits);
}

RunResult run_open_from(const Automaton& a, const OpenGraph& og, Configuration start,
                        const RunLimits& limits) {
  require_compatible(a, og.graph);
  return drive(a, og.graph, &og, start, kNone, limits);
}

std::string describe(const RunOutcome& o, const Automaton& a, const Graph& g) {
  std::string at = "(" + a.states.name(o.at.state) + ", " + g.nodes.name(o.at.node) + ")";
  switch (o.kind) {
    case OutcomeKind::Accept:
      return "accept at " + at + " after " + std::to_string(o.steps) + " steps";
    case OutcomeKind::RejectUndefined:
      return "reject (undefined) at " + at + " after " + std::to_string(o.steps) + " steps";
    case OutcomeKind::Loop:
      return "loop at " + at + " with cycle length " + std::to_string(o.cycle_length) +
             " after " + std::to_string(o.steps) + " steps";
    case OutcomeKind::Exit:
      return "exit " + a.sig->dirs.name(o.exit_dir) + " in state " + a.states.name(o.at.state) +
             " from " + g.nodes.name(o.at.node) + " after " + std::to_string(o.steps) + " steps";
  }
  return "?";
}

}  // namespace gwa
