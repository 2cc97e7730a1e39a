#include "gwa/checkers.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

#include "gwa/simulate.hpp"

namespace gwa {

std::vector<char> accepts_over(const Automaton& a, const Corpus& c, ExecMode mode) {
  std::vector<char> out(c.graphs.size(), 0);
  const RunLimits limits{0, false};
  if (mode == ExecMode::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(c.graphs.size()); ++i) {
      out[static_cast<size_t>(i)] =
          run(a, c.graphs[static_cast<size_t>(i)], limits).outcome.accepted() ? 1 : 0;
    }
  } else {
    for (size_t i = 0; i < c.graphs.size(); ++i) {
      out[i] = run(a, c.graphs[i], limits).outcome.accepted() ? 1 : 0;
    }
  }
  return out;
}

CheckReport check_returning(const Automaton& a) {
  const Signature& s = *a.sig;
  CheckReport r;
  r.property = "returning";
  for (StateId q = 0; q < a.state_count(); ++q) {
    for (LabelId l = 0; l < s.label_count(); ++l) {
      if (a.is_accept(q, l) && !s.is_initial(l)) {
        r.pass = false;
        r.description = "accepting pair (" + a.states.name(q) + ", " + s.labels.name(l) +
                        ") uses a non-initial label";
        return r;
      }
    }
  }
  return r;
}

CheckReport check_reversible(const Automaton& a) {
  const Signature& s = *a.sig;
  CheckReport r;
  r.property = "reversible";
  auto dm = direction_map_of(a);
  if (!dm) {
    r.pass = false;
    r.description = "not direction-determinate";
    return r;
  }
  // At most one source state per (label, target).
  std::vector<StateId> source(a.accept.size(), kNone);
  for (StateId p = 0; p < a.state_count(); ++p) {
    for (LabelId l = 0; l < s.label_count(); ++l) {
      auto t = a.trans(p, l);
      if (!t) continue;
      size_t c = a.cell(t->state, l);
      if (source[c] != kNone) {
        r.pass = false;
        r.description = "states " + a.states.name(source[c]) + " and " + a.states.name(p) +
                        " both enter " + a.states.name(t->state) + " under label " +
                        s.labels.name(l);
        return r;
      }
      source[c] = p;
    }
  }
  CheckReport ret = check_returning(a);
  if (!ret.pass) {
    r.pass = false;
    r.description = "not returning: " + ret.description;
    return r;
  }
  for (LabelId l = 0; l < s.label_count(); ++l) {
    if (!s.is_initial(l)) continue;
    StateId found = kNone;
    for (StateId q = 0; q < a.state_count(); ++q) {
      if (!a.is_accept(q, l)) continue;
      if (found != kNone) {
        r.pass = false;
        r.description = "two accepting states at initial label " + s.labels.name(l);
        return r;
      }
      found = q;
    }
  }
  return r;
}

CheckReport check_halting_on(const Automaton& a, const Corpus& c, ExecMode mode) {
  CheckReport r;
  r.property = "halting (on corpus " + c.provenance + ")";
  std::vector<int8_t> looped(c.graphs.size(), 0);
  const RunLimits limits{0, false};
  if (mode == ExecMode::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(c.graphs.size()); ++i) {
      looped[static_cast<size_t>(i)] =
          run(a, c.graphs[static_cast<size_t>(i)], limits).outcome.kind == OutcomeKind::Loop ? 1 : 0;
    }
  } else {
    for (size_t i = 0; i < c.graphs.size(); ++i) {
      looped[i] = run(a, c.graphs[i], limits).outcome.kind == OutcomeKind::Loop ? 1 : 0;
    }
  }
  for (size_t i = 0; i < looped.size(); ++i) {
    if (!looped[i]) continue;
    auto rr = run(a, c.graphs[i], {0, false});
    r.pass = false;
    r.description = "graph #" + std::to_string(i) + ": " + describe(rr.outcome, a, c.graphs[i]);
    r.witness_graph = c.graphs[i];
    return r;
  }
  return r;
}

CheckReport check_equivalent(const Automaton& a1, const Automaton& a2, const Corpus& c,
                             ExecMode mode) {
  if (!(*a1.sig == *a2.sig)) throw std::invalid_argument("signature mismatch");
  CheckReport r;
  r.property = "equivalent (on corpus " + c.provenance + ")";
  auto v1 = accepts_over(a1, c, mode);
  auto v2 = accepts_over(a2, c, mode);
  for (size_t i = 0; i < c.graphs.size(); ++i) {
    if (v1[i] != v2[i]) {
      r.pass = false;
      r.description = "graph #" + std::to_string(i) + ": first " +
                      (v1[i] ? "accepts" : "does not accept") + ", second " +
                      (v2[i] ? "accepts" : "does not accept");
      r.witness_graph = c.graphs[i];
      return r;
    }
  }
  return r;
}

namespace {

// Working edge matrix during enumeration; kNone slots are unassigned.
struct EnumState {
  const Signature* sig;
  std::vector<LabelId> labels;       // per node
  std::vector<NodeId> edge;          // n * k
  int n;
  int k;

  NodeId& at(NodeId v, DirId d) { return edge[static_cast<size_t>(v) * k + d]; }
  NodeId get(NodeId v, DirId d) const { return edge[static_cast<size_t>(v) * k + d]; }
  bool allowed(NodeId v, DirId d) const { return sig->allows(labels[static_cast<size_t>(v)], d); }
};

bool bfs_order(const EnumState& st, std::vector<NodeId>& order, std::vector<NodeId>& perm) {
  order.clear();
  perm.assign(static_cast<size_t>(st.n), kNone);
  order.push_back(0);
  perm[0] = 0;
  for (size_t head = 0; head < order.size(); ++head) {
    NodeId v = order[head];
    for (DirId d = 0; d < st.k; ++d) {
      NodeId u = st.get(v, d);
      if (u == kNone || perm[static_cast<size_t>(u)] != kNone) continue;
      perm[static_cast<size_t>(u)] = static_cast<NodeId>(order.size());
      order.push_back(u);
    }
  }
  return static_cast<int>(order.size()) == st.n;  // connected?
}

std::string canonical_key(const EnumState& st, const std::vector<NodeId>& order,
                          const std::vector<NodeId>& perm) {
  std::string key = std::to_string(st.n) + "|";
  for (NodeId nv = 0; nv < st.n; ++nv) {
    key += std::to_string(st.labels[static_cast<size_t>(order[static_cast<size_t>(nv)])]) + ",";
  }
  key += "|";
  for (NodeId nv = 0; nv < st.n; ++nv) {
    NodeId v = order[static_cast<size_t>(nv)];
    for (DirId d = 0; d < st.k; ++d) {
      NodeId u = st.get(v, d);
      if (u == kNone) continue;
      key += std::to_string(nv) + ":" + std::to_string(d) + ":" +
             std::to_string(perm[static_cast<size_t>(u)]) + ";";
    }
  }
  return key;
}

Graph materialize(const EnumState& st, const std::vector<NodeId>& order,
                  const std::vector<NodeId>& perm, SignaturePtr sig) {
  GraphBuilder b(sig);
  for (NodeId nv = 0; nv < st.n; ++nv) {
    NodeId v = order[static_cast<size_t>(nv)];
    b.add_node("v" + std::to_string(nv), sig->labels.name(st.labels[static_cast<size_t>(v)]),
               nv == 0);
  }
  for (NodeId v = 0; v < st.n; ++v) {
    for (DirId d = 0; d < st.k; ++d) {
      NodeId u = st.get(v, d);
      if (u == kNone) continue;
      // Emit each undirected edge once; the reverse half is implied.
      NodeId nv = perm[static_cast<size_t>(v)], nu = perm[static_cast<size_t>(u)];
      DirId e = sig->opp(d);
      if (nv < nu || (nv == nu && d <= e)) {
        b.add_edge("v" + std::to_string(nv), sig->dirs.name(d), "v" + std::to_string(nu));
      }
    }
  }
  return b.build();
}

struct Enumerator {
  SignaturePtr sig;
  EnumState st;
  std::map<std::string, Graph>* out;
  size_t cap;

  void emit() {
    std::vector<NodeId> order, perm;
    if (!bfs_order(st, order, perm)) return;
    std::string key = canonical_key(st, order, perm);
    if (out->count(key)) return;
    if (out->size() >= cap) throw std::runtime_error("enumeration cap exceeded");
    out->emplace(std::move(key), materialize(st, order, perm, sig));
  }

  void match_slots() {
    // First unassigned slot, in (node, direction) order.
    for (NodeId v = 0; v < st.n; ++v) {
      for (DirId d = 0; d < st.k; ++d) {
        if (!st.allowed(v, d) || st.get(v, d) != kNone) continue;
        DirId e = st.sig->opp(d);
        if (e == d) {
          // Self-opposite direction: a loop closes the slot alone.
          st.at(v, d) = v;
          match_slots();
          st.at(v, d) = kNone;
          for (NodeId u = 0; u < st.n; ++u) {
            if (u == v || !st.allowed(u, d) || st.get(u, d) != kNone) continue;
            st.at(v, d) = u;
            st.at(u, d) = v;
            match_slots();
            st.at(v, d) = kNone;
            st.at(u, d) = kNone;
          }
        } else {
          for (NodeId u = 0; u < st.n; ++u) {
            if (!st.allowed(u, e) || st.get(u, e) != kNone) continue;
            if (u == v && e == d) continue;
            st.at(v, d) = u;
            st.at(u, e) = v;
            match_slots();
            st.at(v, d) = kNone;
            st.at(u, e) = kNone;
          }
        }
        return;  // extend only the first open slot
      }
    }
    emit();
  }

  bool balanced() const {
    std::vector<int> count(static_cast<size_t>(st.k), 0);
    for (NodeId v = 0; v < st.n; ++v) {
      for (DirId d = 0; d < st.k; ++d) {
        if (st.allowed(v, d)) ++count[static_cast<size_t>(d)];
      }
    }
    for (DirId d = 0; d < st.k; ++d) {
      DirId e = st.sig->opp(d);
      if (d < e && count[static_cast<size_t>(d)] != count[static_cast<size_t>(e)]) return false;
    }
    return true;
  }

  void labelings(const std::vector<LabelId>& others, size_t node, LabelId min_label) {
    if (node == static_cast<size_t>(st.n)) {
      if (balanced()) match_slots();
      return;
    }
    // Non-initial labels in non-decreasing order; permutations are isomorphic.
    for (LabelId l : others) {
      if (l < min_label) continue;
      st.labels[node] = l;
      labelings(others, node + 1, l);
    }
  }
};

}  // namespace

Corpus enumerate_graphs(SignaturePtr s, int max_nodes, const EnumOptions& opts) {
  std::vector<LabelId> initial_labels, other_labels;
  for (LabelId l = 0; l < s->label_count(); ++l) {
    if (!opts.label_subset.empty()) {
      bool found = false;
      for (const auto& n : opts.label_subset) {
        if (s->labels.name(l) == n) found = true;
      }
      if (!found) continue;
    }
    (s->is_initial(l) ? initial_labels : other_labels).push_back(l);
  }

  std::map<std::string, Graph> found;
  for (int n = 1; n <= max_nodes; ++n) {
    for (LabelId a0 : initial_labels) {
      Enumerator en;
      en.sig = s;
      en.out = &found;
      en.cap = opts.cap;
      en.st.sig = s.get();
      en.st.n = n;
      en.st.k = s->direction_count();
      en.st.labels.assign(static_cast<size_t>(n), kNone);
      en.st.labels[0] = a0;
      en.st.edge.assign(static_cast<size_t>(n) * en.st.k, kNone);
      en.labelings(other_labels, 1, 0);
    }
  }

  Corpus c;
  c.sig = s;
  c.provenance = "exhaustive:" + std::to_string(max_nodes);
  std::vector<std::pair<std::pair<int, std::string>, const Graph*>> ordered;
  for (const auto& [key, g] : found) {
    ordered.push_back({{g.node_count(), key}, &g});
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (const auto& [k, g] : ordered) c.graphs.push_back(*g);
  return c;
}

Corpus random_graphs(SignaturePtr s, int count, int max_nodes, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<LabelId> initial_labels, other_labels;
  for (LabelId l = 0; l < s->label_count(); ++l) {
    (s->is_initial(l) ? initial_labels : other_labels).push_back(l);
  }
  if (initial_labels.empty()) throw std::invalid_argument("signature has no initial labels");

  Corpus c;
  c.sig = s;
  c.provenance = "random:" + std::to_string(count) + ":" + std::to_string(max_nodes) + ":" +
                 std::to_string(seed);
  const int k = s->direction_count();
  size_t attempts = 0;
  const size_t max_attempts = 2'000'000;
  while (static_cast<int>(c.graphs.size()) < count) {
    if (++attempts > max_attempts) throw std::runtime_error("random corpus generation stuck");
    int n = static_cast<int>(rng() % static_cast<uint64_t>(max_nodes)) + 1;
    std::vector<LabelId> labels(static_cast<size_t>(n));
    labels[0] = initial_labels[rng() % initial_labels.size()];
    if (n > 1 && other_labels.empty()) continue;
    for (int v = 1; v < n; ++v) labels[static_cast<size_t>(v)] = other_labels[rng() % other_labels.size()];

    std::vector<std::vector<NodeId>> slots(static_cast<size_t>(k));
    for (NodeId v = 0; v < n; ++v) {
      for (DirId d = 0; d < k; ++d) {
        if (s->allows(labels[static_cast<size_t>(v)], d)) slots[static_cast<size_t>(d)].push_back(v);
      }
    }
    bool ok = true;
    for (DirId d = 0; d < k && ok; ++d) {
      if (d < s->opp(d) && slots[static_cast<size_t>(d)].size() != slots[static_cast<size_t>(s->opp(d))].size()) {
        ok = false;
      }
    }
    if (!ok) continue;

    EnumState st{s.get(), labels, std::vector<NodeId>(static_cast<size_t>(n) * k, kNone), n, k};
    for (DirId d = 0; d < k; ++d) {
      DirId e = s->opp(d);
      if (d > e) continue;
      auto& A = slots[static_cast<size_t>(d)];
      if (d == e) {
        std::shuffle(A.begin(), A.end(), rng);
        size_t i = 0;
        for (; i + 1 < A.size(); i += 2) {
          st.at(A[i], d) = A[i + 1];
          st.at(A[i + 1], d) = A[i];
        }
        if (i < A.size()) st.at(A[i], d) = A[i];  // leftover becomes a loop
      } else {
        auto B = slots[static_cast<size_t>(e)];
        std::shuffle(B.begin(), B.end(), rng);
        for (size_t i = 0; i < A.size(); ++i) {
          st.at(A[i], d) = B[i];
          st.at(B[i], e) = A[i];
        }
      }
    }
    std::vector<NodeId> order, perm;
    if (!bfs_order(st, order, perm)) continue;
    Graph g = materialize(st, order, perm, s);
    if (!validate_graph(g, *s).ok()) continue;
    c.graphs.push_back(std::move(g));
  }
  return c;
}

BackwardExitReport backward_exit_states(const Automaton& b, const OpenGraph& diode) {
  const Signature& s = *b.sig;
  if (diode.ports.size() != 2) throw std::invalid_argument("expected exactly two ports");
  Port entrance{kNone, kNone}, exit_port{kNone, kNone};
  for (const auto& p : diode.ports) {
    if (s.dirs.name(p.second) == "-a") entrance = p;
    if (s.dirs.name(p.second) == "a") exit_port = p;
  }
  if (entrance.first == kNone || exit_port.first == kNone) {
    throw std::invalid_argument("diode ports must be the -a entrance and the a exit");
  }

  std::vector<StateId> exit_state(static_cast<size_t>(b.state_count()), kNone);
  const RunLimits limits{0, false};
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (StateId q = 0; q < b.state_count(); ++q) {
    auto rr = run_open(b, diode, exit_port, q, limits);
    if (rr.outcome.kind == OutcomeKind::Exit && rr.outcome.at.node == entrance.first &&
        rr.outcome.exit_dir == entrance.second) {
      exit_state[static_cast<size_t>(q)] = rr.outcome.at.state;
    }
  }

  std::vector<char> seen(static_cast<size_t>(b.state_count()), 0);
  for (StateId q : exit_state) {
    if (q != kNone) seen[static_cast<size_t>(q)] = 1;
  }
  BackwardExitReport r;
  for (size_t q = 0; q < seen.size(); ++q) {
    if (seen[q]) r.states.push_back(static_cast<StateId>(q));
  }
  r.h = static_cast<int>(r.states.size());
  r.state_bound = 2L * r.h * (s.direction_count() - 3);
  return r;
}

}  // namespace gwa
