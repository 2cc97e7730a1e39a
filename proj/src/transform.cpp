#include "gwa/transform.hpp"

#include <algorithm>
#include <stdexcept>

namespace gwa {

namespace {

std::string dd_name(const std::string& q, const std::string& d) { return q + "@" + d; }
std::string fwd_name(const std::string& q) { return "fwd[" + q + "]"; }
std::string bwd_name(const std::string& q) { return "bwd[" + q + "]"; }
std::string rev_name(const std::string& q) { return "rev[" + q + "]"; }

void require_direction_map(const Automaton& a, const DirectionMap& dm) {
  if (dm.dir.size() != static_cast<size_t>(a.state_count())) {
    throw std::invalid_argument("direction map has wrong size");
  }
  for (StateId q = 0; q < a.state_count(); ++q) {
    for (LabelId l = 0; l < a.sig->label_count(); ++l) {
      auto t = a.trans(q, l);
      if (t && dm.of(t->state) != t->dir) {
        throw std::invalid_argument("direction map inconsistent with automaton at (" +
                                    a.states.name(q) + ", " + a.sig->labels.name(l) + ")");
      }
    }
  }
}

bool exempt_pair(const Automaton& a, StateId q, LabelId l) {
  return q == a.initial && a.sig->is_initial(l);
}

// Predecessors of state q under label l, i.e. states p with delta_l(p) =
// (q, d(q)), restricted to p whose backward position is supported (-d(p)
// allowed at l). The restriction can only exclude the exempt initial pair;
// the initial configuration is detected through the acceptance conditions
// instead of a descent.
std::vector<std::vector<std::vector<StateId>>> predecessor_table(const Automaton& a,
                                                                 const DirectionMap& dm) {
  const Signature& s = *a.sig;
  std::vector<std::vector<std::vector<StateId>>> preds(
      static_cast<size_t>(s.label_count()),
      std::vector<std::vector<StateId>>(static_cast<size_t>(a.state_count())));
  for (StateId p = 0; p < a.state_count(); ++p) {
    for (LabelId l = 0; l < s.label_count(); ++l) {
      auto t = a.trans(p, l);
      if (!t) continue;
      if (!s.allows(l, s.opp(dm.of(p)))) continue;
      preds[static_cast<size_t>(l)][static_cast<size_t>(t->state)].push_back(p);
    }
  }
  return preds;  // inner lists are sorted: p iterates in id order
}

}  // namespace

std::string TransformReport::summary() const {
  return std::to_string(input_states) + " -> " + std::to_string(output_states) + " states (" +
         bound_formula + " = " + std::to_string(bound_value) + ", " +
         std::to_string(reachable_states) + " reachable)";
}

int count_reachable_states(const Automaton& a) {
  if (a.initial == kNone) return 0;
  std::vector<char> seen(static_cast<size_t>(a.state_count()), 0);
  std::vector<StateId> stack{a.initial};
  seen[static_cast<size_t>(a.initial)] = 1;
  int count = 0;
  while (!stack.empty()) {
    StateId q = stack.back();
    stack.pop_back();
    ++count;
    for (LabelId l = 0; l < a.sig->label_count(); ++l) {
      auto t = a.trans(q, l);
      if (t && !seen[static_cast<size_t>(t->state)]) {
        seen[static_cast<size_t>(t->state)] = 1;
        stack.push_back(t->state);
      }
    }
  }
  return count;
}

Automaton remove_inaccessible(const Automaton& a, const DirectionMap& dm) {
  require_direction_map(a, dm);
  const Signature& s = *a.sig;
  Automaton out = a;
  for (StateId q = 0; q < a.state_count(); ++q) {
    DirId back = s.opp(dm.of(q));
    for (LabelId l = 0; l < s.label_count(); ++l) {
      if (exempt_pair(a, q, l)) continue;
      if (s.allows(l, back)) continue;
      size_t c = a.cell(q, l);
      out.accept[c] = 0;
      out.delta_state[c] = kNone;
      out.delta_dir[c] = kNone;
    }
  }
  return out;
}

bool is_inaccessible_free(const Automaton& a, const DirectionMap& dm) {
  const Signature& s = *a.sig;
  for (StateId q = 0; q < a.state_count(); ++q) {
    for (LabelId l = 0; l < s.label_count(); ++l) {
      if (exempt_pair(a, q, l)) continue;
      size_t c = a.cell(q, l);
      if (a.accept[c] == 0 && a.delta_state[c] == kNone) continue;
      if (!s.allows(l, s.opp(dm.of(q)))) return false;
    }
  }
  return true;
}

TransformReport to_direction_determinate(const Automaton& a) {
  const Signature& s = *a.sig;
  if (a.initial == kNone) throw std::invalid_argument("input has no initial state");
  AutomatonBuilder b(a.sig);
  for (StateId q = 0; q < a.state_count(); ++q) {
    for (DirId d = 0; d < s.direction_count(); ++d) {
      b.add_state(dd_name(a.states.name(q), s.dirs.name(d)), q == a.initial && d == 0);
    }
  }
  for (StateId q = 0; q < a.state_count(); ++q) {
    for (LabelId l = 0; l < s.label_count(); ++l) {
      auto t = a.trans(q, l);
      bool acc = a.is_accept(q, l);
      for (DirId d = 0; d < s.direction_count(); ++d) {
        std::string from = dd_name(a.states.name(q), s.dirs.name(d));
        if (acc) b.add_accept(from, s.labels.name(l));
        if (t) {
          b.add_trans(from, s.labels.name(l), dd_name(a.states.name(t->state), s.dirs.name(t->dir)),
                      s.dirs.name(t->dir));
        }
      }
    }
  }
  TransformReport r;
  r.output = b.build();
  r.input_states = a.state_count();
  r.output_states = r.output.state_count();
  r.reachable_states = count_reachable_states(r.output);
  r.bound_formula = "n*k";
  r.bound_value = static_cast<long>(a.state_count()) * s.direction_count();
  r.provenance.assign(static_cast<size_t>(r.output_states), "product");
  return r;
}

Automaton build_backtracker(const Automaton& a, const DirectionMap& dm, BacktrackerLink* link) {
  const Signature& s = *a.sig;
  if (a.initial == kNone) throw std::invalid_argument("input has no initial state");
  auto check = direction_map_of(a);
  if (!check) throw std::invalid_argument("input is not direction-determinate");
  require_direction_map(a, dm);
  if (!is_inaccessible_free(a, dm)) {
    throw std::invalid_argument("input has inaccessible transitions");
  }

  auto preds = predecessor_table(a, dm);

  // Acceptance: the backward image of the first step out of the initial
  // configuration, per initial label.
  std::vector<std::pair<StateId, LabelId>> accepts;  // (A-state whose bwd accepts, label)
  for (LabelId l = 0; l < s.label_count(); ++l) {
    if (!s.is_initial(l)) continue;
    auto t = a.trans(a.initial, l);
    if (t) accepts.emplace_back(t->state, l);
  }
  auto is_accept_pair = [&](StateId q, LabelId l) {
    for (const auto& [aq, al] : accepts) {
      if (aq == q && al == l) return true;
    }
    return false;
  };

  AutomatonBuilder b(a.sig);
  for (StateId q = 0; q < a.state_count(); ++q) {
    b.add_state(fwd_name(a.states.name(q)));
    b.add_state(bwd_name(a.states.name(q)));
  }
  for (const auto& [q, l] : accepts) b.add_accept(bwd_name(a.states.name(q)), s.labels.name(l));

  for (StateId q = 0; q < a.state_count(); ++q) {
    const std::string qn = a.states.name(q);
    DirId dq = dm.of(q);
    for (LabelId l = 0; l < s.label_count(); ++l) {
      const std::string ln = s.labels.name(l);
      // Backward state: descend into the least predecessor, or turn around.
      if (s.allows(l, dq) && !is_accept_pair(q, l)) {
        const auto& ps = preds[static_cast<size_t>(l)][static_cast<size_t>(q)];
        if (!ps.empty()) {
          StateId p = ps.front();
          b.add_trans(bwd_name(qn), ln, bwd_name(a.states.name(p)), s.dirs.name(s.opp(dm.of(p))));
        } else {
          b.add_trans(bwd_name(qn), ln, fwd_name(qn), s.dirs.name(dq));
        }
      }
      // Forward state: move to the next sibling, or up to the parent.
      if (s.allows(l, s.opp(dq))) {
        auto t = a.trans(q, l);
        if (t) {
          const auto& sibs = preds[static_cast<size_t>(l)][static_cast<size_t>(t->state)];
          auto it = std::upper_bound(sibs.begin(), sibs.end(), q);
          if (it != sibs.end()) {
            b.add_trans(fwd_name(qn), ln, bwd_name(a.states.name(*it)),
                        s.dirs.name(s.opp(dm.of(*it))));
          } else {
            b.add_trans(fwd_name(qn), ln, fwd_name(a.states.name(t->state)),
                        s.dirs.name(dm.of(t->state)));
          }
        }
      }
    }
  }

  Automaton out = b.build();
  if (link != nullptr) {
    link->fwd.resize(static_cast<size_t>(a.state_count()));
    link->bwd.resize(static_cast<size_t>(a.state_count()));
    link->dm.dir.assign(static_cast<size_t>(out.state_count()), kNone);
    link->dm.constrained.assign(static_cast<size_t>(out.state_count()), 1);
    for (StateId q = 0; q < a.state_count(); ++q) {
      StateId f = out.state(fwd_name(a.states.name(q)));
      StateId w = out.state(bwd_name(a.states.name(q)));
      link->fwd[static_cast<size_t>(q)] = f;
      link->bwd[static_cast<size_t>(q)] = w;
      link->dm.dir[static_cast<size_t>(f)] = dm.of(q);
      link->dm.dir[static_cast<size_t>(w)] = s.opp(dm.of(q));
    }
  }
  return out;
}

Automaton reverse_reversible(const Automaton& b, const DirectionMap& dm_b,
                             const std::vector<std::pair<StateId, LabelId>>& accept_of_a,
                             const std::vector<std::pair<LabelId, StateId>>& delta_init_of_a,
                             StateId a_initial, const BacktrackerLink& link,
                             ReversedLink* rlink) {
  const Signature& s = *b.sig;
  require_direction_map(b, dm_b);

  // Backward determinism of b is a precondition; the reverse of each
  // transition must be single-valued.
  std::vector<StateId> source(b.accept.size(), kNone);  // per (target, label)
  for (StateId p = 0; p < b.state_count(); ++p) {
    for (LabelId l = 0; l < s.label_count(); ++l) {
      auto t = b.trans(p, l);
      if (!t) continue;
      size_t c = b.cell(t->state, l);
      if (source[c] != kNone) {
        throw std::invalid_argument("input is not backward-deterministic at (" +
                                    b.states.name(t->state) + ", " + s.labels.name(l) + ")");
      }
      source[c] = p;
    }
  }

  const std::string fresh = rev_name("init");
  AutomatonBuilder out(b.sig);
  out.add_state(fresh, true);
  for (StateId q = 0; q < b.state_count(); ++q) out.add_state(rev_name(b.states.name(q)));

  for (const auto& [l, q1] : delta_init_of_a) {
    StateId bq = link.bwd[static_cast<size_t>(q1)];
    out.add_trans(fresh, s.labels.name(l), rev_name(b.states.name(bq)),
                  s.dirs.name(s.opp(dm_b.of(bq))));
  }
  for (StateId q = 0; q < b.state_count(); ++q) {
    for (LabelId l = 0; l < s.label_count(); ++l) {
      StateId p = source[b.cell(q, l)];
      if (p == kNone) continue;
      out.add_trans(rev_name(b.states.name(q)), s.labels.name(l), rev_name(b.states.name(p)),
                    s.dirs.name(s.opp(dm_b.of(p))));
    }
  }
  for (const auto& [q, l] : accept_of_a) {
    if (q == a_initial && s.is_initial(l)) {
      out.add_accept(fresh, s.labels.name(l));
    } else {
      StateId bq = link.bwd[static_cast<size_t>(q)];
      out.add_accept(rev_name(b.states.name(bq)), s.labels.name(l));
    }
  }

  Automaton result = out.build();
  if (rlink != nullptr) {
    rlink->rev.resize(static_cast<size_t>(b.state_count()));
    for (StateId q = 0; q < b.state_count(); ++q) {
      rlink->rev[static_cast<size_t>(q)] = result.state(rev_name(b.states.name(q)));
    }
    rlink->fresh = result.state(fresh);
  }
  return result;
}

TransformReport to_returning(const Automaton& a_hat) {
  const Signature& s = *a_hat.sig;
  if (a_hat.initial == kNone) throw std::invalid_argument("input has no initial state");
  TransformReport dd = to_direction_determinate(a_hat);
  auto dm = direction_map_of(dd.output);
  Automaton a2 = remove_inaccessible(dd.output, *dm);
  BacktrackerLink link;
  Automaton bt = build_backtracker(a2, *dm, &link);

  AutomatonBuilder c(a_hat.sig);
  for (StateId q = 0; q < a_hat.state_count(); ++q) {
    c.add_state(a_hat.states.name(q), q == a_hat.initial);
  }
  for (StateId q = 0; q < bt.state_count(); ++q) c.add_state(bt.states.name(q));

  // Simulate the input in its own states.
  for (StateId q = 0; q < a_hat.state_count(); ++q) {
    for (LabelId l = 0; l < s.label_count(); ++l) {
      auto t = a_hat.trans(q, l);
      if (t) {
        c.add_trans(a_hat.states.name(q), s.labels.name(l), a_hat.states.name(t->state),
                    s.dirs.name(t->dir));
      }
    }
  }
  // Copy the backtracker wholesale.
  for (StateId q = 0; q < bt.state_count(); ++q) {
    for (LabelId l = 0; l < s.label_count(); ++l) {
      auto t = bt.trans(q, l);
      if (t) {
        c.add_trans(bt.states.name(q), s.labels.name(l), bt.states.name(t->state),
                    s.dirs.name(t->dir));
      }
      if (bt.is_accept(q, l)) c.add_accept(bt.states.name(q), s.labels.name(l));
    }
  }
  // From a non-initial accepting pair, guess the direction the input arrived
  // from, starting with the least; re-enter the guess cycle on bounce-back.
  auto dd_state = [&](StateId q, DirId d) {
    return dd_name(a_hat.states.name(q), s.dirs.name(d));
  };
  for (StateId q = 0; q < a_hat.state_count(); ++q) {
    for (LabelId l = 0; l < s.label_count(); ++l) {
      if (!a_hat.is_accept(q, l)) continue;
      if (q == a_hat.initial && s.is_initial(l)) {
        c.add_accept(a_hat.states.name(q), s.labels.name(l));
        continue;
      }
      const auto& ds = s.allowed[static_cast<size_t>(l)];
      if (ds.empty()) continue;  // isolated-node label; unreachable here
      c.add_trans(a_hat.states.name(q), s.labels.name(l),
                  bwd_name(dd_state(q, s.opp(ds.front()))), s.dirs.name(ds.front()));
      for (size_t i = 0; i + 1 < ds.size(); ++i) {
        // Bounced back after a wrong guess -d: try the next direction.
        c.add_trans(fwd_name(dd_state(q, s.opp(ds[i]))), s.labels.name(l),
                    bwd_name(dd_state(q, s.opp(ds[i + 1]))), s.dirs.name(ds[i + 1]));
      }
    }
  }

  TransformReport r;
  r.output = c.build();
  r.input_states = a_hat.state_count();
  r.output_states = r.output.state_count();
  r.reachable_states = count_reachable_states(r.output);
  r.bound_formula = "2nk+n";
  r.bound_value = 2L * a_hat.state_count() * s.direction_count() + a_hat.state_count();
  r.provenance.assign(static_cast<size_t>(r.output_states), "");
  for (StateId q = 0; q < r.output_states; ++q) {
    const std::string& n = r.output.states.name(q);
    r.provenance[static_cast<size_t>(q)] =
        n.rfind("fwd[", 0) == 0 ? "forward" : (n.rfind("bwd[", 0) == 0 ? "backward" : "base");
  }
  return r;
}

namespace {

// Shared head of the halting/reversible pipelines.
struct ReversedPipeline {
  Automaton a2;
  Automaton bt;
  BacktrackerLink link;
  Automaton rev;
  ReversedLink rlink;
  std::vector<std::pair<StateId, LabelId>> accepts;
};

ReversedPipeline reversed_pipeline(const Automaton& a, const DirectionMap& dm) {
  ReversedPipeline p;
  p.a2 = remove_inaccessible(a, dm);
  p.bt = build_backtracker(p.a2, dm, &p.link);
  for (StateId q = 0; q < p.a2.state_count(); ++q) {
    for (LabelId l = 0; l < p.a2.sig->label_count(); ++l) {
      if (p.a2.is_accept(q, l)) p.accepts.emplace_back(q, l);
    }
  }
  std::vector<std::pair<LabelId, StateId>> delta_init;
  for (LabelId l = 0; l < p.a2.sig->label_count(); ++l) {
    if (!p.a2.sig->is_initial(l)) continue;
    auto t = p.a2.trans(p.a2.initial, l);
    if (t) delta_init.emplace_back(l, t->state);
  }
  p.rev =
      reverse_reversible(p.bt, p.link.dm, p.accepts, delta_init, p.a2.initial, p.link, &p.rlink);
  return p;
}

}  // namespace

TransformReport to_halting(const Automaton& a, const DirectionMap& dm) {
  ReversedPipeline p = reversed_pipeline(a, dm);
  TransformReport r;
  r.output = std::move(p.rev);
  r.input_states = a.state_count();
  r.output_states = r.output.state_count();
  r.reachable_states = count_reachable_states(r.output);
  r.bound_formula = "2n+1";
  r.bound_value = 2L * a.state_count() + 1;
  r.provenance.assign(static_cast<size_t>(r.output_states), "");
  for (StateId q = 0; q < r.output_states; ++q) {
    const std::string& n = r.output.states.name(q);
    r.provenance[static_cast<size_t>(q)] =
        n == "rev[init]" ? "fresh-initial"
                         : (n.rfind("rev[bwd[", 0) == 0 ? "rev-backward" : "rev-forward");
  }
  return r;
}

TransformReport to_reversible(const Automaton& a, const DirectionMap& dm) {
  const Signature& s = *a.sig;
  ReversedPipeline p = reversed_pipeline(a, dm);

  AutomatonBuilder c(a.sig);
  for (StateId q = 0; q < p.rev.state_count(); ++q) {
    c.add_state(p.rev.states.name(q), q == p.rev.initial);
  }
  for (StateId q = 0; q < p.bt.state_count(); ++q) c.add_state(p.bt.states.name(q));
  auto copy_transitions = [&](const Automaton& src) {
    for (StateId q = 0; q < src.state_count(); ++q) {
      for (LabelId l = 0; l < s.label_count(); ++l) {
        auto t = src.trans(q, l);
        if (t) {
          c.add_trans(src.states.name(q), s.labels.name(l), src.states.name(t->state),
                      s.dirs.name(t->dir));
        }
      }
    }
  };
  copy_transitions(p.rev);
  copy_transitions(p.bt);
  // Acceptance comes from the backtracker, plus immediate acceptance in the
  // fresh initial state.
  for (StateId q = 0; q < p.bt.state_count(); ++q) {
    for (LabelId l = 0; l < s.label_count(); ++l) {
      if (p.bt.is_accept(q, l)) c.add_accept(p.bt.states.name(q), s.labels.name(l));
    }
  }
  for (const auto& [q, l] : p.accepts) {
    if (q == p.a2.initial && s.is_initial(l)) {
      c.add_accept(p.rev.states.name(p.rlink.fresh), s.labels.name(l));
    } else {
      // Control transfer: where the reversed automaton would accept, step one
      // node back and continue as the backtracker.
      StateId rev_state = p.rlink.rev[static_cast<size_t>(p.link.bwd[static_cast<size_t>(q)])];
      c.add_trans(p.rev.states.name(rev_state), s.labels.name(l),
                  p.bt.states.name(p.link.bwd[static_cast<size_t>(q)]),
                  s.dirs.name(s.opp(dm.of(q))));
    }
  }

  TransformReport r;
  r.output = c.build();
  r.input_states = a.state_count();
  r.output_states = r.output.state_count();
  r.reachable_states = count_reachable_states(r.output);
  r.bound_formula = "4n+1";
  r.bound_value = 4L * a.state_count() + 1;
  r.provenance.assign(static_cast<size_t>(r.output_states), "");
  for (StateId q = 0; q < r.output_states; ++q) {
    const std::string& n = r.output.states.name(q);
    if (n == "rev[init]") {
      r.provenance[static_cast<size_t>(q)] = "fresh-initial";
    } else if (n.rfind("rev[bwd[", 0) == 0) {
      r.provenance[static_cast<size_t>(q)] = "rev-backward";
    } else if (n.rfind("rev[", 0) == 0) {
      r.provenance[static_cast<size_t>(q)] = "rev-forward";
    } else if (n.rfind("fwd[", 0) == 0) {
      r.provenance[static_cast<size_t>(q)] = "forward";
    } else {
      r.provenance[static_cast<size_t>(q)] = "backward";
    }
  }
  return r;
}

}  // namespace gwa
