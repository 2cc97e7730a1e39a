#include "gwa/gadgets.hpp"

#include <stdexcept>

#include "gwa/simulate.hpp"

namespace gwa {

bool diode_period_advisory(long M, int state_bound) {
  for (int s = 1; s <= state_bound; ++s) {
    if (M % s != 0) return false;
  }
  return true;
}

Signature build_signature_sk(int k) {
  if (k < 4) throw std::invalid_argument("diode signature needs k >= 4");
  DiodeParams p{k, 1};
  std::vector<std::pair<std::string, std::string>> dirs{{"a", "-a"}};
  for (int i = 1; i <= p.r(); ++i) {
    dirs.emplace_back("b" + std::to_string(i), "-b" + std::to_string(i));
  }
  std::vector<LabelSpec> labels;
  std::vector<std::string> all;
  for (const auto& [d, e] : dirs) {
    all.push_back(d);
    all.push_back(e);
  }
  labels.push_back({"m", false, all});
  labels.push_back({"me", false, {"b1", "a", "-a"}});
  labels.push_back({"ma", false, {"-b1", "a"}});
  for (int i = 1; i <= p.r(); ++i) {
    std::vector<std::string> ds{"-a", "b" + std::to_string(i), "-b" + std::to_string(i)};
    labels.push_back({"m" + std::to_string(i), false, ds});
    labels.push_back({"m-" + std::to_string(i), false, ds});
  }
  return make_signature("s" + std::to_string(k), dirs, labels);
}

DiodeContext DiodeContext::resolve(SignaturePtr sig, DiodeParams params) {
  if (params.k < 4) throw std::invalid_argument("diode context needs k >= 4");
  if (params.M < 1) throw std::invalid_argument("diode context needs M >= 1");
  DiodeContext ctx;
  ctx.sig = sig;
  ctx.params = params;
  ctx.dir_a = sig->dir("a");
  ctx.dir_ma = sig->dir("-a");
  for (int i = 1; i <= params.r(); ++i) {
    std::string bn = "b" + std::to_string(i);
    // Merged signatures may carry b1/-b1 under the names b/-b.
    if (i == 1 && !sig->dirs.contains(bn) && sig->dirs.contains("b")) bn = "b";
    DirId b = sig->dir(bn);
    ctx.dir_b.emplace_back(b, sig->opp(b));
    ctx.lab_mi.emplace_back(sig->label("m" + std::to_string(i)),
                            sig->label("m-" + std::to_string(i)));
  }
  ctx.lab_m = sig->label("m");
  ctx.lab_me = sig->label("me");
  ctx.lab_ma = sig->label("ma");
  return ctx;
}

namespace {

// Emits the nodes and internal edges of element E_i into b; returns nothing.
// Node names: <prefix>in, <prefix>out, <prefix>u<j>, <prefix>s<j>. The two
// boundary slots (<prefix>in, -a) and (<prefix>out, a) are left open.
void emit_element(GraphBuilder& b, const DiodeContext& ctx, int i, const std::string& prefix) {
  const Signature& s = *ctx.sig;
  const long M = ctx.params.M;
  const int r = ctx.params.r();
  const int j = i > 0 ? i : -i;
  if (j < 1 || j > r) throw std::invalid_argument("element index out of range");
  // The trap system of E_-i is that of E_i with b_i and -b_i swapped; the
  // me/ma exit wiring always uses b1 as such.
  DirId f = i > 0 ? ctx.dir_b[static_cast<size_t>(j - 1)].first
                  : ctx.dir_b[static_cast<size_t>(j - 1)].second;
  LabelId in_label = i > 0 ? ctx.lab_mi[static_cast<size_t>(j - 1)].first
                           : ctx.lab_mi[static_cast<size_t>(j - 1)].second;

  auto u = [&](long idx) {
    long m = ((idx % (8 * M)) + 8 * M) % (8 * M);
    return prefix + "u" + std::to_string(m);
  };
  auto sc = [&](long idx) {
    long m = ((idx % M) + M) % M;
    return prefix + "s" + std::to_string(m);
  };
  const std::string in = prefix + "in";
  const std::string out = prefix + "out";
  const std::string fn = s.dirs.name(f);
  const std::string b1 = s.dirs.name(ctx.dir_b[0].first);
  const std::string an = s.dirs.name(ctx.dir_a);

  b.add_node(in, s.labels.name(in_label));
  b.add_node(out, s.labels.name(ctx.lab_ma));
  b.add_node(prefix + "u0", s.labels.name(ctx.lab_me));
  for (long idx = 1; idx < 8 * M; ++idx) b.add_node(u(idx), s.labels.name(ctx.lab_m));
  for (long idx = 0; idx < M; ++idx) b.add_node(sc(idx), s.labels.name(ctx.lab_m));

  // Entry cycle in +f+ u_4M +f+ s_0 +f+ in.
  b.add_edge(in, fn, u(4 * M));
  b.add_edge(u(4 * M), fn, sc(0));
  b.add_edge(sc(0), fn, in);
  // Exit wiring u_0 +b1+ out.
  b.add_edge(prefix + "u0", b1, out);
  // The two a-cycles.
  for (long idx = 0; idx < 8 * M; ++idx) b.add_edge(u(idx), an, u(idx + 1));
  for (long idx = 0; idx < M; ++idx) b.add_edge(sc(idx), an, sc(idx + 1));
  // Traps at the multiples of M.
  b.add_edge(u(M), fn, u(-M));
  b.add_edge(u(M), s.dirs.name(s.opp(f)), u(-M));
  b.add_edge(u(2 * M), fn, u(3 * M));
  b.add_edge(u(3 * M), fn, u(-2 * M));
  b.add_edge(u(-2 * M), fn, u(-3 * M));
  b.add_edge(u(-3 * M), fn, u(2 * M));
  // Loops: both cycles carry (b_s, -b_s)-loops wherever no trap edge uses the
  // slot. u_0 has none (its label allows only b1, taken by the exit edge).
  for (int t = 1; t <= r; ++t) {
    const std::string bt = s.dirs.name(ctx.dir_b[static_cast<size_t>(t - 1)].first);
    for (long idx = 1; idx < 8 * M; ++idx) {
      if (t == j && idx % M == 0) continue;
      b.add_edge(u(idx), bt, u(idx));
    }
    for (long idx = 0; idx < M; ++idx) {
      if (t == j && idx == 0) continue;
      b.add_edge(sc(idx), bt, sc(idx));
    }
  }
}

std::vector<int> element_order(int r) {
  std::vector<int> order;
  for (int i = 1; i <= r; ++i) {
    order.push_back(i);
    order.push_back(-i);
  }
  return order;
}

std::string element_prefix(const std::string& prefix, int i) {
  return prefix + "e" + std::to_string(i) + ":";
}

// Emits a full diode chain; returns the names of the open entrance/exit nodes.
std::pair<std::string, std::string> emit_diode(GraphBuilder& b, const DiodeContext& ctx,
                                               const std::string& prefix) {
  const auto order = element_order(ctx.params.r());
  const std::string an = ctx.sig->dirs.name(ctx.dir_a);
  for (size_t t = 0; t < order.size(); ++t) {
    emit_element(b, ctx, order[t], element_prefix(prefix, order[t]));
    if (t > 0) {
      b.add_edge(element_prefix(prefix, order[t - 1]) + "out", an,
                 element_prefix(prefix, order[t]) + "in");
    }
  }
  return {element_prefix(prefix, order.front()) + "in",
          element_prefix(prefix, order.back()) + "out"};
}

}  // namespace

OpenGraph build_element(int i, const DiodeContext& ctx, const std::string& prefix) {
  GraphBuilder b(ctx.sig);
  emit_element(b, ctx, i, prefix);
  b.add_port(prefix + "in", "-a");
  b.add_port(prefix + "out", "a");
  return b.build_open();
}

OpenGraph build_diode(const DiodeContext& ctx, const std::string& prefix) {
  GraphBuilder b(ctx.sig);
  auto [entrance, exit] = emit_diode(b, ctx, prefix);
  b.add_port(entrance, "-a");
  b.add_port(exit, "a");
  return b.build_open();
}

namespace {

std::vector<std::string> diode_label_names(const DiodeContext& ctx) {
  std::vector<std::string> names{ctx.sig->labels.name(ctx.lab_m), ctx.sig->labels.name(ctx.lab_me),
                                 ctx.sig->labels.name(ctx.lab_ma)};
  for (const auto& [mi, mni] : ctx.lab_mi) {
    names.push_back(ctx.sig->labels.name(mi));
    names.push_back(ctx.sig->labels.name(mni));
  }
  return names;
}

}  // namespace

Graph substitute_diodes(const Graph& g, const DiodeContext& ctx) {
  const Signature& base = *g.sig;
  for (const auto& n : diode_label_names(ctx)) {
    if (base.labels.contains(n)) {
      throw std::invalid_argument("label collision with the diode signature: " + n);
    }
  }

  GraphBuilder b(ctx.sig);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    b.add_node(g.nodes.name(v), base.labels.name(g.label(v)), v == g.initial);
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (DirId d = 0; d < base.direction_count(); ++d) {
      NodeId t = g.target(v, d);
      if (t == kNone) continue;
      const std::string& dn = base.dirs.name(d);
      if (dn == "a") {
        // Each (a,-a)-edge becomes a fresh diode, keyed by its endpoints.
        std::string ns = "d[" + g.nodes.name(v) + ">" + g.nodes.name(t) + "]:";
        auto [entrance, exit] = emit_diode(b, ctx, ns);
        b.add_edge(g.nodes.name(v), "a", entrance);
        b.add_edge(exit, "a", g.nodes.name(t));
      } else if (dn != "-a") {
        DirId e = base.opp(d);
        if (v < t || (v == t && d <= e)) {
          b.add_edge(g.nodes.name(v), dn, g.nodes.name(t));
        }
      }
    }
  }
  return b.build();
}

Automaton extend_automaton_over_diodes(const Automaton& a, const DiodeContext& ctx) {
  const Signature& base = *a.sig;
  DirId base_ma = base.dir("-a");
  for (StateId q = 0; q < a.state_count(); ++q) {
    for (LabelId l = 0; l < base.label_count(); ++l) {
      auto t = a.trans(q, l);
      if (t && t->dir == base_ma) {
        throw std::invalid_argument("automaton moves in direction -a at (" + a.states.name(q) +
                                    ", " + base.labels.name(l) + ")");
      }
    }
  }
  Automaton out = rebase_automaton(a, ctx.sig);
  auto put = [&](StateId q, LabelId l, DirId d) {
    size_t c = out.cell(q, l);
    out.delta_state[c] = q;
    out.delta_dir[c] = d;
  };
  for (StateId q = 0; q < out.state_count(); ++q) {
    for (int i = 1; i <= ctx.params.r(); ++i) {
      put(q, ctx.lab_mi[static_cast<size_t>(i - 1)].first, ctx.dir_b[static_cast<size_t>(i - 1)].first);
      put(q, ctx.lab_mi[static_cast<size_t>(i - 1)].second, ctx.dir_b[static_cast<size_t>(i - 1)].second);
    }
    put(q, ctx.lab_m, ctx.dir_a);
    put(q, ctx.lab_me, ctx.dir_b[0].first);
    put(q, ctx.lab_ma, ctx.dir_a);
  }
  return out;
}

TfGraph build_tf(LabelId f, const DiodeContext& ctx) {
  const Signature& s = *ctx.sig;
  if (f == ctx.lab_m || f == ctx.lab_me || f == ctx.lab_ma) {
    throw std::invalid_argument("T_f is not defined for diode labels");
  }
  for (const auto& [mi, mni] : ctx.lab_mi) {
    if (f == mi || f == mni) throw std::invalid_argument("T_f is not defined for diode labels");
  }
  GraphBuilder b(ctx.sig);
  b.add_node("v", s.labels.name(f));
  for (DirId d : s.allowed[static_cast<size_t>(f)]) {
    if (d == ctx.dir_a) {
      auto [entrance, exit] = emit_diode(b, ctx, "Ta:");
      b.add_edge("v", "a", entrance);
      b.add_port(exit, "a");
    } else if (d == ctx.dir_ma) {
      auto [entrance, exit] = emit_diode(b, ctx, "Tb:");
      b.add_edge(exit, "a", "v");
      b.add_port(entrance, "-a");
    } else {
      b.add_port("v", s.dirs.name(d));
    }
  }
  TfGraph tf;
  tf.open = b.build_open();
  tf.center = tf.open.graph.node("v");
  return tf;
}

Automaton inverse_substitution(const Automaton& b, SignaturePtr base, const DiodeContext& ctx) {
  const Signature& merged = *ctx.sig;
  if (!(*b.sig == merged)) throw std::invalid_argument("automaton not over the diode signature");

  struct Cell {
    int kind = 0;  // 0 undefined, 1 transition, 2 accept
    StateId state = kNone;
    DirId dir = kNone;
  };
  const int nq = b.state_count();
  const int nl = base->label_count();
  std::vector<Cell> cells(static_cast<size_t>(nq) * static_cast<size_t>(nl));

  for (LabelId fb = 0; fb < nl; ++fb) {
    LabelId f = merged.label(base->labels.name(fb));
    TfGraph tf = build_tf(f, ctx);
    // Per-state probes are independent; exact loop detection over T_f.
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (StateId q = 0; q < nq; ++q) {
      auto rr = run_open_from(b, tf.open, {q, tf.center}, {0, false});
      Cell& cell = cells[static_cast<size_t>(q) * nl + static_cast<size_t>(fb)];
      if (rr.outcome.kind == OutcomeKind::Exit) {
        cell.kind = 1;
        cell.state = rr.outcome.at.state;
        cell.dir = base->dir(merged.dirs.name(rr.outcome.exit_dir));
      } else if (rr.outcome.kind == OutcomeKind::Accept) {
        cell.kind = 2;
      }
    }
  }

  AutomatonBuilder out(base);
  for (StateId q = 0; q < nq; ++q) out.add_state(b.states.name(q), q == b.initial);
  for (StateId q = 0; q < nq; ++q) {
    for (LabelId fb = 0; fb < nl; ++fb) {
      const Cell& cell = cells[static_cast<size_t>(q) * nl + static_cast<size_t>(fb)];
      if (cell.kind == 1) {
        out.add_trans(b.states.name(q), base->labels.name(fb), b.states.name(cell.state),
                      base->dirs.name(cell.dir));
      } else if (cell.kind == 2) {
        out.add_accept(b.states.name(q), base->labels.name(fb));
      }
    }
  }
  return out.build();
}

}  // namespace gwa
