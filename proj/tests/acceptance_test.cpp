// Acceptance suite: one line per criterion, nonzero exit on any failure.
//
// The corpora, parameters, and tolerances are pinned here:
//   corpus (i)   exhaustive valid two-chain-signature graphs, <= 5 nodes
//   corpus (ii)  witness graphs accept/reject/joint/gx (x <= 8), M = 12
//   corpus (iii) 100 seeded random valid graphs, <= 40 nodes, seed 20240917
//   experiments  n in {2,3}, k = 4, M = 2520

#include <chrono>
#include <iostream>
#include <set>
#include <sstream>

#include "element_table.hpp"
#include "gwa/checkers.hpp"
#include "gwa/gadgets.hpp"
#include "gwa/simulate.hpp"
#include "gwa/transform.hpp"
#include "gwa/witnesses.hpp"
#include "helpers.hpp"

using namespace gwa;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << idx << " (" << name << ")"
            << (detail.empty() ? "" : ": " + detail) << "\n";
  if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Combo {
  int n, k;
  SignaturePtr sig;
  Automaton input;         // witness automaton over sig
  Automaton dirdet_clean;  // product form, inaccessible transitions removed
  TransformReport ret, halt, rev;
};

std::vector<Combo> build_combos() {
  std::vector<Combo> out;
  for (int n : {2, 3, 4}) {
    for (int k : {4, 6}) {
      Combo c;
      c.n = n;
      c.k = k;
      c.sig = k == 4 ? test::stilde() : test::merged(k);
      c.input = k == 4 ? test::witness(n) : rebase_automaton(test::witness(n), c.sig);
      c.dirdet_clean = test::dirdet_clean(c.input);
      auto dm = direction_map_of(c.dirdet_clean);
      c.ret = to_returning(c.input);
      c.halt = to_halting(c.dirdet_clean, *dm);
      c.rev = to_reversible(c.dirdet_clean, *dm);
      out.push_back(std::move(c));
    }
  }
  return out;
}

Corpus corpus_for(const Combo& c, const Corpus& stilde_small, const WitnessBundle& w) {
  Corpus all;
  all.sig = c.sig;
  all.provenance = "exhaustive:5+witness+random:100:40";
  auto push = [&](const Graph& g) {
    all.graphs.push_back(*g.sig == *c.sig ? g : rebase_graph(g, c.sig));
  };
  for (const auto& g : stilde_small.graphs) push(g);
  push(w.accept_graph);
  push(w.reject_graph);
  push(w.joint_graph);
  for (const auto& g : w.gx) push(g);
  Corpus rnd = random_graphs(c.sig, 100, 40, 20240917);
  for (auto& g : rnd.graphs) all.graphs.push_back(std::move(g));
  return all;
}

}  // namespace

// Criterion 1: exact state counts, each transform under a second.
static void criterion_state_counts(std::vector<Combo>& combos) {
  std::ostringstream detail;
  bool pass = true;
  double worst = 0;
  for (auto& c : combos) {
    long n = c.n, k = c.k;
    auto t0 = Clock::now();
    TransformReport ret = to_returning(c.input);
    auto dm = direction_map_of(c.dirdet_clean);
    TransformReport halt = to_halting(c.dirdet_clean, *dm);
    TransformReport rev = to_reversible(c.dirdet_clean, *dm);
    double dt = seconds_since(t0);
    worst = std::max(worst, dt);
    long m = c.dirdet_clean.state_count();
    if (ret.output_states != 2 * n * k + n) {
      pass = false;
      detail << " returning(n=" << n << ",k=" << k << ")=" << ret.output_states;
    }
    if (halt.output_states != 2 * n * k + 1 || halt.output_states != 2 * m + 1) {
      pass = false;
      detail << " halting(n=" << n << ",k=" << k << ")=" << halt.output_states;
    }
    if (rev.output_states != 4 * n * k + 1 || rev.output_states != 4 * m + 1) {
      pass = false;
      detail << " reversible(n=" << n << ",k=" << k << ")=" << rev.output_states;
    }
    if (dt > 1.0) {
      pass = false;
      detail << " slow(" << dt << "s)";
    }
  }
  std::ostringstream d;
  d << "2nk+n / 2nk+1 / 4nk+1 exact for (n,k) in {2,3,4}x{4,6}; 2m+1 / 4m+1 from dirdet m; "
    << "worst transform time " << worst << "s" << detail.str();
  report(1, "state-count formulas", pass, d.str());
}

// Criterion 2: behavioral equivalence of every transform output on the three
// corpora.
static void criterion_equivalence(const std::vector<Combo>& combos, const Corpus& stilde_small) {
  bool pass = true;
  std::ostringstream detail;
  size_t total_graphs = 0;
  for (const auto& c : combos) {
    WitnessBundle w = build_witness_graphs({c.n, c.k, 12}, test::stilde(), 8);
    Corpus corpus = corpus_for(c, stilde_small, w);
    total_graphs += corpus.size();
    for (const auto* out :
         {&c.ret.output, &c.halt.output, &c.rev.output, &c.dirdet_clean}) {
      auto rep = check_equivalent(c.input, *out, corpus);
      if (!rep.pass) {
        pass = false;
        detail << " (n=" << c.n << ",k=" << c.k << "): " << rep.description;
      }
    }
  }
  std::ostringstream d;
  d << "4 outputs x 6 parameter combos, " << total_graphs << " corpus graphs total"
    << detail.str();
  report(2, "behavioral equivalence", pass, d.str());
}

// Criterion 3: the backtracker's two-outcome contract on every eligible
// start, for five direction-determinate fixtures, over corpus (i).
static void criterion_backtracker_contract(const Corpus& stilde_small) {
  std::vector<Automaton> fixtures;
  fixtures.push_back(test::dirdet_clean(test::witness(2)));
  fixtures.push_back(test::dirdet_clean(test::witness(3)));
  fixtures.push_back(test::dirdet_clean(test::right_walker()));
  fixtures.push_back(test::dirdet_clean(test::bridge_hopper()));
  fixtures.push_back(test::dirdet_clean(test::zigzag()));

  long checked = 0, violations = 0;
  std::string first_bad;
  for (const Automaton& a : fixtures) {
    auto dm = direction_map_of(a);
    Automaton bt = build_backtracker(a, *dm);
    const Signature& s = *a.sig;
    for (const auto& g : stilde_small.graphs) {
      auto full = run(a, g, {0, false});
      for (NodeId v = 0; v < g.node_count(); ++v) {
        LabelId l = g.label(v);
        for (StateId q = 0; q < a.state_count(); ++q) {
          if (!a.is_accept(q, l)) continue;
          DirId back = s.opp(dm->of(q));
          if (!s.allows(l, back)) continue;
          ++checked;
          NodeId wback = g.target(v, back);
          StateId start = bt.state("bwd[" + a.states.name(q) + "]");
          auto rr = run_from(bt, g, {start, wback}, {0, false});
          bool a_accepts_here = full.outcome.kind == OutcomeKind::Accept &&
                                full.outcome.at == Configuration{q, v} &&
                                !(q == a.initial && v == g.initial);
          bool ok;
          if (a_accepts_here) {
            auto first = a.trans(a.initial, g.label(g.initial));
            ok = rr.outcome.kind == OutcomeKind::Accept && rr.outcome.at.node == g.initial &&
                 first &&
                 rr.outcome.at.state == bt.state("bwd[" + a.states.name(first->state) + "]");
          } else {
            ok = rr.outcome.kind == OutcomeKind::RejectUndefined && rr.outcome.at.node == v &&
                 rr.outcome.at.state == bt.state("fwd[" + a.states.name(q) + "]");
          }
          if (!ok) {
            ++violations;
            if (first_bad.empty()) {
              first_bad = "state " + a.states.name(q) + " at node " + g.nodes.name(v);
            }
          }
        }
      }
    }
  }
  std::ostringstream d;
  d << "5 fixtures, " << checked << " eligible starts, " << violations << " violations";
  if (!first_bad.empty()) d << " (first: " << first_bad << ")";
  report(3, "backtracker two-outcome contract", violations == 0 && checked > 0, d.str());
}

// Criterion 4: structural checks on every transform output.
static void criterion_structural(const std::vector<Combo>& combos, const Corpus& stilde_small) {
  bool pass = true;
  std::ostringstream detail;
  for (const auto& c : combos) {
    if (!check_returning(c.ret.output).pass) {
      pass = false;
      detail << " returning-check(n=" << c.n << ",k=" << c.k << ")";
    }
    if (!check_reversible(c.rev.output).pass) {
      pass = false;
      detail << " reversible-check(n=" << c.n << ",k=" << c.k << ")";
    }
    WitnessBundle w = build_witness_graphs({c.n, c.k, 12}, test::stilde(), 8);
    Corpus corpus = corpus_for(c, stilde_small, w);
    if (!check_halting_on(c.halt.output, corpus).pass) {
      pass = false;
      detail << " halting-loops(n=" << c.n << ",k=" << c.k << ")";
    }
    const Automaton& h = c.halt.output;
    for (StateId q = 0; q < h.state_count(); ++q) {
      for (LabelId l = 0; l < h.sig->label_count(); ++l) {
        auto t = h.trans(q, l);
        if (t && t->state == h.initial) {
          pass = false;
          detail << " reenterable-initial(n=" << c.n << ",k=" << c.k << ")";
        }
      }
    }
  }
  report(4, "structural checks", pass,
         pass ? "returning/reversible checks pass; halting outputs never loop, initial not "
                "re-enterable"
              : detail.str());
}

// Criterion 5: element/diode edge-table fidelity and forward traversal.
static void criterion_diode(const std::vector<Combo>& combos) {
  bool pass = true;
  std::ostringstream detail;
  long equations_checked = 0;
  for (int k : {4, 6}) {
    for (long M : {4L, 12L}) {
      auto sig = test::sk(k);
      DiodeContext ctx = DiodeContext::resolve(sig, {k, M});
      for (int i = 1; i <= ctx.params.r(); ++i) {
        for (int sgn : {1, -1}) {
          OpenGraph e = build_element(i * sgn, ctx);
          if (!validate_open_graph(e, *sig).ok()) {
            pass = false;
            detail << " element(" << i * sgn << ",k=" << k << ",M=" << M << ") invalid";
          }
          auto bad = test::element_table_violations(e, ctx, i * sgn);
          equations_checked += 1;
          if (!bad.empty()) {
            pass = false;
            detail << " element(" << i * sgn << ",k=" << k << ",M=" << M << "): " << bad.front();
          }
        }
      }
      OpenGraph d = build_diode(ctx);
      if (!validate_open_graph(d, *sig).ok() ||
          d.graph.node_count() != 2L * ctx.params.r() * (9 * M + 2)) {
        pass = false;
        detail << " diode(k=" << k << ",M=" << M << ")";
      }
    }
  }
  // Forward invariance: every state of every extended fixture exits by a
  // unchanged.
  for (const auto& c : combos) {
    if (c.k != 4 && c.k != 6) continue;
    auto msig = test::merged(c.k);
    DiodeContext ctx = DiodeContext::resolve(msig, {c.k, 12});
    Automaton ext = extend_automaton_over_diodes(test::witness(c.n), ctx);
    OpenGraph diode = build_diode(ctx);
    Port entrance{kNone, kNone}, exit_port{kNone, kNone};
    for (auto p : diode.ports) {
      (msig->dirs.name(p.second) == "-a" ? entrance : exit_port) = p;
    }
    for (StateId q = 0; q < ext.state_count(); ++q) {
      auto rr = run_open(ext, diode, entrance, q, {0, false});
      if (!(rr.outcome.kind == OutcomeKind::Exit && rr.outcome.at.state == q &&
            rr.outcome.at.node == exit_port.first && rr.outcome.exit_dir == exit_port.second)) {
        pass = false;
        detail << " forward-invariance(n=" << c.n << ",k=" << c.k << ",state=" << q << ")";
      }
    }
  }
  report(5, "diode fidelity and forward invariance", pass,
         pass ? "all element equations hold for k in {4,6}, M in {4,12}; Exit(a,q) for every "
                "state of every extended fixture"
              : detail.str());
}

// Criterion 6: the substitution equivalences with M=12, k=4 over corpora
// (i) and (ii).
static void criterion_substitution(const Corpus& stilde_small) {
  auto base = test::stilde();
  auto msig = test::merged(4);
  DiodeContext ctx = DiodeContext::resolve(msig, {4, 12});

  std::vector<Graph> corpus = stilde_small.graphs;
  WitnessBundle w = build_witness_graphs({2, 4, 12}, base, 8);
  corpus.push_back(w.accept_graph);
  corpus.push_back(w.reject_graph);
  corpus.push_back(w.joint_graph);
  for (const auto& g : w.gx) corpus.push_back(g);

  bool pass = true;
  std::ostringstream detail;
  long runs = 0;

  // Forward substitution: accept(a, G) iff accept(extend(a), h(G)).
  Automaton a = test::witness(2);
  Automaton ext = extend_automaton_over_diodes(a, ctx);
  // Inverse substitution: accept(inv(b), G) iff accept(b, h(G)), with the
  // returning and halting properties carried through.
  Automaton ret = to_returning(ext).output;
  Automaton inv_ret = inverse_substitution(ret, base, ctx);
  Automaton ext_dd = test::dirdet_clean(ext);
  Automaton halt = to_halting(ext_dd, *direction_map_of(ext_dd)).output;
  Automaton inv_halt = inverse_substitution(halt, base, ctx);

  if (!check_returning(ret).pass || !check_returning(inv_ret).pass) {
    pass = false;
    detail << " returning-not-preserved";
  }

  for (const auto& g : corpus) {
    Graph h = substitute_diodes(g, ctx);
    bool a_acc = run(a, g, {0, false}).outcome.accepted();
    bool ext_acc = run(ext, h, {0, false}).outcome.accepted();
    bool ret_acc = run(ret, h, {0, false}).outcome.accepted();
    bool inv_ret_acc = run(inv_ret, g, {0, false}).outcome.accepted();
    auto halt_run = run(halt, h, {0, false}).outcome;
    auto inv_halt_run = run(inv_halt, g, {0, false}).outcome;
    runs += 6;
    if (a_acc != ext_acc) {
      pass = false;
      detail << " forward-substitution disagrees";
    }
    if (ret_acc != inv_ret_acc) {
      pass = false;
      detail << " inverse-substitution (returning) disagrees";
    }
    if (halt_run.accepted() != inv_halt_run.accepted()) {
      pass = false;
      detail << " inverse-substitution (halting) disagrees";
    }
    if (halt_run.kind == OutcomeKind::Loop || inv_halt_run.kind == OutcomeKind::Loop) {
      pass = false;
      detail << " halting-not-preserved";
    }
    if (!pass) break;
  }
  std::ostringstream d;
  d << corpus.size() << " graphs, " << runs << " runs; forward + inverse substitution with "
    << "returning/halting preservation" << detail.str();
  report(6, "substitution equivalences", pass, d.str());
}

// Criterion 7: the witness pairs behave as designed for n in 2..5, k in
// {4,6}, M=12.
static void criterion_witness_behavior() {
  bool pass = true;
  std::ostringstream detail;
  for (int n = 2; n <= 5; ++n) {
    for (int k : {4, 6}) {
      Automaton a = test::witness(n);
      WitnessBundle w = build_witness_graphs({n, k, 12}, test::stilde(), 0);
      bool acc = run(a, w.accept_graph, {0, false}).outcome.accepted();
      bool rej = !run(a, w.reject_graph, {0, false}).outcome.accepted();
      if (!acc || !rej) {
        pass = false;
        detail << " (n=" << n << ",k=" << k << ")";
      }
    }
  }
  report(7, "witness behavior", pass,
         pass ? "A(n) accepts the accept twin and rejects the reject twin for n in 2..5, k in "
                "{4,6}"
              : "failing:" + detail.str());
}

// Criterion 8: the lower-bound experiments. The bound is asserted when the
// divisibility advisory holds for the probed automaton; otherwise the
// measurement is logged, as the criterion allows.
static void criterion_experiments() {
  bool pass = true;
  std::ostringstream detail;
  for (int n : {2, 3}) {
    WitnessParams p{n, 4, 2520};

    Automaton ret = to_returning(test::witness(n)).output;
    auto r1 = measure_return_states(ret, p);
    detail << " return(n=" << n << "): " << r1.measured << "/" << r1.bound
           << (r1.advisory_met ? " [advisory holds]" : " [measured and logged]");
    if (!r1.applicable || (r1.advisory_met && !r1.bound_met)) pass = false;

    Automaton dd = test::dirdet_clean(test::witness(n));
    Automaton rev = to_reversible(dd, *direction_map_of(dd)).output;
    auto r2 = measure_escape_states(rev, p);
    detail << "; escape-union(n=" << n << "): " << r2.union_measured << "/" << r2.union_bound
           << (r2.advisory_met ? " [advisory holds]" : " [measured and logged]");
    if (!r2.applicable || (r2.advisory_met && !r2.union_bound_met)) pass = false;
    // The measured values meet the bounds at these parameters; keep that as a
    // regression even though the criterion only requires it under the
    // advisory.
    if (!r1.bound_met || r2.union_measured < r2.union_bound) {
      pass = false;
      detail << " [measured value regressed]";
    }
  }
  report(8, "lower-bound experiments", pass, detail.str());
}

int main() {
  auto t0 = Clock::now();
  std::vector<Combo> combos = build_combos();
  Corpus stilde_small = enumerate_graphs(test::stilde(), 5);
  std::cout << "corpus (i): " << stilde_small.size() << " exhaustive graphs (<= 5 nodes)\n";

  criterion_state_counts(combos);
  criterion_equivalence(combos, stilde_small);
  criterion_backtracker_contract(stilde_small);
  criterion_structural(combos, stilde_small);
  criterion_diode(combos);
  criterion_substitution(stilde_small);
  criterion_witness_behavior();
  criterion_experiments();

  std::cout << (g_failures == 0 ? "ALL CRITERIA PASS" : "FAILURES: " + std::to_string(g_failures))
            << " (" << seconds_since(t0) << "s)\n";
  return g_failures == 0 ? 0 : 1;
}
