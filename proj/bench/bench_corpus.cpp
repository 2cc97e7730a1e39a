// Compares the serial reference and the OpenMP path of the corpus-check
// kernel on a mixed workload: random graphs plus large witness graphs.

#include <chrono>
#include <iostream>

#include "gwa/checkers.hpp"
#include "gwa/transform.hpp"
#include "gwa/witnesses.hpp"

using namespace gwa;
using Clock = std::chrono::steady_clock;

namespace {

double time_run(const Automaton& a, const Corpus& c, ExecMode mode, int reps) {
  auto t0 = Clock::now();
  for (int i = 0; i < reps; ++i) {
    volatile size_t sink = accepts_over(a, c, mode).size();
    (void)sink;
  }
  return std::chrono::duration<double>(Clock::now() - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
  int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  auto sig = std::make_shared<Signature>(build_signature_tilde());

  Corpus c = random_graphs(sig, 300, 40, 7);
  for (int n : {2, 3}) {
    WitnessBundle w = build_witness_graphs({n, 4, 2520}, sig, 8);
    c.graphs.push_back(w.accept_graph);
    c.graphs.push_back(w.reject_graph);
    c.graphs.push_back(w.joint_graph);
    for (const auto& g : w.gx) c.graphs.push_back(g);
  }
  c.provenance = "bench";

  std::cout << "corpus: " << c.size() << " graphs\n";
  std::cout << "automaton            serial      parallel    speedup\n";
  for (int n : {2, 3, 4}) {
    Automaton a = to_returning(build_witness_automaton(n, sig)).output;
    // Results must agree before timing means anything.
    if (accepts_over(a, c, ExecMode::Serial) != accepts_over(a, c, ExecMode::Parallel)) {
      std::cerr << "serial/parallel mismatch\n";
      return 1;
    }
    double ts = time_run(a, c, ExecMode::Serial, reps);
    double tp = time_run(a, c, ExecMode::Parallel, reps);
    std::printf("returning(A(%d))     %8.4fs   %8.4fs   %5.2fx\n", n, ts, tp, ts / tp);
  }
  return 0;
}
