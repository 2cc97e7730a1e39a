#pragma once

#include <memory>

#include "gwa/automaton.hpp"
#include "gwa/gadgets.hpp"
#include "gwa/signature.hpp"
#include "gwa/transform.hpp"
#include "gwa/witnesses.hpp"

namespace gwa::test {

inline SignaturePtr stilde() {
  static SignaturePtr s = std::make_shared<Signature>(build_signature_tilde());
  return s;
}

// stilde joined with the diode signature, b/-b identified with b1/-b1.
inline SignaturePtr merged(int k) {
  return std::make_shared<Signature>(build_merged_signature(k));
}

inline SignaturePtr sk(int k) { return std::make_shared<Signature>(build_signature_sk(k)); }

inline Automaton witness(int n, SignaturePtr sig = stilde()) {
  return build_witness_automaton(n, sig);
}

// Direction-determinate, inaccessible-free form of a.
inline Automaton dirdet_clean(const Automaton& a) {
  Automaton d = to_direction_determinate(a).output;
  return remove_inaccessible(d, *direction_map_of(d));
}

// A one-state automaton over stilde that walks right and accepts on cr.
inline Automaton right_walker(SignaturePtr sig = stilde()) {
  AutomatonBuilder b(sig);
  b.add_state("w", true);
  b.add_trans("w", "c0", "w", "a");
  b.add_trans("w", "c", "w", "a");
  b.add_accept("w", "cr");
  return b.build();
}

// A two-state automaton that hops across bridges while walking right and
// accepts on cl's opposite end label cr.
inline Automaton bridge_hopper(SignaturePtr sig = stilde()) {
  AutomatonBuilder b(sig);
  b.add_state("h0", true);
  b.add_state("h1");
  b.add_trans("h0", "c0", "h0", "a");
  b.add_trans("h0", "c", "h1", "b");
  b.add_trans("h1", "c", "h0", "a");
  b.add_accept("h0", "cr");
  b.add_accept("h1", "cacc");
  return b.build();
}

// A two-state zig-zag that alternates directions a and b.
inline Automaton zigzag(SignaturePtr sig = stilde()) {
  AutomatonBuilder b(sig);
  b.add_state("z0", true);
  b.add_state("z1");
  b.add_trans("z0", "c0", "z1", "a");
  b.add_trans("z1", "c", "z0", "b");
  b.add_trans("z0", "c", "z1", "a");
  b.add_accept("z1", "cacc");
  b.add_accept("z0", "cr");
  return b.build();
}

}  // namespace gwa::test
