#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gwa/signature.hpp"

namespace gwa {

struct Transition {
  StateId state;
  DirId dir;
};

// A graph-walking automaton: a finite control moving along edges. The
// transition function is partial and disjoint from the acceptance set.
// `initial` may be kNone (the backtracking construction has no initial state).
struct Automaton {
  SignaturePtr sig;
  NameTable states;
  StateId initial = kNone;
  std::vector<char> accept;            // dense |Q| x |Sigma|
  std::vector<StateId> delta_state;    // dense |Q| x |Sigma|, kNone = undefined
  std::vector<DirId> delta_dir;

  size_t cell(StateId q, LabelId a) const {
    return static_cast<size_t>(q) * static_cast<size_t>(sig->label_count()) +
           static_cast<size_t>(a);
  }
  bool is_accept(StateId q, LabelId a) const { return accept[cell(q, a)] != 0; }
  std::optional<Transition> trans(StateId q, LabelId a) const {
    size_t c = cell(q, a);
    if (delta_state[c] == kNone) return std::nullopt;
    return Transition{delta_state[c], delta_dir[c]};
  }
  int state_count() const { return states.size(); }
  StateId state(std::string_view name) const;  // throws if absent

  bool operator==(const Automaton& other) const;
};

class AutomatonBuilder {
public:
  explicit AutomatonBuilder(SignaturePtr sig) : sig_(std::move(sig)) {}

  void add_state(const std::string& name, bool initial = false);
  void add_accept(const std::string& state, const std::string& label);
  void add_trans(const std::string& from, const std::string& label, const std::string& to,
                 const std::string& dir);

  Automaton build() const;  // throws on unknown names / duplicate records

private:
  SignaturePtr sig_;
  std::vector<std::pair<std::string, bool>> states_;
  std::vector<std::pair<std::string, std::string>> accepts_;
  std::vector<std::tuple<std::string, std::string, std::string, std::string>> trans_;
};

struct AutomatonReport : ValidationReport {
  bool returning = false;  // accept pairs use initial labels only
};

AutomatonReport validate_automaton(const Automaton& a, const Signature& s);

// d(q) for every state, where defined transitions entering q all use d(q).
// States never entered by any transition keep an arbitrary least direction and
// are flagged unconstrained.
struct DirectionMap {
  std::vector<DirId> dir;
  std::vector<char> constrained;

  DirId of(StateId q) const { return dir[static_cast<size_t>(q)]; }
};

// Present iff the automaton is direction-determinate.
std::optional<DirectionMap> direction_map_of(const Automaton& a);

// Rebuilds a over `sig`, matching labels and directions by name.
Automaton rebase_automaton(const Automaton& a, SignaturePtr sig);

}  // namespace gwa
