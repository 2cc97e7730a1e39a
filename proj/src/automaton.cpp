#include "gwa/automaton.hpp"

#include <stdexcept>
#include <tuple>

namespace gwa {

StateId Automaton::state(std::string_view name) const {
  StateId q = states.id_of(name);
  if (q == kNone) throw std::invalid_argument("unknown state: " + std::string(name));
  return q;
}

bool Automaton::operator==(const Automaton& other) const {
  return *sig == *other.sig && states == other.states && initial == other.initial &&
         accept == other.accept && delta_state == other.delta_state &&
         delta_dir == other.delta_dir;
}

void AutomatonBuilder::add_state(const std::string& name, bool initial) {
  states_.emplace_back(name, initial);
}

void AutomatonBuilder::add_accept(const std::string& state, const std::string& label) {
  accepts_.emplace_back(state, label);
}

void AutomatonBuilder::add_trans(const std::string& from, const std::string& label,
                                 const std::string& to, const std::string& dir) {
  trans_.emplace_back(from, label, to, dir);
}

Automaton AutomatonBuilder::build() const {
  Automaton a;
  a.sig = sig_;
  std::vector<std::string> names;
  names.reserve(states_.size());
  for (const auto& [name, initial] : states_) names.push_back(name);
  a.states = NameTable::from(std::move(names));
  const size_t cells =
      static_cast<size_t>(a.states.size()) * static_cast<size_t>(sig_->label_count());
  a.accept.assign(cells, 0);
  a.delta_state.assign(cells, kNone);
  a.delta_dir.assign(cells, kNone);
  for (const auto& [name, initial] : states_) {
    if (initial) {
      if (a.initial != kNone) throw std::invalid_argument("two initial states: " + name);
      a.initial = a.states.id_of(name);
    }
  }
  for (const auto& [sn, ln] : accepts_) {
    size_t c = a.cell(a.state(sn), sig_->label(ln));
    if (a.accept[c]) throw std::invalid_argument("duplicate accept record: " + sn + " " + ln);
    a.accept[c] = 1;
  }
  for (const auto& [fn, ln, tn, dn] : trans_) {
    size_t c = a.cell(a.state(fn), sig_->label(ln));
    if (a.delta_state[c] != kNone) {
      throw std::invalid_argument("duplicate transition record at (" + fn + ", " + ln + ")");
    }
    a.delta_state[c] = a.state(tn);
    a.delta_dir[c] = sig_->dir(dn);
  }
  return a;
}

AutomatonReport validate_automaton(const Automaton& a, const Signature& s) {
  AutomatonReport r;
  const size_t cells =
      static_cast<size_t>(a.state_count()) * static_cast<size_t>(s.label_count());
  if (a.accept.size() != cells || a.delta_state.size() != cells || a.delta_dir.size() != cells) {
    r.violations.push_back("state tables have wrong size");
    return r;
  }
  if (a.initial != kNone && (a.initial < 0 || a.initial >= a.state_count())) {
    r.violations.push_back("initial state out of range");
  }
  r.returning = true;
  for (StateId q = 0; q < a.state_count(); ++q) {
    for (LabelId l = 0; l < s.label_count(); ++l) {
      size_t c = a.cell(q, l);
      if (a.accept[c] && !s.is_initial(l)) r.returning = false;
      if (a.delta_state[c] == kNone) continue;
      if (a.accept[c]) {
        r.violations.push_back("delta/accept overlap at (" + a.states.name(q) + ", " +
                               s.labels.name(l) + ")");
      }
      if (a.delta_state[c] < 0 || a.delta_state[c] >= a.state_count()) {
        r.violations.push_back("transition target out of range at (" + a.states.name(q) + ", " +
                               s.labels.name(l) + ")");
        continue;
      }
      DirId d = a.delta_dir[c];
      if (d < 0 || d >= s.direction_count() || !s.allows(l, d)) {
        r.violations.push_back("direction not allowed at label: (" + a.states.name(q) + ", " +
                               s.labels.name(l) + ") moves " +
                               (d >= 0 && d < s.direction_count() ? s.dirs.name(d) : "?"));
      }
    }
  }
  return r;
}

std::optional<DirectionMap> direction_map_of(const Automaton& a) {
  const Signature& s = *a.sig;
  DirectionMap dm;
  dm.dir.assign(static_cast<size_t>(a.state_count()), kNone);
  dm.constrained.assign(static_cast<size_t>(a.state_count()), 0);
  for (StateId q = 0; q < a.state_count(); ++q) {
    for (LabelId l = 0; l < s.label_count(); ++l) {
      auto t = a.trans(q, l);
      if (!t) continue;
      size_t tgt = static_cast<size_t>(t->state);
      if (!dm.constrained[tgt]) {
        dm.dir[tgt] = t->dir;
        dm.constrained[tgt] = 1;
      } else if (dm.dir[tgt] != t->dir) {
        return std::nullopt;  // entered via two distinct directions
      }
    }
  }
  for (size_t q = 0; q < dm.dir.size(); ++q) {
    if (dm.dir[q] == kNone) dm.dir[q] = 0;  // never entered: arbitrary least direction
  }
  return dm;
}

Automaton rebase_automaton(const Automaton& a, SignaturePtr sig) {
  const Signature& olds = *a.sig;
  Automaton out;
  out.sig = std::move(sig);
  out.states = a.states;
  out.initial = a.initial;
  const size_t cells =
      static_cast<size_t>(a.state_count()) * static_cast<size_t>(out.sig->label_count());
  out.accept.assign(cells, 0);
  out.delta_state.assign(cells, kNone);
  out.delta_dir.assign(cells, kNone);
  for (StateId q = 0; q < a.state_count(); ++q) {
    for (LabelId l = 0; l < olds.label_count(); ++l) {
      LabelId nl = out.sig->label(olds.labels.name(l));
      size_t c = out.cell(q, nl);
      if (a.is_accept(q, l)) out.accept[c] = 1;
      auto t = a.trans(q, l);
      if (t) {
        out.delta_state[c] = t->state;
        out.delta_dir[c] = out.sig->dir(olds.dirs.name(t->dir));
      }
    }
  }
  return out;
}

}  // namespace gwa
