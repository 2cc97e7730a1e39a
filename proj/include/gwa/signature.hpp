#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gwa/ids.hpp"

namespace gwa {

// A list of human-readable problems; empty means the value is well-formed.
// Violations are data, not failures: invalid values are representable.
struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string joined() const;
};

// Directions with an involution, node labels, initial labels, and the set of
// directions allowed at each label. The graph analogue of an alphabet.
struct Signature {
  std::string name;
  NameTable dirs;
  std::vector<DirId> opposite;               // per direction
  NameTable labels;
  std::vector<char> label_initial;           // per label
  std::vector<std::vector<DirId>> allowed;   // per label, sorted by id

  DirId opp(DirId d) const { return opposite[static_cast<size_t>(d)]; }
  bool is_initial(LabelId a) const { return label_initial[static_cast<size_t>(a)] != 0; }
  bool allows(LabelId a, DirId d) const;
  int direction_count() const { return dirs.size(); }
  int label_count() const { return labels.size(); }

  DirId dir(std::string_view n) const;      // throws if absent
  LabelId label(std::string_view n) const;  // throws if absent

  bool operator==(const Signature& other) const;
};

using SignaturePtr = std::shared_ptr<const Signature>;

struct LabelSpec {
  std::string name;
  bool initial = false;
  std::vector<std::string> allowed;
};

// Builds a signature from name pairs (d, -d) and label specs. The builder
// resolves names and sorts; it throws on unknown names but does not check the
// semantic invariants (use validate_signature for that).
Signature make_signature(std::string name,
                         const std::vector<std::pair<std::string, std::string>>& dir_pairs,
                         const std::vector<LabelSpec>& label_specs);

ValidationReport validate_signature(const Signature& s);

// Union of two signatures with disjoint label sets. Directions with equal
// names are identified implicitly; `identify` adds pairs (dir of s1, dir of
// s2) that are merged under s1's name. Throws on label collisions and on
// identifications that break either involution.
Signature merge_signatures(const Signature& s1, const Signature& s2,
                           const std::vector<std::pair<std::string, std::string>>& identify = {});

}  // namespace gwa
