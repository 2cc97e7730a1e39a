#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gwa {

// Ids are indices into a NameTable; kNone marks "undefined" in partial maps.
using DirId = int;
using LabelId = int;
using NodeId = int;
using StateId = int;

constexpr int kNone = -1;

// The global total order on names: digit runs compare numerically, everything
// else bytewise. This order is used everywhere a construction needs "any
// linear order" (direction retry order, DFS child order), so transcripts are
// reproducible.
bool natural_less(std::string_view a, std::string_view b);

// Immutable sorted name table; the id of a name is its rank in natural order.
class NameTable {
public:
  NameTable() = default;

  // Sorts and freezes; throws std::invalid_argument on duplicates.
  static NameTable from(std::vector<std::string> names);

  int id_of(std::string_view name) const;  // kNone if absent
  const std::string& name(int id) const { return names_[static_cast<size_t>(id)]; }
  int size() const { return static_cast<int>(names_.size()); }
  bool contains(std::string_view name) const { return id_of(name) != kNone; }

  const std::vector<std::string>& names() const { return names_; }

  bool operator==(const NameTable& other) const { return names_ == other.names_; }

private:
  std::vector<std::string> names_;
};

}  // namespace gwa
