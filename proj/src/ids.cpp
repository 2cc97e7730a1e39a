#include "gwa/ids.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace gwa {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

bool natural_less(std::string_view a, std::string_view b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    char ca = a[i], cb = b[j];
    if (is_digit(ca) && is_digit(cb)) {
      size_t ia = i, jb = j;
      while (ia < a.size() && is_digit(a[ia])) ++ia;
      while (jb < b.size() && is_digit(b[jb])) ++jb;
      std::string_view da = a.substr(i, ia - i);
      std::string_view db = b.substr(j, jb - j);
      std::string_view ta = da.substr(std::min(da.find_first_not_of('0'), da.size() - 1));
      std::string_view tb = db.substr(std::min(db.find_first_not_of('0'), db.size() - 1));
      if (ta.size() != tb.size()) return ta.size() < tb.size();
      if (ta != tb) return ta < tb;
      // Equal numeric value: fewer leading zeros first, then keep scanning.
      if (da.size() != db.size()) return da.size() < db.size();
      i = ia;
      j = jb;
      continue;
    }
    if (ca != cb) return static_cast<unsigned char>(ca) < static_cast<unsigned char>(cb);
    ++i;
    ++j;
  }
  if (i == a.size() && j == b.size()) return false;
  return i == a.size();
}

NameTable NameTable::from(std::vector<std::string> names) {
  std::sort(names.begin(), names.end(),
            [](const std::string& x, const std::string& y) { return natural_less(x, y); });
  for (size_t i = 1; i < names.size(); ++i) {
    if (names[i] == names[i - 1]) {
      throw std::invalid_argument("duplicate name: " + names[i]);
    }
  }
  NameTable t;
  t.names_ = std::move(names);
  return t;
}

int NameTable::id_of(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name,
                             [](const std::string& x, std::string_view y) { return natural_less(x, y); });
  if (it == names_.end() || std::string_view(*it) != name) return kNone;
  return static_cast<int>(it - names_.begin());
}

}  // namespace gwa
