#include "gwa/signature.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace gwa {

std::string ValidationReport::joined() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v;
  }
  return out;
}

bool Signature::allows(LabelId a, DirId d) const {
  const auto& ds = allowed[static_cast<size_t>(a)];
  return std::binary_search(ds.begin(), ds.end(), d);
}

DirId Signature::dir(std::string_view n) const {
  DirId d = dirs.id_of(n);
  if (d == kNone) throw std::invalid_argument("unknown direction: " + std::string(n));
  return d;
}

LabelId Signature::label(std::string_view n) const {
  LabelId a = labels.id_of(n);
  if (a == kNone) throw std::invalid_argument("unknown label: " + std::string(n));
  return a;
}

bool Signature::operator==(const Signature& other) const {
  return dirs == other.dirs && opposite == other.opposite && labels == other.labels &&
         label_initial == other.label_initial && allowed == other.allowed;
}

Signature make_signature(std::string name,
                         const std::vector<std::pair<std::string, std::string>>& dir_pairs,
                         const std::vector<LabelSpec>& label_specs) {
  Signature s;
  s.name = std::move(name);
  std::vector<std::string> dir_names;
  for (const auto& [d, e] : dir_pairs) {
    dir_names.push_back(d);
    if (e != d) dir_names.push_back(e);
  }
  s.dirs = NameTable::from(std::move(dir_names));
  s.opposite.assign(static_cast<size_t>(s.dirs.size()), kNone);
  for (const auto& [d, e] : dir_pairs) {
    DirId i = s.dirs.id_of(d), j = s.dirs.id_of(e);
    s.opposite[static_cast<size_t>(i)] = j;
    s.opposite[static_cast<size_t>(j)] = i;
  }

  std::vector<std::string> label_names;
  for (const auto& spec : label_specs) label_names.push_back(spec.name);
  s.labels = NameTable::from(std::move(label_names));
  s.label_initial.assign(static_cast<size_t>(s.labels.size()), 0);
  s.allowed.assign(static_cast<size_t>(s.labels.size()), {});
  for (const auto& spec : label_specs) {
    LabelId a = s.labels.id_of(spec.name);
    s.label_initial[static_cast<size_t>(a)] = spec.initial ? 1 : 0;
    std::vector<DirId> ds;
    for (const auto& dn : spec.allowed) ds.push_back(s.dir(dn));
    std::sort(ds.begin(), ds.end());
    s.allowed[static_cast<size_t>(a)] = std::move(ds);
  }
  return s;
}

ValidationReport validate_signature(const Signature& s) {
  ValidationReport r;
  const size_t nd = static_cast<size_t>(s.dirs.size());
  if (s.opposite.size() != nd) {
    r.violations.push_back("opposite map has wrong size");
    return r;
  }
  for (size_t d = 0; d < nd; ++d) {
    DirId e = s.opposite[d];
    if (e < 0 || e >= static_cast<DirId>(nd)) {
      r.violations.push_back("opposite of direction " + s.dirs.name(static_cast<int>(d)) +
                             " is out of range");
      continue;
    }
    if (s.opposite[static_cast<size_t>(e)] != static_cast<DirId>(d)) {
      r.violations.push_back("opposite not involutive at direction " +
                             s.dirs.name(static_cast<int>(d)));
    }
  }
  const size_t nl = static_cast<size_t>(s.labels.size());
  if (s.label_initial.size() != nl || s.allowed.size() != nl) {
    r.violations.push_back("label tables have wrong size");
    return r;
  }
  for (size_t a = 0; a < nl; ++a) {
    std::set<DirId> seen;
    for (DirId d : s.allowed[a]) {
      if (d < 0 || d >= static_cast<DirId>(nd)) {
        r.violations.push_back("allowed set of label " + s.labels.name(static_cast<int>(a)) +
                               " contains an unknown direction");
      } else if (!seen.insert(d).second) {
        r.violations.push_back("allowed set of label " + s.labels.name(static_cast<int>(a)) +
                               " lists direction " + s.dirs.name(d) + " twice");
      }
    }
    if (!std::is_sorted(s.allowed[a].begin(), s.allowed[a].end())) {
      r.violations.push_back("allowed set of label " + s.labels.name(static_cast<int>(a)) +
                             " is not sorted");
    }
  }
  return r;
}

Signature merge_signatures(const Signature& s1, const Signature& s2,
                           const std::vector<std::pair<std::string, std::string>>& identify) {
  // Map every s2 direction to its name in the merged signature.
  std::map<std::string, std::string> rename;  // s2 dir name -> merged name
  for (const auto& [n1, n2] : identify) {
    if (s1.dirs.id_of(n1) == kNone) throw std::invalid_argument("identification: " + n1 + " not in " + s1.name);
    if (s2.dirs.id_of(n2) == kNone) throw std::invalid_argument("identification: " + n2 + " not in " + s2.name);
    rename[n2] = n1;
  }
  for (const auto& n : s2.dirs.names()) {
    if (!rename.count(n) && s1.dirs.contains(n)) rename[n] = n;  // same-name identification
  }
  // Identifications must commute with both involutions.
  for (const auto& [n2, n1] : rename) {
    DirId d1 = s1.dirs.id_of(n1);
    DirId d2 = s2.dirs.id_of(n2);
    const std::string& o1 = s1.dirs.name(s1.opp(d1));
    const std::string& o2n = s2.dirs.name(s2.opp(d2));
    auto it = rename.find(o2n);
    if (it == rename.end() || it->second != o1) {
      throw std::invalid_argument("identification breaks the involution at " + n1 + "/" + n2);
    }
  }
  for (const auto& n : s2.labels.names()) {
    if (s1.labels.contains(n)) throw std::invalid_argument("label collision: " + n);
  }

  std::vector<std::pair<std::string, std::string>> dir_pairs;
  std::set<std::string> have;
  auto add_pair = [&](const std::string& d, const std::string& e) {
    if (have.count(d) || have.count(e)) return;
    have.insert(d);
    have.insert(e);
    dir_pairs.emplace_back(d, e);
  };
  for (DirId d = 0; d < s1.dirs.size(); ++d) add_pair(s1.dirs.name(d), s1.dirs.name(s1.opp(d)));
  auto merged_name = [&](const std::string& n2) {
    auto it = rename.find(n2);
    return it == rename.end() ? n2 : it->second;
  };
  for (DirId d = 0; d < s2.dirs.size(); ++d) {
    add_pair(merged_name(s2.dirs.name(d)), merged_name(s2.dirs.name(s2.opp(d))));
  }

  std::vector<LabelSpec> specs;
  auto push_labels = [&](const Signature& s, bool renamed) {
    for (LabelId a = 0; a < s.labels.size(); ++a) {
      LabelSpec spec;
      spec.name = s.labels.name(a);
      spec.initial = s.is_initial(a);
      for (DirId d : s.allowed[static_cast<size_t>(a)]) {
        spec.allowed.push_back(renamed ? merged_name(s.dirs.name(d)) : s.dirs.name(d));
      }
      specs.push_back(std::move(spec));
    }
  };
  push_labels(s1, false);
  push_labels(s2, true);

  return make_signature(s1.name + "+" + s2.name, dir_pairs, specs);
}

}  // namespace gwa
