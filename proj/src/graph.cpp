#include "gwa/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace gwa {

NodeId Graph::node(std::string_view name) const {
  NodeId v = nodes.id_of(name);
  if (v == kNone) throw std::invalid_argument("unknown node: " + std::string(name));
  return v;
}

bool Graph::operator==(const Graph& other) const {
  return *sig == *other.sig && nodes == other.nodes && label_of == other.label_of &&
         initial == other.initial && edge == other.edge;
}

bool OpenGraph::is_port(NodeId v, DirId d) const {
  return std::binary_search(ports.begin(), ports.end(), Port{v, d});
}

void GraphBuilder::add_node(const std::string& name, const std::string& label, bool initial) {
  nodes_.emplace_back(name, label, initial);
}

void GraphBuilder::add_edge(const std::string& v, const std::string& d, const std::string& u) {
  edges_.emplace_back(v, d, u);
}

void GraphBuilder::add_port(const std::string& v, const std::string& d) {
  ports_.emplace_back(v, d);
}

Graph GraphBuilder::build() const {
  if (!ports_.empty()) throw std::logic_error("ports recorded; use build_open");
  return build_open().graph;
}

OpenGraph GraphBuilder::build_open() const {
  Graph g;
  g.sig = sig_;
  std::vector<std::string> names;
  names.reserve(nodes_.size());
  for (const auto& [name, label, initial] : nodes_) names.push_back(name);
  g.nodes = NameTable::from(std::move(names));
  const size_t nv = static_cast<size_t>(g.nodes.size());
  const size_t nd = static_cast<size_t>(sig_->direction_count());
  g.label_of.assign(nv, kNone);
  g.edge.assign(nv * nd, kNone);
  for (const auto& [name, label, initial] : nodes_) {
    NodeId v = g.nodes.id_of(name);
    g.label_of[static_cast<size_t>(v)] = sig_->label(label);
    if (initial) {
      if (g.initial != kNone) throw std::invalid_argument("two initial nodes: " + name);
      g.initial = v;
    }
  }
  auto set_half = [&](NodeId v, DirId d, NodeId u) {
    NodeId& slot = g.edge[static_cast<size_t>(v) * nd + static_cast<size_t>(d)];
    if (slot != kNone && slot != u) {
      throw std::invalid_argument("conflicting edges at (" + g.nodes.name(v) + ", " +
                                  sig_->dirs.name(d) + ")");
    }
    slot = u;
  };
  for (const auto& [vn, dn, un] : edges_) {
    NodeId v = g.node(vn), u = g.node(un);
    DirId d = sig_->dir(dn);
    set_half(v, d, u);
    set_half(u, sig_->opp(d), v);
  }

  OpenGraph og;
  og.graph = std::move(g);
  for (const auto& [vn, dn] : ports_) {
    og.ports.emplace_back(og.graph.node(vn), sig_->dir(dn));
  }
  std::sort(og.ports.begin(), og.ports.end());
  og.ports.erase(std::unique(og.ports.begin(), og.ports.end()), og.ports.end());
  return og;
}

namespace {

// Shared involution/allowed-set checks; `ports` may be null for closed graphs.
void check_edges(const Graph& g, const Signature& s, const std::vector<Port>* ports,
                 ValidationReport& r) {
  const int nd = s.direction_count();
  auto is_port = [&](NodeId v, DirId d) {
    return ports != nullptr && std::binary_search(ports->begin(), ports->end(), Port{v, d});
  };
  for (NodeId v = 0; v < g.node_count(); ++v) {
    LabelId a = g.label(v);
    if (a < 0 || a >= s.label_count()) {
      r.violations.push_back("node " + g.nodes.name(v) + " has an unknown label");
      continue;
    }
    for (DirId d = 0; d < nd; ++d) {
      NodeId u = g.target(v, d);
      bool allowed = s.allows(a, d);
      if (u == kNone) {
        if (allowed && !is_port(v, d)) {
          r.violations.push_back("missing edge at (" + g.nodes.name(v) + ", " + s.dirs.name(d) +
                                 "): direction allowed by label " + s.labels.name(a));
        }
        continue;
      }
      if (!allowed) {
        r.violations.push_back("edge at (" + g.nodes.name(v) + ", " + s.dirs.name(d) +
                               ") not allowed by label " + s.labels.name(a));
      }
      if (is_port(v, d)) {
        r.violations.push_back("port (" + g.nodes.name(v) + ", " + s.dirs.name(d) +
                               ") also has an internal edge");
      }
      if (u < 0 || u >= g.node_count()) {
        r.violations.push_back("edge at (" + g.nodes.name(v) + ", " + s.dirs.name(d) +
                               ") leaves the node set");
        continue;
      }
      if (g.target(u, s.opp(d)) != v) {
        r.violations.push_back("involution broken at (" + g.nodes.name(v) + ", " + s.dirs.name(d) +
                               ")");
      }
    }
  }
}

void check_initial(const Graph& g, const Signature& s, ValidationReport& r) {
  for (NodeId v = 0; v < g.node_count(); ++v) {
    bool init_label = s.is_initial(g.label(v));
    bool is_init = (v == g.initial);
    if (init_label && !is_init) {
      r.violations.push_back("node " + g.nodes.name(v) +
                             " carries an initial label but is not the initial node");
    }
    if (is_init && !init_label) {
      r.violations.push_back("initial node " + g.nodes.name(v) +
                             " does not carry an initial label");
    }
  }
}

}  // namespace

ValidationReport validate_graph(const Graph& g, const Signature& s) {
  ValidationReport r;
  if (g.label_of.size() != static_cast<size_t>(g.node_count()) ||
      g.edge.size() != static_cast<size_t>(g.node_count()) *
                           static_cast<size_t>(s.direction_count())) {
    r.violations.push_back("node tables have wrong size");
    return r;
  }
  check_edges(g, s, nullptr, r);
  check_initial(g, s, r);
  return r;
}

ValidationReport validate_open_graph(const OpenGraph& og, const Signature& s) {
  ValidationReport r;
  const Graph& g = og.graph;
  for (const auto& [v, d] : og.ports) {
    if (v < 0 || v >= g.node_count() || d < 0 || d >= s.direction_count()) {
      r.violations.push_back("port out of range");
      return r;
    }
    if (!s.allows(g.label(v), d)) {
      r.violations.push_back("port (" + g.nodes.name(v) + ", " + s.dirs.name(d) +
                             ") not allowed by label " + s.labels.name(g.label(v)));
    }
  }
  check_edges(g, s, &og.ports, r);
  check_initial(g, s, r);
  return r;
}

Graph rebase_graph(const Graph& g, SignaturePtr sig) {
  const Signature& olds = *g.sig;
  Graph out;
  out.sig = std::move(sig);
  out.nodes = g.nodes;
  out.initial = g.initial;
  const size_t nv = static_cast<size_t>(g.node_count());
  const size_t nd = static_cast<size_t>(out.sig->direction_count());
  out.label_of.resize(nv);
  for (size_t v = 0; v < nv; ++v) {
    out.label_of[v] = out.sig->label(olds.labels.name(g.label_of[v]));
  }
  out.edge.assign(nv * nd, kNone);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (DirId d = 0; d < olds.direction_count(); ++d) {
      NodeId u = g.target(v, d);
      if (u == kNone) continue;
      DirId nd2 = out.sig->dir(olds.dirs.name(d));
      out.edge[static_cast<size_t>(v) * nd + static_cast<size_t>(nd2)] = u;
    }
  }
  return out;
}

}  // namespace gwa
