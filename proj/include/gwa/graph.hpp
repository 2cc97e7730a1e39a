#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gwa/signature.hpp"

namespace gwa {

// A finite node-labelled graph over a signature. The edge function is partial;
// moving by d and then by -d returns to the start. `initial` may be kNone for
// subgraph values (diodes, elements), which are not runnable on their own.
struct Graph {
  SignaturePtr sig;
  NameTable nodes;
  std::vector<LabelId> label_of;  // per node
  NodeId initial = kNone;
  std::vector<NodeId> edge;       // dense |V| x |D|, kNone = undefined

  NodeId target(NodeId v, DirId d) const {
    return edge[static_cast<size_t>(v) * static_cast<size_t>(sig->direction_count()) +
                static_cast<size_t>(d)];
  }
  LabelId label(NodeId v) const { return label_of[static_cast<size_t>(v)]; }
  int node_count() const { return nodes.size(); }
  NodeId node(std::string_view name) const;  // throws if absent

  bool operator==(const Graph& other) const;
};

// (node, direction) pair whose edge leads outside of an open subgraph.
using Port = std::pair<NodeId, DirId>;

// A graph fragment with boundary ports. Port slots are allowed directions
// whose edge is intentionally left undefined inside the fragment.
struct OpenGraph {
  Graph graph;
  std::vector<Port> ports;  // sorted

  bool is_port(NodeId v, DirId d) const;
};

class GraphBuilder {
public:
  explicit GraphBuilder(SignaturePtr sig) : sig_(std::move(sig)) {}

  void add_node(const std::string& name, const std::string& label, bool initial = false);
  // Records the half-edge (v,d) -> u; the reverse half-edge (u,-d) -> v is implied.
  void add_edge(const std::string& v, const std::string& d, const std::string& u);
  void add_port(const std::string& v, const std::string& d);

  // Resolves names, materializes both half-edges of every edge record, and
  // returns the value. Throws on unknown names, duplicate nodes, and
  // conflicting edge records.
  Graph build() const;
  OpenGraph build_open() const;

private:
  SignaturePtr sig_;
  std::vector<std::tuple<std::string, std::string, bool>> nodes_;
  std::vector<std::tuple<std::string, std::string, std::string>> edges_;
  std::vector<std::pair<std::string, std::string>> ports_;
};

ValidationReport validate_graph(const Graph& g, const Signature& s);
ValidationReport validate_open_graph(const OpenGraph& og, const Signature& s);

// Rebuilds g over `sig`, matching labels and directions by name. Throws if a
// name is missing. Used to run automata over a merged signature on graphs
// generated over a sub-signature.
Graph rebase_graph(const Graph& g, SignaturePtr sig);

}  // namespace gwa
