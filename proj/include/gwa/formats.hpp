#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "gwa/automaton.hpp"
#include "gwa/graph.hpp"

namespace gwa {

// Located parse failure; line and column are 1-based.
class ParseError : public std::runtime_error {
public:
  ParseError(size_t line, size_t col, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " +
                           message),
        line(line),
        col(col) {}
  size_t line, col;
};

// One record per line, '#' starts a comment. Signature files carry `dir` and
// `label` records; the signature's name comes from the caller (file stem).
Signature parse_signature(std::string_view text, std::string_view name);

// Graph files: `over <signature-name>`, `node <id> <label> [initial]`,
// `edge <v> <d> <u>` (reverse half implied), `port <v> <d>` for fragments.
OpenGraph parse_open_graph(std::string_view text, SignaturePtr sig);
Graph parse_graph(std::string_view text, SignaturePtr sig);  // rejects port records

// Automaton files: `over <signature-name>`, `state <id> [initial]`,
// `accept <state> <label>`, `trans <state> <label> -> <state> <dir>`.
Automaton parse_automaton(std::string_view text, SignaturePtr sig);

// Canonical serialization: records sorted in the fixed name order, each
// undirected edge written once. parse(serialize(x)) == x.
std::string serialize(const Signature& s);
std::string serialize(const Graph& g);
std::string serialize(const OpenGraph& og);
std::string serialize(const Automaton& a);

// DOT export: undirected graphs with direction-annotated edges; automata as
// state diagrams with label/direction captions. `visited` (per node) adds
// highlighting.
std::string to_dot(const Graph& g, const std::vector<char>* visited = nullptr);
std::string to_dot(const Automaton& a);

}  // namespace gwa
