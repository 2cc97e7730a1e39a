#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gwa/checkers.hpp"
#include "gwa/formats.hpp"
#include "gwa/gadgets.hpp"
#include "gwa/witnesses.hpp"
#include "helpers.hpp"

using namespace gwa;

TEST_CASE("signature round-trip") {
  Signature s = build_signature_tilde();
  std::string text = serialize(s);
  Signature back = parse_signature(text, "stilde");
  CHECK(back == s);
  CHECK(serialize(back) == text);

  Signature s6 = build_signature_sk(6);
  CHECK(parse_signature(serialize(s6), "s6") == s6);
}

TEST_CASE("graph round-trip, including witness and gadget graphs") {
  auto sig = test::stilde();
  WitnessBundle w = build_witness_graphs({2, 4, 12}, sig, 1);
  for (const Graph* g : {&w.accept_graph, &w.reject_graph, &w.joint_graph, &w.gx[1]}) {
    std::string text = serialize(*g);
    Graph back = parse_graph(text, sig);
    CHECK(back == *g);
    CHECK(serialize(back) == text);
  }

  auto msig = test::merged(4);
  DiodeContext ctx = DiodeContext::resolve(msig, {4, 4});
  OpenGraph d = build_diode(ctx);
  std::string text = serialize(d);
  OpenGraph back = parse_open_graph(text, msig);
  CHECK(back.graph == d.graph);
  CHECK(back.ports == d.ports);
}

TEST_CASE("automaton round-trip") {
  auto sig = test::stilde();
  for (int n : {2, 3, 5}) {
    Automaton a = test::witness(n);
    Automaton back = parse_automaton(serialize(a), sig);
    CHECK(back == a);
  }
  // An automaton with no initial state round-trips too.
  Automaton dd = test::dirdet_clean(test::witness(2));
  Automaton bt = build_backtracker(dd, *direction_map_of(dd));
  CHECK(parse_automaton(serialize(bt), sig) == bt);
}

TEST_CASE("witness automaton file for n=3: 3 states, 4 transitions") {
  Automaton a = test::witness(3);
  std::string text = serialize(a);
  int states = 0, trans = 0;
  size_t pos = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("state ", 0) == 0) ++states;
    if (line.rfind("trans ", 0) == 0) ++trans;
  }
  (void)pos;
  CHECK(states == 3);
  CHECK(trans == 4);
}

TEST_CASE("parse errors carry a location") {
  auto sig = test::stilde();

  SUBCASE("an edge naming an unknown node") {
    std::string text = "over stilde\nnode v0 c0 initial\nedge v0 a v1\n";
    try {
      parse_graph(text, sig);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line == 3);
      CHECK(std::string(e.what()).find("unknown node") != std::string::npos);
    }
  }

  SUBCASE("a duplicate record") {
    std::string text = "over stilde\nstate q initial\nstate q\n";
    CHECK_THROWS_AS(parse_automaton(text, sig), ParseError);
  }

  SUBCASE("a wrong 'over' name") {
    CHECK_THROWS_AS(parse_graph("over other\n", sig), ParseError);
  }

  SUBCASE("missing 'over'") {
    CHECK_THROWS_AS(parse_graph("node v0 c0 initial\n", sig), ParseError);
  }

  SUBCASE("comments and blank lines are fine") {
    std::string text = "# a file\nover stilde\n\nnode v0 c0 initial # the start\nnode v1 cr\nedge v0 a v1\n";
    Graph g = parse_graph(text, sig);
    CHECK(g.node_count() == 2);
  }
}

namespace {

// A minimal DOT well-formedness check: graph|digraph ID? { stmt* } with
// node/edge statements and bracketed attribute lists.
bool dot_well_formed(const std::string& text) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '"') {
      size_t j = i + 1;
      while (j < text.size() && text[j] != '"') {
        if (text[j] == '\\') ++j;
        ++j;
      }
      if (j >= text.size()) return false;
      tokens.push_back(text.substr(i, j - i + 1));
      i = j + 1;
      continue;
    }
    if (c == '{' || c == '}' || c == '[' || c == ']' || c == ';' || c == '=') {
      tokens.push_back(std::string(1, c));
      ++i;
      continue;
    }
    if (text.compare(i, 2, "--") == 0 || text.compare(i, 2, "->") == 0) {
      tokens.push_back(text.substr(i, 2));
      i += 2;
      continue;
    }
    size_t j = i;
    while (j < text.size() && !isspace(static_cast<unsigned char>(text[j])) &&
           std::string("{}[];=\"").find(text[j]) == std::string::npos &&
           !(text[j] == '-' && j + 1 < text.size() && (text[j + 1] == '-' || text[j + 1] == '>'))) {
      ++j;
    }
    if (j == i) return false;
    tokens.push_back(text.substr(i, j - i));
    i = j;
  }
  size_t t = 0;
  auto at = [&](const char* s) { return t < tokens.size() && tokens[t] == s; };
  bool digraph;
  if (at("graph")) {
    digraph = false;
  } else if (at("digraph")) {
    digraph = true;
  } else {
    return false;
  }
  ++t;
  if (!at("{")) ++t;  // optional name
  if (!at("{")) return false;
  ++t;
  const std::string edgeop = digraph ? "->" : "--";
  while (t < tokens.size() && !at("}")) {
    // id (edgeop id)* attrs? ;?
    if (tokens[t] == "[" || tokens[t] == "]" || tokens[t] == "=" || tokens[t] == edgeop) {
      return false;
    }
    ++t;
    while (t < tokens.size() && tokens[t] == edgeop) {
      ++t;
      if (t >= tokens.size()) return false;
      ++t;
    }
    while (t < tokens.size() && tokens[t] == "=") {  // a=b attribute statement
      ++t;
      if (t >= tokens.size()) return false;
      ++t;
    }
    if (t < tokens.size() && tokens[t] == "[") {
      while (t < tokens.size() && tokens[t] != "]") ++t;
      if (t >= tokens.size()) return false;
      ++t;
    }
    if (t < tokens.size() && tokens[t] == ";") ++t;
  }
  return t < tokens.size() && tokens[t] == "}";
}

}  // namespace

TEST_CASE("DOT export") {
  auto sig = test::stilde();

  SUBCASE("a two-node chain: one undirected edge") {
    GraphBuilder gb(sig);
    gb.add_node("u", "c0", true);
    gb.add_node("v", "cr");
    gb.add_edge("u", "a", "v");
    std::string dot = to_dot(gb.build());
    CHECK(dot_well_formed(dot));
    size_t count = 0, pos = 0;
    while ((pos = dot.find("--", pos)) != std::string::npos) {
      ++count;
      pos += 2;
    }
    CHECK(count == 1);
  }

  SUBCASE("a mini element passes the grammar check") {
    auto msig = test::sk(4);
    DiodeContext ctx = DiodeContext::resolve(msig, {4, 4});
    OpenGraph e = build_element(1, ctx);
    CHECK(dot_well_formed(to_dot(e.graph)));
  }

  SUBCASE("the 2-state witness automaton: 2 nodes, 3 transition edges") {
    std::string dot = to_dot(test::witness(2));
    CHECK(dot_well_formed(dot));
    size_t count = 0, pos = 0;
    while ((pos = dot.find("->", pos)) != std::string::npos) {
      ++count;
      pos += 2;
    }
    CHECK(count == 3);
  }
}

TEST_CASE("serialization is canonical across reconstruction orders") {
  auto sig = test::stilde();
  GraphBuilder g1(sig);
  g1.add_node("u", "c0", true);
  g1.add_node("v", "cr");
  g1.add_edge("u", "a", "v");
  GraphBuilder g2(sig);
  g2.add_node("v", "cr");
  g2.add_node("u", "c0", true);
  g2.add_edge("v", "-a", "u");  // same edge recorded from the other side
  CHECK(serialize(g1.build()) == serialize(g2.build()));
}

TEST_CASE("property: enumerated corpus round-trips through the text format") {
  auto sig = test::stilde();
  Corpus c = enumerate_graphs(sig, 4);
  for (const auto& g : c.graphs) {
    CHECK(parse_graph(serialize(g), sig) == g);
  }
}
