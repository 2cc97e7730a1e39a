#include "gwa/formats.hpp"

#include <map>
#include <set>
#include <sstream>

namespace gwa {

namespace {

struct Token {
  std::string text;
  size_t line, col;
};

// Lines of whitespace-separated tokens; '#' comments stripped.
std::vector<std::vector<Token>> tokenize(std::string_view text) {
  std::vector<std::vector<Token>> lines;
  size_t line_no = 1;
  size_t i = 0;
  std::vector<Token> cur;
  size_t col = 1;
  auto flush_line = [&]() {
    if (!cur.empty()) lines.push_back(std::move(cur));
    cur.clear();
    ++line_no;
    col = 1;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      flush_line();
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    size_t start = i, start_col = col;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\r' &&
           text[i] != '\n' && text[i] != '#') {
      ++i;
      ++col;
    }
    cur.push_back({std::string(text.substr(start, i - start)), line_no, start_col});
  }
  flush_line();
  return lines;
}

[[noreturn]] void fail(const Token& t, const std::string& message) {
  throw ParseError(t.line, t.col, message);
}

void check_over(const std::vector<Token>& line, const Signature& sig) {
  if (line.size() != 2) fail(line[0], "expected: over <signature-name>");
  if (line[1].text != sig.name) {
    fail(line[1], "file is over signature '" + line[1].text + "', loaded signature is '" +
                      sig.name + "'");
  }
}

}  // namespace

Signature parse_signature(std::string_view text, std::string_view name) {
  std::vector<std::pair<std::string, std::string>> dir_pairs;
  std::vector<LabelSpec> labels;
  for (const auto& line : tokenize(text)) {
    const Token& head = line[0];
    if (head.text == "dir") {
      if (line.size() != 3) fail(head, "expected: dir <d> <-d>");
      dir_pairs.emplace_back(line[1].text, line[2].text);
    } else if (head.text == "label") {
      if (line.size() < 3) fail(head, "expected: label <name> [initial] allow <dirs...>");
      LabelSpec spec;
      spec.name = line[1].text;
      size_t i = 2;
      if (line[i].text == "initial") {
        spec.initial = true;
        ++i;
      }
      if (i >= line.size() || line[i].text != "allow") fail(line[i < line.size() ? i : i - 1], "expected 'allow'");
      for (++i; i < line.size(); ++i) spec.allowed.push_back(line[i].text);
      labels.push_back(std::move(spec));
    } else {
      fail(head, "unknown record '" + head.text + "' in signature file");
    }
  }
  try {
    return make_signature(std::string(name), dir_pairs, labels);
  } catch (const std::invalid_argument& e) {
    throw ParseError(1, 1, e.what());
  }
}

OpenGraph parse_open_graph(std::string_view text, SignaturePtr sig) {
  auto lines = tokenize(text);
  GraphBuilder b(sig);
  bool have_over = false;
  bool have_initial = false;
  std::map<std::string, size_t> node_lines;

  // Pass 1: node records, so that edges may reference nodes in any order.
  for (const auto& line : lines) {
    const Token& head = line[0];
    if (head.text == "over") {
      check_over(line, *sig);
      have_over = true;
    } else if (head.text == "node") {
      if (line.size() < 3 || line.size() > 4) fail(head, "expected: node <id> <label> [initial]");
      bool initial = line.size() == 4;
      if (initial && line[3].text != "initial") fail(line[3], "expected 'initial'");
      if (!node_lines.emplace(line[1].text, head.line).second) {
        fail(line[1], "duplicate node '" + line[1].text + "'");
      }
      if (sig->labels.id_of(line[2].text) == kNone) {
        fail(line[2], "unknown label: " + line[2].text);
      }
      if (initial) {
        if (have_initial) fail(line[1], "two initial nodes");
        have_initial = true;
      }
      b.add_node(line[1].text, line[2].text, initial);
    } else if (head.text != "edge" && head.text != "port") {
      fail(head, "unknown record '" + head.text + "' in graph file");
    }
  }
  if (!have_over) throw ParseError(1, 1, "missing 'over <signature-name>' record");

  // Pass 2: edges and ports against the collected nodes; half-edge slots are
  // tracked so conflicting records are reported where they occur.
  std::map<std::pair<std::string, std::string>, std::string> slot;
  auto claim = [&](const Token& at, const std::string& v, const std::string& d,
                   const std::string& target) {
    auto [it, fresh] = slot.emplace(std::make_pair(v, d), target);
    if (!fresh && it->second != target) {
      fail(at, "conflicting records at (" + v + ", " + d + ")");
    }
  };
  auto need_node = [&](const Token& t) {
    if (!node_lines.count(t.text)) fail(t, "unknown node: " + t.text);
  };
  auto need_dir = [&](const Token& t) {
    if (sig->dirs.id_of(t.text) == kNone) fail(t, "unknown direction: " + t.text);
  };
  for (const auto& line : lines) {
    const Token& head = line[0];
    if (head.text == "edge") {
      if (line.size() != 4) fail(head, "expected: edge <v> <d> <u>");
      need_node(line[1]);
      need_dir(line[2]);
      need_node(line[3]);
      const std::string opp = sig->dirs.name(sig->opp(sig->dir(line[2].text)));
      claim(head, line[1].text, line[2].text, line[3].text);
      claim(head, line[3].text, opp, line[1].text);
      b.add_edge(line[1].text, line[2].text, line[3].text);
    } else if (head.text == "port") {
      if (line.size() != 3) fail(head, "expected: port <v> <d>");
      need_node(line[1]);
      need_dir(line[2]);
      claim(head, line[1].text, line[2].text, "<outside>");
      b.add_port(line[1].text, line[2].text);
    }
  }
  try {
    return b.build_open();
  } catch (const std::invalid_argument& e) {
    throw ParseError(1, 1, e.what());
  }
}

Graph parse_graph(std::string_view text, SignaturePtr sig) {
  OpenGraph og = parse_open_graph(text, sig);
  if (!og.ports.empty()) throw ParseError(1, 1, "graph file contains port records");
  return std::move(og.graph);
}

Automaton parse_automaton(std::string_view text, SignaturePtr sig) {
  auto lines = tokenize(text);
  AutomatonBuilder b(sig);
  bool have_over = false;
  bool have_initial = false;
  std::set<std::string> states;

  for (const auto& line : lines) {
    const Token& head = line[0];
    if (head.text == "over") {
      check_over(line, *sig);
      have_over = true;
    } else if (head.text == "state") {
      if (line.size() < 2 || line.size() > 3) fail(head, "expected: state <id> [initial]");
      bool initial = line.size() == 3;
      if (initial && line[2].text != "initial") fail(line[2], "expected 'initial'");
      if (!states.insert(line[1].text).second) {
        fail(line[1], "duplicate state '" + line[1].text + "'");
      }
      if (initial) {
        if (have_initial) fail(line[1], "two initial states");
        have_initial = true;
      }
      b.add_state(line[1].text, initial);
    } else if (head.text != "accept" && head.text != "trans") {
      fail(head, "unknown record '" + head.text + "' in automaton file");
    }
  }
  if (!have_over) throw ParseError(1, 1, "missing 'over <signature-name>' record");

  auto need_state = [&](const Token& t) {
    if (!states.count(t.text)) fail(t, "unknown state: " + t.text);
  };
  auto need_label = [&](const Token& t) {
    if (sig->labels.id_of(t.text) == kNone) fail(t, "unknown label: " + t.text);
  };
  std::set<std::pair<std::string, std::string>> used;  // (state, label) records
  for (const auto& line : lines) {
    const Token& head = line[0];
    if (head.text == "accept") {
      if (line.size() != 3) fail(head, "expected: accept <state> <label>");
      need_state(line[1]);
      need_label(line[2]);
      if (!used.emplace(line[1].text, line[2].text).second) {
        fail(head, "duplicate record at (" + line[1].text + ", " + line[2].text + ")");
      }
      b.add_accept(line[1].text, line[2].text);
    } else if (head.text == "trans") {
      if (line.size() != 6 || line[3].text != "->") {
        fail(head, "expected: trans <state> <label> -> <state> <dir>");
      }
      need_state(line[1]);
      need_label(line[2]);
      need_state(line[4]);
      if (sig->dirs.id_of(line[5].text) == kNone) fail(line[5], "unknown direction: " + line[5].text);
      if (!used.emplace(line[1].text, line[2].text).second) {
        fail(head, "duplicate record at (" + line[1].text + ", " + line[2].text + ")");
      }
      b.add_trans(line[1].text, line[2].text, line[4].text, line[5].text);
    }
  }
  try {
    return b.build();
  } catch (const std::invalid_argument& e) {
    throw ParseError(1, 1, e.what());
  }
}

std::string serialize(const Signature& s) {
  std::ostringstream out;
  for (DirId d = 0; d < s.direction_count(); ++d) {
    DirId e = s.opp(d);
    if (d <= e) out << "dir " << s.dirs.name(d) << " " << s.dirs.name(e) << "\n";
  }
  for (LabelId l = 0; l < s.label_count(); ++l) {
    out << "label " << s.labels.name(l);
    if (s.is_initial(l)) out << " initial";
    out << " allow";
    for (DirId d : s.allowed[static_cast<size_t>(l)]) out << " " << s.dirs.name(d);
    out << "\n";
  }
  return out.str();
}

namespace {

void write_graph_body(std::ostringstream& out, const Graph& g) {
  const Signature& s = *g.sig;
  out << "over " << s.name << "\n";
  for (NodeId v = 0; v < g.node_count(); ++v) {
    out << "node " << g.nodes.name(v) << " " << s.labels.name(g.label(v));
    if (v == g.initial) out << " initial";
    out << "\n";
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (DirId d = 0; d < s.direction_count(); ++d) {
      NodeId u = g.target(v, d);
      if (u == kNone) continue;
      DirId e = s.opp(d);
      // Each edge appears once, from its smaller endpoint/direction.
      if (v < u || (v == u && d <= e)) {
        out << "edge " << g.nodes.name(v) << " " << s.dirs.name(d) << " " << g.nodes.name(u)
            << "\n";
      }
    }
  }
}

}  // namespace

std::string serialize(const Graph& g) {
  std::ostringstream out;
  write_graph_body(out, g);
  return out.str();
}

std::string serialize(const OpenGraph& og) {
  std::ostringstream out;
  write_graph_body(out, og.graph);
  for (const auto& [v, d] : og.ports) {
    out << "port " << og.graph.nodes.name(v) << " " << og.graph.sig->dirs.name(d) << "\n";
  }
  return out.str();
}

std::string serialize(const Automaton& a) {
  const Signature& s = *a.sig;
  std::ostringstream out;
  out << "over " << s.name << "\n";
  for (StateId q = 0; q < a.state_count(); ++q) {
    out << "state " << a.states.name(q);
    if (q == a.initial) out << " initial";
    out << "\n";
  }
  for (StateId q = 0; q < a.state_count(); ++q) {
    for (LabelId l = 0; l < s.label_count(); ++l) {
      if (a.is_accept(q, l)) {
        out << "accept " << a.states.name(q) << " " << s.labels.name(l) << "\n";
      }
    }
  }
  for (StateId q = 0; q < a.state_count(); ++q) {
    for (LabelId l = 0; l < s.label_count(); ++l) {
      auto t = a.trans(q, l);
      if (t) {
        out << "trans " << a.states.name(q) << " " << s.labels.name(l) << " -> "
            << a.states.name(t->state) << " " << s.dirs.name(t->dir) << "\n";
      }
    }
  }
  return out.str();
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const Graph& g, const std::vector<char>* visited) {
  const Signature& s = *g.sig;
  std::ostringstream out;
  out << "graph gwa {\n  node [shape=circle];\n";
  for (NodeId v = 0; v < g.node_count(); ++v) {
    out << "  " << quote(g.nodes.name(v)) << " [label="
        << quote(g.nodes.name(v) + "\\n" + s.labels.name(g.label(v)));
    if (v == g.initial) out << " penwidth=2";
    if (visited != nullptr && (*visited)[static_cast<size_t>(v)]) {
      out << " style=filled fillcolor=lightblue";
    }
    out << "];\n";
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (DirId d = 0; d < s.direction_count(); ++d) {
      NodeId u = g.target(v, d);
      if (u == kNone) continue;
      DirId e = s.opp(d);
      if (v < u || (v == u && d <= e)) {
        out << "  " << quote(g.nodes.name(v)) << " -- " << quote(g.nodes.name(u)) << " [label="
            << quote(s.dirs.name(d)) << "];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

std::string to_dot(const Automaton& a) {
  const Signature& s = *a.sig;
  std::ostringstream out;
  out << "digraph gwa {\n  node [shape=box];\n";
  for (StateId q = 0; q < a.state_count(); ++q) {
    std::string text = a.states.name(q);
    for (LabelId l = 0; l < s.label_count(); ++l) {
      if (a.is_accept(q, l)) text += "\\naccept: " + s.labels.name(l);
    }
    out << "  " << quote(a.states.name(q)) << " [label=" << quote(text);
    if (q == a.initial) out << " penwidth=2";
    out << "];\n";
  }
  for (StateId q = 0; q < a.state_count(); ++q) {
    for (LabelId l = 0; l < s.label_count(); ++l) {
      auto t = a.trans(q, l);
      if (t) {
        out << "  " << quote(a.states.name(q)) << " -> " << quote(a.states.name(t->state))
            << " [label=" << quote(s.labels.name(l) + " / " + s.dirs.name(t->dir)) << "];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace gwa
