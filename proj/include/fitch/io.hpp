#pragma once

// Text formats.
//
// Graph files: one record per line, `V <name>` declares a vertex and
// `A <u> <v>` an arc u->v between previously declared vertices. Blank lines
// and lines starting with `#` are ignored.
//
// Labeled Newick: every non-root node carries `:0` or `:1`, the label of
// the edge to its parent; inner nodes are unnamed; the root has no label.
// Serialization uses the canonical child order, so equal trees print equal.

#include <cctype>
#include <cstddef>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fitch/digraph.hpp"
#include "fitch/error.hpp"
#include "fitch/tree.hpp"

namespace fitch {

namespace detail {

inline bool is_newick_special(char c) {
  return c == '(' || c == ')' || c == ',' || c == ':' || c == ';';
}
inline bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : text_(text) {}

  EdgeLabeledTree parse() {
    skip_space();
    const NodeId root = subtree();
    skip_space();
    if (peek() == ':') fail("the root must not carry an edge label");
    expect(';');
    skip_space();
    if (pos_ != text_.size()) fail("unexpected text after ';'");
    if (seen_.size() < 2) fail("single-leaf tree", 0);
    for (NodeId v = 0; v < nodes_.size(); ++v)
      if (nodes_[v].children.size() == 1) fail("inner node with a single child", node_pos_[v]);
    try {
      return EdgeLabeledTree::from_nodes(nodes_, root);
    } catch (const Error& e) {
      fail(e.what());
    }
  }

 private:
  NodeId subtree() {
    skip_space();
    const std::size_t start = pos_;
    const NodeId id = nodes_.size();
    nodes_.emplace_back();
    node_pos_.push_back(start);
    if (peek() == '(') {
      ++pos_;
      while (true) {
        const NodeId child = subtree();
        nodes_[child].parent = id;
        nodes_[id].children.push_back(child);
        skip_space();
        if (peek() != ':') fail("missing edge label");
        ++pos_;
        nodes_[child].label = label();
        skip_space();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        expect(')');
        break;
      }
      skip_space();
      if (pos_ < text_.size() && !is_newick_special(peek())) fail("inner nodes must be unnamed");
    } else {
      std::string name;
      while (pos_ < text_.size() && !is_newick_special(peek()) && !is_space(peek())) name += text_[pos_++];
      if (name.empty()) fail("expected a leaf name or '('");
      if (seen_.count(name) != 0) fail("duplicate leaf name '" + name + "'", start);
      seen_.insert(name);
      nodes_[id].name = std::move(name);
    }
    return id;
  }

  EdgeLabel label() {
    skip_space();
    const std::size_t start = pos_;
    std::string tok;
    while (pos_ < text_.size() && !is_newick_special(peek()) && !is_space(peek())) tok += text_[pos_++];
    if (tok == "0") return EdgeLabel::zero;
    if (tok == "1") return EdgeLabel::one;
    fail(tok.empty() ? "missing edge label" : "edge label must be 0 or 1, got '" + tok + "'", start);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }
  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(what, line, col);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<TreeNode> nodes_;
  std::vector<std::size_t> node_pos_;
  std::set<std::string> seen_;
};

}  // namespace detail

inline EdgeLabeledTree parse_newick(std::string_view text) { return detail::NewickParser(text).parse(); }

inline std::string serialize_newick(const EdgeLabeledTree& t) {
  for (NodeId v : t.leaves())
    for (char c : t.name(v))
      if (detail::is_newick_special(c) || detail::is_space(c))
        throw Error("leaf name '" + t.name(v) + "' cannot be written as Newick");
  return canonical_form(t) + ";";
}

inline Digraph parse_graph(std::string_view text) {
  std::vector<std::string> vertices;
  std::set<std::string> declared;
  std::vector<std::pair<std::string, std::string>> arcs;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::vector<std::pair<std::string, std::size_t>> tokens;  // token, column
    for (std::size_t i = 0; i < line.size();) {
      if (detail::is_space(line[i])) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && !detail::is_space(line[j])) ++j;
      tokens.emplace_back(std::string(line.substr(i, j - i)), i + 1);
      i = j;
    }
    if (!tokens.empty() && tokens.front().first[0] != '#') {
      const auto& kind = tokens.front().first;
      if (kind == "V") {
        if (tokens.size() != 2) throw ParseError("expected 'V <name>'", line_no, 1);
        if (!declared.insert(tokens[1].first).second)
          throw ParseError("duplicate vertex '" + tokens[1].first + "'", line_no, tokens[1].second);
        vertices.push_back(tokens[1].first);
      } else if (kind == "A") {
        if (tokens.size() != 3) throw ParseError("expected 'A <u> <v>'", line_no, 1);
        for (int k = 1; k <= 2; ++k)
          if (declared.count(tokens[k].first) == 0)
            throw ParseError("undeclared vertex '" + tokens[k].first + "'", line_no, tokens[k].second);
        if (tokens[1].first == tokens[2].first)
          throw ParseError("self-arc on '" + tokens[1].first + "'", line_no, tokens[2].second);
        arcs.emplace_back(tokens[1].first, tokens[2].first);
      } else {
        throw ParseError("unknown record '" + kind + "'", line_no, tokens.front().second);
      }
    }
    if (end == text.size()) break;
    begin = end + 1;
  }
  return Digraph(std::move(vertices), arcs);
}

inline std::string serialize_graph(const Digraph& g) {
  std::string out;
  for (const auto& v : g.vertices()) out += "V " + v + "\n";
  for (auto [u, v] : g.arcs()) out += "A " + g.name(u) + " " + g.name(v) + "\n";
  return out;
}

namespace detail {
inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}
}  // namespace detail

inline std::string to_dot(const Digraph& g) {
  std::ostringstream out;
  out << "digraph fitch {\n";
  for (const auto& v : g.vertices()) out << "  " << detail::dot_quote(v) << ";\n";
  for (auto [u, v] : g.arcs())
    out << "  " << detail::dot_quote(g.name(u)) << " -> " << detail::dot_quote(g.name(v)) << ";\n";
  out << "}\n";
  return out.str();
}

// 1-edges are drawn red and bold.
inline std::string to_dot(const EdgeLabeledTree& t) {
  std::ostringstream out;
  out << "digraph tree {\n";
  for (NodeId v = 0; v < t.size(); ++v) {
    out << "  n" << v;
    if (t.is_leaf(v))
      out << " [label=" << detail::dot_quote(t.name(v)) << "]";
    else
      out << " [label=\"\", shape=point]";
    out << ";\n";
  }
  for (NodeId v = 1; v < t.size(); ++v) {
    out << "  n" << t.parent(v) << " -> n" << v;
    if (t.label(v) == EdgeLabel::one)
      out << " [label=\"1\", color=red, style=bold]";
    else
      out << " [label=\"0\"]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace fitch
