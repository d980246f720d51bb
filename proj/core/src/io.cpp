#include "cpt/io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "cpt/errors.hpp"

namespace cpt {

namespace {

struct Token {
  std::string text;
  int col;  // 1-based
};

struct Line {
  int number;  // 1-based
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    Line line{number, {}};
    size_t i = 0;
    while (i < raw.size()) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      line.tokens.push_back({raw.substr(start, i - start), static_cast<int>(start) + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

int parse_int(const Token& t, int line) {
  size_t i = t.text.size() > 1 && t.text[0] == '-' ? 1 : 0;
  if (i == t.text.size()) throw ParseError(line, t.col, "expected a vertex id");
  for (; i < t.text.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(t.text[i])))
      throw ParseError(line, t.col, "'" + t.text + "' is not a vertex id");
  return std::stoi(t.text);
}

}  // namespace

Poset parse_poset(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, 1, "missing 'elements:' line");
  const Line& head = lines.front();
  if (head.tokens.front().text != "elements:")
    throw ParseError(head.number, head.tokens.front().col, "expected 'elements:'");
  std::vector<std::string> elements;
  for (size_t i = 1; i < head.tokens.size(); ++i) elements.push_back(head.tokens[i].text);

  std::vector<std::pair<std::string, std::string>> relations;
  for (size_t li = 1; li < lines.size(); ++li) {
    const Line& line = lines[li];
    if (line.tokens.size() != 3 || line.tokens[1].text != "<")
      throw ParseError(line.number, line.tokens.front().col, "expected 'x < y'");
    relations.push_back({line.tokens[0].text, line.tokens[2].text});
  }
  return Poset::from_pairs(elements, relations);
}

std::string print_poset(const Poset& p) {
  std::ostringstream out;
  out << "elements:";
  for (const auto& e : p.elements()) out << ' ' << e;
  out << '\n';
  for (const auto& [x, y] : p.cover_pairs()) out << x << " < " << y << '\n';
  return out.str();
}

CptModel parse_model(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, 1, "missing 'tree:' line");
  const Line& head = lines.front();
  if (head.tokens.front().text != "tree:")
    throw ParseError(head.number, head.tokens.front().col, "expected 'tree:'");

  HostTree tree = HostTree::single_vertex(0);
  if (head.tokens.size() == 2 && head.tokens[1].text.find('-', 1) == std::string::npos) {
    tree = HostTree::single_vertex(parse_int(head.tokens[1], head.number));
  } else {
    if (head.tokens.size() < 2)
      throw ParseError(head.number, head.tokens.front().col,
                       "tree needs at least one edge or a vertex id");
    std::vector<std::pair<int, int>> edges;
    for (size_t i = 1; i < head.tokens.size(); ++i) {
      const Token& t = head.tokens[i];
      auto dash = t.text.find('-', 1);  // a leading '-' would be a sign
      if (dash == std::string::npos)
        throw ParseError(head.number, t.col, "expected 'u-v', got '" + t.text + "'");
      Token u{t.text.substr(0, dash), t.col};
      Token v{t.text.substr(dash + 1), t.col + static_cast<int>(dash) + 1};
      edges.push_back({parse_int(u, head.number), parse_int(v, head.number)});
    }
    tree = HostTree::from_edges(edges);
  }

  std::map<std::string, PathInTree> paths;
  for (size_t li = 1; li < lines.size(); ++li) {
    const Line& line = lines[li];
    if (line.tokens.size() != 4 || line.tokens[0].text != "path" ||
        line.tokens[1].text.empty() || line.tokens[1].text.back() != ':')
      throw ParseError(line.number, line.tokens.front().col, "expected 'path <element>: u v'");
    std::string name = line.tokens[1].text.substr(0, line.tokens[1].text.size() - 1);
    if (name.empty())
      throw ParseError(line.number, line.tokens[1].col, "empty element name");
    if (paths.count(name))
      throw ParseError(line.number, line.tokens[1].col, "duplicate path for '" + name + "'");
    paths.emplace(name, PathInTree{parse_int(line.tokens[2], line.number),
                                   parse_int(line.tokens[3], line.number)});
  }
  return CptModel(std::move(tree), std::move(paths));
}

std::string print_model(const CptModel& m) {
  std::ostringstream out;
  out << "tree:";
  auto edges = m.tree().edges();
  if (edges.empty())
    out << ' ' << m.tree().vertices().front();
  else
    for (const auto& [u, v] : edges) out << ' ' << u << '-' << v;
  out << '\n';
  for (const auto& [name, path] : m.paths())
    out << "path " << name << ": " << std::min(path.a, path.b) << ' '
        << std::max(path.a, path.b) << '\n';
  return out.str();
}

std::string poset_to_dot(const Poset& p) {
  std::ostringstream out;
  out << "digraph hasse {\n  rankdir=BT;\n";
  for (const auto& e : p.elements()) out << "  \"" << e << "\";\n";
  for (const auto& [x, y] : p.cover_pairs())
    out << "  \"" << x << "\" -> \"" << y << "\";  // " << x << "<:" << y << '\n';
  out << "}\n";
  return out.str();
}

std::string model_to_dot(const CptModel& m) {
  std::ostringstream out;
  out << "graph host {\n  label=\"";
  bool first = true;
  for (const auto& [name, path] : m.paths()) {
    if (!first) out << "\\n";
    first = false;
    out << name << ": " << std::min(path.a, path.b);
    if (path.a != path.b) out << ".." << std::max(path.a, path.b);
  }
  out << "\";\n";
  for (int v : m.tree().vertices()) out << "  " << v << ";\n";
  for (const auto& [u, v] : m.tree().edges()) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace cpt
