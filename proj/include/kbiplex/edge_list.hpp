#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kbiplex/bigraph.hpp"

namespace kbiplex {

enum class EdgeListFormat { Plain, Konect };

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

class LabelTable {
 public:
  Index intern(const std::string& label) {
    auto [it, inserted] = ids_.try_emplace(label, static_cast<Index>(names_.size()));
    if (inserted) names_.push_back(label);
    return it->second;
  }
  std::vector<std::string> take() { return std::move(names_); }
  Index size() const { return static_cast<Index>(names_.size()); }

 private:
  std::unordered_map<std::string, Index> ids_;
  std::vector<std::string> names_;
};

}  // namespace detail

/// Reads an edge list. Ids are assigned per side in first-appearance order.
///
/// Plain: one "<left> <right>" pair per line, '#' starts a comment line. A lone
/// "-" in either column declares an isolated vertex on the other side
/// ("a -" or "- y").
/// Konect: '%' lines are headers; the first two columns are used, the rest
/// (weights, timestamps) are ignored.
inline BipartiteGraph load_edge_list(std::istream& in, EdgeListFormat format) {
  detail::LabelTable left, right;
  std::vector<BipartiteGraph::Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  const char comment = format == EdgeListFormat::Konect ? '%' : '#';
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == comment) continue;
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a >> b)) throw ParseError(line_no, "expected two vertex labels");
    if (format == EdgeListFormat::Plain) {
      if (fields >> extra) throw ParseError(line_no, "unexpected third column '" + extra + "'");
      if (a == "-" && b == "-") throw ParseError(line_no, "declaration needs one label");
      if (b == "-") {
        left.intern(a);
        continue;
      }
      if (a == "-") {
        right.intern(b);
        continue;
      }
    }
    edges.emplace_back(left.intern(a), right.intern(b));
  }
  if (in.bad()) throw std::runtime_error("read failure");
  const Index nl = left.size();
  const Index nr = right.size();
  return BipartiteGraph(nl, nr, std::move(edges), left.take(), right.take());
}

inline BipartiteGraph load_edge_list(std::string_view text, EdgeListFormat format) {
  std::istringstream in{std::string(text)};
  return load_edge_list(in, format);
}

struct WriteOptions {
  /// Emit "<label> -" / "- <label>" lines for every vertex first so that a
  /// reload reproduces the exact ids, isolated vertices included.
  bool declare_vertices = true;
};

inline void write_edge_list(std::ostream& out, const BipartiteGraph& g, WriteOptions opts = {}) {
  if (opts.declare_vertices) {
    for (Index l = 0; l < g.num_left(); ++l) out << g.label(Side::Left, l) << " -\n";
    for (Index r = 0; r < g.num_right(); ++r) out << "- " << g.label(Side::Right, r) << '\n';
  }
  for (Index l = 0; l < g.num_left(); ++l)
    for (Index r : g.neighbors(Side::Left, l))
      out << g.label(Side::Left, l) << ' ' << g.label(Side::Right, r) << '\n';
}

}  // namespace kbiplex
