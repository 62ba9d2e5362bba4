#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pebbling/distribution.hpp"
#include "pebbling/graph.hpp"

namespace pebbling {

/// Parses "n m" followed by m lines "u v" (0-based). '#' starts a comment.
inline Graph parse_graph(const std::string& text) {
  std::vector<long long> numbers;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    for (std::string t; tokens >> t;) {
      numbers.push_back(detail::parse_int(t, "in graph text"));
    }
  }
  if (numbers.size() < 2) throw InputError("parse-error", "graph text needs a 'n m' header");
  const long long n = numbers[0];
  const long long m = numbers[1];
  if (n < 0 || m < 0) throw InputError("parse-error", "negative n or m in graph header");
  if (numbers.size() != static_cast<std::size_t>(2 + 2 * m)) {
    throw InputError("parse-error", "graph text declares " + std::to_string(m) + " edges but has " +
                                        std::to_string((numbers.size() - 2) / 2));
  }
  std::vector<Edge> edges;
  for (long long i = 0; i < m; ++i) {
    edges.emplace_back(static_cast<Vertex>(numbers[static_cast<std::size_t>(2 + 2 * i)]),
                       static_cast<Vertex>(numbers[static_cast<std::size_t>(3 + 2 * i)]));
  }
  return Graph(static_cast<int>(n), edges);
}

inline std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << g.order() << ' ' << g.size() << '\n';
  for (auto [a, b] : g.edges()) out << a << ' ' << b << '\n';
  return out.str();
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("unreadable-file", "cannot read file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline Graph load_graph(const std::string& path) { return parse_graph(read_text_file(path)); }

}  // namespace pebbling
