#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "reductions/reductions.hpp"

namespace fsr {

void Graph::validate() const {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    if (u < 1 || u > n || v < 1 || v > n)
      throw std::invalid_argument("edge " + std::to_string(i + 1) + " leaves the vertex range");
    if (u == v) throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
  }
}

bool Graph::adjacent(int u, int v) const {
  return std::any_of(edges.begin(), edges.end(), [&](const auto& e) {
    return (e.first == u && e.second == v) || (e.first == v && e.second == u);
  });
}

std::vector<int> Graph::closed_neighbourhood(int v) const {
  std::vector<int> out;
  for (int u = 1; u <= n; ++u)
    if (u == v || adjacent(u, v)) out.push_back(u);
  return out;
}

Graph parse_graph(const std::string& text) {
  Graph g;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::vector<long long> nums;
    long long x = 0;
    while (ls >> x) nums.push_back(x);
    if (!ls.eof()) throw std::invalid_argument("graph line " + std::to_string(lineno) + ": expected integers");
    if (nums.empty()) continue;
    if (!header) {
      if (nums.size() != 1 || nums[0] < 1 || nums[0] > 1000)
        throw std::invalid_argument("graph line " + std::to_string(lineno) + ": expected the vertex count");
      g.n = static_cast<int>(nums[0]);
      header = true;
      continue;
    }
    if (nums.size() != 2) throw std::invalid_argument("graph line " + std::to_string(lineno) + ": expected 'u v'");
    int u = static_cast<int>(nums[0]);
    int v = static_cast<int>(nums[1]);
    if (u < 1 || u > g.n || v < 1 || v > g.n || u == v)
      throw std::invalid_argument("graph line " + std::to_string(lineno) + ": bad edge");
    if (!g.adjacent(u, v)) g.edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  if (!header) throw std::invalid_argument("graph: missing vertex count");
  return g;
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << g.n << '\n';
  for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
  return out.str();
}

std::vector<Graph> all_labelled_graphs(int n) {
  if (n < 1 || n > 6) throw std::invalid_argument("labelled graph enumeration supports 1..6 vertices");
  std::vector<std::pair<int, int>> pairs;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) pairs.emplace_back(u, v);
  std::vector<Graph> out;
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    Graph g;
    g.n = n;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if ((mask >> i) & 1u) g.edges.push_back(pairs[i]);
    out.push_back(std::move(g));
  }
  return out;
}

bool oracle_dominating_set(const Graph& g, int k) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  if (g.n > 20) throw std::invalid_argument("dominating-set oracle refuses more than 20 vertices");
  std::vector<std::uint32_t> closed(static_cast<std::size_t>(g.n) + 1, 0);
  for (int v = 1; v <= g.n; ++v) closed[static_cast<std::size_t>(v)] |= 1u << (v - 1);
  for (auto [u, v] : g.edges) {
    closed[static_cast<std::size_t>(u)] |= 1u << (v - 1);
    closed[static_cast<std::size_t>(v)] |= 1u << (u - 1);
  }
  const std::uint32_t all = g.n == 32 ? ~0u : (1u << g.n) - 1;
  for (std::uint32_t s = 0; s <= all; ++s) {
    if (std::popcount(s) > k) continue;
    std::uint32_t cover = 0;
    for (int v = 1; v <= g.n; ++v)
      if ((s >> (v - 1)) & 1u) cover |= closed[static_cast<std::size_t>(v)];
    if (cover == all) return true;
  }
  return false;
}

}  // namespace fsr
