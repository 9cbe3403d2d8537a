#include "linsys/levi.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace linsys {

std::vector<std::vector<std::size_t>> BipartiteIncidenceGraph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(vertex_count());
  for (auto [p, l] : edges) {
    adj[p].push_back(point_vertices + l);
    adj[point_vertices + l].push_back(p);
  }
  return adj;
}

BipartiteIncidenceGraph levi_graph(const LinearSystem& ls) {
  BipartiteIncidenceGraph g;
  g.point_vertices = ls.num_points();
  g.line_vertices = ls.num_lines();
  for (LineIndex l = 0; l < ls.num_lines(); ++l) {
    for (auto p : ls.line_points(l)) g.edges.emplace_back(p, l);
  }
  return g;
}

std::optional<std::size_t> girth(const BipartiteIncidenceGraph& g) {
  const auto adj = g.adjacency();
  const auto n = adj.size();
  constexpr auto kUnseen = static_cast<std::size_t>(-1);
  std::optional<std::size_t> best;
  std::vector<std::size_t> dist(n);
  std::vector<std::size_t> parent(n);
  for (std::size_t root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    dist[root] = 0;
    parent[root] = kUnseen;
    std::queue<std::size_t> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
      const auto u = frontier.front();
      frontier.pop();
      // Cycles closed from this level on have length at least 2 * dist[u].
      if (best && 2 * dist[u] >= *best) break;
      for (auto v : adj[u]) {
        if (dist[v] == kUnseen) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          frontier.push(v);
        } else if (v != parent[u]) {
          const auto len = dist[u] + dist[v] + 1;
          if (!best || len < *best) best = len;
        }
      }
    }
  }
  return best;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

PlanarityBoundReport planarity_bound(const BipartiteIncidenceGraph& g) {
  PlanarityBoundReport r;
  r.vertex_count = g.vertex_count();
  r.edge_count = g.edges.size();
  r.girth = girth(g);
  const auto v = static_cast<std::int64_t>(r.vertex_count);
  if (!r.girth) {
    r.bound_value = Rational{std::max<std::int64_t>(v - 1, 0), 1};
  } else {
    const auto k = static_cast<std::int64_t>(*r.girth);
    std::int64_t num = k * (v - 2);
    std::int64_t den = k - 2;
    const auto d = std::gcd(num, den);
    if (d > 1) {
      num /= d;
      den /= d;
    }
    r.bound_value = Rational{num, den};
  }
  r.certified_nonplanar =
      static_cast<std::int64_t>(r.edge_count) * r.bound_value.den > r.bound_value.num;
  return r;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string export_dot(const BipartiteIncidenceGraph& g,
                       const std::vector<std::string>& point_labels,
                       const std::vector<std::string>& line_labels) {
  if (point_labels.size() != g.point_vertices || line_labels.size() != g.line_vertices) {
    throw Error(Errc::LabelCountMismatch,
                "expected " + std::to_string(g.point_vertices) + " point and " +
                    std::to_string(g.line_vertices) + " line labels");
  }
  std::ostringstream os;
  os << "graph levi {\n";
  for (std::size_t p = 0; p < g.point_vertices; ++p) {
    os << "  p" << p << " [shape=circle, label=\"" << dot_escape(point_labels[p]) << "\"];\n";
  }
  for (std::size_t l = 0; l < g.line_vertices; ++l) {
    os << "  l" << l << " [shape=box, label=\"" << dot_escape(line_labels[l]) << "\"];\n";
  }
  for (auto [p, l] : g.edges) os << "  p" << p << " -- l" << l << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace linsys
