#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linsys/core.hpp"

namespace linsys {

/// Point-line incidence graph. Vertex ids: points are 0..P-1, lines are
/// P..P+L-1.
struct BipartiteIncidenceGraph {
  std::size_t point_vertices = 0;
  std::size_t line_vertices = 0;
  std::vector<std::pair<PointIndex, LineIndex>> edges;  // sorted by line, then point

  std::size_t vertex_count() const noexcept { return point_vertices + line_vertices; }
  std::vector<std::vector<std::size_t>> adjacency() const;
};

BipartiteIncidenceGraph levi_graph(const LinearSystem& ls);

/// Length of a shortest cycle; nullopt for forests.
std::optional<std::size_t> girth(const BipartiteIncidenceGraph& g);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  bool operator==(const Rational&) const = default;
  std::string str() const;
};

struct PlanarityBoundReport {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  std::optional<std::size_t> girth;
  /// girth k: k(|V|-2)/(k-2); acyclic: |V|-1.
  Rational bound_value;
  /// True only when |E| exceeds the bound, which rules out planarity. False
  /// proves nothing.
  bool certified_nonplanar = false;
};

PlanarityBoundReport planarity_bound(const BipartiteIncidenceGraph& g);

/// Graphviz text. Points are circles p0.., lines are boxes l0...
std::string export_dot(const BipartiteIncidenceGraph& g,
                       const std::vector<std::string>& point_labels,
                       const std::vector<std::string>& line_labels);

}  // namespace linsys
