#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linsys/error.hpp"

namespace linsys {

using PointIndex = std::size_t;
using LineIndex = std::size_t;

/// Fixed-universe bitset over point indices.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t universe);

  static PointSet of(std::size_t universe, std::span<const PointIndex> members);

  std::size_t universe() const noexcept { return universe_; }
  std::size_t size() const noexcept;
  bool empty() const noexcept;

  bool contains(PointIndex p) const noexcept {
    return p < universe_ && ((words_[p >> 6] >> (p & 63)) & 1U) != 0;
  }
  void insert(PointIndex p);
  void erase(PointIndex p);

  std::size_t intersection_size(const PointSet& other) const noexcept;
  bool intersects(const PointSet& other) const noexcept;
  PointSet intersection(const PointSet& other) const;

  std::vector<PointIndex> elements() const;
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  bool operator==(const PointSet& other) const = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

class IntersectionViolation : public Error {
 public:
  IntersectionViolation(LineIndex a, LineIndex b,
                        std::vector<std::string> shared);

  LineIndex first_line() const noexcept { return first_; }
  LineIndex second_line() const noexcept { return second_; }
  const std::vector<std::string>& shared_points() const noexcept {
    return shared_;
  }

 private:
  LineIndex first_;
  LineIndex second_;
  std::vector<std::string> shared_;
};

/// Points plus a family of distinct lines, any two sharing at most one point.
/// Instances are only obtainable through validating factories and are
/// immutable afterwards.
class LinearSystem {
 public:
  LinearSystem() = default;

  /// Validates label-based input. Points keep their input order.
  static LinearSystem validate(const std::vector<std::string>& points,
                               const std::vector<std::vector<std::string>>& lines);

  /// Validates index-based input (indices into `points`).
  static LinearSystem from_indices(std::vector<std::string> points,
                                   const std::vector<std::vector<PointIndex>>& lines);

  std::size_t num_points() const noexcept { return labels_.size(); }
  std::size_t num_lines() const noexcept { return lines_.size(); }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(PointIndex p) const { return labels_.at(p); }
  std::optional<PointIndex> find(const std::string& label) const;
  PointIndex index_of(const std::string& label) const;  // throws UnknownPoint

  const std::vector<PointSet>& lines() const noexcept { return lines_; }
  const PointSet& line(LineIndex l) const;
  std::vector<PointIndex> line_points(LineIndex l) const { return line(l).elements(); }
  std::vector<std::string> line_labels(LineIndex l) const;

  std::vector<std::size_t> degrees() const;

  bool operator==(const LinearSystem& other) const = default;

 private:
  LinearSystem(std::vector<std::string> labels, std::vector<PointSet> lines)
      : labels_(std::move(labels)), lines_(std::move(lines)) {}

  static LinearSystem checked(std::vector<std::string> labels,
                              std::vector<PointSet> lines);

  std::vector<std::string> labels_;
  std::vector<PointSet> lines_;
};

struct SystemStats {
  std::size_t num_points = 0;
  std::size_t num_lines = 0;
  std::vector<std::size_t> degree_of;
  std::size_t max_degree = 0;
  std::size_t rank = 0;
  std::optional<std::size_t> uniform_r;
  bool is_intersecting = true;
};

SystemStats stats(const LinearSystem& ls);

/// Removes the point from every line and from the point list; emptied lines
/// are dropped.
LinearSystem delete_point(const LinearSystem& ls, PointIndex point);
LinearSystem delete_line(const LinearSystem& ls, LineIndex line);

/// Restricts the chosen lines to the chosen points. Points keep their relative
/// order, as do lines. Emptied lines are dropped; two chosen lines collapsing
/// onto the same set raise DuplicateInducedLine.
LinearSystem induced_subsystem(const LinearSystem& ls,
                               std::span<const PointIndex> points,
                               std::span<const LineIndex> lines);

/// Iteratively deletes points of degree at most one until none are left.
/// When two lines collapse onto the same set the later copy is dropped.
LinearSystem reduce_low_degree(const LinearSystem& ls);

bool is_transversal(const LinearSystem& ls, std::span<const PointIndex> points);

/// True iff no point lies on three or more of the chosen lines.
bool is_2packing(const LinearSystem& ls, std::span<const LineIndex> lines);

/// True iff every line of `sub` equals some line of `sup` restricted to the
/// points of `sub`. Points are matched by label.
bool is_subsystem(const LinearSystem& sub, const LinearSystem& sup);

/// Points sorted by label, lines sorted by their point sequences.
LinearSystem canonicalize(const LinearSystem& ls);

/// Compact text key of the canonical form; equal keys mean identical systems.
std::string canonical_key(const LinearSystem& ls);

struct PointBijection {
  /// mapping[i] is the image of point i of the reduced first system, indexing
  /// into the reduced second system.
  std::vector<PointIndex> mapping;
  LinearSystem reduced_a;
  LinearSystem reduced_b;
};

struct IsomorphismOptions {
  std::size_t max_points = 40;
};

/// Isomorphism up to deletion of points of degree 0 or 1 in both systems.
std::optional<PointBijection> are_isomorphic(const LinearSystem& a,
                                             const LinearSystem& b,
                                             const IsomorphismOptions& opts = {});

}  // namespace linsys
