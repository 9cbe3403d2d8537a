#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "linsys/core.hpp"
#include "linsys/groups.hpp"

namespace linsys {

/// Three non-collinear points with the three lines joining them pairwise.
/// sides[0] joins vertices 0,1; sides[1] joins 0,2; sides[2] joins 1,2.
struct Triangle {
  std::array<PointIndex, 3> vertices;
  std::array<LineIndex, 3> sides;
};

/// The n-uniform system on n(n-1)+2 points and 3n-1 lines built from a
/// neutral-sum group of odd order n >= 3 without involutions.
///
/// Points are (h,g) for h in G, g in G\{e} (lexicographic), then p and q.
/// Lines are, in order: L_g = {(h,g) : h in G} for g != e; the pencil through
/// p, {(g,h) : h != e} + p for each g; the pencil through q,
/// {(h,h+g) : h+g != e} + q for each g.
LinearSystem cnn(const AbelianGroup& group);

/// The explicit 8-point, 8-line system for the group Z3, typed in by hand.
LinearSystem example_c34();

/// Desarguesian projective plane over the prime field GF(q). Points and lines
/// are normalized homogeneous triples (first nonzero coordinate 1) labelled
/// "[a:b:c]", both in lexicographic order.
LinearSystem projective_plane(std::int64_t q);

/// Lexicographically first triangle by vertex indices.
Triangle find_triangle(const LinearSystem& ls);

/// Deletes the three sides and then the three vertices.
LinearSystem delete_triangle(const LinearSystem& ls, const Triangle& t);

/// Projective plane of order 3 with its first triangle deleted: 10 points,
/// 10 lines.
LinearSystem chat();

struct EnumerationOptions {
  std::size_t max_free_elements = 20;
};

/// Every system S with `base` a subsystem of S and S a subsystem of `sup`,
/// obtained by restricting `sup` to a superset of base's points and a
/// superset of the lines extending base's lines. Sorted by canonical key.
std::vector<LinearSystem> enumerate_between(const LinearSystem& base,
                                            const LinearSystem& sup,
                                            const EnumerationOptions& opts = {});

/// Rejection-sampled random linear system, deterministic in `seed`. Each
/// slot gets a bounded number of attempts, so fewer lines may be returned.
LinearSystem random_linear_system(std::uint64_t seed, std::size_t num_points,
                                  std::size_t num_lines, std::size_t min_line,
                                  std::size_t max_line);

}  // namespace linsys
