#include <doctest.h>

#include <functional>
#include <map>
#include <set>

#include "linsys/core.hpp"
#include "linsys/error.hpp"
#include "linsys/generators.hpp"

using namespace linsys;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::ParseError;
}

}  // namespace

TEST_CASE("cnn structure for odd orders 3..11") {
  for (std::int64_t n = 3; n <= 11; n += 2) {
    CAPTURE(n);
    const auto ls = cnn(AbelianGroup::cyclic(n));
    const auto un = static_cast<std::size_t>(n);
    CHECK(ls.num_points() == un * (un - 1) + 2);
    CHECK(ls.num_lines() == 3 * un - 1);
    const auto st = stats(ls);
    CHECK(st.uniform_r == std::optional<std::size_t>{un});
    const auto p = ls.index_of("p");
    const auto q = ls.index_of("q");
    CHECK(ls.degrees()[p] == un);
    CHECK(ls.degrees()[q] == un);
    for (PointIndex v = 0; v < ls.num_points(); ++v) {
      if (v != p && v != q) CHECK(ls.degrees()[v] == 3);
    }
    // The n-1 lines L_g come first and are pairwise disjoint.
    for (LineIndex a = 0; a + 1 < un; ++a) {
      for (LineIndex b = a + 1; b + 1 < un; ++b) CHECK_FALSE(ls.line(a).intersects(ls.line(b)));
    }
    // Every line through p misses exactly one line through q.
    for (LineIndex lp = un - 1; lp < 2 * un - 1; ++lp) {
      CHECK(ls.line(lp).contains(p));
      std::size_t disjoint = 0;
      for (LineIndex lq = 2 * un - 1; lq < 3 * un - 1; ++lq) {
        CHECK(ls.line(lq).contains(q));
        disjoint += ls.line(lp).intersects(ls.line(lq)) ? 0 : 1;
      }
      CHECK(disjoint == 1);
    }
  }
}

TEST_CASE("cnn over a non-cyclic group") {
  const auto ls = cnn(AbelianGroup::parse("z3xz3"));
  CHECK(ls.num_points() == 74);
  CHECK(ls.num_lines() == 26);
  CHECK(stats(ls).uniform_r == std::optional<std::size_t>{9});
}

TEST_CASE("cnn rejects bad groups") {
  CHECK(code_of([] { cnn(AbelianGroup::cyclic(4)); }) == Errc::GroupNotNeutralSum);
  CHECK(code_of([] { cnn(AbelianGroup::parse("z2xz2")); }) == Errc::GroupHasInvolution);
  CHECK(code_of([] { cnn(AbelianGroup::cyclic(1)); }) == Errc::OrderTooSmall);
}

TEST_CASE("projective plane axioms") {
  for (std::int64_t q : {2, 3, 5, 7}) {
    CAPTURE(q);
    const auto ls = projective_plane(q);
    const auto uq = static_cast<std::size_t>(q);
    const auto n = uq * uq + uq + 1;
    CHECK(ls.num_points() == n);
    CHECK(ls.num_lines() == n);
    for (LineIndex a = 0; a < n; ++a) {
      CHECK(ls.line(a).size() == uq + 1);
      for (LineIndex b = a + 1; b < n; ++b) CHECK(ls.line(a).intersection_size(ls.line(b)) == 1);
    }
    // Any two points lie on exactly one common line.
    std::map<std::pair<PointIndex, PointIndex>, int> joins;
    for (LineIndex l = 0; l < n; ++l) {
      const auto pts = ls.line_points(l);
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) ++joins[{pts[i], pts[j]}];
    }
    CHECK(joins.size() == n * (n - 1) / 2);
    for (const auto& [pair, count] : joins) CHECK(count == 1);
  }
  CHECK(projective_plane(3).label(0) == "[0:0:1]");
  CHECK(code_of([] { projective_plane(4); }) == Errc::NotPrime);
  CHECK(code_of([] { projective_plane(1); }) == Errc::NotPrime);
}

TEST_CASE("triangles") {
  const auto plane = projective_plane(3);
  const auto t = find_triangle(plane);
  CHECK(plane.line(t.sides[0]).contains(t.vertices[0]));
  CHECK(plane.line(t.sides[0]).contains(t.vertices[1]));
  CHECK(plane.line(t.sides[1]).contains(t.vertices[2]));
  CHECK(plane.line(t.sides[2]).contains(t.vertices[1]));
  CHECK_FALSE(plane.line(t.sides[2]).contains(t.vertices[0]));

  CHECK(code_of([] { find_triangle(LinearSystem::validate({"a", "b", "c"}, {{"a", "b", "c"}})); }) ==
        Errc::NoTriangle);
  Triangle bad = t;
  bad.sides[0] = t.sides[1];
  CHECK(code_of([&] { delete_triangle(plane, bad); }) == Errc::InvalidTriangle);
}

TEST_CASE("chat line sizes") {
  const auto c = chat();
  CHECK(c.num_points() == 10);
  CHECK(c.num_lines() == 10);
  std::map<std::size_t, int> sizes;
  for (LineIndex l = 0; l < c.num_lines(); ++l) ++sizes[c.line(l).size()];
  CHECK(sizes[3] == 6);
  CHECK(sizes[4] == 4);
  CHECK(sizes.size() == 2);
}

TEST_CASE("chat from another triangle is isomorphic") {
  const auto plane = projective_plane(3);
  const auto first = find_triangle(plane);
  // Pick the last three points that are not collinear.
  Triangle other{};
  bool found = false;
  const auto n = plane.num_points();
  for (PointIndex a = n; a-- > 0 && !found;)
    for (PointIndex b = a; b-- > 0 && !found;)
      for (PointIndex c = b; c-- > 0 && !found;) {
        std::array<LineIndex, 3> sides{};
        auto join = [&](PointIndex x, PointIndex y) {
          for (LineIndex l = 0; l < n; ++l)
            if (plane.line(l).contains(x) && plane.line(l).contains(y)) return l;
          return n;
        };
        sides = {join(a, b), join(a, c), join(b, c)};
        if (plane.line(sides[0]).contains(c)) continue;
        other = Triangle{{a, b, c}, sides};
        found = true;
      }
  REQUIRE(found);
  CHECK(other.vertices != first.vertices);
  const auto c2 = delete_triangle(plane, other);
  CHECK(canonical_key(c2) != canonical_key(chat()));
  CHECK(are_isomorphic(chat(), c2).has_value());
}

TEST_CASE("enumerate_between") {
  SUBCASE("chat up to the plane") {
    const auto plane = projective_plane(3);
    const auto members = enumerate_between(chat(), plane);
    // Three free points, three free lines; every choice is a distinct valid system.
    CHECK(members.size() == 64);
    std::set<std::string> keys;
    for (const auto& m : members) {
      CHECK(is_subsystem(chat(), m));
      CHECK(is_subsystem(m, plane));
      keys.insert(canonical_key(m));
    }
    CHECK(keys.size() == members.size());
    CHECK(keys.count(canonical_key(plane)) == 1);
  }
  SUBCASE("equal ends") {
    const auto members = enumerate_between(example_c34(), example_c34());
    REQUIRE(members.size() == 1);
    CHECK(canonical_key(members[0]) == canonical_key(example_c34()));
  }
  SUBCASE("errors") {
    CHECK(code_of([] { enumerate_between(projective_plane(3), chat()); }) == Errc::NotASubsystem);
    EnumerationOptions small;
    small.max_free_elements = 5;
    CHECK(code_of([&] { enumerate_between(chat(), projective_plane(3), small); }) ==
          Errc::EnumerationCapExceeded);
  }
}

TEST_CASE("random_linear_system") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto a = random_linear_system(seed, 12, 10, 2, 4);
    CHECK(a == random_linear_system(seed, 12, 10, 2, 4));
    CHECK(a.num_points() == 12);
    CHECK(a.num_lines() <= 10);
    for (LineIndex l = 0; l < a.num_lines(); ++l) {
      CHECK(a.line(l).size() >= 2);
      CHECK(a.line(l).size() <= 4);
    }
    // Re-validation through labels must accept it.
    std::vector<std::vector<std::string>> lines;
    for (LineIndex l = 0; l < a.num_lines(); ++l) lines.push_back(a.line_labels(l));
    CHECK_NOTHROW(LinearSystem::validate(a.labels(), lines));
  }
  CHECK(random_linear_system(1, 12, 10, 2, 4) != random_linear_system(2, 12, 10, 2, 4));
  CHECK(code_of([] { random_linear_system(1, 5, 3, 1, 2); }) == Errc::InfeasibleParameters);
  CHECK(code_of([] { random_linear_system(1, 5, 3, 3, 2); }) == Errc::InfeasibleParameters);
  CHECK(code_of([] { random_linear_system(1, 5, 3, 2, 6); }) == Errc::InfeasibleParameters);
}
