// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "linsys/core.hpp"
#include "linsys/generators.hpp"
#include "linsys/levi.hpp"
#include "linsys/solvers.hpp"
#include "linsys/verify.hpp"
#include "oracles.hpp"

using namespace linsys;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) note << "failed: ";
      else note << "; ";
      note << what;
      ok = false;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const auto note = o.note.str();
  std::printf("%s AC%d %s (%.2fs)%s%s\n", o.ok ? "PASS" : "FAIL", id, title.c_str(),
              seconds_since(t0), note.empty() ? "" : " ", note.c_str());
  std::fflush(stdout);
  if (!o.ok) ++failures;
}

std::size_t oracle_tau_up_to(const LinearSystem& ls, std::size_t k_max) {
  // Brute force over all point subsets of size <= k_max; k_max + 1 if none hits.
  const auto lines = oracle::plain_lines(ls);
  const auto n = ls.num_points();
  for (std::size_t k = 0; k <= k_max; ++k) {
    std::vector<bool> chosen(n, false);
    std::fill(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      if (oracle::hits_all(lines, chosen)) return k;
    } while (std::prev_permutation(chosen.begin(), chosen.end()));
  }
  return k_max + 1;
}

}  // namespace

int main() {
  criterion(1, "tau = nu2 = n+1 for the cnn family, n in {3,5,7,9}", [](Outcome& o) {
    for (std::int64_t n : {3, 5, 7, 9}) {
      const auto t0 = Clock::now();
      const auto ls = cnn(AbelianGroup::cyclic(n));
      const auto t = tau_exact(ls);
      const auto v = nu2_exact(ls);
      const double secs = seconds_since(t0);
      const auto want = static_cast<std::size_t>(n + 1);
      const auto tag = "n=" + std::to_string(n);
      o.require(t.optimal && v.optimal, tag + " not optimal");
      o.require(t.value == want, tag + " tau=" + std::to_string(t.value));
      o.require(v.value == want, tag + " nu2=" + std::to_string(v.value));
      o.require(certificate_is_sound(ls, t) && certificate_is_sound(ls, v), tag + " unsound");
      o.require(secs <= 60.0, tag + " took " + std::to_string(secs) + "s");
      o.note << (o.note.tellp() > 0 ? " " : "") << tag << ":" << static_cast<int>(secs * 100) / 100.0
             << "s";
    }
  });

  criterion(2, "generated Z3 system is isomorphic to the hand-typed example", [](Outcome& o) {
    const auto iso = are_isomorphic(cnn(AbelianGroup::cyclic(3)), example_c34());
    o.require(iso.has_value(), "no bijection");
    if (iso) o.require(iso->mapping.size() == 8, "bijection has wrong size");
  });

  criterion(3, "order-3 plane: 13/13, 4-uniform, intersecting, tau = nu2 = 4", [](Outcome& o) {
    const auto ls = projective_plane(3);
    const auto st = stats(ls);
    o.require(st.num_points == 13 && st.num_lines == 13, "counts");
    o.require(st.uniform_r == std::optional<std::size_t>{4}, "not 4-uniform");
    o.require(st.is_intersecting, "not intersecting");
    for (auto d : st.degree_of) o.require(d == 4, "degree != 4");
    const auto t = tau_exact(ls);
    const auto v = nu2_exact(ls);
    o.require(t.optimal && t.value == 4, "tau");
    o.require(v.optimal && v.value == 4, "nu2");
    o.require(oracle_tau_up_to(ls, 4) == 4, "oracle tau");
    o.require(oracle::nu2(ls) == 4, "oracle nu2");
  });

  criterion(4, "triangle-deleted plane has 10 points, 10 lines, independent of triangle",
            [](Outcome& o) {
              const auto c = chat();
              o.require(c.num_points() == 10 && c.num_lines() == 10, "counts");
              const auto plane = projective_plane(3);
              const auto first = find_triangle(plane);
              // Another triangle: the last three non-collinear points.
              const auto n = plane.num_points();
              auto join = [&](PointIndex x, PointIndex y) {
                for (LineIndex l = 0; l < n; ++l)
                  if (plane.line(l).contains(x) && plane.line(l).contains(y)) return l;
                return n;
              };
              bool done = false;
              for (PointIndex a = n; a-- > 0 && !done;)
                for (PointIndex b = a; b-- > 0 && !done;)
                  for (PointIndex d = b; d-- > 0 && !done;) {
                    const std::array<LineIndex, 3> sides{join(a, b), join(a, d), join(b, d)};
                    if (plane.line(sides[0]).contains(d)) continue;
                    done = true;
                    const Triangle other{{a, b, d}, sides};
                    o.require(other.vertices != first.vertices, "same triangle");
                    o.require(are_isomorphic(c, delete_triangle(plane, other)).has_value(),
                              "not isomorphic");
                  }
              o.require(done, "no second triangle");
            });

  std::vector<verify::Cor42Member> lattice;
  criterion(5, "on the lattice between the deleted and full plane, A = B and contains the plane",
            [&](Outcome& o) {
              const auto t0 = Clock::now();
              lattice = verify::cor42_lattice();
              std::set<std::string> a, b;
              bool plane_in_a = false;
              for (const auto& m : lattice) {
                o.require(m.optimal, "solve not optimal");
                if (m.in_a) a.insert(canonical_key(m.system));
                if (m.in_b) b.insert(canonical_key(m.system));
                plane_in_a = plane_in_a || (m.is_plane && m.in_a && m.in_b);
              }
              o.require(a == b, "A != B");
              o.require(!a.empty() && plane_in_a, "plane missing");
              o.require(seconds_since(t0) <= 120.0, "over 120s");
              o.note << (o.ok ? "" : " ") << "members " << lattice.size() << ", |A| " << a.size()
                     << ", |B| " << b.size();
            });

  const auto corpus = verify::random_corpus(1, 60);
  criterion(6, "ceil(nu2/2) <= tau <= nu2(nu2-1)/2 over 60 random systems", [&](Outcome& o) {
    const auto r = verify::verify_eq1(corpus);
    o.require(r.conclusive_pass(), "report not a conclusive pass");
    o.require(r.instances_checked + r.instances_filtered == corpus.size(), "instance count");
    o.require(r.count(verify::Status::Fail) == 0, "failures");
    o.note << (o.ok ? "" : " ") << "checked " << r.instances_checked << ", filtered "
           << r.instances_filtered;
  });

  criterion(7, "tau <= nu2 - 1 under the line-count hypothesis; cnn sits one above",
            [&](Outcome& o) {
              const auto r = verify::verify_thm21(corpus);
              o.require(r.conclusive_pass(), "report not a conclusive pass");
              for (std::int64_t n : {3, 5, 7}) {
                const auto h = thm21_hypothesis(cnn(AbelianGroup::cyclic(n)));
                o.require(!h.applies, "hypothesis applies for n=" + std::to_string(n));
                o.require(static_cast<std::int64_t>(h.line_count) == h.threshold + 1,
                          "|L| not threshold+1 for n=" + std::to_string(n));
              }
              o.note << (o.ok ? "" : " ") << "checked " << r.instances_checked << ", filtered "
                     << r.instances_filtered;
            });

  criterion(8, "Levi graphs of the cnn family: girth 6, 3n^2-n edges, beyond the bound",
            [](Outcome& o) {
              for (std::int64_t n : {3, 5, 7}) {
                const auto tag = " n=" + std::to_string(n);
                const auto r = planarity_bound(levi_graph(cnn(AbelianGroup::cyclic(n))));
                o.require(r.girth == std::optional<std::size_t>{6}, "girth" + tag);
                const auto e = static_cast<std::int64_t>(r.edge_count);
                o.require(e == 3 * n * n - n, "edges" + tag);
                // 2|E| > 3(n^2+2n-1), in integers.
                o.require(2 * e > 3 * (n * n + 2 * n - 1), "inequality" + tag);
                o.require(r.bound_value.num * 2 == 3 * (n * n + 2 * n - 1) * r.bound_value.den,
                          "bound value" + tag);
                o.require(r.certified_nonplanar, "not certified" + tag);
              }
            });

  criterion(9, "exact solvers agree with exhaustive search on 200 random systems",
            [](Outcome& o) {
              const auto t0 = Clock::now();
              std::size_t discrepancies = 0;
              for (std::uint64_t seed = 1; seed <= 200; ++seed) {
                const std::size_t points = 6 + seed % 7;
                const std::size_t lines = 4 + (seed / 7) % 7;
                const auto ls = random_linear_system(seed, points, lines, 2, 4);
                const auto t = tau_exact(ls);
                const auto v = nu2_exact(ls);
                if (!t.optimal || !v.optimal || t.value != oracle::tau(ls) ||
                    v.value != oracle::nu2(ls))
                  ++discrepancies;
              }
              o.require(discrepancies == 0, std::to_string(discrepancies) + " discrepancies");
              o.require(seconds_since(t0) <= 300.0, "over 5 minutes");
            });

  criterion(10, "structure of every rank-4 member with tau = nu2 = 4", [&](Outcome& o) {
    if (lattice.empty()) lattice = verify::cor42_lattice();
    std::size_t members = 0;
    for (const auto& m : lattice) {
      if (!m.in_b) continue;
      ++members;
      const auto st = stats(m.system);
      o.require(st.uniform_r == std::optional<std::size_t>{4}, "not 4-uniform");
      const auto reduced = reduce_low_degree(m.system);
      o.require(reduced == m.system || canonical_key(reduced) == canonical_key(m.system),
                "reduction changes the system");
      for (auto d : st.degree_of) o.require(d >= 2, "degree below 2");
      o.require(st.max_degree <= 4, "max degree above 4");
      for (LineIndex l = 0; l < m.system.num_lines(); ++l) {
        std::size_t deg2 = 0;
        for (auto p : m.system.line_points(l)) deg2 += st.degree_of[p] == 2 ? 1 : 0;
        o.require(deg2 <= 1, "two degree-2 points on a line");
      }
      o.require(st.num_lines >= 10 && st.num_lines <= 13, "line count out of range");
    }
    o.require(members > 0, "no members");
    std::vector<verify::NamedInstance> named;
    for (std::size_t i = 0; i < lattice.size(); ++i)
      named.push_back({"member-" + std::to_string(i), lattice[i].system});
    o.require(verify::verify_lemma41(named).conclusive_pass(), "lemma41 report");
    o.require(verify::verify_lemmas_42_43(named).conclusive_pass(), "lemmas4243 report");
    o.note << (o.ok ? "" : " ") << members << " members";
  });

  return failures == 0 ? 0 : 1;
}
