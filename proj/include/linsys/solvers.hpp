#pragma once

#include <chrono>
#include <cstdint>
#include <string_view>
#include <vector>

#include "linsys/core.hpp"

namespace linsys {

enum class CertificateKind { Tau, Nu2 };

std::string_view kind_name(CertificateKind kind) noexcept;

/// Answer of a tau or nu2 computation. The witness is a point set for Tau
/// and a set of line indices for Nu2, sorted ascending.
struct Certificate {
  CertificateKind kind = CertificateKind::Tau;
  std::size_t value = 0;
  std::vector<std::size_t> witness;
  bool optimal = false;
  std::uint64_t nodes_explored = 0;
  std::chrono::nanoseconds elapsed{0};
};

struct SolveOptions {
  std::uint64_t node_budget = 100'000'000;
};

/// Minimum transversal by branch and bound. Branches on the uncovered line
/// with the fewest candidate points; earlier siblings are excluded from later
/// branches, so every point set is visited once. If the node budget runs out
/// the best transversal found so far is returned with optimal = false.
Certificate tau_exact(const LinearSystem& ls, const SolveOptions& opts = {});

/// Maximum 2-packing by include/exclude search over lines in index order.
Certificate nu2_exact(const LinearSystem& ls, const SolveOptions& opts = {});

/// Repeatedly takes the point on the most uncovered lines (lowest index on
/// ties).
Certificate tau_greedy(const LinearSystem& ls);

/// Scans lines in index order and keeps a line when no point would be used
/// three times.
Certificate nu2_greedy(const LinearSystem& ls);

/// Checks that the witness has the stated size and passes the matching
/// predicate.
bool certificate_is_sound(const LinearSystem& ls, const Certificate& cert);

struct BoundsReport {
  std::size_t nu2 = 0;
  std::size_t tau = 0;
  std::size_t eq1_lower = 0;  // ceil(nu2 / 2)
  std::size_t eq1_upper = 0;  // nu2 (nu2 - 1) / 2
  bool eq1_holds = false;
};

/// Evaluates ceil(nu2/2) <= tau <= nu2(nu2-1)/2 from exact values. For
/// nu2 <= 1 only the lower bound is evaluated. Throws BudgetExhausted when
/// either solve is not optimal.
BoundsReport bounds_from(std::size_t tau, std::size_t nu2);
BoundsReport check_eq1(const LinearSystem& ls, const SolveOptions& opts = {});

struct Thm21Hypothesis {
  bool applies = false;
  PointIndex p = 0;
  PointIndex q = 0;
  std::size_t max_deg_p = 0;
  std::size_t second_deg_q = 0;
  std::size_t line_count = 0;
  std::size_t nu2 = 0;
  /// deg(p) + deg(q) + nu2 - 3; negative for tiny systems.
  std::int64_t threshold = 0;
  /// |L| > nu2, the standing assumption for the bound.
  bool more_lines_than_nu2 = false;
};

/// p is a point of maximum degree, q a point of maximum degree among the
/// others (lowest index on ties); applies = |L| <= deg p + deg q + nu2 - 3.
Thm21Hypothesis thm21_hypothesis_given(const LinearSystem& ls, std::size_t nu2);
Thm21Hypothesis thm21_hypothesis(const LinearSystem& ls, const SolveOptions& opts = {});

}  // namespace linsys
