#pragma once

// Brute-force reference answers. Deliberately naive and independent of the
// solver code: plain vectors, no bitsets, no pruning.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "linsys/core.hpp"

namespace oracle {

inline std::vector<std::vector<std::size_t>> plain_lines(const linsys::LinearSystem& ls) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t l = 0; l < ls.num_lines(); ++l) out.push_back(ls.line_points(l));
  return out;
}

inline bool hits_all(const std::vector<std::vector<std::size_t>>& lines,
                     const std::vector<bool>& chosen) {
  for (const auto& line : lines) {
    bool hit = false;
    for (auto p : line) hit = hit || chosen[p];
    if (!hit) return false;
  }
  return true;
}

/// Smallest k such that some k-subset of points meets every line.
inline std::size_t tau(const linsys::LinearSystem& ls) {
  const auto lines = plain_lines(ls);
  const auto n = ls.num_points();
  for (std::size_t k = 0; k <= n; ++k) {
    // Iterate k-subsets via selector permutation.
    std::vector<bool> chosen(n, false);
    std::fill(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      if (hits_all(lines, chosen)) return k;
    } while (std::prev_permutation(chosen.begin(), chosen.end()));
  }
  return n;
}

/// Largest set of lines with no point on three of them, over all 2^m subsets.
inline std::size_t nu2(const linsys::LinearSystem& ls) {
  const auto lines = plain_lines(ls);
  const auto m = lines.size();
  std::size_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<int> usage(ls.num_points(), 0);
    bool ok = true;
    std::size_t size = 0;
    for (std::size_t l = 0; l < m && ok; ++l) {
      if (((mask >> l) & 1U) == 0) continue;
      ++size;
      for (auto p : lines[l]) ok = ok && ++usage[p] <= 2;
    }
    if (ok && size > best) best = size;
  }
  return best;
}

}  // namespace oracle
