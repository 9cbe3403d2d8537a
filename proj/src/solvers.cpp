#include "linsys/solvers.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace linsys {

std::string_view kind_name(CertificateKind kind) noexcept {
  return kind == CertificateKind::Tau ? "tau" : "nu2";
}

namespace {

using Clock = std::chrono::steady_clock;
using Word = std::uint64_t;

// Lines flattened into a row-major word matrix.
struct WordMatrix {
  std::size_t words = 0;
  std::size_t rows = 0;
  std::vector<Word> data;

  explicit WordMatrix(const LinearSystem& ls)
      : words((ls.num_points() + 63) / 64), rows(ls.num_lines()), data(words * rows, 0) {
    for (std::size_t l = 0; l < rows; ++l) {
      auto src = ls.line(l).words();
      std::copy(src.begin(), src.end(), data.begin() + static_cast<std::ptrdiff_t>(l * words));
    }
  }

  const Word* row(std::size_t l) const { return data.data() + l * words; }
};

bool meets(const Word* a, const Word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if ((a[i] & b[i]) != 0) return true;
  }
  return false;
}

std::size_t count_without(const Word* line, const Word* excluded, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) {
    c += static_cast<std::size_t>(std::popcount(line[i] & ~excluded[i]));
  }
  return c;
}

void set_bit(std::vector<Word>& w, std::size_t p) { w[p >> 6] |= Word{1} << (p & 63); }
void clear_bit(std::vector<Word>& w, std::size_t p) { w[p >> 6] &= ~(Word{1} << (p & 63)); }

// Greedy packing of lines with pairwise disjoint point sets: each needs its
// own transversal point.
std::size_t disjoint_packing_bound(const LinearSystem& ls) {
  PointSet used(ls.num_points());
  std::vector<LineIndex> order(ls.num_lines());
  std::iota(order.begin(), order.end(), LineIndex{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return ls.line(a).size() < ls.line(b).size();
  });
  std::size_t n = 0;
  for (auto l : order) {
    if (!ls.line(l).intersects(used)) {
      ++n;
      for (auto p : ls.line(l).elements()) used.insert(p);
    }
  }
  return n;
}

class TauSearch {
 public:
  TauSearch(const LinearSystem& ls, std::vector<PointIndex> incumbent, std::uint64_t budget)
      : m_(ls),
        n_points_(ls.num_points()),
        chosen_(m_.words, 0),
        forbidden_(m_.words, 0),
        best_(std::move(incumbent)),
        budget_(budget) {}

  void run() { dfs(); }
  bool aborted() const { return aborted_; }
  std::uint64_t nodes() const { return nodes_; }
  std::vector<PointIndex> best() const { return best_; }

 private:
  void dfs() {
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    const std::size_t w = m_.words;
    std::vector<std::size_t> uncovered;
    std::vector<std::size_t> candidates;
    for (std::size_t l = 0; l < m_.rows; ++l) {
      if (meets(m_.row(l), chosen_.data(), w)) continue;
      const auto c = count_without(m_.row(l), forbidden_.data(), w);
      if (c == 0) return;  // line can no longer be hit
      uncovered.push_back(l);
      candidates.push_back(c);
    }
    if (uncovered.empty()) {
      best_ = current_;
      return;
    }
    if (current_.size() + 1 >= best_.size()) return;
    if (current_.size() + lower_bound(uncovered, candidates) >= best_.size()) return;

    std::size_t pick = 0;
    for (std::size_t i = 1; i < uncovered.size(); ++i) {
      if (candidates[i] < candidates[pick]) pick = i;
    }
    const Word* line = m_.row(uncovered[pick]);
    std::vector<PointIndex> excluded_here;
    for (std::size_t wi = 0; wi < w && !aborted_; ++wi) {
      Word bits = line[wi] & ~forbidden_[wi];
      while (bits != 0 && !aborted_) {
        const auto p = wi * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        set_bit(chosen_, p);
        current_.push_back(p);
        dfs();
        current_.pop_back();
        clear_bit(chosen_, p);
        set_bit(forbidden_, p);
        excluded_here.push_back(p);
        if (current_.size() + 1 >= best_.size()) break;
      }
      if (current_.size() + 1 >= best_.size()) break;
    }
    for (auto p : excluded_here) clear_bit(forbidden_, p);
  }

  // max of (a) pairwise candidate-disjoint uncovered lines and (b) the fewest
  // candidate points whose uncovered degrees can add up to the uncovered count.
  std::size_t lower_bound(const std::vector<std::size_t>& uncovered,
                          const std::vector<std::size_t>& candidates) {
    const std::size_t w = m_.words;
    std::vector<std::size_t> order(uncovered.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](auto a, auto b) { return candidates[a] < candidates[b]; });
    scratch_.assign(w, 0);
    std::size_t packing = 0;
    for (auto i : order) {
      const Word* line = m_.row(uncovered[i]);
      bool disjoint = true;
      for (std::size_t k = 0; k < w; ++k) {
        if ((line[k] & ~forbidden_[k] & scratch_[k]) != 0) {
          disjoint = false;
          break;
        }
      }
      if (!disjoint) continue;
      ++packing;
      for (std::size_t k = 0; k < w; ++k) scratch_[k] |= line[k] & ~forbidden_[k];
    }

    degree_.assign(n_points_, 0);
    for (auto l : uncovered) {
      const Word* line = m_.row(l);
      for (std::size_t k = 0; k < w; ++k) {
        Word bits = line[k] & ~forbidden_[k];
        while (bits != 0) {
          ++degree_[k * 64 + static_cast<std::size_t>(std::countr_zero(bits))];
          bits &= bits - 1;
        }
      }
    }
    std::sort(degree_.begin(), degree_.end(), std::greater<>());
    std::size_t covered = 0;
    std::size_t needed = 0;
    while (covered < uncovered.size() && needed < degree_.size() && degree_[needed] > 0) {
      covered += degree_[needed];
      ++needed;
    }
    return std::max(packing, needed);
  }

  WordMatrix m_;
  std::size_t n_points_;
  std::vector<Word> chosen_;
  std::vector<Word> forbidden_;
  std::vector<Word> scratch_;
  std::vector<std::size_t> degree_;
  std::vector<PointIndex> current_;
  std::vector<PointIndex> best_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

class Nu2Search {
 public:
  Nu2Search(const LinearSystem& ls, std::vector<LineIndex> incumbent, std::uint64_t budget)
      : m_(ls),
        n_points_(ls.num_points()),
        once_(m_.words, 0),
        twice_(m_.words, 0),
        best_(std::move(incumbent)),
        budget_(budget) {}

  void run() { dfs(0); }
  bool aborted() const { return aborted_; }
  std::uint64_t nodes() const { return nodes_; }
  std::vector<LineIndex> best() const { return best_; }

 private:
  bool feasible(std::size_t l) const { return !meets(m_.row(l), twice_.data(), m_.words); }

  void dfs(std::size_t from) {
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    if (current_.size() > best_.size()) best_ = current_;
    std::vector<std::size_t> open;
    for (std::size_t l = from; l < m_.rows; ++l) {
      if (feasible(l)) open.push_back(l);
    }
    if (open.empty()) return;
    if (current_.size() + upper_bound(open) <= best_.size()) return;

    const std::size_t l = open.front();
    const std::size_t w = m_.words;
    const std::vector<Word> saved_once = once_;
    const std::vector<Word> saved_twice = twice_;
    const Word* line = m_.row(l);
    for (std::size_t k = 0; k < w; ++k) {
      twice_[k] |= once_[k] & line[k];
      once_[k] |= line[k];
    }
    current_.push_back(l);
    dfs(l + 1);
    current_.pop_back();
    once_ = saved_once;
    twice_ = saved_twice;
    if (aborted_) return;
    dfs(l + 1);
  }

  // Lines through a common point x can contribute at most 2 - usage(x). Peel
  // off the busiest point's pencil while that cap bites.
  std::size_t upper_bound(const std::vector<std::size_t>& open) {
    const std::size_t w = m_.words;
    std::vector<std::size_t> live = open;
    std::size_t bound = live.size();
    for (;;) {
      count_.assign(n_points_, 0);
      for (auto l : live) {
        const Word* line = m_.row(l);
        for (std::size_t k = 0; k < w; ++k) {
          Word bits = line[k];
          while (bits != 0) {
            ++count_[k * 64 + static_cast<std::size_t>(std::countr_zero(bits))];
            bits &= bits - 1;
          }
        }
      }
      std::size_t best_point = 0;
      std::size_t best_excess = 0;
      for (std::size_t p = 0; p < n_points_; ++p) {
        const bool used = ((once_[p >> 6] >> (p & 63)) & 1U) != 0;
        const std::size_t cap = used ? 1 : 2;
        if (count_[p] > cap && count_[p] - cap > best_excess) {
          best_excess = count_[p] - cap;
          best_point = p;
        }
      }
      if (best_excess == 0) return bound;
      bound -= best_excess;
      const Word mask = Word{1} << (best_point & 63);
      std::erase_if(live, [&](std::size_t l) { return (m_.row(l)[best_point >> 6] & mask) != 0; });
    }
  }

  WordMatrix m_;
  std::size_t n_points_;
  std::vector<Word> once_;
  std::vector<Word> twice_;
  std::vector<std::size_t> count_;
  std::vector<LineIndex> current_;
  std::vector<LineIndex> best_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

Certificate tau_greedy(const LinearSystem& ls) {
  const auto start = Clock::now();
  Certificate cert;
  cert.kind = CertificateKind::Tau;
  std::vector<bool> covered(ls.num_lines(), false);
  std::size_t remaining = ls.num_lines();
  while (remaining > 0) {
    std::vector<std::size_t> score(ls.num_points(), 0);
    for (LineIndex l = 0; l < ls.num_lines(); ++l) {
      if (covered[l]) continue;
      for (auto p : ls.line(l).elements()) ++score[p];
    }
    const auto best = static_cast<PointIndex>(
        std::max_element(score.begin(), score.end()) - score.begin());
    cert.witness.push_back(best);
    for (LineIndex l = 0; l < ls.num_lines(); ++l) {
      if (!covered[l] && ls.line(l).contains(best)) {
        covered[l] = true;
        --remaining;
      }
    }
  }
  std::sort(cert.witness.begin(), cert.witness.end());
  cert.value = cert.witness.size();
  cert.optimal = cert.value == 0 || cert.value == disjoint_packing_bound(ls);
  cert.elapsed = Clock::now() - start;
  return cert;
}

Certificate nu2_greedy(const LinearSystem& ls) {
  const auto start = Clock::now();
  Certificate cert;
  cert.kind = CertificateKind::Nu2;
  std::vector<unsigned> usage(ls.num_points(), 0);
  for (LineIndex l = 0; l < ls.num_lines(); ++l) {
    auto pts = ls.line_points(l);
    if (std::all_of(pts.begin(), pts.end(), [&](auto p) { return usage[p] < 2; })) {
      for (auto p : pts) ++usage[p];
      cert.witness.push_back(l);
    }
  }
  cert.value = cert.witness.size();
  cert.optimal = cert.value == ls.num_lines();
  cert.elapsed = Clock::now() - start;
  return cert;
}

Certificate tau_exact(const LinearSystem& ls, const SolveOptions& opts) {
  const auto start = Clock::now();
  const auto seed = tau_greedy(ls);
  TauSearch search(ls, seed.witness, opts.node_budget);
  search.run();
  Certificate cert;
  cert.kind = CertificateKind::Tau;
  cert.witness = search.best();
  std::sort(cert.witness.begin(), cert.witness.end());
  cert.value = cert.witness.size();
  cert.optimal = !search.aborted();
  cert.nodes_explored = search.nodes();
  cert.elapsed = Clock::now() - start;
  return cert;
}

Certificate nu2_exact(const LinearSystem& ls, const SolveOptions& opts) {
  const auto start = Clock::now();
  const auto seed = nu2_greedy(ls);
  Nu2Search search(ls, seed.witness, opts.node_budget);
  search.run();
  Certificate cert;
  cert.kind = CertificateKind::Nu2;
  cert.witness = search.best();
  cert.value = cert.witness.size();
  cert.optimal = !search.aborted();
  cert.nodes_explored = search.nodes();
  cert.elapsed = Clock::now() - start;
  return cert;
}

bool certificate_is_sound(const LinearSystem& ls, const Certificate& cert) {
  if (cert.witness.size() != cert.value) return false;
  try {
    if (cert.kind == CertificateKind::Tau) {
      auto w = cert.witness;
      std::sort(w.begin(), w.end());
      if (std::adjacent_find(w.begin(), w.end()) != w.end()) return false;
      return is_transversal(ls, w);
    }
    return is_2packing(ls, cert.witness);
  } catch (const Error&) {
    return false;
  }
}

BoundsReport bounds_from(std::size_t tau, std::size_t nu2) {
  BoundsReport r;
  r.tau = tau;
  r.nu2 = nu2;
  r.eq1_lower = (nu2 + 1) / 2;
  r.eq1_upper = nu2 >= 1 ? nu2 * (nu2 - 1) / 2 : 0;
  r.eq1_holds = r.eq1_lower <= tau && (nu2 <= 1 || tau <= r.eq1_upper);
  return r;
}

BoundsReport check_eq1(const LinearSystem& ls, const SolveOptions& opts) {
  const auto tau = tau_exact(ls, opts);
  const auto nu2 = nu2_exact(ls, opts);
  if (!tau.optimal || !nu2.optimal) {
    throw Error(Errc::BudgetExhausted, "node budget exhausted before optimality was proved");
  }
  return bounds_from(tau.value, nu2.value);
}

Thm21Hypothesis thm21_hypothesis_given(const LinearSystem& ls, std::size_t nu2) {
  if (ls.num_points() < 2) {
    throw Error(Errc::FewerThanTwoPoints, "need at least two points");
  }
  const auto deg = ls.degrees();
  Thm21Hypothesis h;
  h.p = static_cast<PointIndex>(std::max_element(deg.begin(), deg.end()) - deg.begin());
  h.q = h.p == 0 ? 1 : 0;
  for (PointIndex x = 0; x < deg.size(); ++x) {
    if (x != h.p && deg[x] > deg[h.q]) h.q = x;
  }
  h.max_deg_p = deg[h.p];
  h.second_deg_q = deg[h.q];
  h.line_count = ls.num_lines();
  h.nu2 = nu2;
  h.threshold = static_cast<std::int64_t>(h.max_deg_p + h.second_deg_q + nu2) - 3;
  h.applies = static_cast<std::int64_t>(h.line_count) <= h.threshold;
  h.more_lines_than_nu2 = h.line_count > nu2;
  return h;
}

Thm21Hypothesis thm21_hypothesis(const LinearSystem& ls, const SolveOptions& opts) {
  if (ls.num_points() < 2) {
    throw Error(Errc::FewerThanTwoPoints, "need at least two points");
  }
  const auto nu2 = nu2_exact(ls, opts);
  if (!nu2.optimal) {
    throw Error(Errc::BudgetExhausted, "node budget exhausted while computing nu2");
  }
  return thm21_hypothesis_given(ls, nu2.value);
}

}  // namespace linsys
