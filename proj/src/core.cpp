#include "linsys/core.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace linsys {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::DuplicatePoint: return "DuplicatePoint";
    case Errc::DuplicateLine: return "DuplicateLine";
    case Errc::UnknownPointInLine: return "UnknownPointInLine";
    case Errc::PairwiseIntersectionViolation: return "PairwiseIntersectionViolation";
    case Errc::EmptyLine: return "EmptyLine";
    case Errc::UnknownPoint: return "UnknownPoint";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::DuplicateInducedLine: return "DuplicateInducedLine";
    case Errc::SizeLimitExceeded: return "SizeLimitExceeded";
    case Errc::NonPositiveOrder: return "NonPositiveOrder";
    case Errc::GroupNotNeutralSum: return "GroupNotNeutralSum";
    case Errc::GroupHasInvolution: return "GroupHasInvolution";
    case Errc::EvenOrder: return "EvenOrder";
    case Errc::OrderTooSmall: return "OrderTooSmall";
    case Errc::NotPrime: return "NotPrime";
    case Errc::NoTriangle: return "NoTriangle";
    case Errc::InvalidTriangle: return "InvalidTriangle";
    case Errc::NotASubsystem: return "NotASubsystem";
    case Errc::EnumerationCapExceeded: return "EnumerationCapExceeded";
    case Errc::InfeasibleParameters: return "InfeasibleParameters";
    case Errc::BudgetExhausted: return "BudgetExhausted";
    case Errc::FewerThanTwoPoints: return "FewerThanTwoPoints";
    case Errc::LabelCountMismatch: return "LabelCountMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::UnknownTheoremId: return "UnknownTheoremId";
    case Errc::DigestMismatch: return "DigestMismatch";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// PointSet

PointSet::PointSet(std::size_t universe)
    : universe_(universe), words_((universe + 63) / 64, 0) {}

PointSet PointSet::of(std::size_t universe, std::span<const PointIndex> members) {
  PointSet s(universe);
  for (PointIndex p : members) s.insert(p);
  return s;
}

std::size_t PointSet::size() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool PointSet::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

void PointSet::insert(PointIndex p) {
  if (p >= universe_) {
    throw Error(Errc::IndexOutOfRange, "point index " + std::to_string(p) +
                                           " outside universe of " +
                                           std::to_string(universe_));
  }
  words_[p >> 6] |= std::uint64_t{1} << (p & 63);
}

void PointSet::erase(PointIndex p) {
  if (p < universe_) words_[p >> 6] &= ~(std::uint64_t{1} << (p & 63));
}

std::size_t PointSet::intersection_size(const PointSet& other) const noexcept {
  std::size_t n = 0;
  const auto k = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < k; ++i) {
    n += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
  }
  return n;
}

bool PointSet::intersects(const PointSet& other) const noexcept {
  const auto k = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < k; ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

PointSet PointSet::intersection(const PointSet& other) const {
  PointSet out(universe_);
  const auto k = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < k; ++i) out.words_[i] = words_[i] & other.words_[i];
  return out;
}

std::vector<PointIndex> PointSet::elements() const {
  std::vector<PointIndex> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    auto bits = words_[w];
    while (bits != 0) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// LinearSystem

namespace {

std::string describe_shared(const std::vector<std::string>& shared) {
  std::string s = "{";
  for (std::size_t i = 0; i < shared.size(); ++i) {
    if (i) s += ",";
    s += shared[i];
  }
  return s + "}";
}

}  // namespace

IntersectionViolation::IntersectionViolation(LineIndex a, LineIndex b,
                                             std::vector<std::string> shared)
    : Error(Errc::PairwiseIntersectionViolation,
            "lines " + std::to_string(a) + " and " + std::to_string(b) +
                " share " + std::to_string(shared.size()) + " points " +
                describe_shared(shared)),
      first_(a),
      second_(b),
      shared_(std::move(shared)) {}

LinearSystem LinearSystem::checked(std::vector<std::string> labels,
                                   std::vector<PointSet> lines) {
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) {
      throw Error(Errc::EmptyLine, "line " + std::to_string(i) + " is empty");
    }
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (lines[i] == lines[j]) {
        throw Error(Errc::DuplicateLine, "lines " + std::to_string(i) + " and " +
                                             std::to_string(j) + " are equal");
      }
      if (lines[i].intersection_size(lines[j]) > 1) {
        std::vector<std::string> shared;
        for (auto p : lines[i].intersection(lines[j]).elements()) {
          shared.push_back(labels[p]);
        }
        throw IntersectionViolation(i, j, std::move(shared));
      }
    }
  }
  return LinearSystem(std::move(labels), std::move(lines));
}

LinearSystem LinearSystem::validate(
    const std::vector<std::string>& points,
    const std::vector<std::vector<std::string>>& lines) {
  std::unordered_map<std::string, PointIndex> index;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!index.emplace(points[i], i).second) {
      throw Error(Errc::DuplicatePoint, "duplicate point '" + points[i] + "'");
    }
  }
  std::vector<PointSet> sets;
  sets.reserve(lines.size());
  for (std::size_t l = 0; l < lines.size(); ++l) {
    PointSet s(points.size());
    for (const auto& label : lines[l]) {
      auto it = index.find(label);
      if (it == index.end()) {
        throw Error(Errc::UnknownPointInLine, "line " + std::to_string(l) +
                                                  " references unknown point '" +
                                                  label + "'");
      }
      s.insert(it->second);
    }
    sets.push_back(std::move(s));
  }
  return checked(points, std::move(sets));
}

LinearSystem LinearSystem::from_indices(
    std::vector<std::string> points,
    const std::vector<std::vector<PointIndex>>& lines) {
  {
    std::set<std::string_view> seen;
    for (const auto& p : points) {
      if (!seen.insert(p).second) {
        throw Error(Errc::DuplicatePoint, "duplicate point '" + p + "'");
      }
    }
  }
  std::vector<PointSet> sets;
  sets.reserve(lines.size());
  for (std::size_t l = 0; l < lines.size(); ++l) {
    PointSet s(points.size());
    for (auto p : lines[l]) {
      if (p >= points.size()) {
        throw Error(Errc::UnknownPointInLine, "line " + std::to_string(l) +
                                                  " references point index " +
                                                  std::to_string(p));
      }
      s.insert(p);
    }
    sets.push_back(std::move(s));
  }
  return checked(std::move(points), std::move(sets));
}

std::optional<PointIndex> LinearSystem::find(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<PointIndex>(it - labels_.begin());
}

PointIndex LinearSystem::index_of(const std::string& label) const {
  if (auto p = find(label)) return *p;
  throw Error(Errc::UnknownPoint, "unknown point '" + label + "'");
}

const PointSet& LinearSystem::line(LineIndex l) const {
  if (l >= lines_.size()) {
    throw Error(Errc::IndexOutOfRange, "line index " + std::to_string(l) +
                                           " out of range (" +
                                           std::to_string(lines_.size()) + " lines)");
  }
  return lines_[l];
}

std::vector<std::string> LinearSystem::line_labels(LineIndex l) const {
  std::vector<std::string> out;
  for (auto p : line(l).elements()) out.push_back(labels_[p]);
  return out;
}

std::vector<std::size_t> LinearSystem::degrees() const {
  std::vector<std::size_t> deg(labels_.size(), 0);
  for (const auto& l : lines_) {
    for (auto p : l.elements()) ++deg[p];
  }
  return deg;
}

// ---------------------------------------------------------------------------
// Statistics and subsystem operations

SystemStats stats(const LinearSystem& ls) {
  SystemStats s;
  s.num_points = ls.num_points();
  s.num_lines = ls.num_lines();
  s.degree_of = ls.degrees();
  for (auto d : s.degree_of) s.max_degree = std::max(s.max_degree, d);
  bool uniform = ls.num_lines() > 0;
  std::size_t first = ls.num_lines() > 0 ? ls.line(0).size() : 0;
  for (const auto& l : ls.lines()) {
    auto n = l.size();
    s.rank = std::max(s.rank, n);
    if (n != first) uniform = false;
  }
  if (uniform) s.uniform_r = first;
  const auto& lines = ls.lines();
  for (std::size_t i = 0; i < lines.size() && s.is_intersecting; ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (!lines[i].intersects(lines[j])) {
        s.is_intersecting = false;
        break;
      }
    }
  }
  return s;
}

namespace {

// Re-indexes `keep_points` (sorted) and restricts each line in `line_ids`.
// Emptied lines are dropped. Duplicates either throw or are skipped.
LinearSystem restrict(const LinearSystem& ls, const std::vector<bool>& keep_point,
                      std::span<const LineIndex> line_ids, bool duplicates_are_errors) {
  std::vector<std::string> labels;
  std::vector<PointIndex> remap(ls.num_points(), 0);
  for (PointIndex p = 0; p < ls.num_points(); ++p) {
    if (keep_point[p]) {
      remap[p] = labels.size();
      labels.push_back(ls.label(p));
    }
  }
  std::vector<std::vector<PointIndex>> lines;
  std::set<std::vector<PointIndex>> seen;
  for (auto l : line_ids) {
    std::vector<PointIndex> pts;
    for (auto p : ls.line(l).elements()) {
      if (keep_point[p]) pts.push_back(remap[p]);
    }
    if (pts.empty()) continue;
    if (!seen.insert(pts).second) {
      if (duplicates_are_errors) {
        throw Error(Errc::DuplicateInducedLine,
                    "line " + std::to_string(l) +
                        " collapses onto an earlier induced line");
      }
      continue;
    }
    lines.push_back(std::move(pts));
  }
  return LinearSystem::from_indices(std::move(labels), lines);
}

std::vector<LineIndex> all_lines(const LinearSystem& ls) {
  std::vector<LineIndex> ids(ls.num_lines());
  std::iota(ids.begin(), ids.end(), LineIndex{0});
  return ids;
}

}  // namespace

LinearSystem delete_point(const LinearSystem& ls, PointIndex point) {
  if (point >= ls.num_points()) {
    throw Error(Errc::UnknownPoint, "point index " + std::to_string(point) +
                                        " does not exist");
  }
  std::vector<bool> keep(ls.num_points(), true);
  keep[point] = false;
  // {x,a} and {a} collapse when x goes; keep the first copy.
  return restrict(ls, keep, all_lines(ls), false);
}

LinearSystem delete_line(const LinearSystem& ls, LineIndex line) {
  if (line >= ls.num_lines()) {
    throw Error(Errc::IndexOutOfRange, "line index " + std::to_string(line) +
                                           " out of range");
  }
  auto ids = all_lines(ls);
  ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(line));
  std::vector<bool> keep(ls.num_points(), true);
  return restrict(ls, keep, ids, true);
}

LinearSystem induced_subsystem(const LinearSystem& ls,
                               std::span<const PointIndex> points,
                               std::span<const LineIndex> lines) {
  std::vector<bool> keep(ls.num_points(), false);
  for (auto p : points) {
    if (p >= ls.num_points()) {
      throw Error(Errc::UnknownPoint, "point index " + std::to_string(p) +
                                          " does not exist");
    }
    keep[p] = true;
  }
  std::vector<LineIndex> ids(lines.begin(), lines.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (auto l : ids) {
    if (l >= ls.num_lines()) {
      throw Error(Errc::IndexOutOfRange, "line index " + std::to_string(l) +
                                             " out of range");
    }
  }
  return restrict(ls, keep, ids, true);
}

LinearSystem reduce_low_degree(const LinearSystem& ls) {
  LinearSystem current = ls;
  for (;;) {
    auto deg = current.degrees();
    std::vector<bool> keep(current.num_points());
    bool changed = false;
    for (PointIndex p = 0; p < current.num_points(); ++p) {
      keep[p] = deg[p] >= 2;
      changed = changed || !keep[p];
    }
    if (!changed) return current;
    current = restrict(current, keep, all_lines(current), false);
  }
}

bool is_transversal(const LinearSystem& ls, std::span<const PointIndex> points) {
  PointSet chosen(ls.num_points());
  for (auto p : points) {
    if (p >= ls.num_points()) {
      throw Error(Errc::UnknownPoint, "point index " + std::to_string(p) +
                                          " does not exist");
    }
    chosen.insert(p);
  }
  return std::all_of(ls.lines().begin(), ls.lines().end(),
                     [&](const PointSet& l) { return l.intersects(chosen); });
}

bool is_2packing(const LinearSystem& ls, std::span<const LineIndex> lines) {
  std::vector<LineIndex> ids(lines.begin(), lines.end());
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) return false;
  std::vector<unsigned> usage(ls.num_points(), 0);
  for (auto l : ids) {
    for (auto p : ls.line(l).elements()) {
      if (++usage[p] > 2) return false;
    }
  }
  return true;
}

bool is_subsystem(const LinearSystem& sub, const LinearSystem& sup) {
  PointSet sub_points(sup.num_points());
  std::vector<PointIndex> to_sup(sub.num_points());
  for (PointIndex p = 0; p < sub.num_points(); ++p) {
    auto q = sup.find(sub.label(p));
    if (!q) return false;
    to_sup[p] = *q;
    sub_points.insert(*q);
  }
  std::set<std::vector<PointIndex>> restricted;
  for (const auto& l : sup.lines()) {
    auto r = l.intersection(sub_points).elements();
    if (!r.empty()) restricted.insert(std::move(r));
  }
  for (const auto& l : sub.lines()) {
    std::vector<PointIndex> image;
    for (auto p : l.elements()) image.push_back(to_sup[p]);
    std::sort(image.begin(), image.end());
    if (!restricted.contains(image)) return false;
  }
  return true;
}

LinearSystem canonicalize(const LinearSystem& ls) {
  std::vector<PointIndex> order(ls.num_points());
  std::iota(order.begin(), order.end(), PointIndex{0});
  std::sort(order.begin(), order.end(),
            [&](auto a, auto b) { return ls.label(a) < ls.label(b); });
  std::vector<PointIndex> remap(ls.num_points());
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < order.size(); ++i) {
    remap[order[i]] = i;
    labels.push_back(ls.label(order[i]));
  }
  std::vector<std::vector<PointIndex>> lines;
  for (const auto& l : ls.lines()) {
    std::vector<PointIndex> pts;
    for (auto p : l.elements()) pts.push_back(remap[p]);
    std::sort(pts.begin(), pts.end());
    lines.push_back(std::move(pts));
  }
  std::sort(lines.begin(), lines.end());
  return LinearSystem::from_indices(std::move(labels), lines);
}

std::string canonical_key(const LinearSystem& ls) {
  auto c = canonicalize(ls);
  std::ostringstream os;
  for (const auto& label : c.labels()) os << label.size() << ':' << label << ';';
  os << '|';
  for (LineIndex l = 0; l < c.num_lines(); ++l) {
    for (auto p : c.line_points(l)) os << p << ',';
    os << ';';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace {

constexpr std::size_t kNoLine = static_cast<std::size_t>(-1);

struct IsoSide {
  const LinearSystem* ls;
  std::vector<std::size_t> degree;
  std::vector<std::vector<std::size_t>> join;  // join[x][y] = line through both
  std::vector<std::size_t> line_size;

  explicit IsoSide(const LinearSystem& s)
      : ls(&s),
        degree(s.degrees()),
        join(s.num_points(), std::vector<std::size_t>(s.num_points(), kNoLine)) {
    for (LineIndex l = 0; l < s.num_lines(); ++l) {
      auto pts = s.line_points(l);
      line_size.push_back(pts.size());
      for (auto x : pts) {
        for (auto y : pts) {
          if (x != y) join[x][y] = l;
        }
      }
    }
  }
};

class IsoSearch {
 public:
  IsoSearch(const IsoSide& a, const IsoSide& b)
      : a_(a),
        b_(b),
        image_(a.ls->num_points(), kNoLine),
        used_(b.ls->num_points(), false),
        line_map_(a.ls->num_lines(), kNoLine),
        line_inv_(b.ls->num_lines(), kNoLine) {
    build_order();
    for (LineIndex l = 0; l < b.ls->num_lines(); ++l) {
      b_lines_.insert(b.ls->line_points(l));
    }
  }

  bool run() { return extend(0); }
  const std::vector<PointIndex>& image() const { return image_; }

 private:
  // Next point is the one most joined to points already placed.
  void build_order() {
    const auto n = a_.ls->num_points();
    std::vector<bool> placed(n, false);
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t best = kNoLine;
      std::size_t best_links = 0;
      for (PointIndex x = 0; x < n; ++x) {
        if (placed[x]) continue;
        std::size_t links = 0;
        for (auto y : order_) links += a_.join[x][y] != kNoLine ? 1 : 0;
        if (best == kNoLine || links > best_links ||
            (links == best_links && a_.degree[x] > a_.degree[best])) {
          best = x;
          best_links = links;
        }
      }
      placed[best] = true;
      order_.push_back(best);
    }
  }

  bool extend(std::size_t k) {
    if (k == order_.size()) return final_check();
    const PointIndex x = order_[k];
    for (PointIndex y = 0; y < b_.ls->num_points(); ++y) {
      if (used_[y] || b_.degree[y] != a_.degree[x]) continue;
      std::vector<std::pair<std::size_t, std::size_t>> assigned;
      if (consistent(k, x, y, assigned)) {
        image_[x] = y;
        used_[y] = true;
        if (extend(k + 1)) return true;
        used_[y] = false;
        image_[x] = kNoLine;
      }
      for (auto [la, lb] : assigned) {
        line_map_[la] = kNoLine;
        line_inv_[lb] = kNoLine;
      }
    }
    return false;
  }

  bool consistent(std::size_t k, PointIndex x, PointIndex y,
                  std::vector<std::pair<std::size_t, std::size_t>>& assigned) {
    for (std::size_t i = 0; i < k; ++i) {
      const PointIndex xp = order_[i];
      const PointIndex yp = image_[xp];
      const auto la = a_.join[x][xp];
      const auto lb = b_.join[y][yp];
      if ((la == kNoLine) != (lb == kNoLine)) return false;
      if (la == kNoLine) continue;
      if (a_.line_size[la] != b_.line_size[lb]) return false;
      if (line_map_[la] == kNoLine && line_inv_[lb] == kNoLine) {
        line_map_[la] = lb;
        line_inv_[lb] = la;
        assigned.emplace_back(la, lb);
      } else if (line_map_[la] != lb || line_inv_[lb] != la) {
        return false;
      }
    }
    return true;
  }

  bool final_check() const {
    for (LineIndex l = 0; l < a_.ls->num_lines(); ++l) {
      std::vector<PointIndex> img;
      for (auto p : a_.ls->line_points(l)) img.push_back(image_[p]);
      std::sort(img.begin(), img.end());
      if (!b_lines_.contains(img)) return false;
    }
    return true;
  }

  const IsoSide& a_;
  const IsoSide& b_;
  std::vector<PointIndex> order_;
  std::vector<PointIndex> image_;
  std::vector<bool> used_;
  std::vector<std::size_t> line_map_;
  std::vector<std::size_t> line_inv_;
  std::set<std::vector<PointIndex>> b_lines_;
};

template <class T>
std::vector<T> sorted(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

std::optional<PointBijection> are_isomorphic(const LinearSystem& a,
                                             const LinearSystem& b,
                                             const IsomorphismOptions& opts) {
  auto ra = reduce_low_degree(a);
  auto rb = reduce_low_degree(b);
  for (const auto* s : {&ra, &rb}) {
    if (s->num_points() > opts.max_points) {
      throw Error(Errc::SizeLimitExceeded,
                  "isomorphism search limited to " + std::to_string(opts.max_points) +
                      " points, got " + std::to_string(s->num_points()));
    }
  }
  if (ra.num_points() != rb.num_points() || ra.num_lines() != rb.num_lines()) {
    return std::nullopt;
  }
  IsoSide sa(ra);
  IsoSide sb(rb);
  if (sorted(sa.degree) != sorted(sb.degree) ||
      sorted(sa.line_size) != sorted(sb.line_size)) {
    return std::nullopt;
  }
  IsoSearch search(sa, sb);
  if (!search.run()) return std::nullopt;
  return PointBijection{search.image(), std::move(ra), std::move(rb)};
}

}  // namespace linsys
