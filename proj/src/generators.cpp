#include "linsys/generators.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace linsys {

LinearSystem cnn(const AbelianGroup& group) {
  if (!is_neutral_sum(group)) {
    throw Error(Errc::GroupNotNeutralSum,
                "group " + group.descriptor() + " is not neutral-sum");
  }
  if (!has_no_involution(group)) {
    throw Error(Errc::GroupHasInvolution,
                "group " + group.descriptor() + " has an element of order 2");
  }
  const auto n = group.order();
  if (n % 2 == 0) {
    throw Error(Errc::EvenOrder, "group " + group.descriptor() + " has even order");
  }
  if (n < 3) {
    throw Error(Errc::OrderTooSmall,
                "group " + group.descriptor() + " has order below 3");
  }

  const auto elems = group.elements();
  std::vector<GroupElement> nonzero;
  for (const auto& g : elems) {
    if (!group.is_zero(g)) nonzero.push_back(g);
  }

  std::vector<std::string> labels;
  std::map<std::pair<GroupElement, GroupElement>, PointIndex> index;
  for (const auto& h : elems) {
    for (const auto& g : nonzero) {
      index[{h, g}] = labels.size();
      labels.push_back("(" + group.render(h) + "," + group.render(g) + ")");
    }
  }
  const PointIndex p = labels.size();
  labels.emplace_back("p");
  const PointIndex q = labels.size();
  labels.emplace_back("q");

  std::vector<std::vector<PointIndex>> lines;
  for (const auto& g : nonzero) {
    std::vector<PointIndex> line;
    for (const auto& h : elems) line.push_back(index.at({h, g}));
    lines.push_back(std::move(line));
  }
  for (const auto& g : elems) {
    std::vector<PointIndex> line;
    for (const auto& h : nonzero) line.push_back(index.at({g, h}));
    line.push_back(p);
    lines.push_back(std::move(line));
  }
  for (const auto& g : elems) {
    std::vector<PointIndex> line;
    for (const auto& h : elems) {
      auto image = group.add(h, g);
      if (!group.is_zero(image)) line.push_back(index.at({h, image}));
    }
    line.push_back(q);
    lines.push_back(std::move(line));
  }
  return LinearSystem::from_indices(std::move(labels), lines);
}

LinearSystem example_c34() {
  return LinearSystem::validate(
      {"(0,1)", "(1,1)", "(2,1)", "(0,2)", "(1,2)", "(2,2)", "p", "q"},
      {
          {"(0,1)", "(1,1)", "(2,1)"},
          {"(0,2)", "(1,2)", "(2,2)"},
          {"(0,1)", "(0,2)", "p"},
          {"(1,1)", "(1,2)", "p"},
          {"(2,1)", "(2,2)", "p"},
          {"(1,1)", "(2,2)", "q"},
          {"(0,1)", "(1,2)", "q"},
          {"(0,2)", "(2,1)", "q"},
      });
}

namespace {

bool is_prime(std::int64_t q) {
  if (q < 2) return false;
  for (std::int64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

using Triple = std::array<std::int64_t, 3>;

std::vector<Triple> normalized_triples(std::int64_t q) {
  std::vector<Triple> out;
  for (std::int64_t a = 0; a < q; ++a) {
    for (std::int64_t b = 0; b < q; ++b) {
      for (std::int64_t c = 0; c < q; ++c) {
        const Triple t{a, b, c};
        auto lead = std::find_if(t.begin(), t.end(), [](auto x) { return x != 0; });
        if (lead != t.end() && *lead == 1) out.push_back(t);
      }
    }
  }
  return out;
}

}  // namespace

LinearSystem projective_plane(std::int64_t q) {
  if (!is_prime(q)) {
    throw Error(Errc::NotPrime, "projective plane order " + std::to_string(q) +
                                    " is not prime");
  }
  const auto points = normalized_triples(q);
  std::vector<std::string> labels;
  for (const auto& t : points) {
    labels.push_back("[" + std::to_string(t[0]) + ":" + std::to_string(t[1]) + ":" +
                     std::to_string(t[2]) + "]");
  }
  std::vector<std::vector<PointIndex>> lines;
  for (const auto& coeff : points) {
    std::vector<PointIndex> line;
    for (PointIndex i = 0; i < points.size(); ++i) {
      const auto& x = points[i];
      if ((coeff[0] * x[0] + coeff[1] * x[1] + coeff[2] * x[2]) % q == 0) {
        line.push_back(i);
      }
    }
    lines.push_back(std::move(line));
  }
  return LinearSystem::from_indices(std::move(labels), lines);
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::vector<std::vector<LineIndex>> join_table(const LinearSystem& ls) {
  std::vector<std::vector<LineIndex>> join(
      ls.num_points(), std::vector<LineIndex>(ls.num_points(), kNone));
  for (LineIndex l = 0; l < ls.num_lines(); ++l) {
    auto pts = ls.line_points(l);
    for (auto x : pts) {
      for (auto y : pts) {
        if (x != y) join[x][y] = l;
      }
    }
  }
  return join;
}

}  // namespace

Triangle find_triangle(const LinearSystem& ls) {
  const auto join = join_table(ls);
  const auto n = ls.num_points();
  for (PointIndex i = 0; i < n; ++i) {
    for (PointIndex j = i + 1; j < n; ++j) {
      const auto ij = join[i][j];
      if (ij == kNone) continue;
      for (PointIndex k = j + 1; k < n; ++k) {
        const auto ik = join[i][k];
        const auto jk = join[j][k];
        if (ik == kNone || jk == kNone || ik == ij) continue;
        return Triangle{{i, j, k}, {ij, ik, jk}};
      }
    }
  }
  throw Error(Errc::NoTriangle, "system has no three pairwise joined, non-collinear points");
}

LinearSystem delete_triangle(const LinearSystem& ls, const Triangle& t) {
  const auto& v = t.vertices;
  const auto& s = t.sides;
  auto fail = [](const std::string& why) {
    return Error(Errc::InvalidTriangle, "invalid triangle: " + why);
  };
  for (auto p : v) {
    if (p >= ls.num_points()) throw fail("vertex out of range");
  }
  for (auto l : s) {
    if (l >= ls.num_lines()) throw fail("side out of range");
  }
  if (v[0] == v[1] || v[0] == v[2] || v[1] == v[2]) throw fail("repeated vertex");
  if (s[0] == s[1] || s[0] == s[2] || s[1] == s[2]) throw fail("collinear vertices");
  const std::array<std::pair<PointIndex, PointIndex>, 3> ends{
      {{v[0], v[1]}, {v[0], v[2]}, {v[1], v[2]}}};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& line = ls.line(s[i]);
    if (!line.contains(ends[i].first) || !line.contains(ends[i].second)) {
      throw fail("side " + std::to_string(i) + " does not join its vertices");
    }
  }
  std::vector<PointIndex> keep_points;
  for (PointIndex p = 0; p < ls.num_points(); ++p) {
    if (std::find(v.begin(), v.end(), p) == v.end()) keep_points.push_back(p);
  }
  std::vector<LineIndex> keep_lines;
  for (LineIndex l = 0; l < ls.num_lines(); ++l) {
    if (std::find(s.begin(), s.end(), l) == s.end()) keep_lines.push_back(l);
  }
  return induced_subsystem(ls, keep_points, keep_lines);
}

LinearSystem chat() {
  const auto plane = projective_plane(3);
  return delete_triangle(plane, find_triangle(plane));
}

std::vector<LinearSystem> enumerate_between(const LinearSystem& base,
                                            const LinearSystem& sup,
                                            const EnumerationOptions& opts) {
  if (!is_subsystem(base, sup)) {
    throw Error(Errc::NotASubsystem, "base is not a linear subsystem of sup");
  }
  PointSet base_points(sup.num_points());
  std::vector<PointIndex> required_points;
  for (const auto& label : base.labels()) {
    auto p = sup.index_of(label);
    base_points.insert(p);
    required_points.push_back(p);
  }
  std::vector<PointIndex> free_points;
  for (PointIndex p = 0; p < sup.num_points(); ++p) {
    if (!base_points.contains(p)) free_points.push_back(p);
  }

  // A sup line is required when it is the only extension of some base line.
  std::set<std::vector<std::string>> base_lines;
  for (LineIndex l = 0; l < base.num_lines(); ++l) {
    auto labels = base.line_labels(l);
    std::sort(labels.begin(), labels.end());
    base_lines.insert(std::move(labels));
  }
  std::map<std::vector<std::string>, std::vector<LineIndex>> extensions;
  for (LineIndex l = 0; l < sup.num_lines(); ++l) {
    std::vector<std::string> labels;
    for (auto p : sup.line(l).intersection(base_points).elements()) {
      labels.push_back(sup.label(p));
    }
    std::sort(labels.begin(), labels.end());
    if (base_lines.contains(labels)) extensions[labels].push_back(l);
  }
  std::vector<bool> required(sup.num_lines(), false);
  for (const auto& [key, ext] : extensions) {
    if (ext.size() == 1) required[ext.front()] = true;
  }
  std::vector<LineIndex> required_lines;
  std::vector<LineIndex> free_lines;
  for (LineIndex l = 0; l < sup.num_lines(); ++l) {
    (required[l] ? required_lines : free_lines).push_back(l);
  }

  const auto free_count = free_points.size() + free_lines.size();
  if (free_count > opts.max_free_elements) {
    throw Error(Errc::EnumerationCapExceeded,
                "enumeration over " + std::to_string(free_count) +
                    " free points and lines exceeds cap of " +
                    std::to_string(opts.max_free_elements));
  }

  std::map<std::string, LinearSystem> found;
  for (std::uint64_t pmask = 0; pmask < (std::uint64_t{1} << free_points.size()); ++pmask) {
    auto points = required_points;
    for (std::size_t i = 0; i < free_points.size(); ++i) {
      if ((pmask >> i) & 1U) points.push_back(free_points[i]);
    }
    std::sort(points.begin(), points.end());
    for (std::uint64_t lmask = 0; lmask < (std::uint64_t{1} << free_lines.size()); ++lmask) {
      auto lines = required_lines;
      for (std::size_t i = 0; i < free_lines.size(); ++i) {
        if ((lmask >> i) & 1U) lines.push_back(free_lines[i]);
      }
      LinearSystem candidate;
      try {
        candidate = induced_subsystem(sup, points, lines);
      } catch (const Error& e) {
        if (e.code() == Errc::DuplicateInducedLine) continue;
        throw;
      }
      if (!is_subsystem(base, candidate)) continue;
      auto key = canonical_key(candidate);
      found.try_emplace(std::move(key), std::move(candidate));
    }
  }
  std::vector<LinearSystem> out;
  out.reserve(found.size());
  for (auto& [key, ls] : found) out.push_back(std::move(ls));
  return out;
}

LinearSystem random_linear_system(std::uint64_t seed, std::size_t num_points,
                                  std::size_t num_lines, std::size_t min_line,
                                  std::size_t max_line) {
  if (min_line < 2 || max_line < min_line || max_line > num_points) {
    throw Error(Errc::InfeasibleParameters,
                "need 2 <= min_line <= max_line <= num_points, got min " +
                    std::to_string(min_line) + ", max " + std::to_string(max_line) +
                    ", points " + std::to_string(num_points));
  }
  constexpr int kAttemptsPerSlot = 64;
  std::mt19937_64 rng(seed);
  auto draw = [&rng](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < num_points; ++i) labels.push_back("x" + std::to_string(i));

  std::vector<PointSet> accepted;
  std::vector<std::size_t> pool(num_points);
  for (std::size_t slot = 0; slot < num_lines; ++slot) {
    for (int attempt = 0; attempt < kAttemptsPerSlot; ++attempt) {
      const auto size = min_line + draw(max_line - min_line + 1);
      for (std::size_t i = 0; i < num_points; ++i) pool[i] = i;
      PointSet line(num_points);
      for (std::size_t i = 0; i < size; ++i) {
        std::swap(pool[i], pool[i + draw(num_points - i)]);
        line.insert(pool[i]);
      }
      const bool ok = std::none_of(accepted.begin(), accepted.end(), [&](const PointSet& l) {
        return l.intersection_size(line) > 1;
      });
      if (ok) {
        accepted.push_back(std::move(line));
        break;
      }
    }
  }
  std::vector<std::vector<PointIndex>> lines;
  for (const auto& l : accepted) lines.push_back(l.elements());
  return LinearSystem::from_indices(std::move(labels), lines);
}

}  // namespace linsys
