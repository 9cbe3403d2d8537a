#include "linsys/groups.hpp"

#include <charconv>

namespace linsys {

AbelianGroup AbelianGroup::cyclic(std::int64_t n) {
  if (n < 1) {
    throw Error(Errc::NonPositiveOrder,
                "cyclic group order must be positive, got " + std::to_string(n));
  }
  return AbelianGroup({n});
}

AbelianGroup AbelianGroup::product(const std::vector<AbelianGroup>& factors) {
  std::vector<std::int64_t> orders;
  for (const auto& f : factors) {
    orders.insert(orders.end(), f.orders_.begin(), f.orders_.end());
  }
  if (orders.empty()) orders.push_back(1);
  return AbelianGroup(std::move(orders));
}

AbelianGroup AbelianGroup::parse(std::string_view descriptor) {
  std::vector<AbelianGroup> factors;
  std::size_t pos = 0;
  while (pos <= descriptor.size()) {
    auto end = descriptor.find('x', pos);
    if (end == std::string_view::npos) end = descriptor.size();
    auto part = descriptor.substr(pos, end - pos);
    if (part.size() < 2 || part[0] != 'z') {
      throw Error(Errc::ParseError,
                  "bad group descriptor '" + std::string(descriptor) + "'");
    }
    std::int64_t n = 0;
    auto digits = part.substr(1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw Error(Errc::ParseError,
                  "bad group descriptor '" + std::string(descriptor) + "'");
    }
    factors.push_back(cyclic(n));
    pos = end + 1;
  }
  return product(factors);
}

std::int64_t AbelianGroup::order() const noexcept {
  std::int64_t n = 1;
  for (auto o : orders_) n *= o;
  return n;
}

GroupElement AbelianGroup::zero() const {
  return GroupElement{std::vector<std::int64_t>(orders_.size(), 0)};
}

GroupElement AbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  GroupElement out = zero();
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    out.coordinates[i] = (a.coordinates.at(i) + b.coordinates.at(i)) % orders_[i];
  }
  return out;
}

GroupElement AbelianGroup::negate(const GroupElement& a) const {
  GroupElement out = zero();
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    out.coordinates[i] = (orders_[i] - a.coordinates.at(i)) % orders_[i];
  }
  return out;
}

bool AbelianGroup::is_zero(const GroupElement& a) const { return a == zero(); }

bool AbelianGroup::contains(const GroupElement& a) const {
  if (a.coordinates.size() != orders_.size()) return false;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (a.coordinates[i] < 0 || a.coordinates[i] >= orders_[i]) return false;
  }
  return true;
}

std::vector<GroupElement> AbelianGroup::elements() const {
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(order()));
  GroupElement e = zero();
  for (;;) {
    out.push_back(e);
    // Odometer increment, last coordinate fastest.
    std::size_t i = orders_.size();
    while (i > 0) {
      --i;
      if (++e.coordinates[i] < orders_[i]) break;
      e.coordinates[i] = 0;
      if (i == 0) return out;
    }
  }
}

std::string AbelianGroup::descriptor() const {
  std::string s;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (i) s += 'x';
    s += 'z' + std::to_string(orders_[i]);
  }
  return s;
}

std::string AbelianGroup::render(const GroupElement& a) const {
  std::string s;
  for (std::size_t i = 0; i < a.coordinates.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(a.coordinates[i]);
  }
  return s;
}

bool is_neutral_sum(const AbelianGroup& g) {
  GroupElement sum = g.zero();
  for (const auto& e : g.elements()) sum = g.add(sum, e);
  return g.is_zero(sum);
}

bool has_no_involution(const AbelianGroup& g) {
  for (const auto& e : g.elements()) {
    if (!g.is_zero(e) && g.is_zero(g.add(e, e))) return false;
  }
  return true;
}

}  // namespace linsys
