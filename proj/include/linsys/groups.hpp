#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "linsys/error.hpp"

namespace linsys {

struct GroupElement {
  std::vector<std::int64_t> coordinates;

  bool operator==(const GroupElement&) const = default;
  auto operator<=>(const GroupElement&) const = default;
};

/// Finite additive abelian group Z_{n1} x ... x Z_{nk}.
class AbelianGroup {
 public:
  static AbelianGroup cyclic(std::int64_t n);
  static AbelianGroup product(const std::vector<AbelianGroup>& factors);
  /// Parses descriptors such as "z3", "z5", "z3xz3".
  static AbelianGroup parse(std::string_view descriptor);

  const std::vector<std::int64_t>& cyclic_orders() const noexcept { return orders_; }
  std::int64_t order() const noexcept;

  GroupElement zero() const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement negate(const GroupElement& a) const;
  bool is_zero(const GroupElement& a) const;
  bool contains(const GroupElement& a) const;

  /// All elements, lexicographic on coordinates.
  std::vector<GroupElement> elements() const;

  std::string descriptor() const;
  /// "2" for cyclic groups, "1.2" for products.
  std::string render(const GroupElement& a) const;

 private:
  explicit AbelianGroup(std::vector<std::int64_t> orders) : orders_(std::move(orders)) {}

  std::vector<std::int64_t> orders_;
};

bool is_neutral_sum(const AbelianGroup& g);
bool has_no_involution(const AbelianGroup& g);

}  // namespace linsys
