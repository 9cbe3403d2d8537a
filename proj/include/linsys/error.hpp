#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace linsys {

enum class Errc {
  DuplicatePoint,
  DuplicateLine,
  UnknownPointInLine,
  PairwiseIntersectionViolation,
  EmptyLine,
  UnknownPoint,
  IndexOutOfRange,
  DuplicateInducedLine,
  SizeLimitExceeded,
  NonPositiveOrder,
  GroupNotNeutralSum,
  GroupHasInvolution,
  EvenOrder,
  OrderTooSmall,
  NotPrime,
  NoTriangle,
  InvalidTriangle,
  NotASubsystem,
  EnumerationCapExceeded,
  InfeasibleParameters,
  BudgetExhausted,
  FewerThanTwoPoints,
  LabelCountMismatch,
  ParseError,
  UnknownTheoremId,
  DigestMismatch,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace linsys
