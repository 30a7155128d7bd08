#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace blaschke {

enum class ErrorKind {
  PoleProximity,
  RootFindingDivergence,
  DegenerateLeadingCoefficient,
  OffCircleRoot,
  ZeroInput,
  InvalidArgument,
  DegenerateEllipse,
  NotTangent,
  CoincidentPoints,
  NoIntersectionInDisk,
  IdenticalGeodesics,
  PointNotOnGeodesic,
  CollinearPoints,
  CoalescedFiber,
  TooManySkips,
  NearSingularDenominator,
  OddDegree,
  InterleavingViolated,
  PoleAtOne,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the ErrorKind tags so
/// callers (the CLI in particular) can branch on the category.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace blaschke
