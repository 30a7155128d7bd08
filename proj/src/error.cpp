#include "blaschke/error.hpp"

namespace blaschke {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::RootFindingDivergence: return "RootFindingDivergence";
    case ErrorKind::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
    case ErrorKind::OffCircleRoot: return "OffCircleRoot";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegenerateEllipse: return "DegenerateEllipse";
    case ErrorKind::NotTangent: return "NotTangent";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::NoIntersectionInDisk: return "NoIntersectionInDisk";
    case ErrorKind::IdenticalGeodesics: return "IdenticalGeodesics";
    case ErrorKind::PointNotOnGeodesic: return "PointNotOnGeodesic";
    case ErrorKind::CollinearPoints: return "CollinearPoints";
    case ErrorKind::CoalescedFiber: return "CoalescedFiber";
    case ErrorKind::TooManySkips: return "TooManySkips";
    case ErrorKind::NearSingularDenominator: return "NearSingularDenominator";
    case ErrorKind::OddDegree: return "OddDegree";
    case ErrorKind::InterleavingViolated: return "InterleavingViolated";
    case ErrorKind::PoleAtOne: return "PoleAtOne";
  }
  return "Unknown";
}

}  // namespace blaschke
