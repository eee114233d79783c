#include "dirspace/errors.hpp"

namespace dirspace {

const char* errcName(Errc c) {
  switch (c) {
    case Errc::Unreachable: return "Unreachable";
    case Errc::EmptySample: return "EmptySample";
    case Errc::NotGeodesic: return "NotGeodesic";
    case Errc::EndpointMismatch: return "EndpointMismatch";
    case Errc::InvalidIsometry: return "InvalidIsometry";
    case Errc::NotHyperbolic: return "NotHyperbolic";
    case Errc::ConvergenceCheckFailed: return "ConvergenceCheckFailed";
    case Errc::AxisNotFoundWithinHorizon: return "AxisNotFoundWithinHorizon";
    case Errc::HorizonTooSmall: return "HorizonTooSmall";
    case Errc::ColoringDegenerate: return "ColoringDegenerate";
    case Errc::Incompatible: return "Incompatible";
    case Errc::OracleHorizonExceeded: return "OracleHorizonExceeded";
    case Errc::IncompatibleInstances: return "IncompatibleInstances";
    case Errc::DepthInfeasible: return "DepthInfeasible";
    case Errc::NotTowardsInfinity: return "NotTowardsInfinity";
    case Errc::Inconclusive: return "Inconclusive";
    case Errc::ArityTooSmall: return "ArityTooSmall";
    case Errc::OrderTooSmall: return "OrderTooSmall";
    case Errc::NotSymmetricGenerators: return "NotSymmetricGenerators";
    case Errc::ParseError: return "ParseError";
    case Errc::InvariantViolation: return "InvariantViolation";
    case Errc::Unsupported: return "Unsupported";
  }
  return "UnknownError";
}

}  // namespace dirspace
