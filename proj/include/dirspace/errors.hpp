#pragma once

#include <stdexcept>
#include <string>

namespace dirspace {

enum class Errc {
  Unreachable,
  EmptySample,
  NotGeodesic,
  EndpointMismatch,
  InvalidIsometry,
  NotHyperbolic,
  ConvergenceCheckFailed,
  AxisNotFoundWithinHorizon,
  HorizonTooSmall,
  ColoringDegenerate,
  Incompatible,
  OracleHorizonExceeded,
  IncompatibleInstances,
  DepthInfeasible,
  NotTowardsInfinity,
  Inconclusive,
  ArityTooSmall,
  OrderTooSmall,
  NotSymmetricGenerators,
  ParseError,
  InvariantViolation,
  Unsupported,
};

const char* errcName(Errc c);

// Computation failure carrying a stable machine-readable code. The CLI maps
// these to an error object on stdout and exit code 1.
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::string(errcName(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace dirspace
