#pragma once

#include <cstdint>

#include "dirspace/errors.hpp"

namespace dirspace {

// Finite surrogate for every limit: ball radius, power window, exponent
// window, end-equality threshold and subsampling seed. Echoed verbatim into
// every report so runs are reproducible.
struct TruncationProfile {
  std::int64_t horizon = 8;       // ball radius R
  std::int64_t powerBound = 40;   // N
  std::int64_t exponentBound = 64;  // K
  std::int64_t endThreshold = 5;
  std::uint64_t seed = 0;

  void validate() const {
    if (horizon < 1) fail(Errc::InvariantViolation, "horizon must be positive");
    if (powerBound < 4) fail(Errc::InvariantViolation, "power bound must be at least 4");
    if (exponentBound < 1) fail(Errc::InvariantViolation, "exponent bound must be positive");
    if (endThreshold < 1) fail(Errc::InvariantViolation, "end threshold must be positive");
  }
};

}  // namespace dirspace
