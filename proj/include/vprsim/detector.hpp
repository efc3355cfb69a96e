#pragma once

#include "vprsim/rng.hpp"
#include "vprsim/types.hpp"

#include <stdexcept>
#include <vector>

namespace vprsim::detector {

// Simulated attack detector: a nominal true-positive rate on attacked
// queries and false-positive rate on clean ones. No temporal correlation;
// each query is an independent draw.
struct DetectorProfile {
  Real tp_rate = 0.0;
  Real fp_rate = 0.0;
};

inline void validate(const DetectorProfile& profile) {
  if (!(profile.tp_rate >= 0.0 && profile.tp_rate <= 1.0) ||
      !(profile.fp_rate >= 0.0 && profile.fp_rate <= 1.0))
    throw std::invalid_argument("DetectorProfile: rates must be in [0, 1]");
}

// Consumes exactly one draw regardless of the branch, so detection draws
// at a given (trial, step) coincide across comparison methods.
inline bool detect(bool was_attacked, const DetectorProfile& profile, rng::Stream& stream) {
  const double u = stream.next_double();
  return u < (was_attacked ? profile.tp_rate : profile.fp_rate);
}

// The evaluated detector grid: TP in {50, 60, 75, 85, 95}%, FP = 1 - TP.
inline std::vector<DetectorProfile> standard_grid() {
  std::vector<DetectorProfile> grid;
  for (const Real tp : {0.50, 0.60, 0.75, 0.85, 0.95}) grid.push_back({tp, 1.0 - tp});
  return grid;
}

}  // namespace vprsim::detector
