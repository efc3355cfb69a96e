#pragma once

#include <array>
#include <cstdint>

namespace vprsim::nav {

enum class Speed : std::uint8_t { Fast = 0, Slow = 1 };

constexpr Speed other(Speed s) { return s == Speed::Fast ? Speed::Slow : Speed::Fast; }
const char* to_string(Speed s);

struct NavParams {
  int trigger_threshold = 10;  // detections accumulated in Cruise before probing
  int probe_len = 10;          // query steps spent at each speed while probing
};

enum class Mode : std::uint8_t { Cruise, ProbePhase1, ProbePhase2 };

const char* to_string(Mode m);

// Cruise accumulates detections at a constant speed. Reaching the trigger
// threshold starts a probe: probe_len steps at the pre-probe speed, then
// probe_len steps at the alternate, tallying detections separately. The
// probe ends by adopting the speed with strictly fewer detections (a tie
// restores the pre-probe speed) and returning to Cruise with all counters
// cleared. Probe tallies never feed the Cruise counter.
struct NavState {
  Mode mode = Mode::Cruise;
  Speed current_speed = Speed::Fast;
  int detection_count = 0;
  std::array<int, 2> probe_detections{0, 0};  // indexed by Speed
  int probe_steps_remaining = 0;
  Speed pre_probe_speed = Speed::Fast;
};

struct NavStepResult {
  NavState state;
  Speed speed_for_next_query;
};

// Pure transition function: consumes the detection observed at the current
// query and yields the speed to use for the next one.
NavStepResult nav_step(const NavState& state, bool detection, const NavParams& params);

}  // namespace vprsim::nav
