#include "vprsim/navigation.hpp"

#include <cstddef>
#include <stdexcept>

namespace vprsim::nav {

const char* to_string(Speed s) { return s == Speed::Fast ? "fast" : "slow"; }

const char* to_string(Mode m) {
  switch (m) {
    case Mode::Cruise: return "cruise";
    case Mode::ProbePhase1: return "probe1";
    case Mode::ProbePhase2: return "probe2";
  }
  return "?";
}

namespace {
std::size_t idx(Speed s) { return static_cast<std::size_t>(s); }
}  // namespace

NavStepResult nav_step(const NavState& state, bool detection, const NavParams& params) {
  if (params.trigger_threshold < 1 || params.probe_len < 1)
    throw std::invalid_argument("NavParams: trigger_threshold and probe_len must be >= 1");

  NavState n = state;
  switch (state.mode) {
    case Mode::Cruise:
      if (detection) ++n.detection_count;
      if (n.detection_count >= params.trigger_threshold) {
        n.detection_count = 0;
        n.mode = Mode::ProbePhase1;
        n.pre_probe_speed = state.current_speed;
        n.probe_detections = {0, 0};
        n.probe_steps_remaining = params.probe_len;
      }
      break;

    case Mode::ProbePhase1:
      if (detection) ++n.probe_detections[idx(state.pre_probe_speed)];
      --n.probe_steps_remaining;
      if (n.probe_steps_remaining == 0) {
        n.mode = Mode::ProbePhase2;
        n.probe_steps_remaining = params.probe_len;
        n.current_speed = other(state.pre_probe_speed);
      }
      break;

    case Mode::ProbePhase2:
      if (detection) ++n.probe_detections[idx(other(state.pre_probe_speed))];
      --n.probe_steps_remaining;
      if (n.probe_steps_remaining == 0) {
        const int at_pre = n.probe_detections[idx(state.pre_probe_speed)];
        const int at_alt = n.probe_detections[idx(other(state.pre_probe_speed))];
        // Strictly fewer detections wins; a tie restores the pre-probe speed.
        n.current_speed = at_alt < at_pre ? other(state.pre_probe_speed) : state.pre_probe_speed;
        n.mode = Mode::Cruise;
        n.detection_count = 0;
        n.probe_detections = {0, 0};
        n.probe_steps_remaining = 0;
      }
      break;
  }
  return {n, n.current_speed};
}

}  // namespace vprsim::nav
