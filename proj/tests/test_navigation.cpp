#include "vprsim/navigation.hpp"

#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace nav = vprsim::nav;
using nav::Mode;
using nav::NavParams;
using nav::NavState;
using nav::Speed;

namespace {

NavState advance(NavState state, const std::vector<bool>& detections,
                 const NavParams& params = {}) {
  for (const bool d : detections) state = nav::nav_step(state, d, params).state;
  return state;
}

// One full probe driven from Cruise: trigger with back-to-back detections,
// then deliver `at_pre` detections in the first phase and `at_alt` in the
// second, each packed at the start of its phase.
NavState run_probe(int at_pre, int at_alt, const NavParams& params = {}) {
  NavState state;
  state = advance(state, std::vector<bool>(static_cast<std::size_t>(params.trigger_threshold), true),
                  params);
  REQUIRE(state.mode == Mode::ProbePhase1);
  for (int i = 0; i < params.probe_len; ++i)
    state = nav::nav_step(state, i < at_pre, params).state;
  REQUIRE(state.mode == Mode::ProbePhase2);
  for (int i = 0; i < params.probe_len; ++i)
    state = nav::nav_step(state, i < at_alt, params).state;
  REQUIRE(state.mode == Mode::Cruise);
  return state;
}

}  // namespace

TEST_CASE("no detections means cruising at the initial speed forever") {
  NavState state;
  for (int i = 0; i < 500; ++i) {
    const auto r = nav::nav_step(state, false, {});
    state = r.state;
    CHECK(state.mode == Mode::Cruise);
    CHECK(state.current_speed == Speed::Fast);
    CHECK(state.detection_count == 0);
    CHECK(r.speed_for_next_query == Speed::Fast);
  }
}

TEST_CASE("the probe starts on reaching the detection threshold") {
  NavState state;
  // Nine detections spread between clean steps: still cruising.
  for (int i = 0; i < 9; ++i) {
    state = nav::nav_step(state, true, {}).state;
    state = nav::nav_step(state, false, {}).state;
  }
  CHECK(state.mode == Mode::Cruise);
  CHECK(state.detection_count == 9);

  state = nav::nav_step(state, true, {}).state;
  CHECK(state.mode == Mode::ProbePhase1);
  CHECK(state.detection_count == 0);  // consumed by the trigger
  CHECK(state.probe_detections == std::array<int, 2>{0, 0});
  CHECK(state.probe_steps_remaining == 10);
  CHECK(state.current_speed == Speed::Fast);  // unchanged until phase 2
  CHECK(state.pre_probe_speed == Speed::Fast);
}

TEST_CASE("phase one keeps the pre-probe speed and phase two runs the alternate") {
  NavState state;
  state = advance(state, std::vector<bool>(10, true));
  REQUIRE(state.mode == Mode::ProbePhase1);

  for (int i = 0; i < 10; ++i) {
    CHECK(state.current_speed == Speed::Fast);
    state = nav::nav_step(state, false, {}).state;
  }
  REQUIRE(state.mode == Mode::ProbePhase2);
  for (int i = 0; i < 10; ++i) {
    CHECK(state.current_speed == Speed::Slow);
    state = nav::nav_step(state, false, {}).state;
  }
  CHECK(state.mode == Mode::Cruise);
}

TEST_CASE("the speed with strictly fewer probe detections wins") {
  SUBCASE("alternate is quieter") {
    const NavState s = run_probe(8, 1);
    CHECK(s.current_speed == Speed::Slow);
  }
  SUBCASE("pre-probe speed is quieter") {
    const NavState s = run_probe(1, 8);
    CHECK(s.current_speed == Speed::Fast);
  }
  SUBCASE("a tie restores the pre-probe speed") {
    const NavState s = run_probe(5, 5);
    CHECK(s.current_speed == Speed::Fast);
  }
}

TEST_CASE("probe outcomes over the whole detection-count grid") {
  for (int at_pre = 0; at_pre <= 10; ++at_pre) {
    for (int at_alt = 0; at_alt <= 10; ++at_alt) {
      const NavState s = run_probe(at_pre, at_alt);
      const Speed expected = at_alt < at_pre ? Speed::Slow : Speed::Fast;
      CHECK(s.current_speed == expected);
      // Every probe resets all counters on the way out.
      CHECK(s.mode == Mode::Cruise);
      CHECK(s.detection_count == 0);
      CHECK(s.probe_detections == std::array<int, 2>{0, 0});
      CHECK(s.probe_steps_remaining == 0);
    }
  }
}

TEST_CASE("a probe lasts exactly two probe lengths") {
  NavParams params;
  params.probe_len = 4;
  NavState state;
  state = advance(state, std::vector<bool>(10, true), params);
  REQUIRE(state.mode == Mode::ProbePhase1);
  for (int i = 0; i < 2 * params.probe_len; ++i) {
    CHECK(state.mode != Mode::Cruise);
    state = nav::nav_step(state, true, params).state;
  }
  CHECK(state.mode == Mode::Cruise);
}

TEST_CASE("probe detections never feed the cruise counter") {
  // A probe saturated with detections ends with a clean slate: the next
  // probe still needs the full threshold of fresh cruise detections.
  NavState state = run_probe(10, 10);
  CHECK(state.detection_count == 0);
  for (int i = 0; i < 9; ++i) state = nav::nav_step(state, true, {}).state;
  CHECK(state.mode == Mode::Cruise);
  state = nav::nav_step(state, true, {}).state;
  CHECK(state.mode == Mode::ProbePhase1);
}

TEST_CASE("probing from slow targets fast as the alternate") {
  // First probe flips to Slow, second probe starts from Slow.
  NavState state = run_probe(8, 1);
  REQUIRE(state.current_speed == Speed::Slow);

  state = advance(state, std::vector<bool>(10, true));
  REQUIRE(state.mode == Mode::ProbePhase1);
  CHECK(state.pre_probe_speed == Speed::Slow);
  for (int i = 0; i < 10; ++i) {
    CHECK(state.current_speed == Speed::Slow);
    state = nav::nav_step(state, true, {}).state;
  }
  REQUIRE(state.mode == Mode::ProbePhase2);
  for (int i = 0; i < 10; ++i) {
    CHECK(state.current_speed == Speed::Fast);
    state = nav::nav_step(state, false, {}).state;
  }
  CHECK(state.current_speed == Speed::Fast);  // 0 < 10 detections
}

TEST_CASE("the transition function is pure") {
  NavState state;
  state.mode = Mode::ProbePhase1;
  state.probe_steps_remaining = 3;
  state.probe_detections = {2, 1};
  const NavState before = state;

  const auto a = nav::nav_step(state, true, {});
  const auto b = nav::nav_step(state, true, {});
  CHECK(a.state.probe_detections == b.state.probe_detections);
  CHECK(a.state.probe_steps_remaining == b.state.probe_steps_remaining);
  CHECK(a.speed_for_next_query == b.speed_for_next_query);
  CHECK(state.probe_detections == before.probe_detections);
  CHECK(state.mode == before.mode);
}

TEST_CASE("invalid parameters are rejected") {
  NavState state;
  NavParams zero_threshold;
  zero_threshold.trigger_threshold = 0;
  CHECK_THROWS_AS(nav::nav_step(state, false, zero_threshold), std::invalid_argument);
  NavParams zero_probe;
  zero_probe.probe_len = 0;
  CHECK_THROWS_AS(nav::nav_step(state, false, zero_probe), std::invalid_argument);
}

TEST_CASE("names for speeds and modes are stable") {
  CHECK(std::string(nav::to_string(Speed::Fast)) == "fast");
  CHECK(std::string(nav::to_string(Speed::Slow)) == "slow");
  CHECK(std::string(nav::to_string(Mode::Cruise)) == "cruise");
  CHECK(std::string(nav::to_string(Mode::ProbePhase1)) == "probe1");
  CHECK(std::string(nav::to_string(Mode::ProbePhase2)) == "probe2");
  CHECK(nav::other(Speed::Fast) == Speed::Slow);
  CHECK(nav::other(Speed::Slow) == Speed::Fast);
}
