#pragma once

#include "vprsim/attacks.hpp"
#include "vprsim/detector.hpp"
#include "vprsim/navigation.hpp"
#include "vprsim/rng.hpp"
#include "vprsim/types.hpp"
#include "vprsim/vpr.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vprsim::scenario {

// Contiguous near-equal partition of the query traverse, each zone carrying
// the speed at which attacks stay unlikely. Fast/Slow counts differ by at
// most one.
struct ZonePlan {
  std::vector<Index> zone_begin;       // size n_zones + 1; zone z covers [zone_begin[z], zone_begin[z+1])
  std::vector<nav::Speed> safe_speed;  // size n_zones

  int n_zones() const { return static_cast<int>(safe_speed.size()); }
  Index n_queries() const { return zone_begin.empty() ? 0 : zone_begin.back(); }
  int zone_of(Index query_index) const;

  friend bool operator==(const ZonePlan&, const ZonePlan&) = default;
};

// Draw order on the stream: for an odd zone count, one draw picks which
// speed gets the extra zone; then one permutation shuffles the balanced
// multiset. Even counts skip the first draw.
ZonePlan allocate_zones(int n_zones, Index n_queries, rng::Stream& stream);

enum class PolicyKind { BaselineFixedFast, RandomPerZone, Aad };

const char* to_string(PolicyKind kind);

struct MethodConfig {
  std::string name;  // label used in logs and reports
  PolicyKind policy = PolicyKind::BaselineFixedFast;
  // AAD policy only:
  detector::DetectorProfile profile;
  nav::NavParams nav;
};

struct EpisodeConfig {
  Real p_attack_safe = 0.10;   // attack probability while moving at the zone's safe speed
  Real p_attack_unsafe = 0.70; // attack probability otherwise
  int n_zones = 10;
  MethodConfig method;
  std::uint64_t master_seed = 0;
  std::uint32_t trial = 0;
};

// What the episode log keeps of an applied attack. Matches the serialized
// schema; the attacked index set itself is not retained (it would dominate
// log memory at descriptor dimension 4096).
struct AttackSummary {
  attacks::AttackKind kind = attacks::AttackKind::Flat;
  attacks::AttackLayout layout = attacks::AttackLayout::Noise;
  Real fraction = 0.0;
  attacks::AttackRecord::Source source = attacks::AttackRecord::Source::None;
  Index source_index = -1;
  bool fallback_random = false;
  Index n_indices = 0;

  friend bool operator==(const AttackSummary&, const AttackSummary&) = default;
};

struct StepRecord {
  Index query_index = 0;
  int zone_index = 0;
  nav::Speed safe_speed = nav::Speed::Fast;
  nav::Speed chosen_speed = nav::Speed::Fast;
  nav::Mode nav_mode = nav::Mode::Cruise;  // mode the robot was in while taking this query
  bool attacked = false;
  std::optional<AttackSummary> attack;
  bool detected = false;
  bool rejected = false;  // always equals detected: detection rejects localization
  std::optional<MatchResult> localization;  // present iff accepted
  std::optional<Real> ate_m;                // present iff accepted

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct EpisodeTotals {
  Index n_steps = 0;
  Index n_attacked = 0;
  Index n_detected = 0;
  Index n_rejected = 0;
  Index n_accepted = 0;

  friend bool operator==(const EpisodeTotals&, const EpisodeTotals&) = default;
};

struct EpisodeLog {
  EpisodeConfig config;
  ZonePlan zone_plan;
  std::vector<StepRecord> steps;
  EpisodeTotals totals;
};

// Per-dataset state reused across episodes: the matcher over the reference
// traverse and the attack value ranges. Holds pointers; both traverses must
// outlive it.
struct DatasetContext {
  const Traverse* reference;
  const Traverse* query;
  vpr::Matcher matcher;
  attacks::ValueRangeModel ranges;

  DatasetContext(const Traverse& reference_traverse, const Traverse& query_traverse);
};

// One pass over the query traverse. Per step: the policy picks a speed, an
// attack lands with the zone- and speed-dependent probability, an AAD
// policy then draws a detection and rejects the localization on detection.
// Accepted steps are matched against the reference; rejected steps carry no
// localization or error. All draws are keyed by (master_seed, trial, step,
// purpose), so attack and detection coincidences line up across methods.
EpisodeLog run_episode(const DatasetContext& data, const EpisodeConfig& config,
                       const ZonePlan& plan);
EpisodeLog run_episode(const Traverse& reference, const Traverse& query,
                       const EpisodeConfig& config, const ZonePlan& plan);

struct ExperimentParams {
  Real p_attack_safe = 0.10;
  Real p_attack_unsafe = 0.70;
  int n_zones = 10;
  int n_trials = 100;
  std::uint64_t master_seed = 0;
  int threads = 1;  // <= 0 selects hardware concurrency
};

struct ExperimentResult {
  ExperimentParams params;
  std::vector<MethodConfig> methods;
  std::vector<std::vector<EpisodeLog>> logs;  // [method][trial]
};

// Runs every method over the same n_trials zone plans (trial t's plan is a
// pure function of (master_seed, t)). Trials are independent and may run on
// several threads; results are placed by (method, trial) index, so the
// output is identical regardless of thread count.
ExperimentResult run_experiment(const Traverse& reference, const Traverse& query,
                                const std::vector<MethodConfig>& methods,
                                const ExperimentParams& params);

}  // namespace vprsim::scenario
