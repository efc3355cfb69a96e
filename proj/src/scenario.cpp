#include "vprsim/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>
#include <utility>

namespace vprsim::scenario {

int ZonePlan::zone_of(Index query_index) const {
  auto it = std::upper_bound(zone_begin.begin(), zone_begin.end(), query_index);
  if (it == zone_begin.begin() || it == zone_begin.end())
    throw std::out_of_range("ZonePlan::zone_of: query index outside the plan");
  return static_cast<int>(it - zone_begin.begin()) - 1;
}

ZonePlan allocate_zones(int n_zones, Index n_queries, rng::Stream& stream) {
  if (n_zones < 1 || static_cast<Index>(n_zones) > n_queries)
    throw std::invalid_argument("allocate_zones: need 1 <= n_zones <= n_queries");

  ZonePlan plan;
  plan.zone_begin.resize(static_cast<std::size_t>(n_zones) + 1);
  const Index base = n_queries / n_zones;
  const Index rem = n_queries % n_zones;
  plan.zone_begin[0] = 0;
  for (int z = 0; z < n_zones; ++z)
    plan.zone_begin[z + 1] = plan.zone_begin[z] + base + (z < rem ? 1 : 0);

  // Balanced multiset of safe speeds; an odd count gets its extra speed by
  // one uniform draw, then the whole multiset is shuffled.
  std::vector<nav::Speed> pool;
  pool.reserve(static_cast<std::size_t>(n_zones));
  pool.insert(pool.end(), static_cast<std::size_t>(n_zones / 2), nav::Speed::Fast);
  pool.insert(pool.end(), static_cast<std::size_t>(n_zones / 2), nav::Speed::Slow);
  if (n_zones % 2 == 1)
    pool.push_back(stream.below(2) == 0 ? nav::Speed::Fast : nav::Speed::Slow);

  const auto perm = stream.permutation(n_zones);
  plan.safe_speed.resize(static_cast<std::size_t>(n_zones));
  for (int z = 0; z < n_zones; ++z)
    plan.safe_speed[static_cast<std::size_t>(z)] = pool[static_cast<std::size_t>(perm[static_cast<std::size_t>(z)])];
  return plan;
}

const char* to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::BaselineFixedFast: return "baseline_fixed_fast";
    case PolicyKind::RandomPerZone: return "random_per_zone";
    case PolicyKind::Aad: return "aad";
  }
  return "?";
}

DatasetContext::DatasetContext(const Traverse& reference_traverse, const Traverse& query_traverse)
    : reference(&reference_traverse),
      query(&query_traverse),
      matcher(reference_traverse),
      ranges(attacks::ValueRangeModel::from_reference(reference_traverse)) {
  if (reference_traverse.dim() != query_traverse.dim())
    throw std::invalid_argument("DatasetContext: reference and query dimension mismatch");
}

namespace {

void validate(const EpisodeConfig& config) {
  for (const Real p : {config.p_attack_safe, config.p_attack_unsafe})
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("EpisodeConfig: attack probabilities must be in [0, 1]");
  if (config.n_zones < 1) throw std::invalid_argument("EpisodeConfig: n_zones must be >= 1");
}

AttackSummary summarize_attack(const attacks::AttackRecord& record) {
  AttackSummary s;
  s.kind = record.spec.kind;
  s.layout = record.spec.layout;
  s.fraction = record.spec.fraction;
  s.source = record.source;
  s.source_index = record.source_index;
  s.fallback_random = record.fallback_random;
  s.n_indices = static_cast<Index>(record.indices.size());
  return s;
}

}  // namespace

EpisodeLog run_episode(const DatasetContext& data, const EpisodeConfig& config,
                       const ZonePlan& plan) {
  validate(config);
  const Traverse& reference = *data.reference;
  const Traverse& query = *data.query;
  const Index n = query.frame_count();
  if (plan.n_queries() != n)
    throw std::invalid_argument("run_episode: zone plan does not cover the query traverse");
  if (plan.n_zones() != config.n_zones)
    throw std::invalid_argument("run_episode: zone plan and config disagree on n_zones");

  EpisodeLog log;
  log.config = config;
  log.zone_plan = plan;
  log.steps.resize(static_cast<std::size_t>(n));

  // Query descriptors as delivered to the matcher; attacked columns are
  // overwritten in place. Earlier columns double as the donor pool for
  // query-based attacks: an attacker replays what it observed, which is the
  // delivered (possibly already attacked) descriptor.
  Matrix delivered = query.descriptors();

  // Speeds the random-per-zone policy would use, fixed per zone up front.
  std::vector<nav::Speed> random_zone_speed;
  if (config.method.policy == PolicyKind::RandomPerZone) {
    random_zone_speed.resize(static_cast<std::size_t>(plan.n_zones()));
    for (int z = 0; z < plan.n_zones(); ++z) {
      rng::Stream s(config.master_seed, config.trial, static_cast<std::uint32_t>(z),
                    rng::Purpose::PolicySpeed);
      random_zone_speed[static_cast<std::size_t>(z)] =
          s.below(2) == 0 ? nav::Speed::Fast : nav::Speed::Slow;
    }
  }

  nav::NavState nav_state;
  nav::Speed aad_speed = nav_state.current_speed;

  for (Index i = 0; i < n; ++i) {
    StepRecord& rec = log.steps[static_cast<std::size_t>(i)];
    rec.query_index = i;
    rec.zone_index = plan.zone_of(i);
    rec.safe_speed = plan.safe_speed[static_cast<std::size_t>(rec.zone_index)];

    switch (config.method.policy) {
      case PolicyKind::BaselineFixedFast:
        rec.chosen_speed = nav::Speed::Fast;
        break;
      case PolicyKind::RandomPerZone:
        rec.chosen_speed = random_zone_speed[static_cast<std::size_t>(rec.zone_index)];
        break;
      case PolicyKind::Aad:
        rec.chosen_speed = aad_speed;
        rec.nav_mode = nav_state.mode;
        break;
    }

    const Real p_attack =
        rec.chosen_speed == rec.safe_speed ? config.p_attack_safe : config.p_attack_unsafe;
    const std::uint32_t step = static_cast<std::uint32_t>(i);
    rng::Stream roll(config.master_seed, config.trial, step, rng::Purpose::AttackRoll);
    rec.attacked = roll.next_double() < p_attack;

    if (rec.attacked) {
      rng::Stream spec_stream(config.master_seed, config.trial, step, rng::Purpose::AttackSpecDraw);
      const attacks::AttackSpec spec = attacks::random_attack_spec(spec_stream);
      rng::Stream apply_stream(config.master_seed, config.trial, step, rng::Purpose::AttackApply);
      auto [perturbed, record] = attacks::apply_attack(
          query.descriptor(i), spec, delivered.leftCols(i), reference, data.ranges, apply_stream);
      delivered.col(i) = perturbed;
      rec.attack = summarize_attack(record);
    }

    if (config.method.policy == PolicyKind::Aad) {
      rng::Stream det(config.master_seed, config.trial, step, rng::Purpose::Detection);
      rec.detected = detector::detect(rec.attacked, config.method.profile, det);
      const auto advanced = nav::nav_step(nav_state, rec.detected, config.method.nav);
      nav_state = advanced.state;
      aad_speed = advanced.speed_for_next_query;
    }
    rec.rejected = rec.detected;
  }

  // Localize the accepted steps in one batch; rejected steps contribute no
  // estimate and no error.
  std::vector<Index> accepted;
  accepted.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    if (!log.steps[static_cast<std::size_t>(i)].rejected) accepted.push_back(i);

  if (!accepted.empty()) {
    Matrix batch(query.dim(), static_cast<Index>(accepted.size()));
    for (std::size_t j = 0; j < accepted.size(); ++j)
      batch.col(static_cast<Index>(j)) = delivered.col(accepted[j]);
    const auto results = data.matcher.match_batch(batch);
    for (std::size_t j = 0; j < accepted.size(); ++j) {
      StepRecord& rec = log.steps[static_cast<std::size_t>(accepted[j])];
      rec.localization = results[j];
      rec.ate_m = vpr::along_track_error(results[j].estimate_position_m,
                                         query.position_m(accepted[j]));
    }
  }

  log.totals.n_steps = n;
  for (const StepRecord& rec : log.steps) {
    log.totals.n_attacked += rec.attacked ? 1 : 0;
    log.totals.n_detected += rec.detected ? 1 : 0;
    log.totals.n_rejected += rec.rejected ? 1 : 0;
  }
  log.totals.n_accepted = n - log.totals.n_rejected;
  return log;
}

EpisodeLog run_episode(const Traverse& reference, const Traverse& query,
                       const EpisodeConfig& config, const ZonePlan& plan) {
  return run_episode(DatasetContext(reference, query), config, plan);
}

ExperimentResult run_experiment(const Traverse& reference, const Traverse& query,
                                const std::vector<MethodConfig>& methods,
                                const ExperimentParams& params) {
  if (methods.empty()) throw std::invalid_argument("run_experiment: no methods");
  if (params.n_trials < 1) throw std::invalid_argument("run_experiment: n_trials must be >= 1");

  const DatasetContext data(reference, query);

  ExperimentResult result;
  result.params = params;
  result.methods = methods;
  result.logs.resize(methods.size());
  for (auto& per_method : result.logs)
    per_method.resize(static_cast<std::size_t>(params.n_trials));

  const std::size_t n_jobs = methods.size() * static_cast<std::size_t>(params.n_trials);
  std::atomic<std::size_t> next_job{0};

  auto worker = [&]() {
    for (;;) {
      const std::size_t job = next_job.fetch_add(1);
      if (job >= n_jobs) return;
      const std::size_t m = job / static_cast<std::size_t>(params.n_trials);
      const std::uint32_t t = static_cast<std::uint32_t>(job % static_cast<std::size_t>(params.n_trials));

      // Zone plans depend only on (master_seed, trial): every method sees
      // the same plan for a given trial.
      rng::Stream zone_stream(params.master_seed, t, 0, rng::Purpose::ZoneSpeeds);
      const ZonePlan plan = allocate_zones(params.n_zones, query.frame_count(), zone_stream);

      EpisodeConfig config;
      config.p_attack_safe = params.p_attack_safe;
      config.p_attack_unsafe = params.p_attack_unsafe;
      config.n_zones = params.n_zones;
      config.method = methods[m];
      config.master_seed = params.master_seed;
      config.trial = t;
      result.logs[m][t] = run_episode(data, config, plan);
    }
  };

  int n_threads = params.threads;
  if (n_threads <= 0) n_threads = static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads < 1) n_threads = 1;
  n_threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(n_threads), n_jobs));

  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return result;
}

}  // namespace vprsim::scenario
