#pragma once

#include "vprsim/scenario.hpp"
#include "vprsim/types.hpp"

#include <optional>
#include <vector>

namespace vprsim::metrics {

// Per-episode statistics. ATE fields cover accepted localizations only and
// are absent when every step was rejected.
struct MetricsReport {
  std::optional<Real> ate_mean_m;
  std::optional<Real> ate_median_m;
  std::optional<Real> ate_max_m;
  Real pct_attacked = 0.0;      // share of query steps attacked, in percent
  Real pct_unsafe_speed = 0.0;  // share of steps taken at the non-safe speed, in percent
  Index longest_continuous_attack = 0;  // max run of consecutive attacked steps
  Index n_rejected = 0;
  Index n_accepted = 0;
  Index n_steps = 0;
};

MetricsReport summarize(const scenario::EpisodeLog& log);

// Thresholds on the attacked fraction of a traverse. An episode completes
// at threshold t when its attacked fraction is <= t; beyond t the vehicle
// counts as lost.
struct LovConfig {
  std::vector<Real> thresholds;

  // 0.05, 0.10, ..., 1.00; the nominal operating point is 0.50.
  static LovConfig default_sweep();
};

struct LovCurve {
  std::vector<Real> thresholds;
  std::vector<Real> completion;  // per threshold: fraction of episodes completed
};

LovCurve lov_from_fractions(const std::vector<Real>& attacked_fractions, const LovConfig& cfg);
LovCurve lov_outcomes(const std::vector<scenario::EpisodeLog>& logs, const LovConfig& cfg);

// Order statistics over one field of a batch of reports. Median is the
// lower-middle element; quantile(p) = sorted[floor(p * (n - 1))], so q1 and
// q3 are the 0.25 and 0.75 quantiles under the same convention.
struct FieldSummary {
  Real mean = 0.0;
  Real median = 0.0;
  Real min = 0.0;
  Real max = 0.0;
  Real q1 = 0.0;
  Real q3 = 0.0;
  Index count = 0;  // samples the field had a value for
};

FieldSummary summarize_field(std::vector<Real> values);

struct AggregateReport {
  FieldSummary ate_mean_m;     // over reports with at least one accepted step
  FieldSummary ate_median_m;
  FieldSummary ate_max_m;
  FieldSummary pct_attacked;
  FieldSummary pct_unsafe_speed;
  FieldSummary longest_continuous_attack;
  FieldSummary n_rejected;
  Index n_reports = 0;
};

AggregateReport aggregate(const std::vector<MetricsReport>& reports);

}  // namespace vprsim::metrics
