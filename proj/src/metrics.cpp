#include "vprsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vprsim::metrics {

MetricsReport summarize(const scenario::EpisodeLog& log) {
  const auto& steps = log.steps;
  if (steps.empty()) throw std::invalid_argument("summarize: empty episode log");

  MetricsReport report;
  report.n_steps = static_cast<Index>(steps.size());

  std::vector<Real> ates;
  ates.reserve(steps.size());
  Index attacked = 0, unsafe = 0, rejected = 0, run = 0, longest = 0;
  for (const auto& rec : steps) {
    if (rec.attacked) {
      ++attacked;
      longest = std::max(longest, ++run);
    } else {
      run = 0;
    }
    if (rec.chosen_speed != rec.safe_speed) ++unsafe;
    if (rec.rejected) {
      ++rejected;
    } else {
      if (!rec.ate_m) throw std::invalid_argument("summarize: accepted step without an error value");
      ates.push_back(*rec.ate_m);
    }
  }

  report.pct_attacked = 100.0 * static_cast<Real>(attacked) / static_cast<Real>(steps.size());
  report.pct_unsafe_speed = 100.0 * static_cast<Real>(unsafe) / static_cast<Real>(steps.size());
  report.longest_continuous_attack = longest;
  report.n_rejected = rejected;
  report.n_accepted = static_cast<Index>(ates.size());

  if (!ates.empty()) {
    std::sort(ates.begin(), ates.end());
    report.ate_mean_m =
        std::accumulate(ates.begin(), ates.end(), 0.0) / static_cast<Real>(ates.size());
    report.ate_median_m = ates[(ates.size() - 1) / 2];
    report.ate_max_m = ates.back();
  }
  return report;
}

LovConfig LovConfig::default_sweep() {
  LovConfig cfg;
  for (int i = 1; i <= 20; ++i) cfg.thresholds.push_back(0.05 * i);
  return cfg;
}

LovCurve lov_from_fractions(const std::vector<Real>& attacked_fractions, const LovConfig& cfg) {
  if (attacked_fractions.empty()) throw std::invalid_argument("lov: no episodes");
  if (!std::is_sorted(cfg.thresholds.begin(), cfg.thresholds.end()))
    throw std::invalid_argument("lov: thresholds must be sorted");
  for (const Real t : cfg.thresholds)
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("lov: thresholds must be in [0, 1]");

  LovCurve curve;
  curve.thresholds = cfg.thresholds;
  curve.completion.reserve(cfg.thresholds.size());
  for (const Real t : cfg.thresholds) {
    Index completed = 0;
    for (const Real f : attacked_fractions)
      if (f <= t) ++completed;
    curve.completion.push_back(static_cast<Real>(completed) /
                               static_cast<Real>(attacked_fractions.size()));
  }
  return curve;
}

LovCurve lov_outcomes(const std::vector<scenario::EpisodeLog>& logs, const LovConfig& cfg) {
  std::vector<Real> fractions;
  fractions.reserve(logs.size());
  for (const auto& log : logs) {
    if (log.steps.empty()) throw std::invalid_argument("lov: empty episode log");
    fractions.push_back(static_cast<Real>(log.totals.n_attacked) /
                        static_cast<Real>(log.totals.n_steps));
  }
  return lov_from_fractions(fractions, cfg);
}

FieldSummary summarize_field(std::vector<Real> values) {
  FieldSummary s;
  s.count = static_cast<Index>(values.size());
  if (values.empty()) return s;

  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  auto quantile = [&](Real p) { return values[static_cast<std::size_t>(p * static_cast<Real>(n - 1))]; };
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<Real>(n);
  s.median = values[(n - 1) / 2];
  s.min = values.front();
  s.max = values.back();
  s.q1 = quantile(0.25);
  s.q3 = quantile(0.75);
  return s;
}

AggregateReport aggregate(const std::vector<MetricsReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("aggregate: no reports");

  AggregateReport agg;
  agg.n_reports = static_cast<Index>(reports.size());

  std::vector<Real> mean_v, median_v, max_v, attacked_v, unsafe_v, longest_v, rejected_v;
  for (const auto& r : reports) {
    if (r.ate_mean_m) mean_v.push_back(*r.ate_mean_m);
    if (r.ate_median_m) median_v.push_back(*r.ate_median_m);
    if (r.ate_max_m) max_v.push_back(*r.ate_max_m);
    attacked_v.push_back(r.pct_attacked);
    unsafe_v.push_back(r.pct_unsafe_speed);
    longest_v.push_back(static_cast<Real>(r.longest_continuous_attack));
    rejected_v.push_back(static_cast<Real>(r.n_rejected));
  }
  agg.ate_mean_m = summarize_field(std::move(mean_v));
  agg.ate_median_m = summarize_field(std::move(median_v));
  agg.ate_max_m = summarize_field(std::move(max_v));
  agg.pct_attacked = summarize_field(std::move(attacked_v));
  agg.pct_unsafe_speed = summarize_field(std::move(unsafe_v));
  agg.longest_continuous_attack = summarize_field(std::move(longest_v));
  agg.n_rejected = summarize_field(std::move(rejected_v));
  return agg;
}

}  // namespace vprsim::metrics
