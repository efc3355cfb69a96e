#pragma once

#include "vprsim/fgsm.hpp"
#include "vprsim/metrics.hpp"
#include "vprsim/scenario.hpp"

#include <string>
#include <vector>

namespace vprsim::report {

// Shortest round-trip decimal form of a double, identical across runs.
std::string format_real(Real value);

// One row per step across all trials of one method. Columns:
// trial,step,zone,safe_speed,chosen_speed,nav_mode,attacked,attack_kind,
// attack_layout,attack_fraction,attack_source,attack_source_index,
// attack_n_indices,fallback_random,detected,rejected,match_index,
// match_distance,est_position_m,truth_position_m,ate_m
// Optional fields are empty when absent.
std::string step_log_csv(const std::vector<scenario::EpisodeLog>& trials, const Traverse& query);

// One row per trial. Columns:
// method,trial,n_steps,n_accepted,n_rejected,pct_attacked,pct_unsafe_speed,
// longest_continuous_attack,ate_mean_m,ate_median_m,ate_max_m
std::string metrics_csv(const std::string& method,
                        const std::vector<metrics::MetricsReport>& reports);

// One row per (method, threshold): method,threshold,completion
std::string lov_csv(const std::vector<std::string>& methods,
                    const std::vector<metrics::LovCurve>& curves);

// One row per encoder and condition:
// encoder,condition,recall_at_1,ate_mean_m,ate_median_m,ate_max_m
std::string transfer_csv(const fgsm::TransferResult& result);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace vprsim::report
