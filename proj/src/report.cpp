#include "vprsim/report.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace vprsim::report {

std::string format_real(Real value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  if (res.ec != std::errc{}) throw std::runtime_error("format_real: conversion failed");
  return std::string(buf, res.ptr);
}

namespace {

const char* source_name(attacks::AttackRecord::Source s) {
  switch (s) {
    case attacks::AttackRecord::Source::None: return "none";
    case attacks::AttackRecord::Source::PriorQuery: return "prior_query";
    case attacks::AttackRecord::Source::Reference: return "reference";
  }
  return "?";
}

}  // namespace

std::string step_log_csv(const std::vector<scenario::EpisodeLog>& trials, const Traverse& query) {
  std::string out =
      "trial,step,zone,safe_speed,chosen_speed,nav_mode,attacked,attack_kind,attack_layout,"
      "attack_fraction,attack_source,attack_source_index,attack_n_indices,fallback_random,"
      "detected,rejected,match_index,match_distance,est_position_m,truth_position_m,ate_m\n";
  for (const auto& log : trials) {
    for (const auto& rec : log.steps) {
      out += std::to_string(log.config.trial);
      out += ',';
      out += std::to_string(rec.query_index);
      out += ',';
      out += std::to_string(rec.zone_index);
      out += ',';
      out += nav::to_string(rec.safe_speed);
      out += ',';
      out += nav::to_string(rec.chosen_speed);
      out += ',';
      out += nav::to_string(rec.nav_mode);
      out += ',';
      out += rec.attacked ? '1' : '0';
      out += ',';
      if (rec.attack) {
        out += attacks::to_string(rec.attack->kind);
        out += ',';
        out += attacks::to_string(rec.attack->layout);
        out += ',';
        out += format_real(rec.attack->fraction);
        out += ',';
        out += source_name(rec.attack->source);
        out += ',';
        out += std::to_string(rec.attack->source_index);
        out += ',';
        out += std::to_string(rec.attack->n_indices);
        out += ',';
        out += rec.attack->fallback_random ? '1' : '0';
      } else {
        out += ",,,,,,";
      }
      out += ',';
      out += rec.detected ? '1' : '0';
      out += ',';
      out += rec.rejected ? '1' : '0';
      out += ',';
      if (rec.localization) {
        out += std::to_string(rec.localization->ref_index);
        out += ',';
        out += format_real(rec.localization->distance);
        out += ',';
        out += format_real(rec.localization->estimate_position_m);
      } else {
        out += ",,";
      }
      out += ',';
      out += format_real(query.position_m(rec.query_index));
      out += ',';
      if (rec.ate_m) out += format_real(*rec.ate_m);
      out += '\n';
    }
  }
  return out;
}

std::string metrics_csv(const std::string& method,
                        const std::vector<metrics::MetricsReport>& reports) {
  std::string out =
      "method,trial,n_steps,n_accepted,n_rejected,pct_attacked,pct_unsafe_speed,"
      "longest_continuous_attack,ate_mean_m,ate_median_m,ate_max_m\n";
  for (std::size_t t = 0; t < reports.size(); ++t) {
    const auto& r = reports[t];
    out += method;
    out += ',';
    out += std::to_string(t);
    out += ',';
    out += std::to_string(r.n_steps);
    out += ',';
    out += std::to_string(r.n_accepted);
    out += ',';
    out += std::to_string(r.n_rejected);
    out += ',';
    out += format_real(r.pct_attacked);
    out += ',';
    out += format_real(r.pct_unsafe_speed);
    out += ',';
    out += std::to_string(r.longest_continuous_attack);
    out += ',';
    if (r.ate_mean_m) out += format_real(*r.ate_mean_m);
    out += ',';
    if (r.ate_median_m) out += format_real(*r.ate_median_m);
    out += ',';
    if (r.ate_max_m) out += format_real(*r.ate_max_m);
    out += '\n';
  }
  return out;
}

std::string lov_csv(const std::vector<std::string>& methods,
                    const std::vector<metrics::LovCurve>& curves) {
  if (methods.size() != curves.size())
    throw std::invalid_argument("lov_csv: methods and curves size mismatch");
  std::string out = "method,threshold,completion\n";
  for (std::size_t m = 0; m < methods.size(); ++m) {
    const auto& curve = curves[m];
    for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
      out += methods[m];
      out += ',';
      out += format_real(curve.thresholds[i]);
      out += ',';
      out += format_real(curve.completion[i]);
      out += '\n';
    }
  }
  return out;
}

std::string transfer_csv(const fgsm::TransferResult& result) {
  std::string out = "encoder,condition,recall_at_1,ate_mean_m,ate_median_m,ate_max_m\n";
  auto row = [&](const fgsm::EncoderEval& ev, const char* condition, Real recall,
                 const fgsm::AteStats& ate) {
    out += ev.name;
    out += ',';
    out += condition;
    out += ',';
    out += format_real(recall);
    out += ',';
    out += format_real(ate.mean_m);
    out += ',';
    out += format_real(ate.median_m);
    out += ',';
    out += format_real(ate.max_m);
    out += '\n';
  };
  row(result.source, "clean", result.source.recall_clean, result.source.ate_clean);
  row(result.source, "attacked", result.source.recall_attacked, result.source.ate_attacked);
  for (const auto& t : result.targets) {
    row(t, "clean", t.recall_clean, t.ate_clean);
    row(t, "attacked", t.recall_attacked, t.ate_attacked);
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace vprsim::report
