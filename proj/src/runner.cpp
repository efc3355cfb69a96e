#include "vprsim/runner.hpp"

#include "vprsim/report.hpp"
#include "vprsim/version.hpp"
#include "vprsim/vpr.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vprsim::runner {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

RunConfig default_config() {
  RunConfig cfg;
  cfg.dataset.synth.seed = 1;
  cfg.experiment.params.master_seed = 1;
  cfg.experiment.method_names = {"baseline", "random_zone", "aad_tp50", "aad_tp60",
                                 "aad_tp75", "aad_tp85", "aad_tp95"};
  for (int i = 1; i <= 10; ++i) cfg.ablate.fractions.push_back(0.1 * i);
  cfg.lov = metrics::LovConfig::default_sweep();
  return cfg;
}

namespace {

// Pulls a field if present, with json's type errors rephrased to name it.
template <typename T>
void get_field(const json& obj, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("config field '") + key + "': " + e.what());
  }
}

void parse_dataset(const json& obj, DatasetSpec& spec) {
  std::string kind = spec.from_files ? "files" : "synth";
  get_field(obj, "kind", kind);
  if (kind == "files") {
    spec.from_files = true;
    get_field(obj, "reference", spec.reference_path);
    get_field(obj, "query", spec.query_path);
    if (spec.reference_path.empty() || spec.query_path.empty())
      throw std::runtime_error("config: dataset kind 'files' needs 'reference' and 'query' paths");
  } else if (kind == "synth") {
    spec.from_files = false;
    get_field(obj, "n_places", spec.synth.n_places);
    get_field(obj, "spacing_m", spec.synth.spacing_m);
    get_field(obj, "dim", spec.synth.dim);
    get_field(obj, "query_noise_sigma", spec.synth.query_noise_sigma);
    get_field(obj, "aliasing_pairs", spec.synth.aliasing_pairs);
    get_field(obj, "aliasing_sigma", spec.synth.aliasing_sigma);
    get_field(obj, "seed", spec.synth.seed);
  } else {
    throw std::runtime_error("config: dataset kind must be 'synth' or 'files'");
  }
}

void parse_experiment(const json& obj, ExperimentSpec& spec) {
  get_field(obj, "p_attack_safe", spec.params.p_attack_safe);
  get_field(obj, "p_attack_unsafe", spec.params.p_attack_unsafe);
  get_field(obj, "n_zones", spec.params.n_zones);
  get_field(obj, "n_trials", spec.params.n_trials);
  get_field(obj, "master_seed", spec.params.master_seed);
  get_field(obj, "threads", spec.params.threads);
  get_field(obj, "methods", spec.method_names);
  if (obj.contains("nav")) {
    const json& nav = obj.at("nav");
    get_field(nav, "trigger_threshold", spec.nav.trigger_threshold);
    get_field(nav, "probe_len", spec.nav.probe_len);
  }
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("config parse error: ") + e.what());
  }
  if (!root.is_object()) throw std::runtime_error("config: top level must be a JSON object");

  RunConfig cfg = default_config();
  if (root.contains("dataset")) parse_dataset(root.at("dataset"), cfg.dataset);
  if (root.contains("experiment")) parse_experiment(root.at("experiment"), cfg.experiment);
  if (root.contains("ablate")) {
    const json& a = root.at("ablate");
    get_field(a, "n_seeds", cfg.ablate.n_seeds);
    get_field(a, "attack_fraction", cfg.ablate.attack_fraction);
    get_field(a, "fractions", cfg.ablate.fractions);
  }
  if (root.contains("lov")) get_field(root.at("lov"), "thresholds", cfg.lov.thresholds);
  if (root.contains("fgsm")) {
    const json& f = root.at("fgsm");
    get_field(f, "n_places", cfg.fgsm.data.n_places);
    get_field(f, "spacing_m", cfg.fgsm.data.spacing_m);
    get_field(f, "input_dim", cfg.fgsm.data.input_dim);
    get_field(f, "query_noise_sigma", cfg.fgsm.data.query_noise_sigma);
    get_field(f, "hidden_dim", cfg.fgsm.hidden_dim);
    get_field(f, "output_dim", cfg.fgsm.output_dim);
    get_field(f, "n_targets", cfg.fgsm.n_targets);
    get_field(f, "seed", cfg.fgsm.seed);
    if (f.contains("train")) {
      const json& t = f.at("train");
      get_field(t, "n_steps", cfg.fgsm.train.n_steps);
      get_field(t, "learning_rate", cfg.fgsm.train.learning_rate);
      get_field(t, "margin", cfg.fgsm.train.margin);
      get_field(t, "neighbor_radius_m", cfg.fgsm.train.neighbor_radius_m);
    }
    get_field(f, "epsilon", cfg.fgsm.transfer.fgsm.epsilon);
    get_field(f, "attack_margin", cfg.fgsm.transfer.attack_margin);
    get_field(f, "recall_tolerance_m", cfg.fgsm.transfer.recall_tolerance_m);
    get_field(f, "neighbor_radius_m", cfg.fgsm.transfer.neighbor_radius_m);
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  if (path.empty()) return default_config();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string config_json(const RunConfig& cfg) {
  json root;
  json dataset;
  if (cfg.dataset.from_files) {
    dataset["kind"] = "files";
    dataset["reference"] = cfg.dataset.reference_path;
    dataset["query"] = cfg.dataset.query_path;
  } else {
    dataset["kind"] = "synth";
    dataset["n_places"] = cfg.dataset.synth.n_places;
    dataset["spacing_m"] = cfg.dataset.synth.spacing_m;
    dataset["dim"] = cfg.dataset.synth.dim;
    dataset["query_noise_sigma"] = cfg.dataset.synth.query_noise_sigma;
    dataset["aliasing_pairs"] = cfg.dataset.synth.aliasing_pairs;
    dataset["aliasing_sigma"] = cfg.dataset.synth.aliasing_sigma;
    dataset["seed"] = cfg.dataset.synth.seed;
  }
  root["dataset"] = dataset;

  json experiment;
  experiment["p_attack_safe"] = cfg.experiment.params.p_attack_safe;
  experiment["p_attack_unsafe"] = cfg.experiment.params.p_attack_unsafe;
  experiment["n_zones"] = cfg.experiment.params.n_zones;
  experiment["n_trials"] = cfg.experiment.params.n_trials;
  experiment["master_seed"] = cfg.experiment.params.master_seed;
  experiment["threads"] = cfg.experiment.params.threads;
  experiment["methods"] = cfg.experiment.method_names;
  experiment["nav"] = {{"trigger_threshold", cfg.experiment.nav.trigger_threshold},
                       {"probe_len", cfg.experiment.nav.probe_len}};
  root["experiment"] = experiment;

  root["ablate"] = {{"n_seeds", cfg.ablate.n_seeds},
                    {"attack_fraction", cfg.ablate.attack_fraction},
                    {"fractions", cfg.ablate.fractions}};
  root["lov"] = {{"thresholds", cfg.lov.thresholds}};
  root["fgsm"] = {{"n_places", cfg.fgsm.data.n_places},
                  {"spacing_m", cfg.fgsm.data.spacing_m},
                  {"input_dim", cfg.fgsm.data.input_dim},
                  {"query_noise_sigma", cfg.fgsm.data.query_noise_sigma},
                  {"hidden_dim", cfg.fgsm.hidden_dim},
                  {"output_dim", cfg.fgsm.output_dim},
                  {"n_targets", cfg.fgsm.n_targets},
                  {"seed", cfg.fgsm.seed},
                  {"train",
                   {{"n_steps", cfg.fgsm.train.n_steps},
                    {"learning_rate", cfg.fgsm.train.learning_rate},
                    {"margin", cfg.fgsm.train.margin},
                    {"neighbor_radius_m", cfg.fgsm.train.neighbor_radius_m}}},
                  {"epsilon", cfg.fgsm.transfer.fgsm.epsilon},
                  {"attack_margin", cfg.fgsm.transfer.attack_margin},
                  {"recall_tolerance_m", cfg.fgsm.transfer.recall_tolerance_m},
                  {"neighbor_radius_m", cfg.fgsm.transfer.neighbor_radius_m}};
  return root.dump(2) + "\n";
}

scenario::MethodConfig method_from_name(const std::string& name, const nav::NavParams& nav) {
  scenario::MethodConfig method;
  method.name = name;
  method.nav = nav;
  if (name == "baseline") {
    method.policy = scenario::PolicyKind::BaselineFixedFast;
    return method;
  }
  if (name == "random_zone") {
    method.policy = scenario::PolicyKind::RandomPerZone;
    return method;
  }
  const std::string prefix = "aad_tp";
  if (name.rfind(prefix, 0) == 0) {
    const std::string digits = name.substr(prefix.size());
    double percent = 0.0;
    const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), percent);
    if (res.ec == std::errc{} && res.ptr == digits.data() + digits.size() && percent >= 0.0 &&
        percent <= 100.0) {
      method.policy = scenario::PolicyKind::Aad;
      method.profile.tp_rate = percent / 100.0;
      method.profile.fp_rate = 1.0 - method.profile.tp_rate;
      return method;
    }
  }
  throw std::runtime_error("unknown method '" + name +
                           "' (expected baseline, random_zone, or aad_tpNN)");
}

Dataset obtain_dataset(const DatasetSpec& spec) {
  if (spec.from_files)
    return {synth::load_traverse(spec.reference_path), synth::load_traverse(spec.query_path)};
  synth::SynthDataset data = synth::generate(spec.synth);
  return {std::move(data.reference), std::move(data.query)};
}

namespace {

void ensure_dir(const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + out_dir + ": " + ec.message());
}

void write_manifest(const std::string& out_dir, const std::string& command,
                    const RunConfig& config, const std::vector<std::string>& outputs) {
  json manifest;
  manifest["artifact_version"] = kVersion;
  manifest["command"] = command;
  manifest["config"] = json::parse(config_json(config));
  manifest["outputs"] = outputs;  // paths relative to the manifest's directory
  report::write_text_file(out_dir + "/manifest.json", manifest.dump(2) + "\n");
}

json field_summary_json(const metrics::FieldSummary& s) {
  return {{"mean", s.mean}, {"median", s.median}, {"min", s.min},
          {"max", s.max},   {"q1", s.q1},         {"q3", s.q3},
          {"count", s.count}};
}

json aggregate_json(const metrics::AggregateReport& agg) {
  return {{"n_reports", agg.n_reports},
          {"ate_mean_m", field_summary_json(agg.ate_mean_m)},
          {"ate_median_m", field_summary_json(agg.ate_median_m)},
          {"ate_max_m", field_summary_json(agg.ate_max_m)},
          {"pct_attacked", field_summary_json(agg.pct_attacked)},
          {"pct_unsafe_speed", field_summary_json(agg.pct_unsafe_speed)},
          {"longest_continuous_attack", field_summary_json(agg.longest_continuous_attack)},
          {"n_rejected", field_summary_json(agg.n_rejected)}};
}

struct AteSummary {
  Real mean = 0.0, median = 0.0, max = 0.0;
  Real recall = 0.0;
};

// Match one attacked query batch and reduce to headline numbers.
AteSummary evaluate_batch(const vpr::Matcher& matcher, const Matrix& queries,
                          const Vector& truth_m, Real recall_tolerance_m) {
  const auto results = matcher.match_batch(queries);
  std::vector<Real> errors(results.size());
  Index hits = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    errors[i] = std::abs(results[i].estimate_position_m - truth_m[static_cast<Index>(i)]);
    if (errors[i] <= recall_tolerance_m) ++hits;
  }
  std::sort(errors.begin(), errors.end());
  AteSummary s;
  Real sum = 0.0;
  for (const Real e : errors) sum += e;
  s.mean = sum / static_cast<Real>(errors.size());
  s.median = errors[(errors.size() - 1) / 2];
  s.max = errors.back();
  s.recall = 100.0 * static_cast<Real>(hits) / static_cast<Real>(errors.size());
  return s;
}

}  // namespace

int cmd_gen_dataset(const RunConfig& config, const std::string& out_dir) {
  if (config.dataset.from_files)
    throw std::runtime_error("gen-dataset requires a synthetic dataset config, not files");
  ensure_dir(out_dir);
  const synth::SynthDataset data = synth::generate(config.dataset.synth);
  synth::save_traverse(data.reference, out_dir + "/reference.txt");
  synth::save_traverse(data.query, out_dir + "/query.txt");
  write_manifest(out_dir, "gen-dataset", config, {"reference.txt", "query.txt"});
  std::printf("wrote %s/reference.txt and query.txt (%lld places, dim %lld)\n", out_dir.c_str(),
              static_cast<long long>(data.reference.frame_count()),
              static_cast<long long>(data.reference.dim()));
  return 0;
}

int cmd_run(const RunConfig& config, const std::string& out_dir) {
  ensure_dir(out_dir);
  const Dataset data = obtain_dataset(config.dataset);

  std::vector<scenario::MethodConfig> methods;
  for (const auto& name : config.experiment.method_names)
    methods.push_back(method_from_name(name, config.experiment.nav));

  const scenario::ExperimentResult result =
      scenario::run_experiment(data.reference, data.query, methods, config.experiment.params);

  std::vector<std::string> outputs;
  std::vector<std::string> method_names;
  std::vector<metrics::LovCurve> curves;
  json summary;
  summary["artifact_version"] = kVersion;
  summary["master_seed"] = config.experiment.params.master_seed;
  summary["n_trials"] = config.experiment.params.n_trials;
  json per_method = json::object();

  for (std::size_t m = 0; m < methods.size(); ++m) {
    const auto& name = methods[m].name;
    std::vector<metrics::MetricsReport> reports;
    reports.reserve(result.logs[m].size());
    for (const auto& log : result.logs[m]) reports.push_back(metrics::summarize(log));

    const std::string steps_name = "steps_" + name + ".csv";
    const std::string metrics_name = "metrics_" + name + ".csv";
    report::write_text_file(out_dir + "/" + steps_name,
                            report::step_log_csv(result.logs[m], data.query));
    report::write_text_file(out_dir + "/" + metrics_name, report::metrics_csv(name, reports));
    outputs.push_back(steps_name);
    outputs.push_back(metrics_name);

    per_method[name] = aggregate_json(metrics::aggregate(reports));
    method_names.push_back(name);
    curves.push_back(metrics::lov_outcomes(result.logs[m], config.lov));
  }
  summary["methods"] = per_method;

  json lov = json::object();
  for (std::size_t m = 0; m < method_names.size(); ++m)
    lov[method_names[m]] = {{"thresholds", curves[m].thresholds},
                            {"completion", curves[m].completion}};
  summary["lov"] = lov;

  report::write_text_file(out_dir + "/lov.csv", report::lov_csv(method_names, curves));
  report::write_text_file(out_dir + "/summary.json", summary.dump(2) + "\n");
  outputs.push_back("lov.csv");
  outputs.push_back("summary.json");
  write_manifest(out_dir, "run", config, outputs);

  for (std::size_t m = 0; m < method_names.size(); ++m) {
    const auto& agg = per_method[method_names[m]];
    std::printf("%-12s mean_ate %8.3f m   pct_attacked %6.2f   rejected %7.1f\n",
                method_names[m].c_str(), agg["ate_mean_m"]["mean"].get<double>(),
                agg["pct_attacked"]["mean"].get<double>(),
                agg["n_rejected"]["mean"].get<double>());
  }
  return 0;
}

int cmd_ablate(const std::string& mode, const RunConfig& config, const std::string& out_dir) {
  ensure_dir(out_dir);
  if (mode == "lov") {
    // The LoV ablation is the full experiment viewed through the threshold
    // sweep; cmd_run already emits lov.csv alongside the metrics.
    return cmd_run(config, out_dir);
  }

  const Dataset data = obtain_dataset(config.dataset);
  const vpr::Matcher matcher(data.reference);
  const attacks::ValueRangeModel ranges = attacks::ValueRangeModel::from_reference(data.reference);
  const Index n = data.query.frame_count();
  const std::uint64_t seed = config.experiment.params.master_seed;

  std::string csv;
  std::string file_name;

  if (mode == "attack-types") {
    file_name = "ablate_attack_types.csv";
    csv = "seed,kind,layout,fraction,recall_at_1,ate_mean_m,ate_median_m,ate_max_m\n";
    const Real fraction = config.ablate.attack_fraction;
    for (int s = 0; s < config.ablate.n_seeds; ++s) {
      for (const auto kind : {attacks::AttackKind::Flat, attacks::AttackKind::Random,
                              attacks::AttackKind::QueryBased, attacks::AttackKind::ReferenceBased}) {
        for (const auto layout : {attacks::AttackLayout::Noise, attacks::AttackLayout::Patch}) {
          const attacks::AttackSpec spec{kind, layout, fraction};
          Matrix delivered = data.query.descriptors();
          for (Index i = 0; i < n; ++i) {
            rng::Stream stream(seed, static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(i),
                               rng::Purpose::AttackApply);
            auto [attacked, record] = attacks::apply_attack(
                data.query.descriptor(i), spec, delivered.leftCols(i), data.reference, ranges, stream);
            delivered.col(i) = attacked;
          }
          const AteSummary r = evaluate_batch(matcher, delivered, data.query.positions_m(), 3.0);
          csv += std::to_string(s);
          csv += ',';
          csv += attacks::to_string(kind);
          csv += ',';
          csv += attacks::to_string(layout);
          csv += ',';
          csv += report::format_real(fraction);
          csv += ',';
          csv += report::format_real(r.recall);
          csv += ',';
          csv += report::format_real(r.mean);
          csv += ',';
          csv += report::format_real(r.median);
          csv += ',';
          csv += report::format_real(r.max);
          csv += '\n';
        }
      }
    }
  } else if (mode == "fraction") {
    file_name = "ablate_fraction.csv";
    csv = "fraction,seed,recall_at_1,ate_mean_m,ate_median_m,ate_max_m\n";
    for (const Real fraction : config.ablate.fractions) {
      for (int s = 0; s < config.ablate.n_seeds; ++s) {
        Matrix delivered = data.query.descriptors();
        for (Index i = 0; i < n; ++i) {
          rng::Stream spec_stream(seed, static_cast<std::uint32_t>(s),
                                  static_cast<std::uint32_t>(i), rng::Purpose::AttackSpecDraw);
          attacks::AttackSpec spec = attacks::random_attack_spec(spec_stream);
          spec.fraction = fraction;  // sweep overrides the drawn fraction
          rng::Stream stream(seed, static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(i),
                             rng::Purpose::AttackApply);
          auto [attacked, record] = attacks::apply_attack(
              data.query.descriptor(i), spec, delivered.leftCols(i), data.reference, ranges, stream);
          delivered.col(i) = attacked;
        }
        const AteSummary r = evaluate_batch(matcher, delivered, data.query.positions_m(), 3.0);
        csv += report::format_real(fraction);
        csv += ',';
        csv += std::to_string(s);
        csv += ',';
        csv += report::format_real(r.recall);
        csv += ',';
        csv += report::format_real(r.mean);
        csv += ',';
        csv += report::format_real(r.median);
        csv += ',';
        csv += report::format_real(r.max);
        csv += '\n';
      }
    }
  } else {
    throw std::runtime_error("unknown ablation mode '" + mode +
                             "' (expected attack-types, fraction, or lov)");
  }

  report::write_text_file(out_dir + "/" + file_name, csv);
  write_manifest(out_dir, "ablate " + mode, config, {file_name});
  std::printf("wrote %s/%s\n", out_dir.c_str(), file_name.c_str());
  return 0;
}

int cmd_fgsm(const RunConfig& config, const std::string& out_dir) {
  ensure_dir(out_dir);
  const FgsmSpec& spec = config.fgsm;

  fgsm::InputDatasetConfig data_cfg = spec.data;
  data_cfg.seed = spec.seed;
  const fgsm::InputDataset data = fgsm::generate_inputs(data_cfg);

  auto make_encoder = [&](std::uint32_t encoder_id) {
    fgsm::ToyEncoder enc = fgsm::random_encoder(data_cfg.input_dim, spec.hidden_dim,
                                                spec.output_dim, spec.seed, encoder_id);
    return fgsm::train_encoder(std::move(enc), data, spec.train, spec.seed, encoder_id);
  };

  const fgsm::ToyEncoder source = make_encoder(0);
  std::vector<fgsm::ToyEncoder> targets;
  for (int t = 0; t < spec.n_targets; ++t)
    targets.push_back(make_encoder(static_cast<std::uint32_t>(t) + 1));

  const fgsm::TransferResult result = fgsm::transfer_eval(source, targets, data, spec.transfer);

  report::write_text_file(out_dir + "/transfer.csv", report::transfer_csv(result));

  json summary;
  summary["artifact_version"] = kVersion;
  summary["epsilon"] = spec.transfer.fgsm.epsilon;
  auto encoder_json = [](const fgsm::EncoderEval& ev) {
    return json{{"recall_clean", ev.recall_clean},
                {"recall_attacked", ev.recall_attacked},
                {"recall_drop", ev.recall_clean - ev.recall_attacked},
                {"ate_clean",
                 {{"mean", ev.ate_clean.mean_m},
                  {"median", ev.ate_clean.median_m},
                  {"max", ev.ate_clean.max_m}}},
                {"ate_attacked",
                 {{"mean", ev.ate_attacked.mean_m},
                  {"median", ev.ate_attacked.median_m},
                  {"max", ev.ate_attacked.max_m}}}};
  };
  summary["source"] = encoder_json(result.source);
  json target_arr = json::array();
  for (const auto& t : result.targets) target_arr.push_back(encoder_json(t));
  summary["targets"] = target_arr;
  report::write_text_file(out_dir + "/fgsm_summary.json", summary.dump(2) + "\n");
  write_manifest(out_dir, "fgsm", config, {"transfer.csv", "fgsm_summary.json"});

  std::printf("%-10s recall %6.2f -> %6.2f\n", result.source.name.c_str(),
              result.source.recall_clean, result.source.recall_attacked);
  for (const auto& t : result.targets)
    std::printf("%-10s recall %6.2f -> %6.2f\n", t.name.c_str(), t.recall_clean,
                t.recall_attacked);
  return 0;
}

int cmd_report(const std::string& run_dir) {
  std::ifstream in(run_dir + "/manifest.json", std::ios::binary);
  if (!in) throw std::runtime_error("no manifest.json under " + run_dir);
  json manifest;
  try {
    in >> manifest;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("manifest parse error: ") + e.what());
  }

  std::printf("command:  %s\n", manifest.value("command", std::string("?")).c_str());
  std::printf("version:  %s\n", manifest.value("artifact_version", std::string("?")).c_str());
  std::printf("outputs:\n");
  for (const auto& f : manifest.at("outputs")) std::printf("  %s\n", f.get<std::string>().c_str());

  // For experiment runs, restate the headline table from summary.json.
  const std::string summary_path = run_dir + "/summary.json";
  std::ifstream sum_in(summary_path, std::ios::binary);
  if (sum_in) {
    json summary;
    try {
      sum_in >> summary;
    } catch (const json::exception& e) {
      throw std::runtime_error(std::string("summary parse error: ") + e.what());
    }
    std::printf("\n%-14s %12s %12s %14s %12s\n", "method", "mean_ate_m", "pct_attacked",
                "longest_run", "rejected");
    for (const auto& [name, agg] : summary.at("methods").items())
      std::printf("%-14s %12.3f %12.2f %14.1f %12.1f\n", name.c_str(),
                  agg["ate_mean_m"]["mean"].get<double>(),
                  agg["pct_attacked"]["mean"].get<double>(),
                  agg["longest_continuous_attack"]["mean"].get<double>(),
                  agg["n_rejected"]["mean"].get<double>());
  }
  return 0;
}

}  // namespace vprsim::runner
