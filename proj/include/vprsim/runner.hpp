#pragma once

#include "vprsim/fgsm.hpp"
#include "vprsim/metrics.hpp"
#include "vprsim/scenario.hpp"
#include "vprsim/synth.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace vprsim::runner {

// Where the traverses come from: a seeded synthetic dataset (default) or a
// pair of traverse files.
struct DatasetSpec {
  bool from_files = false;
  std::string reference_path;
  std::string query_path;
  synth::SynthConfig synth;
};

struct ExperimentSpec {
  scenario::ExperimentParams params;
  std::vector<std::string> method_names;  // parsed by method_from_name
  nav::NavParams nav;
};

struct AblateSpec {
  int n_seeds = 20;
  Real attack_fraction = 0.40;    // attack-types mode
  std::vector<Real> fractions;    // fraction mode; 0.1 .. 1.0 step 0.1
};

struct FgsmSpec {
  fgsm::InputDatasetConfig data;
  Index hidden_dim = 64;
  Index output_dim = 16;
  int n_targets = 5;
  fgsm::TrainConfig train;
  fgsm::TransferConfig transfer;
  std::uint64_t seed = 1;
};

struct RunConfig {
  DatasetSpec dataset;
  ExperimentSpec experiment;
  AblateSpec ablate;
  FgsmSpec fgsm;
  metrics::LovConfig lov;
};

// Baked-in defaults: the synthetic dataset above, methods {baseline,
// random_zone, aad_tp50..aad_tp95}, 100 trials, the 0.05-step threshold
// sweep.
RunConfig default_config();

// Parses a JSON config; absent keys keep their defaults. Throws
// std::runtime_error with a located message on malformed input.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::string& path);

// Serialized snapshot of a config, suitable for manifests and for feeding
// back into parse_config.
std::string config_json(const RunConfig& config);

// "baseline", "random_zone", or "aad_tpNN" (NN = true-positive percent,
// false-positive = 100 - NN).
scenario::MethodConfig method_from_name(const std::string& name, const nav::NavParams& nav);

struct Dataset {
  Traverse reference;
  Traverse query;
};

// Generate or load the configured dataset.
Dataset obtain_dataset(const DatasetSpec& spec);

// Subcommand bodies. Each writes its outputs plus manifest.json under
// out_dir (created if missing) and returns a process exit code.
int cmd_gen_dataset(const RunConfig& config, const std::string& out_dir);
int cmd_run(const RunConfig& config, const std::string& out_dir);
int cmd_ablate(const std::string& mode, const RunConfig& config, const std::string& out_dir);
int cmd_fgsm(const RunConfig& config, const std::string& out_dir);
int cmd_report(const std::string& run_dir);

}  // namespace vprsim::runner
