#include "vprsim/runner.hpp"
#include "vprsim/version.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <optional>
#include <string>

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> threads;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool wants_out = true) {
  cmd->add_option("--config", args.config_path, "JSON config file (defaults apply when omitted)");
  if (wants_out) cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--seed", args.seed, "override the command's master seed");
  cmd->add_option("--trials", args.trials, "override the experiment trial count");
  cmd->add_option("--threads", args.threads, "worker threads for trials (0 = all cores)");
}

// Flags beat the config file; the effective values land in the manifest.
vprsim::runner::RunConfig effective_config(const CommonArgs& args, const std::string& command) {
  vprsim::runner::RunConfig cfg = vprsim::runner::load_config_file(args.config_path);
  if (args.seed) {
    if (command == "gen-dataset") cfg.dataset.synth.seed = *args.seed;
    else if (command == "fgsm") cfg.fgsm.seed = *args.seed;
    else cfg.experiment.params.master_seed = *args.seed;
  }
  if (args.trials) cfg.experiment.params.n_trials = *args.trials;
  if (args.threads) cfg.experiment.params.threads = *args.threads;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Descriptor-attack simulation: datasets, closed-loop experiments, ablations"};
  app.set_version_flag("--version", vprsim::kVersion);
  app.require_subcommand(1);

  CommonArgs gen_args, run_args, ablate_args, fgsm_args;
  std::string ablate_mode;
  std::string report_dir;

  CLI::App* gen = app.add_subcommand("gen-dataset", "generate and save a synthetic dataset");
  add_common(gen, gen_args);

  CLI::App* run = app.add_subcommand("run", "run the full multi-method experiment");
  add_common(run, run_args);

  CLI::App* ablate = app.add_subcommand("ablate", "attack ablation studies");
  ablate->add_option("mode", ablate_mode, "attack-types | fraction | lov")->required();
  add_common(ablate, ablate_args);

  CLI::App* fgsm = app.add_subcommand("fgsm", "gradient-attack transfer study on toy encoders");
  add_common(fgsm, fgsm_args);

  CLI::App* report = app.add_subcommand("report", "summarize a previous run directory");
  report->add_option("--out", report_dir, "directory holding manifest.json")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return vprsim::runner::cmd_gen_dataset(effective_config(gen_args, "gen-dataset"),
                                             gen_args.out_dir);
    if (run->parsed())
      return vprsim::runner::cmd_run(effective_config(run_args, "run"), run_args.out_dir);
    if (ablate->parsed())
      return vprsim::runner::cmd_ablate(ablate_mode, effective_config(ablate_args, "ablate"),
                                        ablate_args.out_dir);
    if (fgsm->parsed())
      return vprsim::runner::cmd_fgsm(effective_config(fgsm_args, "fgsm"), fgsm_args.out_dir);
    if (report->parsed()) return vprsim::runner::cmd_report(report_dir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
