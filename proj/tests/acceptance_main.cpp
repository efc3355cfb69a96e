// End-to-end acceptance gate. Each numbered check yields one PASS/FAIL line
// on stdout, printed in criterion order at the end; the process exits
// nonzero if any check fails. Progress notes go to stderr so a watcher can
// see the long phases advancing.

#include "vprsim/attacks.hpp"
#include "vprsim/detector.hpp"
#include "vprsim/fgsm.hpp"
#include "vprsim/metrics.hpp"
#include "vprsim/navigation.hpp"
#include "vprsim/rng.hpp"
#include "vprsim/runner.hpp"
#include "vprsim/scenario.hpp"
#include "vprsim/synth.hpp"
#include "vprsim/types.hpp"
#include "vprsim/vpr.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace vprsim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int id;
  std::string name;
  bool pass;
  std::string note;
};

std::vector<Outcome> g_outcomes;

void report(int id, const std::string& name, bool pass, const std::string& note) {
  g_outcomes.push_back({id, name, pass, note});
  std::fprintf(stderr, "... criterion %d: %s\n", id, pass ? "PASS" : "FAIL");
  std::fflush(stderr);
}

void progress(const char* what) {
  std::fprintf(stderr, "... %s\n", what);
  std::fflush(stderr);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

struct BatchStats {
  double recall_pct = 0.0;
  double ate_mean = 0.0;
};

BatchStats evaluate(const vpr::Matcher& matcher, const Matrix& queries, const Vector& truth_m,
                    double tolerance_m) {
  const auto results = matcher.match_batch(queries);
  BatchStats s;
  double sum = 0.0;
  Index hits = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const double err = std::abs(results[i].estimate_position_m - truth_m[static_cast<Index>(i)]);
    sum += err;
    if (err <= tolerance_m) ++hits;
  }
  s.ate_mean = sum / static_cast<double>(results.size());
  s.recall_pct = 100.0 * static_cast<double>(hits) / static_cast<double>(results.size());
  return s;
}

// Applies one fixed attack spec to every query in delivery order, the same
// walk the ablation command takes.
Matrix attack_all(const Traverse& reference, const Traverse& query,
                  const attacks::ValueRangeModel& ranges, const attacks::AttackSpec& spec,
                  std::uint64_t master_seed, std::uint32_t seed_block) {
  Matrix delivered = query.descriptors();
  for (Index i = 0; i < query.frame_count(); ++i) {
    rng::Stream stream(master_seed, seed_block, static_cast<std::uint32_t>(i),
                       rng::Purpose::AttackApply);
    auto [attacked, record] = attacks::apply_attack(query.descriptor(i), spec,
                                                    delivered.leftCols(i), reference, ranges,
                                                    stream);
    delivered.col(i) = attacked;
  }
  return delivered;
}

// ---------------------------------------------------------------------------
// Independent navigation reference: plain counters and if-chains, written
// separately from the production transition function on purpose.
struct RefNav {
  int mode = 0;  // 0 cruise, 1 probing at the pre-probe speed, 2 at the alternate
  int speed = 0;  // 0 fast, 1 slow
  int pre_speed = 0;
  int cruise_hits = 0;
  int hits_pre = 0;
  int hits_alt = 0;
  int steps_left = 0;

  int step(bool hit, int threshold, int plen) {
    if (mode == 0) {
      if (hit) cruise_hits += 1;
      if (cruise_hits == threshold) {
        mode = 1;
        pre_speed = speed;
        hits_pre = 0;
        hits_alt = 0;
        steps_left = plen;
        cruise_hits = 0;
      }
    } else if (mode == 1) {
      if (hit) hits_pre += 1;
      steps_left -= 1;
      if (steps_left == 0) {
        mode = 2;
        steps_left = plen;
        speed = 1 - pre_speed;
      }
    } else {
      if (hit) hits_alt += 1;
      steps_left -= 1;
      if (steps_left == 0) {
        if (hits_alt < hits_pre)
          speed = 1 - pre_speed;
        else
          speed = pre_speed;
        mode = 0;
        cruise_hits = 0;
      }
    }
    return speed;
  }
};

bool same_trajectory(const std::vector<bool>& detections, std::string& why) {
  nav::NavState state;
  RefNav ref;
  const nav::NavParams params;
  for (std::size_t i = 0; i < detections.size(); ++i) {
    const auto r = nav::nav_step(state, detections[i], params);
    state = r.state;
    const int ref_speed = ref.step(detections[i], params.trigger_threshold, params.probe_len);
    if (static_cast<int>(r.speed_for_next_query) != ref_speed) {
      why = "diverged at step " + std::to_string(i);
      return false;
    }
  }
  return true;
}

// Routes C stdout to /dev/null for the current scope; the run commands print
// console tables that would otherwise interleave with the criterion lines.
struct StdoutSilencer {
  int saved;
  StdoutSilencer() {
    std::fflush(stdout);
    saved = dup(1);
    const int devnull = open("/dev/null", O_WRONLY);
    dup2(devnull, 1);
    close(devnull);
  }
  ~StdoutSilencer() {
    std::fflush(stdout);
    dup2(saved, 1);
    close(saved);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream out;
  out << f.rdbuf();
  return out.str();
}

bool directories_identical(const fs::path& a, const fs::path& b, std::string& why) {
  std::vector<fs::path> rel_a, rel_b;
  for (const auto& e : fs::recursive_directory_iterator(a))
    if (e.is_regular_file()) rel_a.push_back(fs::relative(e.path(), a));
  for (const auto& e : fs::recursive_directory_iterator(b))
    if (e.is_regular_file()) rel_b.push_back(fs::relative(e.path(), b));
  std::sort(rel_a.begin(), rel_a.end());
  std::sort(rel_b.begin(), rel_b.end());
  if (rel_a != rel_b) {
    why = "file sets differ";
    return false;
  }
  for (const auto& rel : rel_a) {
    if (slurp(a / rel) != slurp(b / rel)) {
      why = "content differs: " + rel.string();
      return false;
    }
  }
  return true;
}

void run_all() {
  const runner::RunConfig config = runner::default_config();

  progress("generating the default synthetic dataset");
  const synth::SynthDataset data = synth::generate(config.dataset.synth);
  const vpr::Matcher matcher(data.reference);
  const attacks::ValueRangeModel ranges = attacks::ValueRangeModel::from_reference(data.reference);
  const Vector& truth = data.query.positions_m();
  const BatchStats clean = evaluate(matcher, data.query.descriptors(), truth, 3.0);

  // --- criteria 1 and 11: fixed-fraction sweep over the 8 attack combos ----
  {
    progress("criterion 1/11: 20-seed sweep over the attack combinations");
    const double t0 = now_seconds();
    const int n_seeds = 20;
    const attacks::AttackKind kinds[] = {attacks::AttackKind::Flat, attacks::AttackKind::Random,
                                         attacks::AttackKind::QueryBased,
                                         attacks::AttackKind::ReferenceBased};
    const attacks::AttackLayout layouts[] = {attacks::AttackLayout::Noise,
                                             attacks::AttackLayout::Patch};
    std::map<std::pair<int, int>, double> ate_sum, recall_sum;
    for (int s = 0; s < n_seeds; ++s) {
      for (const auto kind : kinds) {
        for (const auto layout : layouts) {
          const attacks::AttackSpec spec{kind, layout, 0.40};
          const Matrix delivered =
              attack_all(data.reference, data.query, ranges, spec,
                         config.experiment.params.master_seed, static_cast<std::uint32_t>(s));
          const BatchStats st = evaluate(matcher, delivered, truth, 3.0);
          ate_sum[{static_cast<int>(kind), static_cast<int>(layout)}] += st.ate_mean;
          recall_sum[{static_cast<int>(kind), static_cast<int>(layout)}] += st.recall_pct;
        }
      }
    }
    auto mean_ate = [&](attacks::AttackKind k, attacks::AttackLayout l) {
      return ate_sum[{static_cast<int>(k), static_cast<int>(l)}] / n_seeds;
    };
    auto mean_recall = [&](attacks::AttackKind k, attacks::AttackLayout l) {
      return recall_sum[{static_cast<int>(k), static_cast<int>(l)}] / n_seeds;
    };

    const double ref_min = std::min(mean_ate(attacks::AttackKind::ReferenceBased, layouts[0]),
                                    mean_ate(attacks::AttackKind::ReferenceBased, layouts[1]));
    double flat_random_max = 0.0;
    for (const auto kind : {attacks::AttackKind::Flat, attacks::AttackKind::Random})
      for (const auto layout : layouts)
        flat_random_max = std::max(flat_random_max, mean_ate(kind, layout));

    double noise_pooled = 0.0, patch_pooled = 0.0;
    for (const auto kind : kinds) {
      noise_pooled += mean_ate(kind, attacks::AttackLayout::Noise) / 4.0;
      patch_pooled += mean_ate(kind, attacks::AttackLayout::Patch) / 4.0;
    }
    const double layout_rel_diff =
        std::abs(noise_pooled - patch_pooled) / std::max(noise_pooled, patch_pooled);

    const double elapsed = now_seconds() - t0;
    const bool pass = ref_min > flat_random_max && layout_rel_diff < 0.25;
    report(1, "reference-based attacks dominate, layouts comparable", pass,
           "min ref ATE " + fmt(ref_min) + " m > max flat/random " + fmt(flat_random_max) +
               " m; layout diff " + fmt(100.0 * layout_rel_diff) + "%; " + fmt(elapsed) + " s");

    double worst_ratio = 1.0;
    for (const auto kind : {attacks::AttackKind::Flat, attacks::AttackKind::Random})
      for (const auto layout : layouts)
        worst_ratio = std::min(worst_ratio, mean_recall(kind, layout) / clean.recall_pct);
    report(11, "flat and random attacks barely dent recall at 40%", worst_ratio >= 0.90,
           "clean recall " + fmt(clean.recall_pct) + "%; worst flat/random retention " +
               fmt(100.0 * worst_ratio) + "% of clean");
  }

  // --- criterion 2: error versus attacked fraction --------------------------
  {
    progress("criterion 2: fraction sweep");
    const int n_seeds = 20;
    std::vector<double> fractions;
    for (int i = 1; i <= 10; ++i) fractions.push_back(0.1 * i);
    std::vector<double> mean_ate(fractions.size(), 0.0);
    for (std::size_t fi = 0; fi < fractions.size(); ++fi) {
      for (int s = 0; s < n_seeds; ++s) {
        Matrix delivered = data.query.descriptors();
        for (Index i = 0; i < data.query.frame_count(); ++i) {
          rng::Stream spec_stream(config.experiment.params.master_seed,
                                  static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(i),
                                  rng::Purpose::AttackSpecDraw);
          attacks::AttackSpec spec = attacks::random_attack_spec(spec_stream);
          spec.fraction = fractions[fi];
          rng::Stream stream(config.experiment.params.master_seed, static_cast<std::uint32_t>(s),
                             static_cast<std::uint32_t>(i), rng::Purpose::AttackApply);
          auto [attacked, record] =
              attacks::apply_attack(data.query.descriptor(i), spec, delivered.leftCols(i),
                                    data.reference, ranges, stream);
          delivered.col(i) = attacked;
        }
        mean_ate[fi] += evaluate(matcher, delivered, truth, 3.0).ate_mean / n_seeds;
      }
    }
    bool monotone = true;
    for (std::size_t i = 1; i < mean_ate.size(); ++i)
      if (mean_ate[i] < mean_ate[i - 1]) monotone = false;
    const double low_rise = mean_ate[3] - mean_ate[1];   // 0.2 -> 0.4
    const double mid_rise = mean_ate[5] - mean_ate[3];   // 0.4 -> 0.6
    const bool pass = monotone && mid_rise > low_rise;
    report(2, "error grows with fraction, fastest past 40%", pass,
           "ATE(0.2..0.6) = " + fmt(mean_ate[1]) + ", " + fmt(mean_ate[3]) + ", " +
               fmt(mean_ate[5]) + " m; rise " + fmt(low_rise) + " -> " + fmt(mid_rise) +
               (monotone ? "; monotone" : "; NOT monotone"));
  }

  // --- criteria 3, 4, 5, 7, 9a: the full default experiment -----------------
  progress("criteria 3-5/7/9: default 7-method, 100-trial experiment");
  std::vector<scenario::MethodConfig> methods;
  for (const auto& name : config.experiment.method_names)
    methods.push_back(runner::method_from_name(name, config.experiment.nav));
  scenario::ExperimentParams params = config.experiment.params;
  params.threads = 1;
  const scenario::ExperimentResult experiment =
      scenario::run_experiment(data.reference, data.query, methods, params);

  std::vector<metrics::AggregateReport> aggregates;
  std::vector<std::vector<double>> attacked_fractions(methods.size());
  for (std::size_t m = 0; m < methods.size(); ++m) {
    std::vector<metrics::MetricsReport> reports;
    for (const auto& log : experiment.logs[m]) {
      reports.push_back(metrics::summarize(log));
      attacked_fractions[m].push_back(static_cast<double>(log.totals.n_attacked) /
                                      static_cast<double>(log.totals.n_steps));
    }
    aggregates.push_back(metrics::aggregate(reports));
  }
  const std::size_t i_baseline = 0;
  const std::size_t grid_first = 2;  // aad_tp50 .. aad_tp95 at indices 2..6

  {
    const char* metric_names[] = {"mean ATE", "pct_attacked", "pct_unsafe_speed", "longest_run"};
    auto metric_value = [&](std::size_t m, int which) {
      switch (which) {
        case 0: return aggregates[m].ate_mean_m.mean;
        case 1: return aggregates[m].pct_attacked.mean;
        case 2: return aggregates[m].pct_unsafe_speed.mean;
        default: return aggregates[m].longest_continuous_attack.mean;
      }
    };
    std::string violations;
    bool monotone = true;
    for (int which = 0; which < 4; ++which) {
      bool bad = false;
      for (std::size_t m = grid_first + 1; m <= grid_first + 4; ++m) {
        const double prev = metric_value(m - 1, which);
        const double next = metric_value(m, which);
        if (next > prev * 1.02) {
          monotone = false;
          if (!bad)
            violations += std::string(" ") + metric_names[which] + " grid:";
          bad = true;
          violations += " " + methods[m].name + " +" +
                        fmt(100.0 * (next / prev - 1.0)) + "%";
        }
      }
      if (bad) {
        violations += " [";
        for (std::size_t m = grid_first; m <= grid_first + 4; ++m)
          violations += (m == grid_first ? "" : " ") + fmt(metric_value(m, which));
        violations += "]";
      }
    }
    const double base_ate = aggregates[i_baseline].ate_mean_m.mean;
    const double tp75_ate = aggregates[grid_first + 2].ate_mean_m.mean;
    const double reduction = 1.0 - tp75_ate / base_ate;
    const bool pass = monotone && reduction >= 0.30;
    report(3, "detector grid improves all exposure metrics monotonically", pass,
           "tp75 ATE " + fmt(tp75_ate) + " m vs baseline " + fmt(base_ate) + " m (" +
               fmt(100.0 * reduction) + "% lower)" +
               (monotone ? "; grid monotone within 2%" : "; violations:" + violations));

    const double tp50_ate = aggregates[grid_first].ate_mean_m.mean;
    const double rel = std::abs(tp50_ate - base_ate) / base_ate;
    report(4, "a coin-flip detector does not move the error", rel <= 0.15,
           "tp50 ATE " + fmt(tp50_ate) + " m vs baseline " + fmt(base_ate) + " m (" +
               fmt(100.0 * rel) + "% apart)");
  }

  {
    auto completion = [&](std::size_t m, double threshold) {
      int completed = 0;
      for (const double f : attacked_fractions[m])
        if (f <= threshold) ++completed;
      return static_cast<double>(completed) / static_cast<double>(attacked_fractions[m].size());
    };
    std::string note;
    bool all_complete = true;
    for (std::size_t m = grid_first; m <= grid_first + 4; ++m) {
      const double c = completion(m, 0.50);
      if (c < 1.0) {
        all_complete = false;
        note += " " + methods[m].name + "=" + fmt(100.0 * c) + "%";
      }
    }
    const double base_033 = completion(i_baseline, 0.33);
    bool strict = true;
    for (std::size_t m = grid_first + 2; m <= grid_first + 4; ++m)
      if (!(base_033 < completion(m, 0.33))) strict = false;
    const bool pass = all_complete && strict;
    report(5, "no vehicle lost at the nominal threshold, detectors beat baseline at 33%", pass,
           (all_complete ? std::string("all detectors complete at 0.50")
                         : "incomplete at 0.50:" + note) +
               "; baseline@0.33 " + fmt(100.0 * base_033) + "% vs tp75 " +
               fmt(100.0 * completion(grid_first + 2, 0.33)) + "%");
  }

  {
    Index safe_steps = 0, safe_attacked = 0, unsafe_steps = 0, unsafe_attacked = 0;
    for (const auto& per_method : experiment.logs)
      for (const auto& log : per_method)
        for (const auto& step : log.steps) {
          if (step.chosen_speed == step.safe_speed) {
            ++safe_steps;
            safe_attacked += step.attacked ? 1 : 0;
          } else {
            ++unsafe_steps;
            unsafe_attacked += step.attacked ? 1 : 0;
          }
        }
    const double safe_rate = static_cast<double>(safe_attacked) / static_cast<double>(safe_steps);
    const double unsafe_rate =
        static_cast<double>(unsafe_attacked) / static_cast<double>(unsafe_steps);
    const bool enough = safe_steps + unsafe_steps >= 100000;
    const bool pass =
        enough && std::abs(safe_rate - 0.10) <= 0.01 && std::abs(unsafe_rate - 0.70) <= 0.01;
    report(7, "attack rates condition on the speed as configured", pass,
           "safe " + fmt(safe_rate) + " vs 0.10, unsafe " + fmt(unsafe_rate) + " vs 0.70 over " +
               std::to_string(safe_steps + unsafe_steps) + " steps");
  }

  bool plans_shared = true;
  {
    for (std::size_t t = 0; t < experiment.logs[0].size() && plans_shared; ++t)
      for (std::size_t m = 1; m < experiment.logs.size(); ++m)
        if (!(experiment.logs[m][t].zone_plan == experiment.logs[0][t].zone_plan)) {
          plans_shared = false;
          break;
        }
  }

  // --- criterion 6: detector calibration ------------------------------------
  {
    progress("criterion 6: detector calibration");
    bool pass = true;
    std::string worst;
    double worst_err = 0.0;
    const auto grid = detector::standard_grid();
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const int n = 100000;
      int tp = 0, fp = 0;
      rng::Stream s_tp(1234, static_cast<std::uint32_t>(g), 0, rng::Purpose::Detection);
      rng::Stream s_fp(1234, static_cast<std::uint32_t>(g), 1, rng::Purpose::Detection);
      for (int i = 0; i < n; ++i) {
        if (detector::detect(true, grid[g], s_tp)) ++tp;
        if (detector::detect(false, grid[g], s_fp)) ++fp;
      }
      const double tp_err = std::abs(tp / static_cast<double>(n) - grid[g].tp_rate);
      const double fp_err = std::abs(fp / static_cast<double>(n) - grid[g].fp_rate);
      if (tp_err > 0.01 || fp_err > 0.01) pass = false;
      if (std::max(tp_err, fp_err) > worst_err) {
        worst_err = std::max(tp_err, fp_err);
        worst = "tp" + fmt(100 * grid[g].tp_rate);
      }
    }
    report(6, "simulated detectors hit their nominal rates", pass,
           "worst deviation " + fmt(worst_err) + " at " + worst + " over 1e5 draws per point");
  }

  // --- criterion 8: navigation automaton vs independent reference -----------
  {
    progress("criterion 8: navigation cross-check");
    bool pass = true;
    std::string why = "all trajectories agree";

    // Exhaustive probe outcomes: pack a detections into phase one and b into
    // phase two, bracketed by clean cruising.
    for (int a = 0; a <= 10 && pass; ++a) {
      for (int b = 0; b <= 10 && pass; ++b) {
        std::vector<bool> script;
        for (int i = 0; i < 10; ++i) script.push_back(true);  // trigger
        for (int i = 0; i < 10; ++i) script.push_back(i < a);
        for (int i = 0; i < 10; ++i) script.push_back(i < b);
        for (int i = 0; i < 25; ++i) script.push_back(false);
        if (!same_trajectory(script, why)) {
          pass = false;
          why += " [probe " + std::to_string(a) + "," + std::to_string(b) + "]";
        }
      }
    }

    // Exactly-at-threshold trigger behavior, interleaved with clean steps.
    if (pass) {
      std::vector<bool> script;
      for (int i = 0; i < 9; ++i) {
        script.push_back(true);
        script.push_back(false);
      }
      script.push_back(true);  // the tenth detection
      for (int i = 0; i < 45; ++i) script.push_back(i % 3 == 0);
      if (!same_trajectory(script, why)) pass = false;
    }

    // Randomized long streams.
    if (pass) {
      for (std::uint32_t t = 0; t < 200 && pass; ++t) {
        rng::Stream s(777, t, 0, rng::Purpose::Generic);
        std::vector<bool> script(300);
        const double p = 0.1 + 0.8 * (t / 200.0);
        for (auto&& bit : script) bit = s.next_double() < p;
        if (!same_trajectory(script, why)) {
          pass = false;
          why += " [random stream " + std::to_string(t) + "]";
        }
      }
    }
    report(8, "navigation matches an independent reference automaton", pass, why);
  }

  // --- criterion 9: determinism and shared randomization ---------------------
  {
    progress("criterion 9: byte-identical reruns");
    runner::RunConfig rerun_cfg = config;
    rerun_cfg.experiment.params.n_trials = 5;
    rerun_cfg.experiment.params.threads = 1;
    rerun_cfg.experiment.method_names = {"baseline", "random_zone", "aad_tp75"};

    const fs::path root = fs::temp_directory_path() / "vprsim_acceptance";
    fs::remove_all(root);
    fs::create_directories(root);
    bool identical = false;
    std::string why = "ok";
    try {
      {
        StdoutSilencer quiet;
        runner::cmd_run(rerun_cfg, (root / "a").string());
        runner::cmd_run(rerun_cfg, (root / "b").string());
      }
      identical = directories_identical(root / "a", root / "b", why);
    } catch (const std::exception& e) {
      why = e.what();
    }
    std::error_code ec;
    fs::remove_all(root, ec);

    const bool pass = identical && plans_shared;
    report(9, "same seed, same bytes; one zone plan per trial", pass,
           std::string(identical ? "rerun byte-identical" : "rerun differs: " + why) + "; " +
               (plans_shared ? "zone plans shared across all methods"
                             : "zone plans DIFFER across methods"));
  }

  // --- criterion 10: gradient correctness and attack transfer ---------------
  {
    progress("criterion 10: gradient check and transfer study");
    const double t0 = now_seconds();

    bool fd_ok = true;
    double worst_rel = 0.0;
    int tested = 0;
    std::uint32_t t = 0;
    const Index dim = 6;
    const double h = 1e-5;
    while (tested < 100 && t < 10000) {
      rng::Stream s(2026, t, 0, rng::Purpose::Generic);
      auto enc = fgsm::random_encoder(dim, 8, 4, 2026, t);
      if (t % 3 == 2) enc.W2 *= 2.5;
      ++t;
      fgsm::TripletSample sample;
      sample.margin = s.uniform(0.3, 0.7);
      sample.query = Vector(dim);
      sample.positive = Vector(dim);
      sample.negative = Vector(dim);
      for (Index i = 0; i < dim; ++i) sample.query[i] = s.uniform(0.1, 0.9);
      for (Index i = 0; i < dim; ++i) sample.positive[i] = s.uniform(0.1, 0.9);
      for (Index i = 0; i < dim; ++i) sample.negative[i] = s.uniform(0.1, 0.9);

      double dp = 0.0, dn = 0.0;
      try {
        dp = (fgsm::encode(enc, sample.query) - fgsm::encode(enc, sample.positive)).norm();
        dn = (fgsm::encode(enc, sample.query) - fgsm::encode(enc, sample.negative)).norm();
      } catch (const std::domain_error&) {
        continue;
      }
      if (std::abs(dp - dn + sample.margin) < 1e-3) continue;
      if ((enc.W1 * sample.query + enc.b1).cwiseAbs().minCoeff() < 1e-4) continue;

      const Vector analytic = fgsm::grad_input(enc, sample);
      for (Index i = 0; i < dim; ++i) {
        fgsm::TripletSample up = sample, down = sample;
        up.query[i] += h;
        down.query[i] -= h;
        const double fd =
            (fgsm::triplet_loss(enc, up) - fgsm::triplet_loss(enc, down)) / (2 * h);
        const double rel = std::abs(fd - analytic[i]) / std::max(1.0, std::abs(analytic[i]));
        worst_rel = std::max(worst_rel, rel);
        if (rel > 1e-4) fd_ok = false;
      }
      ++tested;
    }
    fd_ok = fd_ok && tested == 100;

    const runner::FgsmSpec& spec = config.fgsm;
    fgsm::InputDatasetConfig dc = spec.data;
    dc.seed = spec.seed;
    const fgsm::InputDataset inputs = fgsm::generate_inputs(dc);
    auto make_encoder = [&](std::uint32_t id) {
      return fgsm::train_encoder(
          fgsm::random_encoder(dc.input_dim, spec.hidden_dim, spec.output_dim, spec.seed, id),
          inputs, spec.train, spec.seed, id);
    };
    const fgsm::ToyEncoder source = make_encoder(0);
    std::vector<fgsm::ToyEncoder> targets;
    for (int i = 0; i < spec.n_targets; ++i)
      targets.push_back(make_encoder(static_cast<std::uint32_t>(i) + 1));
    const fgsm::TransferResult transfer = fgsm::transfer_eval(source, targets, inputs,
                                                              spec.transfer);
    const double source_drop = transfer.source.recall_clean - transfer.source.recall_attacked;
    std::string target_note;
    bool transfer_ok = transfer.targets.size() >= 5;
    for (const auto& tgt : transfer.targets) {
      const double drop = tgt.recall_clean - tgt.recall_attacked;
      if (!(source_drop > drop)) transfer_ok = false;
      target_note += (target_note.empty() ? "" : " ") + fmt(drop);
    }

    const double elapsed = now_seconds() - t0;
    report(10, "gradients check out and attacks transfer weakly", fd_ok && transfer_ok,
           "worst FD rel err " + fmt(worst_rel) + " over " + std::to_string(tested) +
               " configs; source drop " + fmt(source_drop) + "% vs targets [" + target_note +
               "]%; " + fmt(elapsed) + " s");
  }
}

}  // namespace

int main() {
  try {
    run_all();
  } catch (const std::exception& e) {
    // Criteria that never got to run still get a line, marked failed.
    for (int id = 1; id <= 11; ++id) {
      const bool seen = std::any_of(g_outcomes.begin(), g_outcomes.end(),
                                    [&](const Outcome& o) { return o.id == id; });
      if (!seen) report(id, "not evaluated", false, e.what());
    }
  }

  std::sort(g_outcomes.begin(), g_outcomes.end(),
            [](const Outcome& a, const Outcome& b) { return a.id < b.id; });
  int failures = 0;
  for (const auto& o : g_outcomes) {
    std::printf("[%s] criterion %2d: %s (%s)\n", o.pass ? "PASS" : "FAIL", o.id, o.name.c_str(),
                o.note.c_str());
    if (!o.pass) ++failures;
  }
  std::printf("acceptance: %zu/%zu criteria passed\n", g_outcomes.size() - failures,
              g_outcomes.size());
  return failures == 0 ? 0 : 1;
}
