#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace vprsim::rng {

// One block of the Philox 4x32-10 counter-based generator.
// Salmon et al., "Parallel random numbers: as easy as 1, 2, 3", SC 2011.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Sub-stream coordinates. A draw anywhere in a run is addressed by
// (seed, trial, step, purpose, draw index), so trials can execute in any
// order or in parallel and still produce bit-identical results. Values are
// baked into stream counters; renumbering breaks reproducibility of
// recorded runs.
enum class Purpose : std::uint32_t {
  ZoneSpeeds = 1,
  PolicySpeed = 2,
  AttackRoll = 3,
  AttackSpecDraw = 4,
  AttackApply = 5,
  Detection = 6,
  SynthReference = 7,
  SynthAliasPairs = 8,
  SynthAliasNoise = 9,
  SynthQueryNoise = 10,
  EncoderInit = 11,
  FgsmData = 12,
  FgsmTrain = 13,
  Generic = 0xffffffffu,
};

// A deterministic random stream: a pure function of its construction
// coordinates. Cheap to construct; make one per (trial, step, purpose)
// rather than threading generator state through the simulation.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint32_t trial, std::uint32_t step, Purpose purpose);
  explicit Stream(std::uint64_t seed, std::uint64_t substream = 0);

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  // Uniform on [0, 1), 53-bit resolution.
  double next_double();
  double uniform(double lo, double hi);
  // Standard normal via Box-Muller.
  double normal();
  // Uniform integer on [0, n), bias-free. Requires n >= 1.
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double p);
  // Fisher-Yates permutation of 0..n-1.
  std::vector<std::int64_t> permutation(std::int64_t n);

 private:
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 3> coords_;  // purpose, step, trial
  std::uint32_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int buf_pos_ = 4;
  double spare_normal_ = 0.0;
  bool has_spare_normal_ = false;
};

}  // namespace vprsim::rng
