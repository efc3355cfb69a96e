#pragma once

#include "vprsim/types.hpp"

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

namespace vprsim::synth {

// Desk-scale stand-in for a mapped environment: unit-norm reference
// descriptors at evenly spaced places, queries in 1:1 correspondence with
// additive appearance noise, and an optional set of near-duplicate place
// pairs to inject perceptual aliasing.
struct SynthConfig {
  Index n_places = 500;
  Real spacing_m = 1.0;
  Index dim = 4096;
  Real query_noise_sigma = 0.05;
  Index aliasing_pairs = 25;
  Real aliasing_sigma = 0.02;
  std::uint64_t seed = 0;
};

struct SynthDataset {
  Traverse reference;
  Traverse query;
  // (kept, near-duplicate) reference index pairs, in generation order.
  std::vector<std::pair<Index, Index>> aliased_pairs;
};

// Pure function of the config: the same config yields bit-identical
// traverses. Throws std::invalid_argument on a config violating the
// documented bounds.
SynthDataset generate(const SynthConfig& config);

// Traverse file format (plain text, one record per line):
//   id <label>
//   dim <D>
//   count <N>
//   <position_m>,<v0>,...,<v(D-1)>     (N lines, shortest round-trip reals)
// Saving and loading is a byte-exact round trip for any valid traverse.
void save_traverse(const Traverse& traverse, const std::filesystem::path& path);
Traverse load_traverse(const std::filesystem::path& path);

}  // namespace vprsim::synth
