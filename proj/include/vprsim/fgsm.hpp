#pragma once

#include "vprsim/rng.hpp"
#include "vprsim/types.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace vprsim::fgsm {

// Two-layer perceptron encoder: rectified hidden layer, unit-normalized
// output. A stand-in for real descriptor networks, small enough to
// differentiate by hand and cross-check against finite differences.
struct ToyEncoder {
  Matrix W1;  // hidden x input
  Vector b1;  // hidden
  Matrix W2;  // output x hidden
  Vector b2;  // output

  Index input_dim() const { return W1.cols(); }
  Index hidden_dim() const { return W1.rows(); }
  Index output_dim() const { return W2.rows(); }
};

// Fresh encoder with normal(0, 1/sqrt(fan_in)) weights and zero biases.
// encoder_id separates independently initialized encoders under one seed.
ToyEncoder random_encoder(Index input_dim, Index hidden_dim, Index output_dim,
                          std::uint64_t seed, std::uint32_t encoder_id);

// Unit-norm descriptor of one input. Inputs live in [0,1]; out-of-range
// components are rejected, as is a zero pre-normalization output (possible
// only for degenerate parameters such as all-zero weights).
Descriptor encode(const ToyEncoder& encoder, const Eigen::Ref<const Vector>& x);

// Column-wise encode of a batch.
Matrix encode_all(const ToyEncoder& encoder, const Matrix& inputs);

struct TripletSample {
  Vector query;
  Vector positive;
  Vector negative;
  Real margin = 0.1;
};

// max(0, d(E(q),E(p)) - d(E(q),E(n)) + margin) with Euclidean d.
Real triplet_loss(const ToyEncoder& encoder, const TripletSample& sample);

// Analytic gradient of triplet_loss with respect to the query input.
// Subgradient conventions at the non-smooth points: 0 when the hinge is
// inactive or exactly at its boundary, 0 for ReLU units at exactly zero
// pre-activation, and 0 for a distance term whose two descriptors coincide.
Vector grad_input(const ToyEncoder& encoder, const TripletSample& sample);

struct ParamGrads {
  Matrix W1;
  Vector b1;
  Matrix W2;
  Vector b2;
};

// Loss plus its gradient with respect to every encoder parameter, summing
// the query, positive, and negative branches. Used by the training fixture.
std::pair<Real, ParamGrads> loss_and_param_grads(const ToyEncoder& encoder,
                                                 const TripletSample& sample);

struct FgsmConfig {
  Real epsilon = 0.01;  // per-component perturbation magnitude
  Real clip_lo = 0.0;
  Real clip_hi = 1.0;
};

// clip(query + epsilon * sign(grad_input), [clip_lo, clip_hi]).
// sign(0) = 0, so components with zero gradient pass through unchanged.
Vector fgsm_attack(const ToyEncoder& encoder, const TripletSample& sample,
                   const FgsmConfig& cfg);

// Synthetic input-space dataset with 1:1 query/reference correspondence:
// reference inputs uniform on [0,1], query inputs are the same points plus
// clipped Gaussian noise, positions evenly spaced.
struct InputDatasetConfig {
  Index n_places = 150;
  Real spacing_m = 1.0;
  Index input_dim = 32;
  Real query_noise_sigma = 0.02;
  std::uint64_t seed = 0;
};

struct InputDataset {
  Matrix reference_inputs;  // input_dim x n_places
  Matrix query_inputs;      // input_dim x n_places
  Vector positions_m;
};

InputDataset generate_inputs(const InputDatasetConfig& cfg);

// Brief SGD on random triplets (anchor = query i, positive = reference i,
// negative = random reference outside the neighbor radius). A fixture that
// lifts clean recall before the attack study, not a training contribution.
struct TrainConfig {
  int n_steps = 300;
  Real learning_rate = 0.05;
  Real margin = 0.1;
  Real neighbor_radius_m = 3.0;
};

ToyEncoder train_encoder(ToyEncoder encoder, const InputDataset& data, const TrainConfig& cfg,
                         std::uint64_t seed, std::uint32_t encoder_id);

struct AteStats {
  Real mean_m = 0.0;
  Real median_m = 0.0;
  Real max_m = 0.0;
};

struct EncoderEval {
  std::string name;
  Real recall_clean = 0.0;     // percent
  Real recall_attacked = 0.0;  // percent
  AteStats ate_clean;
  AteStats ate_attacked;
};

struct TransferConfig {
  // Epsilon picked so a single step cripples retrieval under the generating
  // encoder while barely moving independently initialized ones; below ~0.1
  // the attack does not flip source matches at all at the default scale.
  FgsmConfig fgsm{0.10, 0.0, 1.0};
  // Margin used when building attack samples. Chosen large enough that the
  // hinge is active for every sample, turning the objective into a plain
  // ascent on d(query, positive) - d(query, negative).
  Real attack_margin = 2.0;
  Real recall_tolerance_m = 3.0;
  Real neighbor_radius_m = 3.0;
};

struct TransferResult {
  EncoderEval source;
  std::vector<EncoderEval> targets;
};

// Attacks every query with gradients from the source encoder (positive =
// true correspondence, negative = hardest source-descriptor match outside
// the neighbor radius), then evaluates clean and attacked retrieval on the
// source and each target encoder.
TransferResult transfer_eval(const ToyEncoder& source, const std::vector<ToyEncoder>& targets,
                             const InputDataset& data, const TransferConfig& cfg);

}  // namespace vprsim::fgsm
