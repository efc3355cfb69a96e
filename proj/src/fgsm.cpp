#include "vprsim/fgsm.hpp"

#include "vprsim/vpr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace vprsim::fgsm {

namespace {

void check_encoder(const ToyEncoder& e) {
  if (e.W1.rows() != e.b1.size() || e.W2.cols() != e.W1.rows() || e.W2.rows() != e.b2.size())
    throw std::invalid_argument("ToyEncoder: inconsistent parameter shapes");
  if (e.output_dim() < 2) throw std::invalid_argument("ToyEncoder: output_dim must be >= 2");
  if (!e.W1.allFinite() || !e.b1.allFinite() || !e.W2.allFinite() || !e.b2.allFinite())
    throw std::invalid_argument("ToyEncoder: non-finite parameters");
}

void check_input(const ToyEncoder& e, const Eigen::Ref<const Vector>& x) {
  if (x.size() != e.input_dim()) throw std::invalid_argument("encode: input dimension mismatch");
  if (!((x.array() >= 0.0).all() && (x.array() <= 1.0).all()))
    throw std::invalid_argument("encode: input components must lie in [0, 1]");
}

// One forward pass with everything the backward pass needs.
struct Forward {
  Vector a;  // pre-activation, W1 x + b1
  Vector h;  // relu(a)
  Vector y;  // W2 h + b2
  Real r;    // |y|
  Vector e;  // y / r
};

Forward forward(const ToyEncoder& enc, const Eigen::Ref<const Vector>& x) {
  Forward f;
  f.a = enc.W1 * x + enc.b1;
  f.h = f.a.cwiseMax(0.0);
  f.y = enc.W2 * f.h + enc.b2;
  f.r = f.y.norm();
  if (f.r == 0.0) throw std::domain_error("encode: zero pre-normalization output");
  f.e = f.y / f.r;
  return f;
}

// Gradient at the normalized output pulled back to the branch input.
Vector backward_input(const ToyEncoder& enc, const Forward& f, const Vector& g_e) {
  const Vector g_y = (g_e - f.e * f.e.dot(g_e)) / f.r;
  const Vector g_h = enc.W2.transpose() * g_y;
  const Vector g_a = (f.a.array() > 0.0).select(g_h, 0.0);
  return enc.W1.transpose() * g_a;
}

void backward_params(const ToyEncoder& enc, const Forward& f, const Eigen::Ref<const Vector>& x,
                     const Vector& g_e, ParamGrads& grads) {
  const Vector g_y = (g_e - f.e * f.e.dot(g_e)) / f.r;
  const Vector g_h = enc.W2.transpose() * g_y;
  const Vector g_a = (f.a.array() > 0.0).select(g_h, 0.0);
  grads.W2 += g_y * f.h.transpose();
  grads.b2 += g_y;
  grads.W1 += g_a * x.transpose();
  grads.b1 += g_a;
}

void check_sample(const ToyEncoder& enc, const TripletSample& s) {
  check_input(enc, s.query);
  check_input(enc, s.positive);
  check_input(enc, s.negative);
  if (!(s.margin >= 0.0)) throw std::invalid_argument("TripletSample: margin must be >= 0");
}

struct TripletForward {
  Forward q, p, n;
  Real dp, dn, loss;
};

TripletForward triplet_forward(const ToyEncoder& enc, const TripletSample& s) {
  check_encoder(enc);
  check_sample(enc, s);
  TripletForward t;
  t.q = forward(enc, s.query);
  t.p = forward(enc, s.positive);
  t.n = forward(enc, s.negative);
  t.dp = (t.q.e - t.p.e).norm();
  t.dn = (t.q.e - t.n.e).norm();
  t.loss = std::max(0.0, t.dp - t.dn + s.margin);
  return t;
}

}  // namespace

ToyEncoder random_encoder(Index input_dim, Index hidden_dim, Index output_dim,
                          std::uint64_t seed, std::uint32_t encoder_id) {
  if (input_dim < 1 || hidden_dim < 1 || output_dim < 2)
    throw std::invalid_argument("random_encoder: need input_dim, hidden_dim >= 1 and output_dim >= 2");
  rng::Stream s(seed, encoder_id, 0, rng::Purpose::EncoderInit);
  ToyEncoder enc;
  enc.W1.resize(hidden_dim, input_dim);
  enc.W2.resize(output_dim, hidden_dim);
  const Real s1 = 1.0 / std::sqrt(static_cast<Real>(input_dim));
  const Real s2 = 1.0 / std::sqrt(static_cast<Real>(hidden_dim));
  for (Index j = 0; j < input_dim; ++j)
    for (Index i = 0; i < hidden_dim; ++i) enc.W1(i, j) = s1 * s.normal();
  for (Index j = 0; j < hidden_dim; ++j)
    for (Index i = 0; i < output_dim; ++i) enc.W2(i, j) = s2 * s.normal();
  enc.b1 = Vector::Zero(hidden_dim);
  enc.b2 = Vector::Zero(output_dim);
  return enc;
}

Descriptor encode(const ToyEncoder& encoder, const Eigen::Ref<const Vector>& x) {
  check_encoder(encoder);
  check_input(encoder, x);
  return forward(encoder, x).e;
}

Matrix encode_all(const ToyEncoder& encoder, const Matrix& inputs) {
  check_encoder(encoder);
  Matrix out(encoder.output_dim(), inputs.cols());
  for (Index i = 0; i < inputs.cols(); ++i) {
    check_input(encoder, inputs.col(i));
    out.col(i) = forward(encoder, inputs.col(i)).e;
  }
  return out;
}

Real triplet_loss(const ToyEncoder& encoder, const TripletSample& sample) {
  return triplet_forward(encoder, sample).loss;
}

Vector grad_input(const ToyEncoder& encoder, const TripletSample& sample) {
  const TripletForward t = triplet_forward(encoder, sample);
  if (t.dp - t.dn + sample.margin <= 0.0) return Vector::Zero(encoder.input_dim());

  Vector g_eq = Vector::Zero(encoder.output_dim());
  if (t.dp > 0.0) g_eq += (t.q.e - t.p.e) / t.dp;
  if (t.dn > 0.0) g_eq -= (t.q.e - t.n.e) / t.dn;
  return backward_input(encoder, t.q, g_eq);
}

std::pair<Real, ParamGrads> loss_and_param_grads(const ToyEncoder& encoder,
                                                 const TripletSample& sample) {
  const TripletForward t = triplet_forward(encoder, sample);
  ParamGrads grads;
  grads.W1 = Matrix::Zero(encoder.W1.rows(), encoder.W1.cols());
  grads.b1 = Vector::Zero(encoder.b1.size());
  grads.W2 = Matrix::Zero(encoder.W2.rows(), encoder.W2.cols());
  grads.b2 = Vector::Zero(encoder.b2.size());
  if (t.dp - t.dn + sample.margin <= 0.0) return {t.loss, std::move(grads)};

  Vector g_eq = Vector::Zero(encoder.output_dim());
  if (t.dp > 0.0) {
    backward_params(encoder, t.p, sample.positive, (t.p.e - t.q.e) / t.dp, grads);
    g_eq += (t.q.e - t.p.e) / t.dp;
  }
  if (t.dn > 0.0) {
    backward_params(encoder, t.n, sample.negative, -(t.n.e - t.q.e) / t.dn, grads);
    g_eq -= (t.q.e - t.n.e) / t.dn;
  }
  backward_params(encoder, t.q, sample.query, g_eq, grads);
  return {t.loss, std::move(grads)};
}

Vector fgsm_attack(const ToyEncoder& encoder, const TripletSample& sample,
                   const FgsmConfig& cfg) {
  if (!(cfg.epsilon >= 0.0)) throw std::invalid_argument("fgsm_attack: epsilon must be >= 0");
  if (!(cfg.clip_lo <= cfg.clip_hi)) throw std::invalid_argument("fgsm_attack: empty clip range");
  const Vector g = grad_input(encoder, sample);
  const Vector step = g.array().sign().matrix() * cfg.epsilon;
  return (sample.query + step).cwiseMax(cfg.clip_lo).cwiseMin(cfg.clip_hi);
}

InputDataset generate_inputs(const InputDatasetConfig& cfg) {
  if (cfg.n_places < 2 || cfg.input_dim < 1 || cfg.spacing_m <= 0.0 || cfg.query_noise_sigma < 0.0)
    throw std::invalid_argument("generate_inputs: invalid configuration");

  InputDataset data;
  data.reference_inputs.resize(cfg.input_dim, cfg.n_places);
  data.query_inputs.resize(cfg.input_dim, cfg.n_places);
  data.positions_m.resize(cfg.n_places);
  for (Index i = 0; i < cfg.n_places; ++i) {
    // trial coordinate 0 = reference stream, 1 = query noise stream.
    rng::Stream ref_s(cfg.seed, 0, static_cast<std::uint32_t>(i), rng::Purpose::FgsmData);
    rng::Stream qry_s(cfg.seed, 1, static_cast<std::uint32_t>(i), rng::Purpose::FgsmData);
    for (Index d = 0; d < cfg.input_dim; ++d) data.reference_inputs(d, i) = ref_s.next_double();
    for (Index d = 0; d < cfg.input_dim; ++d)
      data.query_inputs(d, i) = std::clamp(
          data.reference_inputs(d, i) + cfg.query_noise_sigma * qry_s.normal(), 0.0, 1.0);
    data.positions_m[i] = static_cast<Real>(i) * cfg.spacing_m;
  }
  return data;
}

ToyEncoder train_encoder(ToyEncoder encoder, const InputDataset& data, const TrainConfig& cfg,
                         std::uint64_t seed, std::uint32_t encoder_id) {
  check_encoder(encoder);
  if (cfg.n_steps < 0 || cfg.learning_rate <= 0.0 || cfg.margin < 0.0)
    throw std::invalid_argument("train_encoder: invalid configuration");
  const Index n = data.reference_inputs.cols();
  if (n < 2) throw std::invalid_argument("train_encoder: need at least two places");

  for (int step = 0; step < cfg.n_steps; ++step) {
    rng::Stream s(seed, encoder_id, static_cast<std::uint32_t>(step), rng::Purpose::FgsmTrain);
    const Index anchor = static_cast<Index>(s.below(static_cast<std::uint64_t>(n)));
    Index negative = anchor;
    // Negatives must be genuinely different places; resample until outside
    // the neighbor radius. Guaranteed to terminate for any dataset whose
    // span exceeds the radius.
    for (int guard = 0; guard < 10000; ++guard) {
      negative = static_cast<Index>(s.below(static_cast<std::uint64_t>(n)));
      if (std::abs(data.positions_m[negative] - data.positions_m[anchor]) > cfg.neighbor_radius_m)
        break;
    }
    TripletSample sample;
    sample.query = data.query_inputs.col(anchor);
    sample.positive = data.reference_inputs.col(anchor);
    sample.negative = data.reference_inputs.col(negative);
    sample.margin = cfg.margin;

    const auto [loss, grads] = loss_and_param_grads(encoder, sample);
    if (loss == 0.0) continue;
    encoder.W1 -= cfg.learning_rate * grads.W1;
    encoder.b1 -= cfg.learning_rate * grads.b1;
    encoder.W2 -= cfg.learning_rate * grads.W2;
    encoder.b2 -= cfg.learning_rate * grads.b2;
  }
  return encoder;
}

namespace {

AteStats ate_stats(const std::vector<Real>& errors) {
  AteStats stats;
  if (errors.empty()) return stats;
  std::vector<Real> sorted = errors;
  std::sort(sorted.begin(), sorted.end());
  Real sum = 0.0;
  for (const Real e : sorted) sum += e;
  stats.mean_m = sum / static_cast<Real>(sorted.size());
  stats.median_m = sorted[(sorted.size() - 1) / 2];
  stats.max_m = sorted.back();
  return stats;
}

void evaluate(const vpr::Matcher& matcher, const Matrix& query_desc, const Vector& truth_m,
              Real tolerance_m, Real& recall_out, AteStats& ate_out) {
  const auto results = matcher.match_batch(query_desc);
  std::vector<Real> errors;
  errors.reserve(results.size());
  Index hits = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const Real err = std::abs(results[i].estimate_position_m - truth_m[static_cast<Index>(i)]);
    errors.push_back(err);
    if (err <= tolerance_m) ++hits;
  }
  recall_out = 100.0 * static_cast<Real>(hits) / static_cast<Real>(results.size());
  ate_out = ate_stats(errors);
}

}  // namespace

TransferResult transfer_eval(const ToyEncoder& source, const std::vector<ToyEncoder>& targets,
                             const InputDataset& data, const TransferConfig& cfg) {
  const Index n = data.reference_inputs.cols();
  if (n < 2) throw std::invalid_argument("transfer_eval: need at least two places");
  if (source.input_dim() != data.reference_inputs.rows())
    throw std::invalid_argument("transfer_eval: encoder input dimension mismatch");
  for (const auto& t : targets)
    if (t.input_dim() != data.reference_inputs.rows())
      throw std::invalid_argument("transfer_eval: encoder input dimension mismatch");

  // Craft attacks with the source encoder: positive = true correspondence,
  // negative = nearest source descriptor outside the neighbor radius.
  const Matrix ref_src = encode_all(source, data.reference_inputs);
  const Matrix qry_src = encode_all(source, data.query_inputs);
  const Matrix dots = ref_src.transpose() * qry_src;  // unit vectors: max dot = min distance

  Matrix attacked(data.query_inputs.rows(), n);
  for (Index i = 0; i < n; ++i) {
    Index hardest = -1;
    Real best = -2.0;
    for (Index j = 0; j < n; ++j) {
      if (std::abs(data.positions_m[j] - data.positions_m[i]) <= cfg.neighbor_radius_m) continue;
      if (dots(j, i) > best) {
        best = dots(j, i);
        hardest = j;
      }
    }
    if (hardest < 0) throw std::invalid_argument("transfer_eval: no non-neighbor negatives");

    TripletSample sample;
    sample.query = data.query_inputs.col(i);
    sample.positive = data.reference_inputs.col(i);
    sample.negative = data.reference_inputs.col(hardest);
    sample.margin = cfg.attack_margin;
    attacked.col(i) = fgsm_attack(source, sample, cfg.fgsm);
  }

  auto eval_encoder = [&](const ToyEncoder& enc, std::string name) {
    EncoderEval ev;
    ev.name = std::move(name);
    const Traverse ref_traverse("reference", encode_all(enc, data.reference_inputs),
                                data.positions_m);
    const vpr::Matcher matcher(ref_traverse);
    evaluate(matcher, encode_all(enc, data.query_inputs), data.positions_m,
             cfg.recall_tolerance_m, ev.recall_clean, ev.ate_clean);
    evaluate(matcher, encode_all(enc, attacked), data.positions_m, cfg.recall_tolerance_m,
             ev.recall_attacked, ev.ate_attacked);
    return ev;
  };

  TransferResult result;
  result.source = eval_encoder(source, "source");
  for (std::size_t t = 0; t < targets.size(); ++t)
    result.targets.push_back(eval_encoder(targets[t], "target" + std::to_string(t)));
  return result;
}

}  // namespace vprsim::fgsm
