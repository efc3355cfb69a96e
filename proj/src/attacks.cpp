#include "vprsim/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vprsim::attacks {

ValueRangeModel ValueRangeModel::from_reference(const Traverse& reference) {
  ValueRangeModel model;
  model.min_per_dim = reference.descriptors().rowwise().minCoeff();
  model.max_per_dim = reference.descriptors().rowwise().maxCoeff();
  model.global_min = model.min_per_dim.minCoeff();
  model.global_max = model.max_per_dim.maxCoeff();
  return model;
}

std::vector<Index> select_indices(AttackLayout layout, Real fraction, Index dim,
                                  rng::Stream& stream) {
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw std::invalid_argument("select_indices: fraction must be in [0, 1]");
  if (dim < 1) throw std::invalid_argument("select_indices: dim must be >= 1");

  const Index k = static_cast<Index>(std::llround(fraction * static_cast<Real>(dim)));
  std::vector<Index> indices;
  if (k == 0) return indices;

  if (layout == AttackLayout::Noise) {
    const auto perm = stream.permutation(dim);
    indices.assign(perm.begin(), perm.begin() + k);
    std::sort(indices.begin(), indices.end());
  } else {
    const Index start = (k == dim) ? 0 : static_cast<Index>(stream.below(static_cast<std::uint64_t>(dim - k + 1)));
    indices.resize(static_cast<std::size_t>(k));
    std::iota(indices.begin(), indices.end(), start);
  }
  return indices;
}

void apply_flat(Descriptor& descriptor, const std::vector<Index>& indices, Real value) {
  for (const Index i : indices) descriptor[i] = value;
}

void apply_random(Descriptor& descriptor, const std::vector<Index>& indices,
                  const ValueRangeModel& ranges, rng::Stream& stream) {
  for (const Index i : indices)
    descriptor[i] = stream.uniform(ranges.min_per_dim[i], ranges.max_per_dim[i]);
}

void apply_copy(Descriptor& descriptor, const std::vector<Index>& indices,
                const Eigen::Ref<const Vector>& donor) {
  for (const Index i : indices) descriptor[i] = donor[i];
}

std::pair<Descriptor, AttackRecord> apply_attack(const Descriptor& query, const AttackSpec& spec,
                                                 const Eigen::Ref<const Matrix>& past_queries,
                                                 const Traverse& reference,
                                                 const ValueRangeModel& ranges,
                                                 rng::Stream& stream) {
  if (query.size() != reference.dim())
    throw std::invalid_argument("apply_attack: query dimension does not match reference");
  if (past_queries.cols() > 0 && past_queries.rows() != query.size())
    throw std::invalid_argument("apply_attack: past query dimension mismatch");

  AttackRecord record;
  record.spec = spec;
  record.indices = select_indices(spec.layout, spec.fraction, query.size(), stream);

  Descriptor attacked = query;
  AttackKind kind = spec.kind;
  if (kind == AttackKind::QueryBased && past_queries.cols() == 0) {
    kind = AttackKind::Random;
    record.fallback_random = true;
  }

  switch (kind) {
    case AttackKind::Flat:
      apply_flat(attacked, record.indices, stream.uniform(ranges.global_min, ranges.global_max));
      break;
    case AttackKind::Random:
      apply_random(attacked, record.indices, ranges, stream);
      break;
    case AttackKind::QueryBased: {
      const Index donor = static_cast<Index>(stream.below(static_cast<std::uint64_t>(past_queries.cols())));
      apply_copy(attacked, record.indices, past_queries.col(donor));
      record.source = AttackRecord::Source::PriorQuery;
      record.source_index = donor;
      break;
    }
    case AttackKind::ReferenceBased: {
      const Index donor = static_cast<Index>(stream.below(static_cast<std::uint64_t>(reference.frame_count())));
      apply_copy(attacked, record.indices, reference.descriptors().col(donor));
      record.source = AttackRecord::Source::Reference;
      record.source_index = donor;
      break;
    }
  }
  return {std::move(attacked), std::move(record)};
}

AttackSpec random_attack_spec(rng::Stream& stream) {
  AttackSpec spec;
  spec.kind = static_cast<AttackKind>(stream.below(4));
  spec.layout = static_cast<AttackLayout>(stream.below(2));
  spec.fraction = stream.uniform(0.10, 0.50);
  return spec;
}

const char* to_string(AttackKind kind) {
  switch (kind) {
    case AttackKind::Flat: return "flat";
    case AttackKind::Random: return "random";
    case AttackKind::QueryBased: return "query_based";
    case AttackKind::ReferenceBased: return "reference_based";
  }
  return "?";
}

const char* to_string(AttackLayout layout) {
  return layout == AttackLayout::Noise ? "noise" : "patch";
}

}  // namespace vprsim::attacks
