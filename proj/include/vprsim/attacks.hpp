#pragma once

#include "vprsim/rng.hpp"
#include "vprsim/types.hpp"

#include <utility>
#include <vector>

namespace vprsim::attacks {

// The four black-box attack families. Flat and Random rewrite the selected
// descriptor components with values drawn from the observed reference value
// ranges; QueryBased and ReferenceBased copy the components from a donor
// descriptor to induce perceptual aliasing.
enum class AttackKind { Flat, Random, QueryBased, ReferenceBased };

// Noise scatters the attacked components uniformly over the descriptor;
// Patch attacks one contiguous block of components.
enum class AttackLayout { Noise, Patch };

struct AttackSpec {
  AttackKind kind = AttackKind::Flat;
  AttackLayout layout = AttackLayout::Noise;
  Real fraction = 0.0;  // fraction of descriptor components attacked, in [0, 1]
};

// Audit trail of one applied attack.
struct AttackRecord {
  enum class Source { None, PriorQuery, Reference };

  AttackSpec spec;
  std::vector<Index> indices;  // attacked components, sorted ascending
  Source source = Source::None;
  Index source_index = -1;
  // QueryBased with no prior queries degrades to Random.
  bool fallback_random = false;
};

// Per-dimension and global value bounds observed over a reference traverse.
// Attack values stay inside these bounds so attacked descriptors remain
// in-distribution coordinate-wise.
struct ValueRangeModel {
  Vector min_per_dim;
  Vector max_per_dim;
  Real global_min = 0.0;
  Real global_max = 0.0;

  static ValueRangeModel from_reference(const Traverse& reference);
};

// k = round(fraction * dim) component indices, sorted ascending.
// Noise draws a uniform sample without replacement as the k-prefix of one
// seeded permutation, so for a fixed stream key the selected sets are
// nested across growing fractions. Patch draws a block start uniform on
// [0, dim - k].
std::vector<Index> select_indices(AttackLayout layout, Real fraction, Index dim,
                                  rng::Stream& stream);

// Attack value rules, exposed for direct testing. Each rewrites only the
// given indices.
void apply_flat(Descriptor& descriptor, const std::vector<Index>& indices, Real value);
void apply_random(Descriptor& descriptor, const std::vector<Index>& indices,
                  const ValueRangeModel& ranges, rng::Stream& stream);
void apply_copy(Descriptor& descriptor, const std::vector<Index>& indices,
                const Eigen::Ref<const Vector>& donor);

// Applies one attack to a query descriptor. past_queries holds previously
// observed query descriptors column-wise (may be empty; a block view such
// as delivered.leftCols(i) binds without copying). Draw order on the
// stream is fixed: indices first, then the donor index or attack values.
std::pair<Descriptor, AttackRecord> apply_attack(const Descriptor& query, const AttackSpec& spec,
                                                 const Eigen::Ref<const Matrix>& past_queries,
                                                 const Traverse& reference,
                                                 const ValueRangeModel& ranges,
                                                 rng::Stream& stream);

// Uniform draw over the 8 (kind, layout) combinations with the attacked
// fraction uniform on [0.10, 0.50].
AttackSpec random_attack_spec(rng::Stream& stream);

const char* to_string(AttackKind kind);
const char* to_string(AttackLayout layout);

}  // namespace vprsim::attacks
