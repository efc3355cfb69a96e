#pragma once

#include "vprsim/types.hpp"

#include <vector>

namespace vprsim::vpr {

// Exact nearest-neighbor place matcher over a reference traverse.
// Distances are Euclidean; ties break to the lowest reference index.
// Caches the reference squared norms so batches of queries reduce to one
// matrix product. The reference traverse must outlive the matcher.
class Matcher {
 public:
  explicit Matcher(const Traverse& reference);

  MatchResult match(const Descriptor& query) const;

  // One column per query; descriptor dimension must match the reference.
  std::vector<MatchResult> match_batch(const Matrix& queries) const;

  const Traverse& reference() const { return *reference_; }

 private:
  const Traverse* reference_;
  Vector ref_sq_norms_;
};

// Single-shot convenience wrapper around Matcher.
MatchResult match_query(const Descriptor& query, const Traverse& reference);

// Absolute along-track distance between estimate and truth, both finite.
Real along_track_error(Real estimate_position_m, Real truth_position_m);

// Percentage of query columns whose best match lies within tolerance_m of
// the corresponding truth position. queries is dim x n with one truth
// position per column.
Real recall_at_1(const Matcher& matcher, const Matrix& queries,
                 const Vector& truth_positions_m, Real tolerance_m);

}  // namespace vprsim::vpr
