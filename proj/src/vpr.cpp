#include "vprsim/vpr.hpp"

#include <cmath>
#include <stdexcept>

namespace vprsim::vpr {

Matcher::Matcher(const Traverse& reference)
    : reference_(&reference), ref_sq_norms_(reference.descriptors().colwise().squaredNorm()) {}

std::vector<MatchResult> Matcher::match_batch(const Matrix& queries) const {
  const Traverse& ref = *reference_;
  if (queries.rows() != ref.dim())
    throw std::invalid_argument("match: query dimension does not match reference");
  if (!queries.allFinite()) throw std::invalid_argument("match: non-finite query value");

  // Squared distances via the norm expansion ||q||^2 + ||r||^2 - 2 q.r;
  // the q-norm term is constant per query and dropped for the argmin.
  Matrix gram = ref.descriptors().transpose() * queries;  // frame_count x n

  std::vector<MatchResult> results(static_cast<std::size_t>(queries.cols()));
  for (Index j = 0; j < queries.cols(); ++j) {
    Index best = 0;
    Real best_score = ref_sq_norms_[0] - 2.0 * gram(0, j);
    for (Index i = 1; i < ref.frame_count(); ++i) {
      const Real score = ref_sq_norms_[i] - 2.0 * gram(i, j);
      if (score < best_score) {
        best_score = score;
        best = i;
      }
    }
    // Recompute the winning distance directly so exact-copy queries report
    // exactly zero regardless of expansion rounding.
    const Real distance = (ref.descriptors().col(best) - queries.col(j)).norm();
    results[static_cast<std::size_t>(j)] = {best, distance, ref.position_m(best)};
  }
  return results;
}

MatchResult Matcher::match(const Descriptor& query) const {
  return match_batch(query)[0];
}

MatchResult match_query(const Descriptor& query, const Traverse& reference) {
  return Matcher(reference).match(query);
}

Real along_track_error(Real estimate_position_m, Real truth_position_m) {
  if (!std::isfinite(estimate_position_m) || !std::isfinite(truth_position_m))
    throw std::invalid_argument("along_track_error: non-finite position");
  return std::abs(estimate_position_m - truth_position_m);
}

Real recall_at_1(const Matcher& matcher, const Matrix& queries,
                 const Vector& truth_positions_m, Real tolerance_m) {
  if (queries.cols() != truth_positions_m.size())
    throw std::invalid_argument("recall_at_1: one truth position per query required");
  if (queries.cols() == 0) throw std::invalid_argument("recall_at_1: no queries");

  const auto matches = matcher.match_batch(queries);
  Index hits = 0;
  for (Index j = 0; j < queries.cols(); ++j) {
    const Real error = std::abs(matches[static_cast<std::size_t>(j)].estimate_position_m -
                                truth_positions_m[j]);
    if (error <= tolerance_m) ++hits;
  }
  return 100.0 * static_cast<Real>(hits) / static_cast<Real>(queries.cols());
}

}  // namespace vprsim::vpr
