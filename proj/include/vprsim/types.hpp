#pragma once

#include <Eigen/Core>

#include <string>
#include <utility>

namespace vprsim {

using Real = double;
using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// A descriptor is a fixed-dimension real feature vector summarizing one
// image. All descriptors in a dataset share the same dimension.
using Descriptor = Vector;

// Ordered frames of a single traverse: descriptors stored column-wise
// (dim x frame_count) with one along-track position per column. Positions
// are non-negative and non-decreasing; all values finite. Immutable after
// construction, safe to share across trial workers.
class Traverse {
 public:
  Traverse(std::string id, Matrix descriptors, Vector positions_m);

  const std::string& id() const { return id_; }
  Index frame_count() const { return descriptors_.cols(); }
  Index dim() const { return descriptors_.rows(); }

  Real position_m(Index frame) const { return positions_m_[frame]; }
  auto descriptor(Index frame) const { return descriptors_.col(frame); }

  const Matrix& descriptors() const { return descriptors_; }
  const Vector& positions_m() const { return positions_m_; }

 private:
  std::string id_;
  Matrix descriptors_;
  Vector positions_m_;
};

struct MatchResult {
  Index ref_index = -1;
  Real distance = 0.0;
  Real estimate_position_m = 0.0;

  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

}  // namespace vprsim
