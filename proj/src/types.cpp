#include "vprsim/types.hpp"

#include <stdexcept>

namespace vprsim {

Traverse::Traverse(std::string id, Matrix descriptors, Vector positions_m)
    : id_(std::move(id)), descriptors_(std::move(descriptors)), positions_m_(std::move(positions_m)) {
  if (descriptors_.cols() == 0) throw std::invalid_argument("Traverse: no frames");
  if (descriptors_.rows() < 1) throw std::invalid_argument("Traverse: descriptor dimension must be >= 1");
  if (positions_m_.size() != descriptors_.cols())
    throw std::invalid_argument("Traverse: one position per frame required");
  if (!descriptors_.allFinite()) throw std::invalid_argument("Traverse: non-finite descriptor value");
  if (!positions_m_.allFinite()) throw std::invalid_argument("Traverse: non-finite position");
  if (positions_m_[0] < 0.0) throw std::invalid_argument("Traverse: negative position");
  for (Index i = 1; i < positions_m_.size(); ++i) {
    if (positions_m_[i] < positions_m_[i - 1])
      throw std::invalid_argument("Traverse: positions must be non-decreasing");
  }
}

}  // namespace vprsim
