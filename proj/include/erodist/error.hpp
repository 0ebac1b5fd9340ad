#pragma once

#include <stdexcept>
#include <string>

namespace erodist {

/// Raised when input data violates a structural invariant (non-functorial
/// module, malformed file, non-nested lattices, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require_same_dim(std::size_t lhs, std::size_t rhs, const char* what) {
  if (lhs != rhs)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(lhs) + " vs " + std::to_string(rhs) + ")");
}

}  // namespace erodist
