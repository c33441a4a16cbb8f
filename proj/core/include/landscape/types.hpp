#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace landscape {

// A model is a point in the N-dimensional search space.
using Model = std::vector<double>;

inline bool all_finite(const Model& m) {
  for (double x : m) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

// Per-dimension box defining the sampled region of model space.
struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;

  Bounds() = default;
  Bounds(std::vector<double> lo, std::vector<double> hi)
      : lower(std::move(lo)), upper(std::move(hi)) {
    validate();
  }

  // Same [lo, hi] interval in every dimension.
  static Bounds cube(std::size_t dim, double lo, double hi) {
    return Bounds(std::vector<double>(dim, lo), std::vector<double>(dim, hi));
  }

  std::size_t dim() const { return lower.size(); }
  double width(std::size_t d) const { return upper[d] - lower[d]; }

  bool contains(const Model& m) const {
    if (m.size() != dim()) return false;
    for (std::size_t d = 0; d < m.size(); ++d) {
      if (m[d] < lower[d] || m[d] > upper[d]) return false;
    }
    return true;
  }

  void validate() const {
    if (lower.empty() || lower.size() != upper.size()) {
      throw std::invalid_argument("bounds: lower/upper must be non-empty and equal length");
    }
    for (std::size_t d = 0; d < lower.size(); ++d) {
      if (!(lower[d] < upper[d])) {
        throw std::invalid_argument("bounds: lower[" + std::to_string(d) +
                                    "] must be < upper[" + std::to_string(d) + "]");
      }
    }
  }
};

}  // namespace landscape
