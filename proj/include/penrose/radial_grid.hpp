#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "penrose/errors.hpp"

namespace penrose {

enum class Refinement { Uniform, Geometric };

inline std::string_view to_string(Refinement r) {
  return r == Refinement::Uniform ? "uniform" : "geometric";
}

/// Radial nodes r_i = origin + offsets[i], offsets[0] = 0.
///
/// Nodes are kept as offsets from the inner radius so that geometric
/// clustering toward r_0 can resolve separations far below the spacing of
/// doubles near r_0 (the Jang cylinder needs r - r_h ~ 1e-18).
class RadialGrid {
 public:
  RadialGrid() = default;
  RadialGrid(double origin, std::vector<double> offsets, Refinement refinement)
      : origin_(origin), offsets_(std::move(offsets)), refinement_(refinement) {
    validate();
  }

  static RadialGrid uniform(double r0, double r_max, std::size_t intervals) {
    require(intervals >= 1, ErrorKind::InvalidInput, "grid needs at least one interval");
    std::vector<double> x(intervals + 1);
    const double span = r_max - r0;
    for (std::size_t i = 0; i <= intervals; ++i)
      x[i] = span * static_cast<double>(i) / static_cast<double>(intervals);
    x.back() = span;
    return RadialGrid(r0, std::move(x), Refinement::Uniform);
  }

  /// Node 0 at r0, then offsets first_offset * q^(i-1) up to r_max - r0.
  static RadialGrid geometric(double r0, double r_max, std::size_t intervals,
                              double first_offset) {
    require(intervals >= 2, ErrorKind::InvalidInput, "geometric grid needs two intervals");
    const double span = r_max - r0;
    require(first_offset > 0 && first_offset < span, ErrorKind::InvalidInput,
            "geometric grid: first offset out of range");
    const double log_ratio = std::log(span / first_offset) / static_cast<double>(intervals - 1);
    std::vector<double> x(intervals + 1, 0.0);
    for (std::size_t i = 1; i <= intervals; ++i)
      x[i] = first_offset * std::exp(log_ratio * static_cast<double>(i - 1));
    x.back() = span;
    return RadialGrid(r0, std::move(x), Refinement::Geometric);
  }

  std::size_t size() const { return offsets_.size(); }
  /// Number of intervals N (nodes r_0..r_N).
  std::size_t intervals() const { return offsets_.size() - 1; }
  double origin() const { return origin_; }
  double offset(std::size_t i) const { return offsets_[i]; }
  double r(std::size_t i) const { return origin_ + offsets_[i]; }
  double r_max() const { return origin_ + offsets_.back(); }
  const std::vector<double>& offsets() const { return offsets_; }
  Refinement refinement() const { return refinement_; }

  std::vector<double> radii() const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = r(i);
    return out;
  }

  /// Index of the node closest to radius r.
  std::size_t nearest(double radius) const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < size(); ++i)
      if (std::abs(r(i) - radius) < std::abs(r(best) - radius)) best = i;
    return best;
  }

  void validate() const {
    require(offsets_.size() >= 17, ErrorKind::InvalidInput, "grid needs N >= 16 intervals");
    require(offsets_.front() == 0.0, ErrorKind::InvalidInput, "first offset must be zero");
    require(origin_ > 0 && std::isfinite(origin_), ErrorKind::InvalidInput,
            "grid origin must be positive");
    for (std::size_t i = 1; i < offsets_.size(); ++i)
      require(offsets_[i] > offsets_[i - 1] && std::isfinite(offsets_[i]),
              ErrorKind::InvalidInput, "grid nodes must be strictly increasing");
    require(r_max() / origin_ >= 10.0, ErrorKind::InvalidInput, "r_max / r_0 must be at least 10");
  }

 private:
  double origin_ = 1.0;
  std::vector<double> offsets_;
  Refinement refinement_ = Refinement::Uniform;
};

}  // namespace penrose
