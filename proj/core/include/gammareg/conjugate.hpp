#pragma once

#include "gammareg/gridfn.hpp"

namespace gammareg {

// Dual variables for the discrete Legendre-Fenchel transform.
class SlopeGrid {
 public:
  explicit SlopeGrid(Grid1D slopes) : slopes_(std::move(slopes)) {}

  const Grid1D& grid() const noexcept { return slopes_; }
  std::size_t size() const noexcept { return slopes_.size(); }
  double operator[](std::size_t j) const noexcept { return slopes_[j]; }

 private:
  Grid1D slopes_;
};

// Slopes of every edge of the lower convex hull of (x_i, f_i), padded by one
// slope below the first and one above the last so each end vertex has a
// supporting line of its own. With these slopes the biconjugate reproduces
// the convex envelope exactly on the nodes.
SlopeGrid auto_slope_grid(const SampledFn1D& f);

// f*(s_j) = max_i (s_j x_i - f_i), by direct O(n m) enumeration.
SampledFn1D lf_conjugate_bruteforce(const SampledFn1D& f, const SlopeGrid& s);

// Same values in O(n + m): lower hull of the samples, then a merge scan in
// which the maximizing vertex only moves right as s increases. Ties go to the
// smaller abscissa.
SampledFn1D lf_conjugate(const SampledFn1D& f, const SlopeGrid& s);

// (f*)* on the nodes of f: max_j (s_j x_i - f*(s_j)), clamped to f.
SampledFn1D biconjugate(const SampledFn1D& f, const SlopeGrid& s);
SampledFn1D biconjugate(const SampledFn1D& f);

}  // namespace gammareg
