#include "gammareg/conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gammareg {

namespace {

// Vertices of the strict lower hull of (x_i, f_i); x is sorted, so one
// monotone-chain pass suffices.
std::vector<std::size_t> hull_vertices(const SampledFn1D& f) {
  std::vector<std::size_t> hull;
  hull.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull.back();
      const double cross = (f.x(b) - f.x(a)) * (f[i] - f[a]) -
                           (f[b] - f[a]) * (f.x(i) - f.x(a));
      if (cross > 0.0) break;
      hull.pop_back();
    }
    hull.push_back(i);
  }
  return hull;
}

double edge_slope(const SampledFn1D& f, std::size_t a, std::size_t b) {
  return (f[b] - f[a]) / (f.x(b) - f.x(a));
}

}  // namespace

SlopeGrid auto_slope_grid(const SampledFn1D& f) {
  const auto hull = hull_vertices(f);
  std::vector<double> slopes;
  slopes.reserve(hull.size() + 1);
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const double s = edge_slope(f, hull[k], hull[k + 1]);
    if (slopes.empty() || s > slopes.back()) slopes.push_back(s);
  }
  const double span = slopes.back() - slopes.front();
  const double pad = std::max({1.0, span, std::abs(slopes.front()),
                               std::abs(slopes.back())});
  slopes.insert(slopes.begin(), slopes.front() - pad);
  slopes.push_back(slopes.back() + pad);
  return SlopeGrid(Grid1D(std::move(slopes)));
}

SampledFn1D lf_conjugate_bruteforce(const SampledFn1D& f, const SlopeGrid& s) {
  std::vector<double> out(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < f.size(); ++i) {
      best = std::max(best, s[j] * f.x(i) - f[i]);
    }
    out[j] = best;
  }
  return SampledFn1D(s.grid(), std::move(out));
}

SampledFn1D lf_conjugate(const SampledFn1D& f, const SlopeGrid& s) {
  const auto hull = hull_vertices(f);
  std::vector<double> out(s.size());
  std::size_t k = 0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    while (k + 1 < hull.size() && s[j] > edge_slope(f, hull[k], hull[k + 1])) {
      ++k;
    }
    out[j] = s[j] * f.x(hull[k]) - f[hull[k]];
  }
  return SampledFn1D(s.grid(), std::move(out));
}

SampledFn1D biconjugate(const SampledFn1D& f, const SlopeGrid& s) {
  // The dual samples (s_j, f*(s_j)) are themselves a sampled function, and
  // conjugating them at the primal nodes is the same merge scan.
  const SampledFn1D fstar = lf_conjugate(f, s);
  const SampledFn1D back = lf_conjugate(fstar, SlopeGrid(f.grid()));
  std::vector<double> out(back.values().begin(), back.values().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::min(out[i], f[i]);
  return SampledFn1D(f.grid(), std::move(out));
}

SampledFn1D biconjugate(const SampledFn1D& f) {
  return biconjugate(f, auto_slope_grid(f));
}

}  // namespace gammareg
