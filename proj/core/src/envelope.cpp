#include "gammareg/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gammareg/errors.hpp"

namespace gammareg {

EnvelopeResult1D envelope_1d(const SampledFn1D& f) {
  const std::size_t n = f.size();
  std::vector<std::size_t> hull;
  hull.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull.back();
      // b stays only if it is strictly below the chord a -> i.
      const double lhs = (f[b] - f[a]) * (f.x(i) - f.x(a));
      const double rhs = (f[i] - f[a]) * (f.x(b) - f.x(a));
      if (lhs < rhs) break;
      hull.pop_back();
    }
    hull.push_back(i);
  }

  double scale = 0.0;
  for (double v : f.values()) scale = std::max(scale, std::abs(v));
  const double tol = 1e-12 + 1e-12 * scale;

  std::vector<double> env(n);
  std::vector<bool> contact(n, false);
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const std::size_t a = hull[k];
    const std::size_t b = hull[k + 1];
    env[a] = f[a];
    contact[a] = true;
    const double run = f.x(b) - f.x(a);
    for (std::size_t i = a + 1; i < b; ++i) {
      const double w = (f.x(i) - f.x(a)) / run;
      const double chord = f[a] + w * (f[b] - f[a]);
      if (chord >= f[i] - tol) {
        env[i] = f[i];
        contact[i] = true;
      } else {
        env[i] = chord;
      }
    }
  }
  env[n - 1] = f[n - 1];
  contact[n - 1] = true;

  std::vector<std::pair<std::size_t, std::size_t>> segments;
  std::size_t last = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (!contact[i]) continue;
    if (i > last + 1) segments.emplace_back(last, i);
    last = i;
  }
  return {SampledFn1D(f.grid(), std::move(env)), std::move(contact),
          std::move(segments)};
}

namespace {

constexpr double kInsideTol = 1e-9;

bool contains(const std::array<double, 3>& bary) {
  return bary[0] >= -kInsideTol && bary[1] >= -kInsideTol && bary[2] >= -kInsideTol;
}

}  // namespace

double EnvelopeResult2D::evaluate(double x, double y) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const Facet& facet : facets) {
    if (contains(facet.barycentric(points, x, y))) {
      best = std::max(best, facet.height(x, y));
    }
  }
  if (!std::isfinite(best)) {
    throw DomainError("envelope_2d: point outside the hull of the masked nodes");
  }
  return best;
}

EnvelopeResult2D envelope_2d(const SampledFn2D& f, const HullOptions& opts) {
  const Grid2D& grid = f.grid();
  std::vector<Point3> points(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    points[k] = {grid.x_of(k), grid.y_of(k), f[k]};
  }
  std::vector<Facet> facets = lower_hull_3d(points, opts);
  const double eps = hull_epsilon(points, opts);

  // Rasterize each facet over the grid nodes inside its bounding box.
  std::vector<double> env(f.size(), -std::numeric_limits<double>::infinity());
  const auto xs = grid.xs().nodes();
  const auto ys = grid.ys().nodes();
  for (const Facet& facet : facets) {
    double x0 = points[facet.v[0]].x, x1 = x0;
    double y0 = points[facet.v[0]].y, y1 = y0;
    for (std::size_t v : facet.v) {
      x0 = std::min(x0, points[v].x);
      x1 = std::max(x1, points[v].x);
      y0 = std::min(y0, points[v].y);
      y1 = std::max(y1, points[v].y);
    }
    const auto ix0 = std::lower_bound(xs.begin(), xs.end(), x0) - xs.begin();
    const auto ix1 = std::upper_bound(xs.begin(), xs.end(), x1) - xs.begin();
    const auto iy0 = std::lower_bound(ys.begin(), ys.end(), y0) - ys.begin();
    const auto iy1 = std::upper_bound(ys.begin(), ys.end(), y1) - ys.begin();
    for (auto iy = iy0; iy < iy1; ++iy) {
      for (auto ix = ix0; ix < ix1; ++ix) {
        const auto k = grid.masked_index(static_cast<std::size_t>(ix),
                                         static_cast<std::size_t>(iy));
        if (!k) continue;
        const double x = xs[ix], y = ys[iy];
        if (contains(facet.barycentric(points, x, y))) {
          env[*k] = std::max(env[*k], facet.height(x, y));
        }
      }
    }
  }

  std::vector<bool> contact(f.size(), false);
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (!std::isfinite(env[k])) {
      throw GeometryError("envelope_2d: masked node not covered by any lower facet");
    }
    if (env[k] >= f[k] - eps) {
      env[k] = f[k];
      contact[k] = true;
    }
  }
  EnvelopeResult2D result{SampledFn2D(grid, std::move(env)), std::move(contact),
                          std::move(points), std::move(facets), eps};
  return result;
}

}  // namespace gammareg
