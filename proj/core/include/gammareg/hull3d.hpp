#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace gammareg {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Triangle of the lower convex hull. The plane is {p : normal . p = offset}
// with a unit outward normal (normal[2] < 0); input points satisfy
// normal . p <= offset + eps, i.e. they lie on or above the plane.
struct Facet {
  std::array<std::size_t, 3> v{};
  std::array<double, 3> normal{};
  double offset = 0.0;

  // Height of the facet plane above (x, y).
  double height(double x, double y) const noexcept {
    return (offset - normal[0] * x - normal[1] * y) / normal[2];
  }
  // Barycentric coordinates of (x, y) in the projected triangle.
  std::array<double, 3> barycentric(std::span<const Point3> pts, double x,
                                    double y) const noexcept;
};

struct HullOptions {
  // Orientation tolerance relative to the bounding-box scale of the input.
  double relative_eps = 1e-9;
};

// Scale-aware tolerance used by lower_hull_3d for this point set.
double hull_epsilon(std::span<const Point3> pts,
                    const HullOptions& opts = {});

// Downward-facing facets of the convex hull of pts. Facet vertex triples are
// rotated so the lowest index comes first, and facets are sorted, so output
// is canonical for a given input order. Throws GeometryError when fewer than
// 3 points are given or they are collinear in the (x, y) projection.
std::vector<Facet> lower_hull_3d(std::span<const Point3> pts,
                                 const HullOptions& opts = {});

}  // namespace gammareg
