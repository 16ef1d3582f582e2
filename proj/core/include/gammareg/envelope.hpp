#pragma once

#include <utility>
#include <vector>

#include "gammareg/gridfn.hpp"
#include "gammareg/hull3d.hpp"

namespace gammareg {

struct EnvelopeResult1D {
  SampledFn1D envelope;
  // Envelope touches f at node i (envelope[i] == f[i] exactly).
  std::vector<bool> contact;
  // Consecutive contact nodes (i, j) with j > i + 1: the envelope is affine
  // and strictly below f on the nodes between them.
  std::vector<std::pair<std::size_t, std::size_t>> segments;
};

// Lower convex hull of (x_i, f_i) by one monotone-chain sweep. Nodes between
// hull vertices take the chord value; a node whose chord value matches f to
// within 1e-12 (scaled) is snapped onto f and counted as contact.
EnvelopeResult1D envelope_1d(const SampledFn1D& f);

struct EnvelopeResult2D {
  SampledFn2D envelope;
  std::vector<bool> contact;
  // Lower hull of the lifted masked nodes; point k is masked node k.
  std::vector<Point3> points;
  std::vector<Facet> facets;
  double eps = 0.0;

  // Envelope at an arbitrary (x, y) inside the convex hull of the masked
  // nodes: the largest facet plane among facets whose projection contains it.
  double evaluate(double x, double y) const;
};

// Convex envelope of the masked samples over the convex hull of the masked
// nodes, evaluated at every masked node from the lower hull facets.
EnvelopeResult2D envelope_2d(const SampledFn2D& f, const HullOptions& opts = {});

}  // namespace gammareg
