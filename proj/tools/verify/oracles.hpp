#pragma once

// Reference computations used only to check the library: brute force and
// closed forms, deliberately sharing no code path with gammareg::core.

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "gammareg/gridfn.hpp"
#include "gammareg/hull3d.hpp"

namespace gammareg::oracle {

// Largest convex minorant at node i as min over chords (j < i < k) of the
// chord value at x_i, capped at f_i. O(n^3).
std::vector<double> chord_envelope(const SampledFn1D& f);

struct Plane {
  std::array<std::size_t, 3> v{};
  std::array<double, 3> normal{};  // unit, normal[2] < 0
  double offset = 0.0;
};

// Every plane through three points (non-degenerate in (x, y)) that has all
// points on or above it within tol. O(n^4).
std::vector<Plane> supporting_lower_planes(std::span<const Point3> pts,
                                           double tol);

// max over supporting_lower_planes of the plane height at (x, y).
double envelope_at(std::span<const Plane> planes, double x, double y);

// Power family phi(t) = t^alpha with psi(x) = |x|^{1 + 1/alpha}:
// v(x) = |x|^{3 + 1/a} / ((2 + 1/a)(3 + 1/a)).
double power_v(double alpha, double x);
// Stationary point of v + t g on (0, 1/2): v'(x) = t.
double power_xstar(double alpha, double t);
// t x_t - v(x_t): gap at the origin while x_t < 1/2.
double power_gap(double alpha, double t);

// Random sampled function: n sorted distinct abscissae in [-1, 1] (jittered
// uniform so spacing stays bounded away from 0) and uniform values.
SampledFn1D random_function(std::mt19937_64& rng, std::size_t n);
// m sorted distinct slopes in [-range, range].
std::vector<double> random_slopes(std::mt19937_64& rng, std::size_t m,
                                  double range);
// Uniform integer in [lo, hi].
std::size_t uniform_count(std::mt19937_64& rng, std::size_t lo, std::size_t hi);
double uniform(std::mt19937_64& rng, double lo, double hi);

}  // namespace gammareg::oracle
