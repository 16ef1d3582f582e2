#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gammareg/construct.hpp"
#include "gammareg/envelope.hpp"
#include "gammareg/gridfn.hpp"

namespace gammareg {

// One measurement of the perturbation family at size t.
struct RatioSample {
  double t = 0.0;
  double gap0 = 0.0;     // f_t(0) - env(f_t)(0)
  double supdist = 0.0;  // max over nodes of f_t - env(f_t)
  double ratio = 0.0;    // gap0 / (t phi(t))
  double bound = 0.0;    // (t phi(t) - v(phi(t))) / (t phi(t)), no envelope involved
  double xstar = 0.0;    // smallest nonnegative node minimizing f_t
};

struct RatioCurve {
  PhiSpec spec;
  std::vector<RatioSample> samples;  // strictly decreasing t
  std::size_t n = 0;  // kit grid node count, kink nodes included
  double p = 0.0;
};

// Kit grid parameters for a curve; min_nodes is the number of grid nodes
// required in (0, phi(t_min)].
struct GridConfig {
  std::size_t n = 20001;
  double p = 2.0;
  std::size_t min_nodes = 32;
};

enum class Perturbation {
  kTent,  // v_t = v + t g
  kNone,  // control run: v_t = v
};

struct CurveOptions {
  GridConfig grid;
  Perturbation perturbation = Perturbation::kTent;
  unsigned threads = 1;  // 0 = hardware concurrency
};

double origin_gap(const SampledFn1D& f, const EnvelopeResult1D& env);
double sup_distance(const SampledFn1D& f, const EnvelopeResult1D& env);
double sup_distance(const SampledFn2D& f, const EnvelopeResult2D& env);

// Smallest odd kit-grid size whose graded grid puts `min_nodes` nodes in
// (0, scale].
std::size_t minimal_resolving_n(double scale, double p, std::size_t min_nodes);

// Throws ResolutionError (with the minimal n) unless the grid has at least
// cfg.min_nodes nodes in (0, scale].
void require_resolution(const Grid1D& grid, double scale, const GridConfig& cfg);

// ts must be positive, strictly decreasing and within (0, delta].
RatioCurve sharpness_curve(const PhiSpec& spec, std::span<const double> ts,
                           const CurveOptions& opts = {});
RatioCurve sharpness_curve(const CounterexampleKit& kit,
                           std::span<const double> ts,
                           const CurveOptions& opts = {});

// Minimum ratio over samples with t <= 10 t_min. Needs >= 3 samples.
double liminf_estimate(const RatioCurve& curve);

struct OepsReport {
  bool pass = false;
  bool trivial = false;     // supdist identically zero
  bool decreasing = false;  // supdist/t strictly decreasing as t decreases
  double threshold = 0.0;
  double final_value = 0.0;
  double exponent = 0.0;  // log-log slope of supdist/t against t
  std::vector<double> ts;
  std::vector<double> values;  // supdist / t
  std::string note;
};

OepsReport oeps_check(const RatioCurve& curve, double threshold = 0.25);

struct CrossSectionReport {
  bool pass = false;
  bool row_bound_holds = false;  // env2d(x,0) <= env1d(v_t)(x) + tol
  bool gap_bound_holds = false;  // gap2d >= gap1d - tol
  double t = 0.0;
  double tolerance = 0.0;
  double atol = 0.0;
  double gap2d = 0.0;
  double gap1d = 0.0;
  double max_row_excess = 0.0;  // max of env2d - env1d over the row
  // Exact discrete check: env2d on the row never exceeds the 1D envelope of
  // the row samples of u_t.
  double max_row_restriction_excess = 0.0;
  std::size_t row_nodes_in_flat = 0;
  std::vector<double> xs;
  std::vector<double> env2d;
  std::vector<double> env1d;
};

// Compares the 2D envelope of u_t along y = 0 with the 1D envelope of v_t.
// Requires a unit-disk grid with a y = 0 row holding at least 8 nodes in
// [0, x_t] (else ResolutionError).
CrossSectionReport cross_section_check(const CounterexampleKit& kit,
                                       const Grid2D& grid, double t,
                                       double tolerance = 0.02,
                                       const HullOptions& hull = {});

// Regions of the disk on which h = g(max(|x|, |y|)) is affine or zero.
enum class HRegion { kNorth, kSouth, kEast, kWest, kExterior, kExceptional };

// Exact classification: the exceptional set is the two diagonals of the
// square max(|x|,|y|) <= 1/2 and its boundary.
HRegion classify_h_region(double x, double y) noexcept;
// Euclidean distance to the exceptional segment set.
double distance_to_exceptional(double x, double y) noexcept;
// h(x, y) = g(max(|x|, |y|)).
double h_eval(double x, double y) noexcept;
// Total length of the exceptional segments: 4 + 2 sqrt(2).
double exceptional_length() noexcept;

struct ConvexRegionReport {
  bool pass = false;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double eps_band = 0.0;
  std::array<std::size_t, 6> region_counts{};
  std::size_t midpoint_checks = 0;
  std::size_t midpoint_failures = 0;
  std::size_t grid_checks = 0;
  std::size_t grid_failures = 0;
  // Triples reflected across a diagonal: h is concave there, so these fail.
  std::size_t straddle_checks = 0;
  std::size_t straddle_failures = 0;
  std::size_t band_count = 0;
  double band_fraction = 0.0;
  double expected_fraction = 0.0;  // 2 eps L / pi to first order
  double fraction_bound = 0.0;
};

ConvexRegionReport convex_region_report(const Grid2D& grid, std::size_t samples,
                                        std::uint64_t seed,
                                        double eps_band = 1e-3);

}  // namespace gammareg
