#include "gammareg/analysis.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "gammareg/errors.hpp"
#include "gammareg/parallel.hpp"

namespace gammareg {

double origin_gap(const SampledFn1D& f, const EnvelopeResult1D& env) {
  const auto zero = f.grid().find(0.0);
  if (!zero) throw DomainError("origin_gap: 0 is not a grid node");
  if (env.envelope.grid() != f.grid()) {
    throw DomainError("origin_gap: envelope grid differs from f");
  }
  return std::max(0.0, f[*zero] - env.envelope[*zero]);
}

double sup_distance(const SampledFn1D& f, const EnvelopeResult1D& env) {
  if (env.envelope.size() != f.size()) throw SizeError("sup_distance: grid mismatch");
  double best = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    best = std::max(best, f[i] - env.envelope[i]);
  }
  return best;
}

double sup_distance(const SampledFn2D& f, const EnvelopeResult2D& env) {
  if (env.envelope.size() != f.size()) throw SizeError("sup_distance: grid mismatch");
  double best = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    best = std::max(best, f[k] - env.envelope[k]);
  }
  return best;
}

namespace {

std::size_t nodes_in(const Grid1D& grid, double lo_exclusive, double hi) {
  const auto nodes = grid.nodes();
  const auto first = std::upper_bound(nodes.begin(), nodes.end(), lo_exclusive);
  const auto last = std::upper_bound(nodes.begin(), nodes.end(), hi);
  return last > first ? static_cast<std::size_t>(last - first) : 0;
}

}  // namespace

std::size_t minimal_resolving_n(double scale, double p, std::size_t min_nodes) {
  if (!(scale > 0.0)) throw DomainError("resolution scale must be > 0");
  const double root = std::pow(std::min(scale, 1.0), 1.0 / p);
  auto count = [&](std::size_t half) {
    std::size_t c = 0;
    for (std::size_t k = 1; k <= half; ++k) {
      if (std::pow(static_cast<double>(k) / static_cast<double>(half), p) > scale) break;
      ++c;
    }
    return c;
  };
  auto half = static_cast<std::size_t>(
      std::ceil(static_cast<double>(min_nodes) / root));
  half = std::max<std::size_t>(half, 1);
  while (count(half) < min_nodes) ++half;
  return 2 * half + 1;
}

void require_resolution(const Grid1D& grid, double scale, const GridConfig& cfg) {
  const std::size_t have = nodes_in(grid, 0.0, scale);
  if (have >= cfg.min_nodes) return;
  const std::size_t n = minimal_resolving_n(scale, cfg.p, cfg.min_nodes);
  std::ostringstream msg;
  msg << "grid under-resolves scale " << scale << ": " << have
      << " nodes in (0, scale], need " << cfg.min_nodes << "; use n >= " << n
      << " at grading p = " << cfg.p;
  throw ResolutionError(msg.str(), n);
}

RatioCurve sharpness_curve(const PhiSpec& spec, std::span<const double> ts,
                           const CurveOptions& opts) {
  if (ts.empty()) throw SizeError("sharpness_curve: no t values");
  // Check the resolution before paying for the kit.
  const Grid1D grid = make_kit_grid(opts.grid.n, opts.grid.p);
  const double t_min = *std::min_element(ts.begin(), ts.end());
  if (t_min > 0.0 && t_min <= spec.delta()) {
    require_resolution(grid, phi_eval(spec, t_min), opts.grid);
  }
  return sharpness_curve(build_v(spec, grid), ts, opts);
}

RatioCurve sharpness_curve(const CounterexampleKit& kit,
                           std::span<const double> ts, const CurveOptions& opts) {
  if (ts.empty()) throw SizeError("sharpness_curve: no t values");
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (!(ts[k] > 0.0 && ts[k] <= kit.delta)) {
      throw DomainError("sharpness_curve: t values must lie in (0, delta]");
    }
    if (k > 0 && !(ts[k] < ts[k - 1])) {
      throw DomainError("sharpness_curve: t values must be strictly decreasing");
    }
  }
  require_resolution(kit.grid(), phi_eval(kit.spec, ts.back()), opts.grid);

  RatioCurve curve{kit.spec, std::vector<RatioSample>(ts.size()), kit.grid().size(),
                   opts.grid.p};
  const std::size_t z = kit.zero_index;
  parallel_for(ts.size(), opts.threads, [&](std::size_t k) {
    const double t = ts[k];
    const SampledFn1D vt =
        opts.perturbation == Perturbation::kTent ? perturb_1d(kit, t) : kit.v;
    const EnvelopeResult1D env = envelope_1d(vt);
    const double phi = phi_eval(kit.spec, t);
    const double scale = t * phi;

    RatioSample s;
    s.t = t;
    s.gap0 = origin_gap(vt, env);
    s.supdist = sup_distance(vt, env);
    s.ratio = s.gap0 / scale;
    s.bound = (scale - eval_pl(kit.v, phi)) / scale;
    std::size_t best = z;
    for (std::size_t i = z + 1; i < vt.size(); ++i) {
      if (vt[i] < vt[best]) best = i;
    }
    s.xstar = vt.x(best);
    curve.samples[k] = s;
  });
  return curve;
}

double liminf_estimate(const RatioCurve& curve) {
  if (curve.samples.size() < 3) throw SizeError("liminf_estimate needs >= 3 samples");
  double t_min = curve.samples.front().t;
  for (const auto& s : curve.samples) t_min = std::min(t_min, s.t);
  const double cutoff = 10.0 * t_min * (1.0 + 1e-12);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : curve.samples) {
    if (s.t <= cutoff) best = std::min(best, s.ratio);
  }
  return best;
}

OepsReport oeps_check(const RatioCurve& curve, double threshold) {
  OepsReport r;
  r.threshold = threshold;
  for (const auto& s : curve.samples) {
    r.ts.push_back(s.t);
    r.values.push_back(s.supdist / s.t);
  }
  if (r.ts.size() < 3) {
    r.note = "needs at least 3 samples";
    return r;
  }
  const double t_hi = *std::max_element(r.ts.begin(), r.ts.end());
  const double t_lo = *std::min_element(r.ts.begin(), r.ts.end());
  if (t_hi < 100.0 * t_lo * (1.0 - 1e-12)) {
    r.note = "samples must span at least 2 decades";
    return r;
  }
  r.final_value = r.values.back();

  double peak = 0.0;
  for (const auto& s : curve.samples) peak = std::max(peak, std::abs(s.supdist));
  if (peak == 0.0) {
    r.trivial = r.decreasing = r.pass = true;
    r.exponent = std::numeric_limits<double>::quiet_NaN();
    r.note = "supdist identically zero";
    return r;
  }

  r.decreasing = true;
  for (std::size_t k = 1; k < r.values.size(); ++k) {
    if (!(r.values[k] < r.values[k - 1])) r.decreasing = false;
  }

  // Least-squares slope of log(supdist/t) on log t.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  bool positive = true;
  for (std::size_t k = 0; k < r.ts.size(); ++k) {
    if (!(r.values[k] > 0.0)) {
      positive = false;
      continue;
    }
    const double lx = std::log(r.ts[k]);
    const double ly = std::log(r.values[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  const double dm = static_cast<double>(m);
  const double denom = dm * sxx - sx * sx;
  r.exponent = m >= 2 && denom != 0.0 ? (dm * sxy - sx * sy) / denom
                                      : std::numeric_limits<double>::quiet_NaN();
  if (!positive) r.note = "some supdist values are zero";
  r.pass = r.decreasing && positive && r.final_value < threshold;
  return r;
}

CrossSectionReport cross_section_check(const CounterexampleKit& kit,
                                       const Grid2D& grid, double t,
                                       double tolerance, const HullOptions& hull) {
  if (!(t >= 0.0)) throw DomainError("cross_section_check: t must be >= 0");
  const auto row = grid.ys().find(0.0);
  if (!row) throw DomainError("cross_section_check: grid has no y = 0 row");

  CrossSectionReport r;
  r.t = t;
  r.tolerance = tolerance;

  const SampledFn1D vt = t > 0.0 ? perturb_1d(kit, t) : kit.v;
  const EnvelopeResult1D env1 = envelope_1d(vt);
  const std::size_t z = kit.zero_index;

  if (t > 0.0) {
    std::size_t best = z;
    for (std::size_t i = z + 1; i < vt.size(); ++i) {
      if (vt[i] < vt[best]) best = i;
    }
    const double xstar = vt.x(best);
    // Closed interval [0, x_t]: the origin counts.
    r.row_nodes_in_flat = nodes_in(grid.xs(), std::nextafter(0.0, -1.0), xstar);
    if (r.row_nodes_in_flat < 8) {
      std::size_t d = static_cast<std::size_t>(std::ceil(14.0 / xstar));
      d = (d + 3) / 4 * 4;
      std::ostringstream msg;
      msg << "row y = 0 has " << r.row_nodes_in_flat << " nodes in [0, x_t = "
          << xstar << "], need 8; use a 2D grid with n >= " << d + 1;
      throw ResolutionError(msg.str(), d + 1);
    }
  }

  const Lift2D lift = build_2d(kit, grid, t);
  const EnvelopeResult2D env2 = envelope_2d(lift.u_t, hull);
  r.atol = env2.eps;

  std::vector<double> row_x, row_u, row_e2;
  for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
    const auto k = grid.masked_index(ix, *row);
    if (!k) continue;
    row_x.push_back(grid.xs()[ix]);
    row_u.push_back(lift.u_t[*k]);
    row_e2.push_back(env2.envelope[*k]);
  }
  const SampledFn1D row_fn(Grid1D(row_x), row_u);
  const EnvelopeResult1D row_env = envelope_1d(row_fn);

  r.row_bound_holds = true;
  r.max_row_excess = -std::numeric_limits<double>::infinity();
  r.max_row_restriction_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < row_x.size(); ++i) {
    const double e1 = eval_pl(env1.envelope, row_x[i]);
    r.xs.push_back(row_x[i]);
    r.env2d.push_back(row_e2[i]);
    r.env1d.push_back(e1);
    const double excess = row_e2[i] - e1;
    r.max_row_excess = std::max(r.max_row_excess, excess);
    r.max_row_restriction_excess =
        std::max(r.max_row_restriction_excess, row_e2[i] - row_env.envelope[i]);
    if (excess > tolerance * std::abs(e1) + r.atol) r.row_bound_holds = false;
  }

  const auto origin = grid.masked_index(*grid.xs().find(0.0), *row);
  r.gap2d = lift.u_t[*origin] - env2.envelope[*origin];
  r.gap1d = vt[z] - env1.envelope[z];
  r.gap_bound_holds = r.gap2d >= r.gap1d - tolerance * r.gap1d - r.atol;
  r.pass = r.row_bound_holds && r.gap_bound_holds &&
           r.max_row_restriction_excess <= r.atol;
  return r;
}

HRegion classify_h_region(double x, double y) noexcept {
  const double ax = std::abs(x), ay = std::abs(y);
  const double m = std::max(ax, ay);
  if (m > 0.5) return HRegion::kExterior;
  if (m == 0.5 || ax == ay) return HRegion::kExceptional;
  if (y > ax) return HRegion::kNorth;
  if (y < -ax) return HRegion::kSouth;
  if (x > ay) return HRegion::kEast;
  return HRegion::kWest;
}

namespace {

double segment_distance(double px, double py, double ax, double ay, double bx,
                        double by) {
  const double dx = bx - ax, dy = by - ay;
  double w = ((px - ax) * dx + (py - ay) * dy) / (dx * dx + dy * dy);
  w = std::clamp(w, 0.0, 1.0);
  return std::hypot(px - (ax + w * dx), py - (ay + w * dy));
}

// Portable uniform double in [0, 1) from the top 53 bits.
double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::pair<double, double> disk_point(std::mt19937_64& rng) {
  for (;;) {
    const double x = 2.0 * unit(rng) - 1.0;
    const double y = 2.0 * unit(rng) - 1.0;
    if (x * x + y * y <= 1.0) return {x, y};
  }
}

bool midpoint_convex(double ax, double ay, double bx, double by) {
  const double ha = h_eval(ax, ay), hb = h_eval(bx, by);
  const double hm = h_eval(0.5 * (ax + bx), 0.5 * (ay + by));
  return hm <= 0.5 * (ha + hb) + 4.0 * DBL_EPSILON * (1.0 + ha + hb);
}

}  // namespace

double distance_to_exceptional(double x, double y) noexcept {
  double d = std::min(segment_distance(x, y, -0.5, -0.5, 0.5, 0.5),
                      segment_distance(x, y, -0.5, 0.5, 0.5, -0.5));
  d = std::min(d, segment_distance(x, y, -0.5, -0.5, 0.5, -0.5));
  d = std::min(d, segment_distance(x, y, 0.5, -0.5, 0.5, 0.5));
  d = std::min(d, segment_distance(x, y, 0.5, 0.5, -0.5, 0.5));
  d = std::min(d, segment_distance(x, y, -0.5, 0.5, -0.5, -0.5));
  return d;
}

double h_eval(double x, double y) noexcept {
  return g_eval(std::max(std::abs(x), std::abs(y)));
}

double exceptional_length() noexcept { return 4.0 + 2.0 * std::numbers::sqrt2; }

ConvexRegionReport convex_region_report(const Grid2D& grid, std::size_t samples,
                                        std::uint64_t seed, double eps_band) {
  if (samples < 100) throw SizeError("convex_region_report needs >= 100 samples");
  if (!(eps_band > 0.0)) throw DomainError("eps_band must be > 0");
  ConvexRegionReport r;
  r.samples = samples;
  r.seed = seed;
  r.eps_band = eps_band;

  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto [x, y] = disk_point(rng);
    const HRegion region = classify_h_region(x, y);
    ++r.region_counts[static_cast<std::size_t>(region)];
    if (distance_to_exceptional(x, y) <= eps_band) ++r.band_count;
    if (region == HRegion::kExceptional) continue;

    double qx = x, qy = y;
    if (region == HRegion::kExterior) {
      // Stay within the Euclidean distance to the square so the whole segment
      // remains in the exterior; the disk is convex.
      const double dx = std::max(std::abs(x) - 0.5, 0.0);
      const double dy = std::max(std::abs(y) - 0.5, 0.0);
      const double reach = std::hypot(dx, dy);
      for (int tries = 0; tries < 64; ++tries) {
        const double ang = 2.0 * std::numbers::pi * unit(rng);
        const double rad = reach * unit(rng);
        const double cx = x + rad * std::cos(ang), cy = y + rad * std::sin(ang);
        if (cx * cx + cy * cy <= 1.0) {
          qx = cx;
          qy = cy;
          break;
        }
      }
    } else {
      // Triangles are convex: any partner in the same triangle will do.
      do {
        std::tie(qx, qy) = disk_point(rng);
      } while (classify_h_region(qx, qy) != region);

      // Reflect across the nearer diagonal: the midpoint lands on it, where
      // h is concave.
      ++r.straddle_checks;
      const bool main_diag = (x > 0) == (y > 0);
      const double rx = main_diag ? y : -y, ry = main_diag ? x : -x;
      if (!midpoint_convex(x, y, rx, ry)) ++r.straddle_failures;
    }
    ++r.midpoint_checks;
    if (!midpoint_convex(x, y, qx, qy)) ++r.midpoint_failures;
  }

  // Grid triples along rows, columns and both diagonals whose three nodes
  // share one open region.
  const std::array<std::pair<int, int>, 4> dirs{{{1, 0}, {0, 1}, {1, 1}, {1, -1}}};
  const auto nx = static_cast<long>(grid.nx()), ny = static_cast<long>(grid.ny());
  for (long iy = 0; iy < ny; ++iy) {
    for (long ix = 0; ix < nx; ++ix) {
      if (!grid.masked(static_cast<std::size_t>(ix), static_cast<std::size_t>(iy))) {
        continue;
      }
      const double bx = grid.xs()[ix], by = grid.ys()[iy];
      const HRegion region = classify_h_region(bx, by);
      if (region == HRegion::kExceptional) continue;
      for (auto [dx, dy] : dirs) {
        const long ax = ix - dx, ay = iy - dy, cx = ix + dx, cy = iy + dy;
        if (ax < 0 || cx >= nx || std::min(ay, cy) < 0 || std::max(ay, cy) >= ny) continue;
        if (!grid.masked(static_cast<std::size_t>(ax), static_cast<std::size_t>(ay)) ||
            !grid.masked(static_cast<std::size_t>(cx), static_cast<std::size_t>(cy))) {
          continue;
        }
        const double pax = grid.xs()[ax], pay = grid.ys()[ay];
        const double pcx = grid.xs()[cx], pcy = grid.ys()[cy];
        if (classify_h_region(pax, pay) != region ||
            classify_h_region(pcx, pcy) != region) {
          continue;
        }
        ++r.grid_checks;
        const double ha = h_eval(pax, pay), hc = h_eval(pcx, pcy);
        const double hb = h_eval(bx, by);
        if (hb > 0.5 * (ha + hc) + 4.0 * DBL_EPSILON * (1.0 + ha + hc)) ++r.grid_failures;
      }
    }
  }

  const double n = static_cast<double>(samples);
  r.band_fraction = static_cast<double>(r.band_count) / n;
  r.expected_fraction = 2.0 * eps_band * exceptional_length() / std::numbers::pi;
  const double sigma = std::sqrt(r.expected_fraction * (1.0 - r.expected_fraction) / n);
  r.fraction_bound = 1.25 * r.expected_fraction + 3.0 * sigma;
  r.pass = r.midpoint_failures == 0 && r.grid_failures == 0 &&
           r.band_fraction <= r.fraction_bound;
  return r;
}

}  // namespace gammareg
