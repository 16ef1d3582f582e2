#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gammareg/envelope.hpp"
#include "gammareg/errors.hpp"
#include "verify/oracles.hpp"

using namespace gammareg;

TEST(Envelope1D, ConvexInputIsFixed) {
  for (const Grid1D& g : {make_uniform_grid(-1, 1, 101), make_graded_grid(-1, 1, 101, 3)}) {
    const SampledFn1D f = sample(g, [](double x) { return x * x; });
    const EnvelopeResult1D env = envelope_1d(f);
    for (std::size_t i = 0; i < f.size(); ++i) {
      EXPECT_EQ(env.envelope[i], f[i]);
      EXPECT_TRUE(env.contact[i]);
    }
    EXPECT_TRUE(env.segments.empty());
  }
}

TEST(Envelope1D, ChordUnderBump) {
  const SampledFn1D f(Grid1D({-1, 0, 1}), {0, 1, 0});
  const EnvelopeResult1D env = envelope_1d(f);
  EXPECT_EQ(env.envelope[0], 0.0);
  EXPECT_EQ(env.envelope[1], 0.0);
  EXPECT_EQ(env.envelope[2], 0.0);
  EXPECT_EQ(env.contact, (std::vector<bool>{true, false, true}));
  ASSERT_EQ(env.segments.size(), 1u);
  EXPECT_EQ(env.segments[0], (std::pair<std::size_t, std::size_t>{0, 2}));
}

TEST(Envelope1D, DoubleWell) {
  const SampledFn1D f = sample(make_uniform_grid(-1.5, 1.5, 61), [](double x) {
    return (x * x - 1) * (x * x - 1);
  });
  const EnvelopeResult1D env = envelope_1d(f);
  const std::size_t zero = *f.grid().find(0.0);
  EXPECT_EQ(env.envelope[zero], 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_EQ(env.contact[i], std::abs(f.x(i)) >= 1.0) << f.x(i);
  }
}

TEST(Envelope1D, MatchesChordOracleOnSmallInstances) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = oracle::uniform_count(rng, 2, 12);
    const SampledFn1D f = oracle::random_function(rng, n);
    const std::vector<double> ref = oracle::chord_envelope(f);
    const EnvelopeResult1D env = envelope_1d(f);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(env.envelope[i], ref[i], 1e-15);
  }
}

TEST(Envelope1D, InvariantsAndIdempotence) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const SampledFn1D f = oracle::random_function(rng, oracle::uniform_count(rng, 2, 500));
    const EnvelopeResult1D env = envelope_1d(f);
    double scale = 0.0;
    for (double v : f.values()) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < f.size(); ++i) {
      EXPECT_LE(env.envelope[i], f[i]);
      if (env.contact[i]) EXPECT_EQ(env.envelope[i], f[i]);
    }
    for (std::size_t i = 1; i + 1 < f.size(); ++i) {
      const double h0 = f.x(i) - f.x(i - 1), h1 = f.x(i + 1) - f.x(i);
      const double second = (env.envelope[i + 1] - env.envelope[i]) / h1 -
                            (env.envelope[i] - env.envelope[i - 1]) / h0;
      EXPECT_GE(second * std::min(h0, h1), -1e-12 * (1 + scale));
    }
    for (const auto& [a, b] : env.segments) {
      EXPECT_TRUE(env.contact[a] && env.contact[b]);
      for (std::size_t i = a + 1; i < b; ++i) EXPECT_LT(env.envelope[i], f[i]);
    }
    const EnvelopeResult1D again = envelope_1d(env.envelope);
    EXPECT_TRUE(std::all_of(again.contact.begin(), again.contact.end(), [](bool c) { return c; }));
  }
}

TEST(LowerHull3D, BumpAboveSquare) {
  const std::vector<Point3> pts = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0.5, 0.5, 1}};
  const std::vector<Facet> facets = lower_hull_3d(pts);
  ASSERT_EQ(facets.size(), 2u);
  for (const Facet& f : facets) {
    EXPECT_TRUE(std::find(f.v.begin(), f.v.end(), 4u) == f.v.end());
    EXPECT_NEAR(f.height(0.5, 0.5), 0.0, 1e-15);
  }
}

TEST(LowerHull3D, PitUsesCenter) {
  const std::vector<Point3> pts = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0.5, 0.5, -1}};
  const std::vector<Facet> facets = lower_hull_3d(pts);
  ASSERT_EQ(facets.size(), 4u);
  for (const Facet& f : facets) {
    EXPECT_TRUE(std::find(f.v.begin(), f.v.end(), 4u) != f.v.end());
    EXPECT_LT(f.normal[2], 0.0);
  }
}

TEST(LowerHull3D, ParaboloidMatchesPlaneEnumeration) {
  std::vector<Point3> pts;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const double x = -1 + 0.5 * i, y = -1 + 0.5 * j;
      pts.push_back({x, y, x * x + y * y});
    }
  }
  const std::vector<Facet> facets = lower_hull_3d(pts);
  const double eps = hull_epsilon(pts);
  const std::vector<oracle::Plane> planes = oracle::supporting_lower_planes(pts, eps);
  // Every sample lies on some facet and on or above all of them.
  for (std::size_t k = 0; k < pts.size(); ++k) {
    double best = -INFINITY;
    for (const Facet& f : facets) {
      const double h = f.height(pts[k].x, pts[k].y);
      EXPECT_LE(h, pts[k].z + 1e-12);
      best = std::max(best, h);
    }
    EXPECT_NEAR(best, pts[k].z, 1e-12);
    EXPECT_NEAR(oracle::envelope_at(planes, pts[k].x, pts[k].y), pts[k].z, 1e-12);
  }
  for (std::size_t corner : {0u, 4u, 20u, 24u}) {
    bool used = false;
    for (const Facet& f : facets) used = used || std::find(f.v.begin(), f.v.end(), corner) != f.v.end();
    EXPECT_TRUE(used) << corner;
  }
}

TEST(LowerHull3D, RandomCloudsMatchPlaneEnumeration) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = oracle::uniform_count(rng, 3, 10);
    std::vector<Point3> pts(n);
    for (auto& p : pts) p = {oracle::uniform(rng, -1, 1), oracle::uniform(rng, -1, 1), oracle::uniform(rng, 0, 2)};
    const std::vector<Facet> facets = lower_hull_3d(pts);
    const double eps = hull_epsilon(pts);
    const auto planes = oracle::supporting_lower_planes(pts, eps);
    EXPECT_EQ(facets.size(), planes.size());
    for (const Facet& f : facets) {
      for (const Point3& p : pts) {
        EXPECT_LE(f.normal[0] * p.x + f.normal[1] * p.y + f.normal[2] * p.z, f.offset + eps);
      }
    }
    for (const auto& pl : planes) {
      const bool found = std::any_of(facets.begin(), facets.end(), [&](const Facet& f) {
        return std::abs(f.offset - pl.offset) < 1e-9 && std::abs(f.normal[0] - pl.normal[0]) < 1e-9 &&
               std::abs(f.normal[1] - pl.normal[1]) < 1e-9;
      });
      EXPECT_TRUE(found);
    }
  }
}

TEST(LowerHull3D, DegenerateInputs) {
  const std::vector<Point3> line = {{0, 0, 0}, {1, 1, 5}, {2, 2, 1}, {3, 3, 0}};
  EXPECT_THROW(lower_hull_3d(line), GeometryError);
  const std::vector<Point3> two = {{0, 0, 0}, {1, 0, 0}};
  EXPECT_THROW(lower_hull_3d(two), GeometryError);
  const std::vector<Point3> flat = {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}, {0.3, 0.6, 1}};
  // Coplanar input: the interior point is not a vertex of the planar hull.
  const std::vector<Facet> facets = lower_hull_3d(flat);
  EXPECT_EQ(facets.size(), 2u);
  for (const Facet& f : facets) EXPECT_NEAR(f.height(0.2, 0.2), 1.0, 1e-14);
}

TEST(LowerHull3D, CanonicalOutput) {
  std::mt19937_64 rng(15);
  std::vector<Point3> pts(40);
  for (auto& p : pts) p = {oracle::uniform(rng, -1, 1), oracle::uniform(rng, -1, 1), oracle::uniform(rng, 0, 1)};
  const auto a = lower_hull_3d(pts), b = lower_hull_3d(pts);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].v, b[i].v);
    EXPECT_LT(a[i].v[0], a[i].v[1]);
    EXPECT_LT(a[i].v[0], a[i].v[2]);
    if (i > 0) EXPECT_LT(a[i - 1].v, a[i].v);
  }
}

TEST(Envelope2D, ParaboloidUnderCutIsSecondOrder) {
  auto defect = [](std::size_t n) {
    const SampledFn2D f = sample(make_disk_grid(n), [](double x, double y) { return x * x + y * y; });
    const EnvelopeResult2D env = envelope_2d(f);
    double worst = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
      EXPECT_LE(env.envelope[k], f[k]);
      worst = std::max(worst, f[k] - env.envelope[k]);
    }
    EXPECT_LE(worst, 5e-3);
    // At cell centres the piecewise-linear hull misses the paraboloid by h^2/2.
    const double h = 2.0 / static_cast<double>(n - 1);
    double cell = 0.0;
    for (double c : {0.5 * h, 1.5 * h, -2.5 * h}) {
      cell = std::max(cell, std::abs(env.evaluate(c, c) - 2 * c * c));
    }
    return cell;
  };
  const double coarse = defect(33), fine = defect(65);
  EXPECT_GT(coarse, 0.0);
  EXPECT_NEAR(coarse / fine, 4.0, 0.5);
}

TEST(Envelope2D, ConvexGridDataAllContact) {
  const SampledFn2D f = sample(make_disk_grid(65), [](double x, double y) { return x * x + y * y; });
  const EnvelopeResult2D env = envelope_2d(f);
  EXPECT_TRUE(std::all_of(env.contact.begin(), env.contact.end(), [](bool c) { return c; }));
}

TEST(Envelope2D, ConcaveCapDeterminedByBoundary) {
  const Grid2D g = make_disk_grid(65);
  const SampledFn2D f = sample(g, [](double x, double y) { return 1 - x * x - y * y; });
  const EnvelopeResult2D env = envelope_2d(f);
  // Brute force over the rim nodes: the envelope at the origin is the best
  // affine interpolant of rim values, bounded by their minimum.
  double rim_min = INFINITY;
  for (std::size_t k = 0; k < g.masked_count(); ++k) {
    const double r = std::hypot(g.x_of(k), g.y_of(k));
    if (r > 0.95) rim_min = std::min(rim_min, f[k]);
  }
  const std::size_t origin = *g.masked_index(32, 32);
  EXPECT_NEAR(env.envelope[origin], rim_min, 0.01);
  EXPECT_LE(env.envelope[origin], 0.0 + 1e-12);
  EXPECT_FALSE(env.contact[origin]);
}

TEST(Envelope2D, SpikeIsCutOff) {
  const Grid2D g = make_disk_grid(33);
  const std::size_t spike = *g.masked_index(10, 20);
  std::vector<double> vals(g.masked_count());
  for (std::size_t k = 0; k < vals.size(); ++k) vals[k] = 0.3 * g.x_of(k) - 0.2 * g.y_of(k) + 1;
  vals[spike] += 2.0;
  const SampledFn2D f(g, vals);
  const EnvelopeResult2D env = envelope_2d(f);
  for (std::size_t k = 0; k < vals.size(); ++k) {
    EXPECT_NEAR(env.envelope[k], 0.3 * g.x_of(k) - 0.2 * g.y_of(k) + 1, 1e-12);
    EXPECT_EQ(env.contact[k], k != spike);
  }
}

TEST(Envelope2D, MidpointConvexAlongGridLines) {
  std::mt19937_64 rng(16);
  const Grid2D g = make_disk_grid(41);
  const SampledFn2D f = sample(g, [&](double, double) { return oracle::uniform(rng, 0, 1); });
  const EnvelopeResult2D env = envelope_2d(f);
  const int dirs[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
  for (std::size_t k = 0; k < g.masked_count(); ++k) {
    EXPECT_LE(env.envelope[k], f[k]);
    const auto [ix, iy] = g.cell(k);
    for (const auto& d : dirs) {
      const long ax = static_cast<long>(ix) - d[0], ay = static_cast<long>(iy) - d[1];
      const long bx = static_cast<long>(ix) + d[0], by = static_cast<long>(iy) + d[1];
      if (ax < 0 || ay < 0 || bx >= 41 || by >= 41 || ay >= 41 || by < 0) continue;
      const auto a = g.masked_index(ax, ay), b = g.masked_index(bx, by);
      if (!a || !b) continue;
      EXPECT_LE(env.envelope[k], 0.5 * (env.envelope[*a] + env.envelope[*b]) + 1e-9);
    }
  }
}

TEST(Envelope2D, RowRestrictionIsConvexMinorant) {
  std::mt19937_64 rng(17);
  const Grid2D g = make_disk_grid(33);
  const SampledFn2D f = sample(g, [&](double x, double y) {
    return x * x + y * y + 0.2 * oracle::uniform(rng, 0, 1);
  });
  const EnvelopeResult2D env = envelope_2d(f);
  std::vector<double> xs, row_f, row_env;
  for (std::size_t ix = 0; ix < 33; ++ix) {
    if (const auto k = g.masked_index(ix, 16)) {
      xs.push_back(g.x_of(*k));
      row_f.push_back(f[*k]);
      row_env.push_back(env.envelope[*k]);
    }
  }
  const EnvelopeResult1D row = envelope_1d(SampledFn1D(Grid1D(xs), row_f));
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_LE(row_env[i], row.envelope[i] + 1e-9);
}
