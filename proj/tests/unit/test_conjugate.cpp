#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gammareg/conjugate.hpp"
#include "gammareg/envelope.hpp"
#include "verify/oracles.hpp"

using namespace gammareg;

namespace {

SlopeGrid slopes(std::vector<double> s) { return SlopeGrid(Grid1D(std::move(s))); }

double scale_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

}  // namespace

TEST(Conjugate, HalfSquare) {
  const SampledFn1D f = sample(make_uniform_grid(-1, 1, 20001), [](double x) { return x * x / 2; });
  EXPECT_NEAR(lf_conjugate_bruteforce(f, slopes({0.5, 0.6}))[0], 0.125, 1e-4);
  EXPECT_NEAR(lf_conjugate(f, slopes({0.5, 0.6}))[0], 0.125, 1e-4);
  const SampledFn1D c = lf_conjugate(f, slopes({-1, 0, 1}));
  EXPECT_NEAR(c[0], 0.5, 1e-4);
  EXPECT_NEAR(c[1], 0.0, 1e-4);
  EXPECT_NEAR(c[2], 0.5, 1e-4);
}

TEST(Conjugate, AbsoluteValue) {
  const SampledFn1D f = sample(make_uniform_grid(-1, 1, 201), [](double x) { return std::abs(x); });
  for (const auto& fn : {lf_conjugate_bruteforce, lf_conjugate}) {
    const SampledFn1D c = fn(f, slopes({0.5, 2.0}));
    EXPECT_EQ(c[0], 0.0);
    EXPECT_EQ(c[1], 1.0);
  }
}

TEST(Conjugate, AffineMaximizedAtEndpoint) {
  const double a = 0.7, b = -0.3;
  const SampledFn1D f = sample(Grid1D({-2, -0.5, 0.1, 3}), [&](double x) { return a * x + b; });
  const SlopeGrid s = slopes({-5, -1, 0.7, 2, 9});
  const SampledFn1D c = lf_conjugate(f, s);
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double want = std::max((s[j] - a) * -2.0, (s[j] - a) * 3.0) - b;
    EXPECT_NEAR(c[j], want, 1e-12 * (1 + std::abs(want)));
  }
}

TEST(Conjugate, MatchesBruteForceOnRandomFunctions) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = oracle::uniform_count(rng, 2, 300);
    const SampledFn1D f = oracle::random_function(rng, n);
    const SlopeGrid s(Grid1D(oracle::random_slopes(rng, oracle::uniform_count(rng, 2, 300), 800)));
    const SampledFn1D fast = lf_conjugate(f, s);
    const SampledFn1D slow = lf_conjugate_bruteforce(f, s);
    for (std::size_t j = 0; j < s.size(); ++j) {
      EXPECT_LE(std::abs(fast[j] - slow[j]), 1e-12 * std::max(1.0, std::abs(slow[j])));
    }
  }
}

TEST(Conjugate, IsDiscretelyConvex) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const SampledFn1D f = oracle::random_function(rng, 100);
    const SlopeGrid s(make_uniform_grid(-400, 400, 501));
    const SampledFn1D c = lf_conjugate(f, s);
    const double tol = 1e-12 + 1e-12 * scale_of(c.values());
    for (std::size_t j = 1; j + 1 < s.size(); ++j) {
      const double h0 = s[j] - s[j - 1], h1 = s[j + 1] - s[j];
      const double second = (c[j + 1] - c[j]) / h1 - (c[j] - c[j - 1]) / h0;
      EXPECT_GE(second, -tol);
    }
  }
}

TEST(Conjugate, OrderReversal) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> bump(0, 0.5);
  for (int trial = 0; trial < 50; ++trial) {
    const SampledFn1D f = oracle::random_function(rng, 80);
    std::vector<double> gv(f.values().begin(), f.values().end());
    for (double& v : gv) v += bump(rng);
    const SampledFn1D g(f.grid(), gv);
    const SlopeGrid s(make_uniform_grid(-200, 200, 101));
    const SampledFn1D fc = lf_conjugate(f, s), gc = lf_conjugate(g, s);
    for (std::size_t j = 0; j < s.size(); ++j) EXPECT_GE(fc[j], gc[j]);
  }
}

TEST(Conjugate, YoungFenchel) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const SampledFn1D f = oracle::random_function(rng, 60);
    const SlopeGrid s(Grid1D(oracle::random_slopes(rng, 60, 100)));
    const SampledFn1D c = lf_conjugate(f, s);
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (std::size_t j = 0; j < s.size(); ++j) {
        const double lhs = s[j] * f.x(i);
        const double rhs = f[i] + c[j];
        EXPECT_LE(lhs, rhs + 1e-12 * (1 + std::abs(lhs) + std::abs(rhs)));
      }
    }
  }
}

TEST(AutoSlopeGrid, CoversHullSlopes) {
  const SampledFn1D f(Grid1D({-1, 0, 1, 2}), {1, 0, 0.5, 3});
  const SlopeGrid s = auto_slope_grid(f);
  EXPECT_LT(s[0], -1.0);
  EXPECT_GT(s[s.size() - 1], 2.5);
  for (double want : {-1.0, 0.5, 2.5}) EXPECT_TRUE(s.grid().find(want).has_value()) << want;

  const SampledFn1D affine(Grid1D({0, 1}), {2, 2});
  EXPECT_GE(auto_slope_grid(affine).size(), 2u);
}

TEST(Biconjugate, FixesConvexInput) {
  const SampledFn1D f = sample(make_uniform_grid(-1, 1, 401), [](double x) { return x * x; });
  const SampledFn1D bi = biconjugate(f);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(bi[i], f[i], 1e-10);
}

TEST(Biconjugate, ConcaveBumpBecomesChord) {
  const SampledFn1D f(Grid1D({-1, 0, 1}), {0, 1, 0});
  const SampledFn1D bi = biconjugate(f);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(bi[i], 0.0, 1e-15);
}

TEST(Biconjugate, DoubleWellFlatBetweenWells) {
  const SampledFn1D f = sample(make_uniform_grid(-1.5, 1.5, 301), [](double x) {
    return (x * x - 1) * (x * x - 1);
  });
  ASSERT_TRUE(f.grid().find(1.0) && f.grid().find(-1.0));
  const SampledFn1D bi = biconjugate(f);
  EXPECT_NEAR(bi[*f.grid().find(0.0)], 0.0, 1e-12);
}

TEST(Biconjugate, AgreesWithEnvelopeAndIsIdempotent) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const SampledFn1D f = oracle::random_function(rng, oracle::uniform_count(rng, 2, 400));
    const SampledFn1D bi = biconjugate(f);
    const EnvelopeResult1D env = envelope_1d(f);
    const SampledFn1D bibi = biconjugate(bi);
    for (std::size_t i = 0; i < f.size(); ++i) {
      EXPECT_NEAR(bi[i], env.envelope[i], 1e-10);
      EXPECT_NEAR(bibi[i], bi[i], 1e-10);
      EXPECT_LE(bi[i], f[i]);
    }
  }
}
