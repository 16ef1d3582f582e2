#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "gammareg/construct.hpp"
#include "gammareg/errors.hpp"
#include "verify/oracles.hpp"

using namespace gammareg;

namespace {

PhiSpec sample_table() { return PhiSpec::table({0, 0.5, 1}, {0, 0.1, 0.4}); }

}  // namespace

TEST(PhiSpec, Validation) {
  EXPECT_THROW(PhiSpec::power(0), DomainError);
  EXPECT_THROW(PhiSpec::power(-1), DomainError);
  EXPECT_THROW(PhiSpec::power(NAN), DomainError);
  EXPECT_THROW(PhiSpec::table({0, 0.5, 1}, {0, 0.3, 0.2}), DomainError);
  EXPECT_THROW(PhiSpec::table({0, 0.5, 0.4}, {0, 0.1, 0.2}), DomainError);
  EXPECT_THROW(PhiSpec::table({0.1, 0.5}, {0, 0.1}), DomainError);
  EXPECT_THROW(PhiSpec::table({0, 0.5}, {0.1, 0.2}), DomainError);
  EXPECT_THROW(PhiSpec::table({0}, {0}), SizeError);
  EXPECT_EQ(sample_table().delta(), 1.0);
  EXPECT_EQ(PhiSpec::power(2).delta(), 1.0);
}

TEST(PhiSpec, Parse) {
  EXPECT_EQ(PhiSpec::parse("power:2").alpha(), 2.0);
  EXPECT_THROW(PhiSpec::parse("power:0"), DomainError);
  EXPECT_THROW(PhiSpec::parse("power:abc"), ParseError);
  EXPECT_THROW(PhiSpec::parse("cubic:1"), ParseError);
  EXPECT_THROW(PhiSpec::parse("power"), ParseError);
  EXPECT_THROW(PhiSpec::parse("table:/nonexistent/phi.csv"), ParseError);

  const auto path = std::filesystem::temp_directory_path() / "gammareg_phi_table.csv";
  {
    std::ofstream out(path);
    out << "t,phi\n0,0\n0.5,0.1\n1,0.4\n";
  }
  const PhiSpec spec = PhiSpec::parse("table:" + path.string());
  EXPECT_EQ(spec.family(), PhiSpec::Family::kTable);
  EXPECT_DOUBLE_EQ(phi_eval(spec, 0.25), 0.05);
  std::filesystem::remove(path);
}

TEST(Phi, EvalExamples) {
  EXPECT_EQ(phi_eval(PhiSpec::power(1), 0.25), 0.25);
  EXPECT_EQ(phi_eval(PhiSpec::power(2), 0.5), 0.25);
  EXPECT_DOUBLE_EQ(phi_eval(sample_table(), 0.25), 0.05);
  EXPECT_EQ(phi_eval(PhiSpec::power(0.5), 0.0), 0.0);
  EXPECT_THROW(phi_eval(PhiSpec::power(1), 1.5), DomainError);
  EXPECT_THROW(phi_eval(PhiSpec::power(1), -0.1), DomainError);
}

TEST(Phi, InverseExamples) {
  EXPECT_NEAR(phi_inverse(PhiSpec::power(2), 0.04), 0.2, 1e-15);
  EXPECT_EQ(phi_inverse(PhiSpec::power(1), 0.7), 0.7);
  EXPECT_NEAR(phi_inverse(sample_table(), 0.05), 0.25, 1e-14);
  EXPECT_THROW(phi_inverse(PhiSpec::power(1), 1.2), DomainError);
  EXPECT_THROW(phi_inverse(sample_table(), 0.5), DomainError);
}

TEST(Phi, InverseRoundTrip) {
  const PhiSpec table = sample_table();
  for (double t = 0.0; t <= 1.0; t += 0.01) {
    EXPECT_NEAR(phi_inverse(table, phi_eval(table, t)), t, 1e-13);
    EXPECT_NEAR(phi_inverse(PhiSpec::power(3), phi_eval(PhiSpec::power(3), t)), t, 1e-12);
  }
}

TEST(Psi, Examples) {
  EXPECT_DOUBLE_EQ(psi_eval(PhiSpec::power(1), 0.3), 0.09);
  EXPECT_DOUBLE_EQ(psi_eval(PhiSpec::power(1), -0.3), 0.09);
  EXPECT_EQ(psi_eval(PhiSpec::power(2), 0.0), 0.0);
  EXPECT_EQ(psi_eval(sample_table(), 0.0), 0.0);
  EXPECT_NEAR(psi_eval(PhiSpec::power(2), 0.09), 0.027, 1e-15);
  // Clamped above phi(delta): table phi(1) = 0.4, so psi(x) = |x| for |x| > 0.4.
  EXPECT_NEAR(psi_eval(sample_table(), 0.8), 0.8, 1e-13);
  EXPECT_GT(psi_eval(sample_table(), 0.01), 0.0);
}

TEST(Tent, Examples) {
  EXPECT_EQ(g_eval(0.0), 0.5);
  EXPECT_EQ(g_eval(0.5), 0.0);
  EXPECT_EQ(g_eval(-0.25), 0.25);
  EXPECT_EQ(g_eval(0.9), 0.0);
}

TEST(KitGrid, ContainsKinks) {
  const Grid1D g = make_kit_grid(4001, 2);
  EXPECT_TRUE(g.find(0.0) && g.find(0.5) && g.find(-0.5));
  EXPECT_EQ(g.front(), -1.0);
  EXPECT_EQ(g.back(), 1.0);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(g[i], -g[g.size() - 1 - i]);
}

TEST(BuildV, PowerOneClosedForm) {
  const CounterexampleKit kit = build_v(PhiSpec::power(1), make_kit_grid(4001, 2));
  EXPECT_NEAR(eval_pl(kit.v, 0.5), std::pow(0.5, 4) / 12, 1e-6);
  EXPECT_EQ(kit.v[kit.zero_index], 0.0);
  EXPECT_EQ(kit.vprime[kit.zero_index], 0.0);
  for (std::size_t i = 0; i < kit.v.size(); i += 97) {
    EXPECT_NEAR(kit.v[i], oracle::power_v(1, kit.v.x(i)), 2e-6);
  }
}

TEST(BuildV, PowerTwoClosedForm) {
  const CounterexampleKit kit = build_v(PhiSpec::power(2), make_kit_grid(4001, 2));
  EXPECT_NEAR(eval_pl(kit.v, 1.0), 1.0 / 8.75, 1e-5);
  EXPECT_EQ(kit.v[kit.zero_index], 0.0);
}

TEST(BuildV, TableSpec) {
  const CounterexampleKit kit = build_v(sample_table(), make_kit_grid(2001, 2));
  EXPECT_EQ(kit.v[kit.zero_index], 0.0);
  EXPECT_GT(eval_pl(kit.v, 1.0), 0.0);
}

TEST(BuildV, Invariants) {
  for (const PhiSpec& spec : {PhiSpec::power(1), PhiSpec::power(0.5), sample_table()}) {
    const CounterexampleKit kit = build_v(spec, make_kit_grid(1001, 3));
    const std::size_t n = kit.v.size();
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(kit.v[i], kit.v[n - 1 - i]);
    for (std::size_t i = kit.zero_index + 1; i < n; ++i) EXPECT_GT(kit.v[i], kit.v[i - 1]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = kit.v.x(i) - kit.v.x(i - 1), h1 = kit.v.x(i + 1) - kit.v.x(i);
      EXPECT_GE((kit.v[i + 1] - kit.v[i]) / h1 - (kit.v[i] - kit.v[i - 1]) / h0, 0.0);
    }
  }
}

TEST(BuildV, RejectsUnsuitableGrids) {
  EXPECT_THROW(build_v(PhiSpec::power(1), Grid1D({-1, -0.5, 0, 0.4, 1})), DomainError);
  EXPECT_THROW(build_v(PhiSpec::power(1), make_uniform_grid(-1, 1, 7)), DomainError);
  EXPECT_THROW(build_v(PhiSpec::power(1), make_uniform_grid(-0.9, 0.9, 5)), DomainError);
  EXPECT_NO_THROW(build_v(PhiSpec::power(1), make_uniform_grid(-1, 1, 9)));
}

TEST(BuildV, LittleOProperty) {
  // v(x) / (x phi^{-1}(x)) decreases to 0 along x = 2^-k.
  for (double alpha : {1.0, 2.0}) {
    const PhiSpec spec = PhiSpec::power(alpha);
    const CounterexampleKit kit = build_v(spec, make_kit_grid(20001, 3));
    double prev = INFINITY, last = 0.0;
    for (int k = 3; k <= 12; ++k) {
      const double x = std::ldexp(1.0, -k);
      const double r = eval_pl(kit.v, x) / (x * phi_inverse(spec, x));
      EXPECT_LT(r, prev) << k;
      prev = last = r;
    }
    EXPECT_LT(last, 0.25);
  }
}

TEST(KitTable, Columns) {
  const CounterexampleKit kit = build_v(PhiSpec::power(1), make_kit_grid(101, 2));
  const CsvTable t = kit_table(kit);
  EXPECT_EQ(t.header, (std::vector<std::string>{"x", "psi", "vprime", "v"}));
  EXPECT_EQ(t.rows.size(), kit.v.size());
}

TEST(Perturb1D, Examples) {
  const CounterexampleKit kit = build_v(PhiSpec::power(1), make_kit_grid(20001, 2));
  const SampledFn1D v01 = perturb_1d(kit, 0.1);
  EXPECT_DOUBLE_EQ(v01[kit.zero_index], 0.05);
  const std::size_t half = *kit.grid().find(0.5);
  EXPECT_EQ(v01[half], kit.v[half]);
  EXPECT_THROW(perturb_1d(kit, 0.0), DomainError);
  EXPECT_THROW(perturb_1d(kit, -1e-3), DomainError);

  const double t = 1e-3;
  const SampledFn1D vt = perturb_1d(kit, t);
  std::size_t best = kit.zero_index;
  for (std::size_t i = kit.zero_index; i < vt.size(); ++i) {
    if (vt[i] < vt[best]) best = i;
  }
  const double xt = oracle::power_xstar(1, t);
  EXPECT_NEAR(xt, std::cbrt(3 * t), 1e-15);
  EXPECT_NEAR(vt.x(best), 0.14422, 2e-4);
  EXPECT_NEAR(vt[best], oracle::power_v(1, xt) + t * (0.5 - xt), 1e-8);
}

TEST(Build2D, Examples) {
  const CounterexampleKit kit = build_v(PhiSpec::power(1), make_kit_grid(4001, 2));
  const Grid2D g = make_disk_grid(161);
  const Lift2D lift = build_2d(kit, g, 0.05);
  const std::size_t c = *g.masked_index(80, 80);
  EXPECT_EQ(lift.h[c], 0.5);
  const auto at = [&](double x, double y) {
    return *g.masked_index(*g.xs().find(x), *g.ys().find(y));
  };
  EXPECT_EQ(lift.h[at(0.5, 0.3)], 0.0);
  EXPECT_NEAR(lift.u[at(0.6, 0.8)], eval_pl(kit.v, 1.0), 1e-12);
  for (std::size_t k = 0; k < g.masked_count(); ++k) {
    EXPECT_DOUBLE_EQ(lift.u_t[k], lift.u[k] + 0.05 * lift.h[k]);
  }
}

TEST(Build2D, RowMatchesOneDimensionalFamily) {
  // Row y = 0 of a 161 grid has spacing 1/80; the kit grid holds those nodes
  // only approximately, so compare against interpolation of v_t.
  const CounterexampleKit kit = build_v(PhiSpec::power(1), make_uniform_grid(-1, 1, 161));
  const Grid2D g = make_disk_grid(161);
  const Lift2D lift = build_2d(kit, g, 0.05);
  const SampledFn1D vt = perturb_1d(kit, 0.05);
  for (std::size_t ix = 0; ix < 161; ++ix) {
    const auto k = g.masked_index(ix, 80);
    ASSERT_TRUE(k);
    EXPECT_EQ(lift.u_t[*k], vt[ix]);
  }
}

TEST(Build2D, Errors) {
  const CounterexampleKit kit = build_v(PhiSpec::power(1), make_kit_grid(101, 2));
  const Grid1D xs = make_uniform_grid(-1, 1, 5);
  const Grid2D square(xs, xs, std::vector<bool>(25, true));
  EXPECT_THROW(build_2d(kit, square, 0.1), DomainError);
  EXPECT_THROW(build_2d(kit, make_disk_grid(9), -0.1), DomainError);
  EXPECT_NO_THROW(build_2d(kit, make_disk_grid(9), 0.0));
}
