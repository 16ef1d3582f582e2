#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gammareg/csv.hpp"
#include "gammareg/gridfn.hpp"

namespace gammareg {

// A modulus phi on [0, delta]: continuous, strictly increasing, phi(0) = 0.
// Either the power law t^alpha on [0, 1] or a piecewise-linear table.
class PhiSpec {
 public:
  enum class Family { kPower, kTable };

  static PhiSpec power(double alpha);
  // Table rows (t_k, phi_k); t_0 = 0 = phi_0 and both columns strictly
  // increasing. delta is the last abscissa.
  static PhiSpec table(std::vector<double> ts, std::vector<double> phis);

  // `power:ALPHA` or `table:PATH` (CSV with header `t,phi`).
  static PhiSpec parse(std::string_view text);

  Family family() const noexcept { return family_; }
  double alpha() const noexcept { return alpha_; }
  double delta() const noexcept { return delta_; }
  const std::vector<double>& table_t() const noexcept { return ts_; }
  const std::vector<double>& table_phi() const noexcept { return phis_; }
  std::string to_string() const;

 private:
  Family family_ = Family::kPower;
  double alpha_ = 1.0;
  double delta_ = 1.0;
  std::vector<double> ts_;
  std::vector<double> phis_;
  std::string source_;
};

double phi_eval(const PhiSpec& spec, double t);
// Closed form for the power family; bisection to 1e-14 for tables.
double phi_inverse(const PhiSpec& spec, double y);
// psi(x) = |x| * phi^{-1}(min(|x|, phi(delta))).
double psi_eval(const PhiSpec& spec, double x);
// Tent: 1/2 - |x| on |x| <= 1/2, zero elsewhere.
double g_eval(double x);

// Graded grid on [-1, 1] (see make_graded_grid) with the tent kinks +-1/2
// inserted as nodes.
Grid1D make_kit_grid(std::size_t n, double p = 2.0);

// v'' = psi, v(0) = v'(0) = 0, integrated on a symmetric grid.
struct CounterexampleKit {
  PhiSpec spec;
  SampledFn1D psi;
  SampledFn1D vprime;
  SampledFn1D v;
  double delta = 1.0;
  std::size_t zero_index = 0;

  const Grid1D& grid() const noexcept { return v.grid(); }
};

// Integrates psi twice on the nonnegative half by cumulative trapezoid and
// mirrors. The grid must be exactly antisymmetric, span [-1, 1] and contain
// 0 and +-1/2; otherwise DomainError.
CounterexampleKit build_v(const PhiSpec& spec, const Grid1D& grid);

// Columns x, psi, vprime, v.
CsvTable kit_table(const CounterexampleKit& kit);

// v_t = v + t g on the kit grid; t > 0.
SampledFn1D perturb_1d(const CounterexampleKit& kit, double t);

struct Lift2D {
  SampledFn2D u_t;
  SampledFn2D u;
  SampledFn2D h;
};

// u(x, y) = v(sqrt(x^2 + y^2)), h(x, y) = g(max(|x|, |y|)), u_t = u + t h.
// The grid mask must be the unit disk. t = 0 gives the unperturbed control.
Lift2D build_2d(const CounterexampleKit& kit, const Grid2D& grid, double t);

}  // namespace gammareg
