#include "gammareg/construct.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gammareg/errors.hpp"

namespace gammareg {

PhiSpec PhiSpec::power(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("power modulus needs a finite exponent alpha > 0");
  }
  PhiSpec spec;
  spec.family_ = Family::kPower;
  spec.alpha_ = alpha;
  spec.delta_ = 1.0;
  spec.source_ = "power:" + format_double(alpha);
  return spec;
}

PhiSpec PhiSpec::table(std::vector<double> ts, std::vector<double> phis) {
  if (ts.size() != phis.size()) throw SizeError("phi table columns differ in length");
  if (ts.size() < 2) throw SizeError("phi table needs at least 2 rows");
  if (ts[0] != 0.0 || phis[0] != 0.0) {
    throw DomainError("phi table must start at (0, 0)");
  }
  for (std::size_t k = 1; k < ts.size(); ++k) {
    if (!(ts[k] > ts[k - 1])) throw DomainError("phi table t must be strictly increasing");
    if (!(phis[k] > phis[k - 1])) {
      throw DomainError("phi table values must be strictly increasing");
    }
  }
  PhiSpec spec;
  spec.family_ = Family::kTable;
  spec.delta_ = ts.back();
  spec.ts_ = std::move(ts);
  spec.phis_ = std::move(phis);
  spec.source_ = "table";
  return spec;
}

PhiSpec PhiSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("phi spec must be 'power:ALPHA' or 'table:PATH'");
  }
  const std::string family(text.substr(0, colon));
  const std::string arg(text.substr(colon + 1));
  if (family == "power") {
    std::istringstream ss(arg);
    double alpha = 0.0;
    if (!(ss >> alpha) || !(ss >> std::ws).eof()) {
      throw ParseError("power exponent is not a number: '" + arg + "'");
    }
    return power(alpha);
  }
  if (family == "table") {
    std::ifstream in(arg);
    if (!in) throw ParseError("cannot open phi table '" + arg + "'");
    const CsvTable csv = read_csv(in, {"t", "phi"});
    PhiSpec spec = table(csv.column(0), csv.column(1));
    spec.source_ = "table:" + arg;
    return spec;
  }
  throw ParseError("unknown phi family '" + family + "'");
}

std::string PhiSpec::to_string() const { return source_; }

double phi_eval(const PhiSpec& spec, double t) {
  if (!(t >= 0.0 && t <= spec.delta())) {
    throw DomainError("phi evaluated outside [0, delta]");
  }
  if (t == 0.0) return 0.0;
  if (spec.family() == PhiSpec::Family::kPower) return std::pow(t, spec.alpha());
  const auto& ts = spec.table_t();
  const auto& ps = spec.table_phi();
  const auto it = std::upper_bound(ts.begin(), ts.end(), t);
  const std::size_t k = std::min<std::size_t>(it - ts.begin(), ts.size() - 1);
  const double w = (t - ts[k - 1]) / (ts[k] - ts[k - 1]);
  return ps[k - 1] + w * (ps[k] - ps[k - 1]);
}

double phi_inverse(const PhiSpec& spec, double y) {
  const double top = phi_eval(spec, spec.delta());
  if (!(y >= 0.0 && y <= top)) {
    throw DomainError("phi inverse evaluated outside [0, phi(delta)]");
  }
  if (y == 0.0) return 0.0;
  if (spec.family() == PhiSpec::Family::kPower) {
    return std::pow(y, 1.0 / spec.alpha());
  }
  double lo = 0.0, hi = spec.delta();
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (phi_eval(spec, mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double psi_eval(const PhiSpec& spec, double x) {
  const double ax = std::abs(x);
  if (ax == 0.0) return 0.0;
  const double top = phi_eval(spec, spec.delta());
  return ax * phi_inverse(spec, std::min(ax, top));
}

double g_eval(double x) {
  const double ax = std::abs(x);
  return ax <= 0.5 ? 0.5 - ax : 0.0;
}

Grid1D make_kit_grid(std::size_t n, double p) {
  const Grid1D base = make_graded_grid(-1.0, 1.0, n, p);
  std::vector<double> nodes(base.nodes().begin(), base.nodes().end());
  for (double kink : {-0.5, 0.5}) {
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), kink);
    if (it == nodes.end() || *it != kink) nodes.insert(it, kink);
  }
  return Grid1D(std::move(nodes));
}

CounterexampleKit build_v(const PhiSpec& spec, const Grid1D& grid) {
  const std::size_t n = grid.size();
  if (grid.front() != -1.0 || grid.back() != 1.0) {
    throw DomainError("kit grid must span [-1, 1]");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (grid[i] != -grid[n - 1 - i]) {
      throw DomainError("kit grid must be symmetric about 0");
    }
  }
  const auto zero = grid.find(0.0);
  if (!zero || !grid.find(0.5)) {
    throw DomainError("kit grid must contain the nodes 0 and +-1/2");
  }

  const std::size_t z = *zero;
  std::vector<double> half(grid.nodes().begin() + static_cast<long>(z),
                           grid.nodes().end());
  const Grid1D half_grid(half);
  const SampledFn1D psi_half = sample(half_grid, [&](double x) { return psi_eval(spec, x); });
  const SampledFn1D dv_half = cumulative_trapezoid(psi_half);
  const SampledFn1D v_half = cumulative_trapezoid(dv_half);

  // Mirror: psi and v are even, v' is odd.
  std::vector<double> psi(n), dv(n), v(n);
  for (std::size_t k = 0; k < half.size(); ++k) {
    psi[z + k] = psi[z - k] = psi_half[k];
    v[z + k] = v[z - k] = v_half[k];
    dv[z + k] = dv_half[k];
    dv[z - k] = -dv_half[k];
  }
  return CounterexampleKit{spec,
                           SampledFn1D(grid, std::move(psi)),
                           SampledFn1D(grid, std::move(dv)),
                           SampledFn1D(grid, std::move(v)),
                           spec.delta(),
                           z};
}

CsvTable kit_table(const CounterexampleKit& kit) {
  CsvTable table;
  table.header = {"x", "psi", "vprime", "v"};
  for (std::size_t i = 0; i < kit.v.size(); ++i) {
    table.rows.push_back({kit.v.x(i), kit.psi[i], kit.vprime[i], kit.v[i]});
  }
  return table;
}

SampledFn1D perturb_1d(const CounterexampleKit& kit, double t) {
  if (!(t > 0.0)) throw DomainError("perturbation size t must be > 0");
  std::vector<double> out(kit.v.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = kit.v[i] + t * g_eval(kit.v.x(i));
  }
  return SampledFn1D(kit.grid(), std::move(out));
}

Lift2D build_2d(const CounterexampleKit& kit, const Grid2D& grid, double t) {
  if (!grid.is_unit_disk()) throw DomainError("build_2d needs a unit-disk mask");
  if (!(t >= 0.0)) throw DomainError("perturbation size t must be >= 0");
  const std::size_t m = grid.masked_count();
  std::vector<double> u(m), h(m), ut(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double x = grid.x_of(k);
    const double y = grid.y_of(k);
    // Rim nodes may sit up to the mask tolerance outside the unit circle.
    const double r = std::min(std::hypot(x, y), 1.0);
    u[k] = eval_pl(kit.v, r);
    h[k] = g_eval(std::max(std::abs(x), std::abs(y)));
    ut[k] = u[k] + t * h[k];
  }
  return Lift2D{SampledFn2D(grid, std::move(ut)), SampledFn2D(grid, std::move(u)),
                SampledFn2D(grid, std::move(h))};
}

}  // namespace gammareg
