#include "gammareg/gridfn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gammareg/errors.hpp"

namespace gammareg {

Grid1D::Grid1D(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) {
    throw SizeError("Grid1D needs at least 2 nodes");
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i])) {
      throw DomainError("Grid1D nodes must be finite");
    }
    if (i > 0 && !(nodes_[i] > nodes_[i - 1])) {
      std::ostringstream msg;
      msg << "Grid1D nodes must be strictly increasing (node " << i << ")";
      throw DomainError(msg.str());
    }
  }
}

std::optional<std::size_t> Grid1D::find(double x) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x);
  if (it == nodes_.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::size_t Grid1D::segment(double x) const {
  if (!(x >= nodes_.front() && x <= nodes_.back())) {
    std::ostringstream msg;
    msg << "x = " << x << " outside grid range [" << nodes_.front() << ", "
        << nodes_.back() << "]";
    throw DomainError(msg.str());
  }
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - nodes_.begin());
  if (i == 0) return 0;
  return std::min(i - 1, nodes_.size() - 2);
}

Grid1D make_uniform_grid(double a, double b, std::size_t n) {
  if (!(a < b)) throw DomainError("uniform grid requires a < b");
  if (n < 2) throw SizeError("uniform grid requires n >= 2");
  std::vector<double> nodes(n);
  // Weighted form keeps [-1, 1] grids exactly antisymmetric and puts 0 and
  // +-1/2 on nodes whenever n - 1 is divisible by 2 and 4.
  const double d = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = static_cast<double>(i);
    nodes[i] = (a * (d - w) + b * w) / d;
  }
  return Grid1D(std::move(nodes));
}

Grid1D make_graded_grid(double a, double b, std::size_t n, double p) {
  if (!(a < 0.0 && 0.0 < b)) {
    throw DomainError("graded grid requires a < 0 < b");
  }
  if (n < 3 || n % 2 == 0) throw SizeError("graded grid requires odd n >= 3");
  if (!(p >= 1.0)) throw DomainError("graded grid requires p >= 1");

  const std::size_t half = (n - 1) / 2;
  const double radius = std::max(-a, b);
  std::vector<double> positive(half);
  for (std::size_t k = 1; k <= half; ++k) {
    const double frac = static_cast<double>(k) / static_cast<double>(half);
    positive[k - 1] = k == half ? radius : radius * std::pow(frac, p);
  }

  std::vector<double> nodes;
  nodes.reserve(n);
  for (auto it = positive.rbegin(); it != positive.rend(); ++it) {
    const double x = std::max(-*it, a);
    if (nodes.empty() || x > nodes.back()) nodes.push_back(x);
  }
  nodes.push_back(0.0);
  for (double x : positive) {
    x = std::min(x, b);
    if (x > nodes.back()) nodes.push_back(x);
  }
  return Grid1D(std::move(nodes));
}

SampledFn1D::SampledFn1D(Grid1D grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw SizeError("SampledFn1D: value count differs from grid size");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("SampledFn1D values must be finite");
  }
}

double eval_pl(const SampledFn1D& f, double x) {
  const Grid1D& g = f.grid();
  const std::size_t i = g.segment(x);
  const double x0 = g[i];
  const double x1 = g[i + 1];
  if (x == x0) return f[i];
  if (x == x1) return f[i + 1];
  const double w = (x - x0) / (x1 - x0);
  return f[i] + w * (f[i + 1] - f[i]);
}

SampledFn1D cumulative_trapezoid(const SampledFn1D& f) {
  std::vector<double> acc(f.size());
  acc[0] = 0.0;
  for (std::size_t k = 1; k < f.size(); ++k) {
    acc[k] = acc[k - 1] + 0.5 * (f.x(k) - f.x(k - 1)) * (f[k] + f[k - 1]);
  }
  return SampledFn1D(f.grid(), std::move(acc));
}

namespace {

std::vector<bool> disk_mask(const Grid1D& xs, const Grid1D& ys,
                            double tolerance) {
  std::vector<bool> mask(xs.size() * ys.size());
  for (std::size_t iy = 0; iy < ys.size(); ++iy) {
    for (std::size_t ix = 0; ix < xs.size(); ++ix) {
      mask[iy * xs.size() + ix] = xs[ix] * xs[ix] + ys[iy] * ys[iy] <= 1.0 + tolerance;
    }
  }
  return mask;
}

}  // namespace

Grid2D::Grid2D(Grid1D xs, Grid1D ys, double tolerance)
    : xs_(std::move(xs)), ys_(std::move(ys)), tolerance_(tolerance) {
  if (!(tolerance >= 0.0)) throw DomainError("disk tolerance must be >= 0");
  index_mask(disk_mask(xs_, ys_, tolerance_));
}

Grid2D::Grid2D(Grid1D xs, Grid1D ys, std::vector<bool> mask)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (mask.size() != xs_.size() * ys_.size()) {
    throw SizeError("Grid2D mask size differs from nx * ny");
  }
  index_mask(mask);
}

void Grid2D::index_mask(const std::vector<bool>& mask) {
  index_.assign(mask.size(), -1);
  cells_.clear();
  for (std::size_t iy = 0; iy < ny(); ++iy) {
    for (std::size_t ix = 0; ix < nx(); ++ix) {
      if (mask[iy * nx() + ix]) {
        index_[iy * nx() + ix] = static_cast<long>(cells_.size());
        cells_.emplace_back(ix, iy);
      }
    }
  }
  if (cells_.size() < 3) {
    throw GeometryError("Grid2D needs at least 3 masked nodes");
  }
  // Non-collinearity: some masked node must leave the line through the first
  // two. Grid coordinates are exact, so the cross product test is exact
  // enough at any practical spacing.
  const double x0 = x_of(0), y0 = y_of(0);
  const double x1 = x_of(1), y1 = y_of(1);
  const double scale = std::abs(x1 - x0) + std::abs(y1 - y0);
  for (std::size_t k = 2; k < cells_.size(); ++k) {
    const double cross = (x1 - x0) * (y_of(k) - y0) - (y1 - y0) * (x_of(k) - x0);
    const double reach = std::abs(x_of(k) - x0) + std::abs(y_of(k) - y0);
    if (std::abs(cross) > 1e-12 * scale * reach) return;
  }
  throw GeometryError("Grid2D masked nodes are collinear");
}

std::optional<std::size_t> Grid2D::masked_index(std::size_t ix,
                                                std::size_t iy) const {
  const long k = index_[iy * nx() + ix];
  if (k < 0) return std::nullopt;
  return static_cast<std::size_t>(k);
}

bool Grid2D::is_unit_disk() const {
  const auto expected = disk_mask(xs_, ys_, tolerance_);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (expected[i] != (index_[i] >= 0)) return false;
  }
  return true;
}

Grid2D make_disk_grid(std::size_t n, double tolerance) {
  auto axis = make_uniform_grid(-1.0, 1.0, n);
  return Grid2D(axis, axis, tolerance);
}

SampledFn2D::SampledFn2D(Grid2D grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.masked_count()) {
    throw SizeError("SampledFn2D: value count differs from masked node count");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("SampledFn2D values must be finite");
  }
}

std::optional<double> SampledFn2D::at(std::size_t ix, std::size_t iy) const {
  auto k = grid_.masked_index(ix, iy);
  if (!k) return std::nullopt;
  return values_[*k];
}

}  // namespace gammareg
