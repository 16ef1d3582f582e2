#include "verify/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gammareg::oracle {

std::vector<double> chord_envelope(const SampledFn1D& f) {
  const std::size_t n = f.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double best = f[i];
    for (std::size_t j = 0; j < i; ++j) {
      for (std::size_t k = i + 1; k < n; ++k) {
        const double w = (f.x(i) - f.x(j)) / (f.x(k) - f.x(j));
        best = std::min(best, f[j] + w * (f[k] - f[j]));
      }
    }
    out[i] = best;
  }
  return out;
}

std::vector<Plane> supporting_lower_planes(std::span<const Point3> pts,
                                           double tol) {
  std::vector<Plane> planes;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const Point3 &a = pts[i], &b = pts[j], &c = pts[k];
        const double ux = b.x - a.x, uy = b.y - a.y, uz = b.z - a.z;
        const double vx = c.x - a.x, vy = c.y - a.y, vz = c.z - a.z;
        double nx = uy * vz - uz * vy;
        double ny = uz * vx - ux * vz;
        double nz = ux * vy - uy * vx;
        const double len = std::sqrt(nx * nx + ny * ny + nz * nz);
        if (std::abs(nz) <= 1e-12 * len || len == 0.0) continue;
        if (nz > 0) {
          nx = -nx;
          ny = -ny;
          nz = -nz;
        }
        nx /= len;
        ny /= len;
        nz /= len;
        const double off = nx * a.x + ny * a.y + nz * a.z;
        bool supports = true;
        for (const Point3& p : pts) {
          if (nx * p.x + ny * p.y + nz * p.z > off + tol) {
            supports = false;
            break;
          }
        }
        if (supports) planes.push_back({{i, j, k}, {nx, ny, nz}, off});
      }
    }
  }
  return planes;
}

double envelope_at(std::span<const Plane> planes, double x, double y) {
  double best = -std::numeric_limits<double>::infinity();
  for (const Plane& p : planes) {
    best = std::max(best, (p.offset - p.normal[0] * x - p.normal[1] * y) / p.normal[2]);
  }
  return best;
}

double power_v(double alpha, double x) {
  const double q = 1.0 / alpha;
  return std::pow(std::abs(x), 3.0 + q) / ((2.0 + q) * (3.0 + q));
}

double power_xstar(double alpha, double t) {
  const double q = 1.0 / alpha;
  return std::pow((2.0 + q) * t, 1.0 / (2.0 + q));
}

double power_gap(double alpha, double t) {
  const double x = power_xstar(alpha, t);
  return t * x - power_v(alpha, x);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

std::size_t uniform_count(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

SampledFn1D random_function(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> xs(n), vs(n);
  const double h = 2.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = -1.0 + h * (static_cast<double>(i) + uniform(rng, 0.1, 0.9));
    vs[i] = uniform(rng, -1.0, 1.0);
  }
  return SampledFn1D(Grid1D(std::move(xs)), std::move(vs));
}

std::vector<double> random_slopes(std::mt19937_64& rng, std::size_t m,
                                  double range) {
  std::vector<double> s(m);
  const double h = 2.0 * range / static_cast<double>(m);
  for (std::size_t j = 0; j < m; ++j) {
    s[j] = -range + h * (static_cast<double>(j) + uniform(rng, 0.1, 0.9));
  }
  return s;
}

}  // namespace gammareg::oracle
