#include "gammareg/hull3d.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "gammareg/errors.hpp"

namespace gammareg {

namespace {

struct Vec3 {
  double x, y, z;
};

Vec3 operator-(const Point3& a, const Point3& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Face {
  std::array<std::size_t, 3> v{};
  // nb[e] is the face across the edge v[e] -> v[(e + 1) % 3].
  std::array<std::size_t, 3> nb{kNone, kNone, kNone};
  Vec3 n{};
  std::vector<std::size_t> outside;
  std::size_t visit = 0;
  bool alive = true;
};

class QuickHull {
 public:
  QuickHull(std::span<const Point3> pts, double eps) : pts_(pts), eps_(eps) {}

  // Returns false when all points are coplanar within eps; the caller then
  // triangulates the planar case itself.
  bool build();

  const std::vector<Face>& faces() const { return faces_; }
  double distance(const Face& f, std::size_t p) const {
    return dot(f.n, pts_[p] - pts_[f.v[0]]);
  }

 private:
  std::size_t add_face(std::size_t a, std::size_t b, std::size_t c);
  void link(const std::vector<std::size_t>& ids);
  void assign(const std::vector<std::size_t>& points,
              const std::vector<std::size_t>& candidates);
  void add_point(std::size_t face_id);

  std::span<const Point3> pts_;
  double eps_;
  std::vector<Face> faces_;
  std::vector<std::size_t> pending_;
  std::size_t epoch_ = 0;
};

std::size_t QuickHull::add_face(std::size_t a, std::size_t b, std::size_t c) {
  Face f;
  f.v = {a, b, c};
  const Vec3 n = cross(pts_[b] - pts_[a], pts_[c] - pts_[a]);
  const double len = norm(n);
  if (!(len > 0.0)) throw GeometryError("lower_hull_3d: degenerate facet");
  f.n = {n.x / len, n.y / len, n.z / len};
  faces_.push_back(std::move(f));
  return faces_.size() - 1;
}

// Connects faces that share an edge, using directed edge keys.
void QuickHull::link(const std::vector<std::size_t>& ids) {
  std::unordered_map<std::uint64_t, std::pair<std::size_t, int>> edges;
  auto key = [](std::size_t a, std::size_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
  };
  for (std::size_t id : ids) {
    for (int e = 0; e < 3; ++e) {
      edges[key(faces_[id].v[e], faces_[id].v[(e + 1) % 3])] = {id, e};
    }
  }
  for (std::size_t id : ids) {
    for (int e = 0; e < 3; ++e) {
      auto it = edges.find(key(faces_[id].v[(e + 1) % 3], faces_[id].v[e]));
      if (it != edges.end()) faces_[id].nb[e] = it->second.first;
    }
  }
}

void QuickHull::assign(const std::vector<std::size_t>& points,
                       const std::vector<std::size_t>& candidates) {
  for (std::size_t p : points) {
    double best = eps_;
    std::size_t owner = kNone;
    for (std::size_t id : candidates) {
      const double d = distance(faces_[id], p);
      if (d > best) {
        best = d;
        owner = id;
      }
    }
    if (owner != kNone) faces_[owner].outside.push_back(p);
  }
}

bool QuickHull::build() {
  const std::size_t n = pts_.size();

  // Initial simplex: widest pair among the axis extremes, then the farthest
  // point from their line, then the farthest point from that plane.
  std::array<std::size_t, 6> extremes{};
  extremes.fill(0);
  for (std::size_t i = 1; i < n; ++i) {
    const Point3& p = pts_[i];
    if (p.x < pts_[extremes[0]].x) extremes[0] = i;
    if (p.x > pts_[extremes[1]].x) extremes[1] = i;
    if (p.y < pts_[extremes[2]].y) extremes[2] = i;
    if (p.y > pts_[extremes[3]].y) extremes[3] = i;
    if (p.z < pts_[extremes[4]].z) extremes[4] = i;
    if (p.z > pts_[extremes[5]].z) extremes[5] = i;
  }
  std::size_t a = 0, b = 0;
  double widest = -1.0;
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = i + 1; j < 6; ++j) {
      const double d = norm(pts_[extremes[j]] - pts_[extremes[i]]);
      if (d > widest) {
        widest = d;
        a = extremes[i];
        b = extremes[j];
      }
    }
  }
  const Vec3 ab = pts_[b] - pts_[a];
  std::size_t c = kNone;
  double far = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = norm(cross(ab, pts_[i] - pts_[a])) / widest;
    if (d > far) {
      far = d;
      c = i;
    }
  }
  if (c == kNone || far <= eps_) {
    throw GeometryError("lower_hull_3d: points are collinear");
  }
  const Vec3 nabc = cross(ab, pts_[c] - pts_[a]);
  const double nabc_len = norm(nabc);
  std::size_t d = kNone;
  far = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dist = std::abs(dot(nabc, pts_[i] - pts_[a])) / nabc_len;
    if (dist > far) {
      far = dist;
      d = i;
    }
  }
  if (d == kNone || far <= eps_) return false;

  const std::array<std::size_t, 4> simplex{a, b, c, d};
  std::vector<std::size_t> ids;
  for (int skip = 0; skip < 4; ++skip) {
    std::array<std::size_t, 3> tri{};
    int k = 0;
    for (int i = 0; i < 4; ++i) {
      if (i != skip) tri[k++] = simplex[i];
    }
    const Vec3 nn = cross(pts_[tri[1]] - pts_[tri[0]], pts_[tri[2]] - pts_[tri[0]]);
    if (dot(nn, pts_[simplex[skip]] - pts_[tri[0]]) > 0.0) std::swap(tri[1], tri[2]);
    ids.push_back(add_face(tri[0], tri[1], tri[2]));
  }
  link(ids);

  std::vector<std::size_t> rest;
  rest.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i != a && i != b && i != c && i != d) rest.push_back(i);
  }
  assign(rest, ids);
  for (std::size_t id : ids) {
    if (!faces_[id].outside.empty()) pending_.push_back(id);
  }

  while (!pending_.empty()) {
    const std::size_t id = pending_.back();
    pending_.pop_back();
    if (faces_[id].alive && !faces_[id].outside.empty()) add_point(id);
  }
  return true;
}

void QuickHull::add_point(std::size_t face_id) {
  const Face& start = faces_[face_id];
  std::size_t eye = start.outside.front();
  double far = distance(start, eye);
  for (std::size_t p : start.outside) {
    const double dist = distance(start, p);
    if (dist > far) {
      far = dist;
      eye = p;
    }
  }

  // Visible region: faces reachable from the start face through faces the
  // eye sees by more than eps.
  ++epoch_;
  std::vector<std::size_t> visible{face_id};
  faces_[face_id].visit = epoch_;
  for (std::size_t k = 0; k < visible.size(); ++k) {
    for (std::size_t nb : faces_[visible[k]].nb) {
      if (faces_[nb].visit == epoch_) continue;
      if (distance(faces_[nb], eye) > eps_) {
        faces_[nb].visit = epoch_;
        visible.push_back(nb);
      }
    }
  }

  struct HorizonEdge {
    std::size_t from, to, outer;
  };
  std::vector<HorizonEdge> horizon;
  std::vector<std::size_t> orphans;
  for (std::size_t id : visible) {
    Face& f = faces_[id];
    for (int e = 0; e < 3; ++e) {
      if (faces_[f.nb[e]].visit != epoch_) {
        horizon.push_back({f.v[e], f.v[(e + 1) % 3], f.nb[e]});
      }
    }
    for (std::size_t p : f.outside) {
      if (p != eye) orphans.push_back(p);
    }
    f.outside.clear();
    f.alive = false;
  }

  // The horizon must be one simple cycle: every vertex starts exactly one
  // edge and ends exactly one edge.
  std::unordered_map<std::size_t, std::size_t> by_from, by_to;
  for (std::size_t k = 0; k < horizon.size(); ++k) {
    if (!by_from.emplace(horizon[k].from, k).second ||
        !by_to.emplace(horizon[k].to, k).second) {
      throw GeometryError("lower_hull_3d: inconsistent horizon (numerical degeneracy)");
    }
  }

  std::vector<std::size_t> created;
  created.reserve(horizon.size());
  for (const auto& h : horizon) {
    const std::size_t id = add_face(h.from, h.to, eye);
    created.push_back(id);
    faces_[id].nb[0] = h.outer;
    Face& outer = faces_[h.outer];
    for (int e = 0; e < 3; ++e) {
      if (outer.v[e] == h.to && outer.v[(e + 1) % 3] == h.from) outer.nb[e] = id;
    }
  }
  for (std::size_t k = 0; k < horizon.size(); ++k) {
    Face& f = faces_[created[k]];
    // Edge to -> eye borders the face whose horizon edge starts at `to`;
    // edge eye -> from borders the face whose horizon edge ends at `from`.
    const auto next = by_from.find(horizon[k].to);
    const auto prev = by_to.find(horizon[k].from);
    if (next == by_from.end() || prev == by_to.end()) {
      throw GeometryError("lower_hull_3d: open horizon (numerical degeneracy)");
    }
    f.nb[1] = created[next->second];
    f.nb[2] = created[prev->second];
  }

  assign(orphans, created);
  for (std::size_t id : created) {
    if (!faces_[id].outside.empty()) pending_.push_back(id);
  }
}

// All points lie in one plane (within eps): triangulate the convex hull of
// the (x, y) projection as a fan on that plane.
std::vector<Facet> planar_hull(std::span<const Point3> pts) {
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return pts[i].x < pts[j].x || (pts[i].x == pts[j].x && pts[i].y < pts[j].y);
  });
  auto turn = [&](std::size_t o, std::size_t a, std::size_t b) {
    return (pts[a].x - pts[o].x) * (pts[b].y - pts[o].y) -
           (pts[a].y - pts[o].y) * (pts[b].x - pts[o].x);
  };
  std::vector<std::size_t> ring;
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t base = ring.size();
    for (std::size_t i : order) {
      while (ring.size() >= base + 2 &&
             turn(ring[ring.size() - 2], ring.back(), i) <= 0.0) {
        ring.pop_back();
      }
      ring.push_back(i);
    }
    ring.pop_back();
    std::reverse(order.begin(), order.end());
  }
  if (ring.size() < 3) {
    throw GeometryError("lower_hull_3d: points are collinear in (x, y)");
  }

  // Counter-clockwise ring in (x, y); a downward normal needs clockwise
  // facets, so emit (v0, v[k+1], v[k]).
  std::vector<Facet> out;
  for (std::size_t k = 1; k + 1 < ring.size(); ++k) {
    const std::size_t a = ring[0], b = ring[k + 1], c = ring[k];
    const Vec3 nn = cross(pts[b] - pts[a], pts[c] - pts[a]);
    const double len = norm(nn);
    Facet f;
    f.v = {a, b, c};
    f.normal = {nn.x / len, nn.y / len, nn.z / len};
    f.offset = f.normal[0] * pts[a].x + f.normal[1] * pts[a].y + f.normal[2] * pts[a].z;
    out.push_back(f);
  }
  return out;
}

}  // namespace

std::array<double, 3> Facet::barycentric(std::span<const Point3> pts, double x,
                                         double y) const noexcept {
  const Point3& a = pts[v[0]];
  const Point3& b = pts[v[1]];
  const Point3& c = pts[v[2]];
  const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
  const double l1 = ((x - a.x) * (c.y - a.y) - (c.x - a.x) * (y - a.y)) / det;
  const double l2 = ((b.x - a.x) * (y - a.y) - (x - a.x) * (b.y - a.y)) / det;
  return {1.0 - l1 - l2, l1, l2};
}

double hull_epsilon(std::span<const Point3> pts, const HullOptions& opts) {
  if (pts.empty()) return 0.0;
  Point3 lo = pts[0], hi = pts[0];
  for (const auto& p : pts) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  const double scale = std::max({hi.x - lo.x, hi.y - lo.y, hi.z - lo.z});
  return opts.relative_eps * (scale > 0.0 ? scale : 1.0);
}

std::vector<Facet> lower_hull_3d(std::span<const Point3> pts,
                                 const HullOptions& opts) {
  if (pts.size() < 3) throw GeometryError("lower_hull_3d: need at least 3 points");
  for (const auto& p : pts) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      throw GeometryError("lower_hull_3d: non-finite coordinate");
    }
  }
  const double eps = hull_epsilon(pts, opts);

  // Projected collinearity is a precondition: the lower hull would have no
  // facets with a downward normal.
  {
    std::size_t a = 0, b = 0;
    double far = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const double d = std::hypot(pts[i].x - pts[0].x, pts[i].y - pts[0].y);
      if (d > far) {
        far = d;
        b = i;
      }
    }
    double off = 0.0;
    for (std::size_t i = 0; i < pts.size() && far > 0.0; ++i) {
      const double cr = (pts[b].x - pts[a].x) * (pts[i].y - pts[a].y) -
                        (pts[b].y - pts[a].y) * (pts[i].x - pts[a].x);
      off = std::max(off, std::abs(cr) / far);
    }
    if (off <= eps) {
      throw GeometryError("lower_hull_3d: points are collinear in (x, y)");
    }
  }

  std::vector<Facet> out;
  QuickHull qh(pts, eps);
  if (!qh.build()) {
    out = planar_hull(pts);
  } else {
    for (const Face& f : qh.faces()) {
      if (!f.alive || !(f.n.z < -1e-12)) continue;
      Facet facet;
      facet.v = f.v;
      facet.normal = {f.n.x, f.n.y, f.n.z};
      const Point3& p = pts[f.v[0]];
      facet.offset = f.n.x * p.x + f.n.y * p.y + f.n.z * p.z;
      out.push_back(facet);
    }
  }
  for (auto& f : out) {
    const auto lowest = std::min_element(f.v.begin(), f.v.end()) - f.v.begin();
    std::rotate(f.v.begin(), f.v.begin() + lowest, f.v.end());
  }
  std::sort(out.begin(), out.end(),
            [](const Facet& l, const Facet& r) { return l.v < r.v; });
  return out;
}

}  // namespace gammareg
