#pragma once

// Exact planar primitives over rational coordinates. No epsilon appears in
// any polygon code path.

#include <algorithm>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "pierce/rational.hpp"

namespace pierce {

struct Point {
  Scalar x;
  Scalar y;

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  // lexicographic (x, y)
  friend bool operator<(const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }
  friend std::ostream& operator<<(std::ostream& os, const Point& p) {
    return os << "(" << p.x << "," << p.y << ")";
  }
};

using Vec = Point;

inline Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator-(const Point& a) { return {-a.x, -a.y}; }
inline Point operator*(const Scalar& s, const Point& a) { return {s * a.x, s * a.y}; }
inline Point operator*(const Point& a, const Scalar& s) { return {s * a.x, s * a.y}; }

inline Scalar cross(const Vec& a, const Vec& b) { return a.x * b.y - a.y * b.x; }
inline Scalar dot(const Vec& a, const Vec& b) { return a.x * b.x + a.y * b.y; }
inline Scalar orient(const Point& a, const Point& b, const Point& c) { return cross(b - a, c - a); }
inline Vec perp(const Vec& v) { return {-v.y, v.x}; }
inline Point midpoint(const Point& a, const Point& b) { return Scalar(1, 2) * (a + b); }

struct Interval {
  Scalar lo;
  Scalar hi;

  bool contains(const Scalar& v) const { return lo <= v && v <= hi; }
  bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
  Scalar length() const { return hi - lo; }
};

// Strictly convex, counterclockwise, at least three vertices.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;

  // Validates the invariants; use convex_hull() to canonicalize raw input.
  explicit ConvexPolygon(std::vector<Point> ccw) : v_(std::move(ccw)) {
    if (v_.size() < 3) throw Error(ErrorCode::DegenerateInput, "polygon needs >= 3 vertices");
    for (std::size_t i = 0; i < v_.size(); ++i) {
      if (orient(v_[i], v_[(i + 1) % v_.size()], v_[(i + 2) % v_.size()]) <= 0)
        throw Error(ErrorCode::DegenerateInput, "polygon not strictly convex counterclockwise");
    }
  }

  const std::vector<Point>& vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  const Point& operator[](std::size_t i) const { return v_[i % v_.size()]; }
  Vec edge(std::size_t i) const { return (*this)[i + 1] - (*this)[i]; }

  friend bool operator==(const ConvexPolygon& a, const ConvexPolygon& b) {
    return a.canonical() == b.canonical();
  }

  // Vertex list rotated to start at the lexicographically smallest vertex.
  std::vector<Point> canonical() const {
    auto it = std::min_element(v_.begin(), v_.end());
    std::vector<Point> out(it, v_.end());
    out.insert(out.end(), v_.begin(), it);
    return out;
  }

  ConvexPolygon translated(const Vec& t) const {
    std::vector<Point> w;
    w.reserve(v_.size());
    for (const auto& p : v_) w.push_back(p + t);
    return from_trusted(std::move(w));
  }

  // s*P + t, s > 0
  ConvexPolygon scaled(const Scalar& s, const Vec& t = {0, 0}) const {
    std::vector<Point> w;
    w.reserve(v_.size());
    for (const auto& p : v_) w.push_back(s * p + t);
    return from_trusted(std::move(w));
  }

  static ConvexPolygon from_trusted(std::vector<Point> ccw) {
    ConvexPolygon p;
    p.v_ = std::move(ccw);
    return p;
  }

 private:
  std::vector<Point> v_;
};

inline std::ostream& operator<<(std::ostream& os, const ConvexPolygon& p) {
  os << "[";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p[i];
  return os << "]";
}

// Monotone chain; drops collinear points.
inline std::vector<Point> hull_points(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && orient(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orient(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

inline ConvexPolygon convex_hull(std::span<const Point> points) {
  auto h = hull_points(std::vector<Point>(points.begin(), points.end()));
  if (h.size() < 3) throw Error(ErrorCode::DegenerateInput, "points are collinear");
  return ConvexPolygon::from_trusted(std::move(h));
}

inline ConvexPolygon convex_hull(std::initializer_list<Point> points) {
  return convex_hull(std::span<const Point>(points.begin(), points.size()));
}

inline ConvexPolygon reflect(const ConvexPolygon& c) {
  std::vector<Point> w;
  w.reserve(c.size());
  for (const auto& p : c.vertices()) w.push_back(-p);
  return ConvexPolygon::from_trusted(std::move(w));
}

namespace detail {
inline std::size_t bottom_left(const std::vector<Point>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i].y < v[best].y || (v[i].y == v[best].y && v[i].x < v[best].x)) best = i;
  }
  return best;
}

// Half-open angular order of edge vectors starting from direction (1,0).
inline bool angle_less(const Vec& a, const Vec& b) {
  auto half = [](const Vec& v) { return (v.y < 0 || (v.y == 0 && v.x < 0)) ? 1 : 0; };
  int ha = half(a);
  int hb = half(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}
}  // namespace detail

// Edge-merge of the two polygons' angularly sorted edge sequences.
inline ConvexPolygon minkowski_sum(const ConvexPolygon& a, const ConvexPolygon& b) {
  const auto& av = a.vertices();
  const auto& bv = b.vertices();
  std::size_t ia = detail::bottom_left(av);
  std::size_t ib = detail::bottom_left(bv);
  std::vector<Point> out;
  out.reserve(av.size() + bv.size());
  std::size_t i = 0;
  std::size_t j = 0;
  Point cur = av[ia] + bv[ib];
  while (i < av.size() || j < bv.size()) {
    out.push_back(cur);
    Vec ea = a.edge(ia + i);
    Vec eb = b.edge(ib + j);
    if (j == bv.size() || (i < av.size() && detail::angle_less(ea, eb))) {
      cur = cur + ea;
      ++i;
    } else if (i == av.size() || detail::angle_less(eb, ea)) {
      cur = cur + eb;
      ++j;
    } else {
      cur = cur + ea + eb;
      ++i;
      ++j;
    }
  }
  // drop collinear vertices left by parallel edges on a single side
  return ConvexPolygon::from_trusted(hull_points(std::move(out)));
}

inline ConvexPolygon minkowski_sum(const ConvexPolygon& a, const Point& p) { return a.translated(p); }

inline Scalar area(const ConvexPolygon& c) {
  Scalar s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) s += cross(c[i], c[i + 1]);
  return s / 2;
}

inline Scalar area(std::span<const Point> ring) {
  Scalar s = 0;
  for (std::size_t i = 0; i < ring.size(); ++i) s += cross(ring[i], ring[(i + 1) % ring.size()]);
  return s / 2;
}

// Closed containment.
inline bool contains_point(const ConvexPolygon& c, const Point& p) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (orient(c[i], c[i + 1], p) < 0) return false;
  }
  return true;
}

// Strict interior.
inline bool interior_contains(const ConvexPolygon& c, const Point& p) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (orient(c[i], c[i + 1], p) <= 0) return false;
  }
  return true;
}

inline Interval project(const ConvexPolygon& c, const Vec& axis) {
  Scalar lo = dot(c[0], axis);
  Scalar hi = lo;
  for (const auto& p : c.vertices()) {
    Scalar v = dot(p, axis);
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return {lo, hi};
}

// Separating axis test over both polygons' edge normals. Touching counts.
inline bool intersects(const ConvexPolygon& a, const ConvexPolygon& b) {
  for (const auto* poly : {&a, &b}) {
    for (std::size_t i = 0; i < poly->size(); ++i) {
      Vec n = perp(poly->edge(i));
      if (!project(a, n).overlaps(project(b, n))) return false;
    }
  }
  return true;
}

// Result of clipping: a proper polygon, a segment, a single point, or empty.
struct Region {
  std::vector<Point> ring;  // ccw, no repeated vertices

  bool empty() const { return ring.empty(); }
  bool is_point() const { return ring.size() == 1; }
  bool is_segment() const { return ring.size() == 2; }
  bool is_polygon() const { return ring.size() >= 3; }
  ConvexPolygon polygon() const { return ConvexPolygon::from_trusted(ring); }
  Scalar area() const { return ring.size() >= 3 ? pierce::area(std::span<const Point>(ring)) : Scalar(0); }
};

// Closed half-plane {p : cross(dir, p - origin) >= 0}, i.e. left of the directed line.
struct HalfPlane {
  Point origin;
  Vec dir;

  Scalar eval(const Point& p) const { return cross(dir, p - origin); }
  HalfPlane flipped() const { return {origin, -dir}; }
};

namespace detail {
inline std::vector<Point> normalize_ring(std::vector<Point> r) {
  std::vector<Point> out;
  for (auto& p : r) {
    if (out.empty() || out.back() != p) out.push_back(std::move(p));
  }
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  if (out.size() >= 3) {
    // remove collinear runs so the ring is strictly convex or degenerate
    auto h = hull_points(out);
    return h;
  }
  return out;
}
}  // namespace detail

// Sutherland-Hodgman against one closed half-plane, exact.
inline std::vector<Point> clip(const std::vector<Point>& ring, const HalfPlane& h) {
  if (ring.empty()) return {};
  if (ring.size() == 1) return h.eval(ring[0]) >= 0 ? ring : std::vector<Point>{};
  std::vector<Point> out;
  auto cut = [&](const Point& p, const Point& q, const Scalar& fp, const Scalar& fq) {
    if ((fp > 0 && fq < 0) || (fp < 0 && fq > 0)) {
      Scalar t = fp / (fp - fq);
      out.push_back(p + t * (q - p));
    }
  };
  if (ring.size() == 2) {
    Scalar fp = h.eval(ring[0]);
    Scalar fq = h.eval(ring[1]);
    if (fp >= 0) out.push_back(ring[0]);
    cut(ring[0], ring[1], fp, fq);
    if (fq >= 0) out.push_back(ring[1]);
    return detail::normalize_ring(std::move(out));
  }
  std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = ring[i];
    const Point& q = ring[(i + 1) % n];
    Scalar fp = h.eval(p);
    Scalar fq = h.eval(q);
    if (fp >= 0) out.push_back(p);
    cut(p, q, fp, fq);
  }
  return detail::normalize_ring(std::move(out));
}

inline Region intersection(const ConvexPolygon& a, const ConvexPolygon& b) {
  std::vector<Point> ring = a.vertices();
  for (std::size_t i = 0; i < b.size() && !ring.empty(); ++i) {
    ring = clip(ring, HalfPlane{b[i], b.edge(i)});
  }
  return Region{std::move(ring)};
}

inline Region intersection(const Region& a, const ConvexPolygon& b) {
  std::vector<Point> ring = a.ring;
  for (std::size_t i = 0; i < b.size() && !ring.empty(); ++i) {
    ring = clip(ring, HalfPlane{b[i], b.edge(i)});
  }
  return Region{std::move(ring)};
}

// Pieces of (piece minus the interior of cut) as closed convex rings; pieces
// of zero area are dropped. The union of the returned rings has the same area
// as piece \ cut.
inline std::vector<std::vector<Point>> subtract(const std::vector<Point>& piece, const ConvexPolygon& cut) {
  std::vector<std::vector<Point>> out;
  std::vector<Point> rest = piece;
  for (std::size_t i = 0; i < cut.size() && rest.size() >= 3; ++i) {
    HalfPlane inside{cut[i], cut.edge(i)};
    auto outside = clip(rest, inside.flipped());
    if (outside.size() >= 3 && area(std::span<const Point>(outside)) > 0) out.push_back(std::move(outside));
    rest = clip(rest, inside);
  }
  return out;
}

// Residue of region after removing every cover polygon; empty residue means
// the closed region lies in the union of the closed covers.
inline std::vector<std::vector<Point>> residue(const std::vector<Point>& region,
                                               std::span<const ConvexPolygon> covers) {
  std::vector<std::vector<Point>> pieces;
  if (region.size() >= 3) pieces.push_back(region);
  for (const auto& c : covers) {
    std::vector<std::vector<Point>> next;
    for (const auto& p : pieces) {
      auto parts = subtract(p, c);
      for (auto& q : parts) next.push_back(std::move(q));
    }
    pieces = std::move(next);
    if (pieces.empty()) break;
  }
  return pieces;
}

// Nonsingular rational affine map x -> M x + b.
struct AffineMap {
  Scalar m00 = 1, m01 = 0, m10 = 0, m11 = 1;
  Point b{0, 0};

  Scalar det() const { return m00 * m11 - m01 * m10; }
  Point linear(const Point& p) const { return {m00 * p.x + m01 * p.y, m10 * p.x + m11 * p.y}; }
  Point operator()(const Point& p) const { return linear(p) + b; }

  AffineMap inverse() const {
    Scalar d = det();
    if (d == 0) throw Error(ErrorCode::SingularMap, "affine map is singular");
    AffineMap inv;
    inv.m00 = m11 / d;
    inv.m01 = -m01 / d;
    inv.m10 = -m10 / d;
    inv.m11 = m00 / d;
    inv.b = -inv.linear(b);
    return inv;
  }

  // this after other
  AffineMap compose(const AffineMap& o) const {
    AffineMap r;
    r.m00 = m00 * o.m00 + m01 * o.m10;
    r.m01 = m00 * o.m01 + m01 * o.m11;
    r.m10 = m10 * o.m00 + m11 * o.m10;
    r.m11 = m10 * o.m01 + m11 * o.m11;
    r.b = linear(o.b) + b;
    return r;
  }

  bool is_similarity() const {
    // rotation-scaling with or without reflection
    return (m00 == m11 && m01 == -m10) || (m00 == -m11 && m01 == m10);
  }

  // Linear map sending e1 -> u, e2 -> v.
  static AffineMap from_columns(const Vec& u, const Vec& v, const Point& shift = {0, 0}) {
    AffineMap a;
    a.m00 = u.x;
    a.m10 = u.y;
    a.m01 = v.x;
    a.m11 = v.y;
    a.b = shift;
    return a;
  }
};

inline ConvexPolygon apply(const AffineMap& m, const ConvexPolygon& c) {
  std::vector<Point> w;
  w.reserve(c.size());
  for (const auto& p : c.vertices()) w.push_back(m(p));
  if (m.det() < 0) std::reverse(w.begin(), w.end());
  return ConvexPolygon::from_trusted(std::move(w));
}

// Centrally symmetric about its vertex centroid: v[i] + v[i + n/2] constant.
inline std::optional<Point> symmetry_center(const ConvexPolygon& c) {
  std::size_t n = c.size();
  if (n % 2 != 0) return std::nullopt;
  Point s = c[0] + c[n / 2];
  for (std::size_t i = 1; i < n / 2; ++i) {
    if (c[i] + c[i + n / 2] != s) return std::nullopt;
  }
  return Scalar(1, 2) * s;
}

inline bool is_parallelogram(const ConvexPolygon& c) {
  return c.size() == 4 && symmetry_center(c).has_value();
}

inline Interval x_extent(const ConvexPolygon& c) { return project(c, {1, 0}); }
inline Interval y_extent(const ConvexPolygon& c) { return project(c, {0, 1}); }

}  // namespace pierce
