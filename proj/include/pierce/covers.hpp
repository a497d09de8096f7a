#pragma once

// Covering patterns for one greedy cluster. A pattern covers a region R by
// translates K + q_j of a cover body K; the piercing modules turn offsets
// into points through the reference point of the cluster seed.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include "pierce/bodies.hpp"
#include "pierce/sandwich.hpp"
#include "pierce/surd.hpp"

namespace pierce {

struct CoverPattern {
  std::vector<Point> region;  // convex ring
  ConvexPolygon cover_body;
  std::vector<Point> offsets;
  std::optional<Vec> halfplane;  // inner normal of the cutting half-plane

  std::vector<ConvexPolygon> covers() const {
    std::vector<ConvexPolygon> out;
    for (const auto& q : offsets) out.push_back(cover_body.translated(q));
    return out;
  }
  bool verify() const {
    auto c = covers();
    return residue(region, c).empty();
  }
  std::size_t size() const { return offsets.size(); }
};

inline ConvexPolygon difference_body(const ConvexPolygon& c) { return minkowski_sum(c, reflect(c)); }

namespace detail {

inline CoverPattern checked(CoverPattern p) {
  if (!p.verify()) throw Error(ErrorCode::VerificationFailed, "cover pattern leaves a residue");
  return p;
}

inline Point centered_or_throw(const ConvexPolygon& s) {
  auto c = symmetry_center(s);
  if (!c) throw Error(ErrorCode::NotCentrallySymmetric, "polygon is not centrally symmetric");
  return *c;
}

// Edge vectors of a parallelogram, ccw from vertex 0.
inline std::pair<Vec, Vec> parallelogram_edges(const ConvexPolygon& s) { return {s.edge(0), s.edge(1)}; }

inline std::vector<Point> halfplane_region(const ConvexPolygon& body, const Vec& normal) {
  // keep {x : dot(normal, x) >= 0}
  return clip(body.vertices(), HalfPlane{{0, 0}, -perp(normal)});
}

}  // namespace detail

// 2S by seven translates of S (S centered at the origin): S itself plus S
// at the side midpoints of 2H, H the inscribed affinely regular hexagon.
// Parallelograms take the four-translate grid instead.
inline CoverPattern seven_cover(const ConvexPolygon& s) {
  Point c = detail::centered_or_throw(s);
  if (c != Point{0, 0}) throw Error(ErrorCode::NotCentrallySymmetric, "body must be centered at the origin");
  CoverPattern p{s.scaled(2).vertices(), s, {}, std::nullopt};
  if (is_parallelogram(s)) {
    auto [e1, e2] = detail::parallelogram_edges(s);
    for (int a : {-1, 1})
      for (int b : {-1, 1}) p.offsets.push_back(Scalar(a, 2) * e1 + Scalar(b, 2) * e2);
    return detail::checked(p);
  }
  for (std::size_t k = 0; k < s.size(); ++k) {
    ConvexPolygon h = detail::inscribed_hexagon(s, s[k]);
    p.offsets = {{0, 0}};
    for (std::size_t i = 0; i < 6; ++i) p.offsets.push_back(h[i] + h[i + 1]);
    if (p.verify()) return p;
  }
  throw Error(ErrorCode::VerificationFailed, "seven-translate cover failed");
}

// (2S) ∩ {dot(normal, x) >= 0} by at most four translates of S: S itself and
// the three vertices on that side of the inscribed affinely regular hexagon,
// with the chord through the origin running along the half-plane boundary.
inline CoverPattern halfplane_four_cover(const ConvexPolygon& s, const Vec& normal) {
  Point c = detail::centered_or_throw(s);
  if (c != Point{0, 0}) throw Error(ErrorCode::NotCentrallySymmetric, "body must be centered at the origin");
  if (normal == Point{0, 0}) throw Error(ErrorCode::DegenerateInput, "zero half-plane normal");
  CoverPattern p{detail::halfplane_region(s.scaled(2), normal), s, {}, normal};
  if (is_parallelogram(s)) {
    auto [e1, e2] = detail::parallelogram_edges(s);
    for (auto [along, across] : {std::pair{e1, e2}, std::pair{e2, e1}}) {
      if (dot(normal, along) != 0) continue;
      Vec down = dot(normal, across) > 0 ? across : -across;
      p.offsets = {Scalar(1, 2) * (along + down), Scalar(1, 2) * (down - along)};
      return detail::checked(p);
    }
  }
  ConvexPolygon h = detail::inscribed_hexagon(s, perp(normal));
  // h = p2, p1, p6, p5, p4, p3 with p3, p4 on the normal side
  p.offsets = {{0, 0}, h[0] + h[5], h[5] + h[4], h[4] + h[3]};
  return detail::checked(p);
}

namespace detail {

// Depth-first search for at most k translates of K, with offsets on the grid
// step*Z^2, covering region. Branches on translates containing an extreme
// residue vertex, most covered area first.
inline std::optional<std::vector<Point>> search_cover(const std::vector<Point>& region, const ConvexPolygon& k,
                                                      std::size_t max_k, const Scalar& step,
                                                      std::size_t branching = 6) {
  std::vector<Point> chosen;
  auto ring_area = [](const std::vector<Point>& r) { return area(std::span<const Point>(r)); };
  std::function<bool(const std::vector<std::vector<Point>>&)> dfs =
      [&](const std::vector<std::vector<Point>>& pieces) -> bool {
    if (pieces.empty()) return true;
    if (chosen.size() == max_k) return false;
    Scalar left = 0;
    for (const auto& pc : pieces) left += ring_area(pc);
    if (left > area(k) * Scalar(static_cast<long>(max_k - chosen.size()))) return false;
    // extreme vertex: max y, then max x
    Point v = pieces[0][0];
    for (const auto& pc : pieces)
      for (const auto& q : pc)
        if (q.y > v.y || (q.y == v.y && q.x > v.x)) v = q;
    // offsets q with v in K + q: q in v - K, snapped to the grid
    ConvexPolygon cand_region = reflect(k).translated(v);
    Interval xs = x_extent(cand_region), ys = y_extent(cand_region);
    std::vector<std::pair<Scalar, Point>> cands;
    for (Integer i = ceil_int(xs.lo / step); i * step <= xs.hi; ++i) {
      for (Integer j = ceil_int(ys.lo / step); j * step <= ys.hi; ++j) {
        Point q{Scalar(i) * step, Scalar(j) * step};
        ConvexPolygon piece = k.translated(q);
        if (!contains_point(piece, v)) continue;
        Scalar covered = 0;
        for (const auto& pc : pieces) covered += intersection(Region{pc}, piece).area();
        if (covered > 0) cands.push_back({covered, q});
      }
    }
    std::stable_sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    if (cands.size() > branching) cands.resize(branching);
    for (const auto& [_, q] : cands) {
      ConvexPolygon piece = k.translated(q);
      std::vector<std::vector<Point>> next;
      for (const auto& pc : pieces)
        for (auto& r : subtract(pc, piece)) next.push_back(std::move(r));
      chosen.push_back(q);
      if (dfs(next)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (dfs({region})) return chosen;
  return std::nullopt;
}

inline const ConvexPolygon& unit_triangle() {
  static const ConvexPolygon t({{0, 0}, {1, 0}, {0, 1}});
  return t;
}

// Linear map sending the triangle (0, a, b) (ccw) to (0, e1, e2).
inline AffineMap triangle_frame(const ConvexPolygon& t, const Point& ref) {
  std::size_t i = 0;
  while (i < 3 && t[i] != ref) ++i;
  if (i == 3) throw Error(ErrorCode::UnsupportedBase, "triangle reference must be a vertex");
  return AffineMap::from_columns(t[i + 1] - ref, t[i + 2] - ref).inverse();
}

inline std::string polygon_key(const ConvexPolygon& c) {
  std::ostringstream os;
  for (const auto& p : c.canonical()) os << p.x << ',' << p.y << ';';
  return os.str();
}

template <class F>
CoverPattern cached(const std::string& key, F&& make) {
  static std::mutex mu;
  static std::map<std::string, CoverPattern> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  CoverPattern p = make();
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, p);
  return p;
}

}  // namespace detail

// Trapezoid (T0 - T0) ∩ {y <= 0} by translates of -T0, T0 the unit right
// triangle; found by grid search with exact verification.
inline CoverPattern unit_triangle_trapezoid_cover(std::size_t max_k = 5) {
  return detail::cached("trapezoid/" + std::to_string(max_k), [&] {
    const ConvexPolygon& t = detail::unit_triangle();
    ConvexPolygon k = reflect(t);
    std::vector<Point> region = detail::halfplane_region(difference_body(t), {0, -1});
    for (Scalar step : {Scalar(1, 2), Scalar(1, 4)}) {
      if (auto offs = detail::search_cover(region, k, max_k, step)) {
        return detail::checked({region, k, *offs, Vec{0, -1}});
      }
    }
    return CoverPattern{region, k, {}, Vec{0, -1}};
  });
}

// Trapezoid cover for any triangle t with reference vertex ref: the unit
// pattern mapped back through the normalizing linear map. The half-plane
// normal is the image of (0, -1).
inline CoverPattern triangle_trapezoid_cover(const ConvexPolygon& t, const Point& ref) {
  if (t.size() != 3) throw Error(ErrorCode::UnsupportedBase, "expected a triangle");
  CoverPattern unit = unit_triangle_trapezoid_cover();
  if (unit.offsets.empty()) throw Error(ErrorCode::VerificationFailed, "no five-translate trapezoid cover found");
  AffineMap back = detail::triangle_frame(t, ref).inverse();
  CoverPattern p;
  for (const auto& v : unit.region) p.region.push_back(back(v));
  if (back.det() < 0) std::reverse(p.region.begin(), p.region.end());
  p.cover_body = reflect(t.translated(-ref));
  for (const auto& q : unit.offsets) p.offsets.push_back(back(q));
  // normal transforms by the inverse transpose
  AffineMap fwd = back.inverse();
  p.halfplane = Vec{-fwd.m10, -fwd.m11};
  return detail::checked(p);
}

// C0 - C0 by translates of -C0 with C0 = C - ref: the homothet pattern.
inline CoverPattern homothet_cover(const ConvexPolygon& c, const Point& ref) {
  ConvexPolygon c0 = c.translated(-ref);
  ConvexPolygon k = reflect(c0);
  std::vector<Point> region = difference_body(c0).vertices();
  auto sym = symmetry_center(c);
  if (sym && *sym == ref) {
    // 2*C0 with C0 centered
    CoverPattern p = seven_cover(c0);
    return p;
  }
  return detail::cached("homothet/" + detail::polygon_key(c0), [&] {
    if (c.size() == 3) {
      // normalize to the unit triangle, search, and map back
      AffineMap fwd = detail::triangle_frame(c, ref);
      AffineMap back = fwd.inverse();
      const ConvexPolygon& t = detail::unit_triangle();
      std::vector<Point> hex = difference_body(t).vertices();
      for (Scalar step : {Scalar(1, 2), Scalar(1, 4)}) {
        if (auto offs = detail::search_cover(hex, reflect(t), 12, step, 4)) {
          CoverPattern p{region, k, {}, std::nullopt};
          for (const auto& q : *offs) p.offsets.push_back(back(q));
          return detail::checked(p);
        }
      }
    }
    // C0 - C0 ⊆ Q - Q: grid of P-translates, P ⊆ -C0 ⊆ Q
    SandwichPair s = sandwich_parallelograms(k);
    Point q_corner = Scalar(-1) * (s.Q.e1 + s.Q.e2);  // Q - Q = 2Q0, centered at 0
    Point p_corner = s.P.center - Scalar(1, 2) * (s.P.e1 + s.P.e2);
    long na = ceil_long(2 * s.lambda1), nb = ceil_long(2 * s.lambda2);
    CoverPattern p{region, k, {}, std::nullopt};
    for (long a = 0; a < na; ++a)
      for (long b = 0; b < nb; ++b)
        p.offsets.push_back(q_corner + Scalar(a) * s.P.e1 + Scalar(b) * s.P.e2 - p_corner);
    return detail::checked(p);
  });
}

// ---- disks ---------------------------------------------------------------

struct SurdPoint {
  SurdSum x;
  SurdSum y;
};

inline SurdPoint operator+(const SurdPoint& a, const SurdPoint& b) { return {a.x + b.x, a.y + b.y}; }
inline SurdPoint operator*(const Scalar& s, const SurdPoint& a) { return {SurdSum(s) * a.x, SurdSum(s) * a.y}; }
inline SurdPoint surd_point(const Point& p) { return {SurdSum(p.x), SurdSum(p.y)}; }

// Disk pattern: region disk of radius 2r (optionally its lower half) around
// the origin, covered by disks of radius r centered at the offsets.
struct DiskPattern {
  Scalar r;
  bool lower_half = false;
  std::vector<SurdPoint> offsets;

  std::size_t size() const { return offsets.size(); }
};

inline DiskPattern disk_halfplane_pattern(const Scalar& r) {
  SurdSum s3 = SurdSum::sqrt(3);
  DiskPattern p{r, true, {}};
  p.offsets = {{0, 0}, {0, -s3}, {Scalar(3, 2), Scalar(-1, 2) * s3}, {Scalar(-3, 2), Scalar(-1, 2) * s3}};
  for (auto& q : p.offsets) q = r * q;
  return p;
}

inline DiskPattern disk_seven_pattern(const Scalar& r) {
  SurdSum s3 = SurdSum::sqrt(3);
  DiskPattern p{r, false, {{0, 0}}};
  for (int k = 0; k < 6; ++k) {
    // sqrt(3) * (cos k*pi/3, sin k*pi/3)
    static const int cx2[6] = {2, 1, -1, -2, -1, 1};  // 2 cos
    static const int sy2[6] = {0, 1, 1, 0, -1, -1};   // (2/sqrt 3) sin
    SurdPoint q{Scalar(cx2[k], 2) * s3, Scalar(3 * sy2[k], 2)};
    p.offsets.push_back(r * q);
  }
  return p;
}

namespace detail {

inline SurdSum sq_dist(const SurdPoint& a, const SurdPoint& b) {
  SurdSum dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Rational point on the unit circle within ~2^-40 of angle th.
inline Point unit_direction(double th) {
  bool flip = std::cos(th) < 0;
  if (flip) th -= std::numbers::pi;
  Scalar t = dyadic(std::tan(th / 2), 40);
  Scalar d = 1 + t * t;
  Point u{(1 - t * t) / d, 2 * t / d};
  return flip ? -u : u;
}

inline std::vector<double> split_angles(std::vector<double> a) {
  for (auto& x : a) {
    x = std::fmod(x, 2 * std::numbers::pi);
    if (x < 0) x += 2 * std::numbers::pi;
  }
  std::sort(a.begin(), a.end());
  std::vector<double> out;
  for (double x : a)
    if (out.empty() || x - out.back() > 1e-10) out.push_back(x);
  if (out.size() > 1 && out.back() - out.front() > 2 * std::numbers::pi - 1e-10) out.pop_back();
  return out;
}

// Angles (on circle a) where circles a and b cross.
inline void circle_crossings(double ax, double ay, double ra, double bx, double by, double rb,
                             std::vector<double>& out) {
  double dx = bx - ax, dy = by - ay, d = std::hypot(dx, dy);
  if (d == 0 || d > ra + rb || d < std::fabs(ra - rb)) return;
  double base = std::atan2(dy, dx);
  double c = std::clamp((ra * ra + d * d - rb * rb) / (2 * ra * d), -1.0, 1.0);
  double w = std::acos(c);
  out.push_back(base + w);
  out.push_back(base - w);
}

}  // namespace detail

// Exact-sign verification that the pattern covers its region. Boundary arcs
// between arrangement vertices are sampled at rational points: region-circle
// and diameter samples must lie in some closed cover disk, and cover-circle
// samples strictly inside the region must lie strictly inside another disk.
inline bool verify_disk_pattern(const DiskPattern& p) {
  const Scalar R = 2 * p.r;
  const SurdPoint origin{0, 0};
  const double rd = to_double(p.r), Rd = to_double(R);
  std::vector<std::pair<double, double>> cd;
  for (const auto& q : p.offsets) cd.push_back({q.x.approx(), q.y.approx()});
  const SurdSum r2(p.r * p.r);
  const SurdSum R2(R * R);

  auto in_closed = [&](const SurdPoint& x, std::size_t skip) {
    for (std::size_t j = 0; j < p.size(); ++j)
      if (j != skip && (r2 - detail::sq_dist(x, p.offsets[j])).sign() >= 0) return true;
    return false;
  };
  auto in_open = [&](const SurdPoint& x, std::size_t skip) {
    for (std::size_t j = 0; j < p.size(); ++j)
      if (j != skip && (r2 - detail::sq_dist(x, p.offsets[j])).sign() > 0) return true;
    return false;
  };
  auto strictly_in_region = [&](const SurdPoint& x) {
    if ((R2 - detail::sq_dist(x, origin)).sign() <= 0) return false;
    return !p.lower_half || x.y.sign() < 0;
  };

  // region circle
  {
    std::vector<double> a;
    for (const auto& [x, y] : cd) detail::circle_crossings(0, 0, Rd, x, y, rd, a);
    if (p.lower_half) {
      a.push_back(0);
      a.push_back(std::numbers::pi);
    }
    auto s = detail::split_angles(a);
    if (s.empty()) s.push_back(0);
    for (std::size_t i = 0; i < s.size(); ++i) {
      double lo = s[i], hi = i + 1 < s.size() ? s[i + 1] : s[0] + 2 * std::numbers::pi;
      double mid = (lo + hi) / 2;
      if (p.lower_half && std::sin(mid) > 0) continue;
      SurdPoint x = surd_point(R * detail::unit_direction(mid));
      if (!in_closed(x, p.size())) return false;
    }
  }
  // diameter and its end points
  if (p.lower_half) {
    std::vector<double> xs = {-Rd, Rd};
    for (const auto& [x, y] : cd) {
      double h = rd * rd - y * y;
      if (h >= 0) {
        xs.push_back(x - std::sqrt(h));
        xs.push_back(x + std::sqrt(h));
      }
    }
    std::sort(xs.begin(), xs.end());
    std::vector<Scalar> samples = {-R, R};
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      double lo = std::max(xs[i], -Rd), hi = std::min(xs[i + 1], Rd);
      if (hi - lo > 1e-10) samples.push_back(dyadic((lo + hi) / 2, 40));
    }
    for (const auto& sx : samples)
      if (!in_closed({sx, 0}, p.size())) return false;
  }
  // cover circles
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto [cx, cy] = cd[i];
    std::vector<double> a;
    detail::circle_crossings(cx, cy, rd, 0, 0, Rd, a);
    for (std::size_t j = 0; j < p.size(); ++j)
      if (j != i) detail::circle_crossings(cx, cy, rd, cd[j].first, cd[j].second, rd, a);
    if (p.lower_half && std::fabs(cy) <= rd) {
      double w = std::asin(std::clamp(-cy / rd, -1.0, 1.0));
      a.push_back(w);
      a.push_back(std::numbers::pi - w);
    }
    auto s = detail::split_angles(a);
    if (s.empty()) s.push_back(0);
    for (std::size_t k = 0; k < s.size(); ++k) {
      double lo = s[k], hi = k + 1 < s.size() ? s[k + 1] : s[0] + 2 * std::numbers::pi;
      SurdPoint x = p.offsets[i] + surd_point(p.r * detail::unit_direction((lo + hi) / 2));
      if (strictly_in_region(x) && !in_open(x, i)) return false;
    }
  }
  return true;
}

// ---- boxes ---------------------------------------------------------------

// Offsets q with [q - s, q] covering [-s, s]^d (homothets) or
// [-s, s]^(d-1) x [-s, 0] (translates, the last axis cut).
inline std::vector<Coords> box_pattern(const Coords& sides, bool halfplane) {
  const std::size_t d = sides.size();
  const std::size_t free_axes = halfplane ? d - 1 : d;
  std::vector<Coords> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << free_axes); ++mask) {
    Coords q(d, Scalar(0));
    for (std::size_t k = 0; k < free_axes; ++k)
      if (mask >> k & 1) q[k] = sides[k];
    out.push_back(std::move(q));
  }
  return out;
}

// Coordinate-compression check that the boxes [q - s, q] cover the region.
inline bool verify_box_pattern(const Coords& sides, bool halfplane, const std::vector<Coords>& offsets) {
  const std::size_t d = sides.size();
  std::vector<std::vector<Scalar>> cuts(d);
  for (std::size_t k = 0; k < d; ++k) {
    Scalar hi = (halfplane && k + 1 == d) ? Scalar(0) : sides[k];
    std::set<Scalar> c{-sides[k], hi};
    for (const auto& q : offsets)
      for (const Scalar& v : {Scalar(q[k] - sides[k]), q[k]})
        if (v > -sides[k] && v < hi) c.insert(v);
    cuts[k].assign(c.begin(), c.end());
  }
  std::vector<std::size_t> idx(d, 0);
  for (;;) {
    bool covered = false;
    for (const auto& q : offsets) {
      bool inside = true;
      for (std::size_t k = 0; k < d && inside; ++k) {
        Scalar mid = (cuts[k][idx[k]] + cuts[k][idx[k] + 1]) / 2;
        inside = q[k] - sides[k] <= mid && mid <= q[k];
      }
      if (inside) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
    std::size_t k = 0;
    while (k < d && ++idx[k] + 1 == cuts[k].size()) idx[k++] = 0;
    if (k == d) return true;
  }
}

// Upper bound on the covering number of C - C by translates of C in R^d.
inline Scalar kappa_upper_bound(int d, bool centrally_symmetric, std::optional<Scalar> theta = std::nullopt) {
  auto pw = [](long b, int e) {
    Integer r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return Scalar(r);
  };
  Scalar best = centrally_symmetric ? pw(5, d) : pw(2L * d, d);
  if (theta) {
    Scalar t = centrally_symmetric ? Scalar(pw(3, d) * *theta) : Scalar(pw(2, d) / (d + 1) * pw(3, d + 1) * *theta);
    best = min(best, t);
  }
  return best;
}

}  // namespace pierce
