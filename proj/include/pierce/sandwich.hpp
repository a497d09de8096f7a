#pragma once

// Parallel parallelogram pairs P ⊆ C ⊆ Q and inscribed/circumscribed
// centrally symmetric hexagons.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <set>

#include "pierce/geometry.hpp"

namespace pierce {

// center ± e1/2 ± e2/2
struct Parallelogram {
  Point center;
  Vec e1;
  Vec e2;

  ConvexPolygon polygon() const {
    Point h1 = Scalar(1, 2) * e1, h2 = Scalar(1, 2) * e2;
    std::vector<Point> v = {center - h1 - h2, center + h1 - h2, center + h1 + h2, center - h1 + h2};
    if (cross(e1, e2) < 0) std::reverse(v.begin(), v.end());
    return ConvexPolygon(std::move(v));
  }
};

inline int gamma_of(const Scalar& lambda1, const Scalar& lambda2) {
  return static_cast<int>(ceil_long(lambda2) * ceil_long(lambda1 + 1));
}

struct SandwichPair {
  Parallelogram P;
  Parallelogram Q;
  Scalar lambda1;
  Scalar lambda2;
  int gamma = 0;
};

// Exact check of P ⊆ C ⊆ Q, parallel edges with the stated ratios and gamma.
inline bool verify_sandwich(const SandwichPair& s, const ConvexPolygon& c) {
  if (s.lambda1 < 1 || s.lambda2 < 1) return false;
  if (s.Q.e1 != s.lambda1 * s.P.e1 || s.Q.e2 != s.lambda2 * s.P.e2) return false;
  if (s.gamma != gamma_of(s.lambda1, s.lambda2)) return false;
  auto p = s.P.polygon();
  auto q = s.Q.polygon();
  for (const auto& v : p.vertices())
    if (!contains_point(c, v)) return false;
  for (const auto& v : c.vertices())
    if (!contains_point(q, v)) return false;
  return true;
}

namespace detail {

using DPoint = std::array<double, 2>;

inline std::vector<DPoint> clip_d(const std::vector<DPoint>& ring, DPoint o, DPoint dir, double slack) {
  std::vector<DPoint> out;
  auto ev = [&](const DPoint& p) { return dir[0] * (p[1] - o[1]) - dir[1] * (p[0] - o[0]) + slack; };
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const DPoint& a = ring[i];
    const DPoint& b = ring[(i + 1) % ring.size()];
    double ea = ev(a), eb = ev(b);
    if (ea >= 0) out.push_back(a);
    if ((ea >= 0) != (eb >= 0)) {
      double t = ea / (ea - eb);
      out.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])});
    }
  }
  return out;
}

// Canonical representative of the direction of v up to sign and scale.
inline Vec canonical_direction(Vec v) {
  Scalar n = abs(v.x) + abs(v.y);
  v = Scalar(1) / n * v;
  if (v.x < 0 || (v.x == 0 && v.y < 0)) v = -v;
  return v;
}

// Lower-left corner x with [x, x+w] inside c, or nullopt.
inline std::optional<Point> fit_rectangle(const ConvexPolygon& c, const std::vector<DPoint>& cd, const Scalar& wa,
                                          const Scalar& wb) {
  const double da = to_double(wa), db = to_double(wb);
  const DPoint shifts[3] = {{da, 0}, {0, db}, {da, db}};
  double scale = 0;
  for (const auto& p : cd) scale = std::max({scale, std::fabs(p[0]), std::fabs(p[1])});
  double slack = 1e-9 * (1 + scale) * (1 + scale);
  std::vector<DPoint> ring = cd;
  for (const auto& s : shifts) {
    for (std::size_t i = 0; i < cd.size() && !ring.empty(); ++i) {
      const DPoint& a = cd[i];
      const DPoint& b = cd[(i + 1) % cd.size()];
      ring = clip_d(ring, {a[0] - s[0], a[1] - s[1]}, {b[0] - a[0], b[1] - a[1]}, slack);
    }
  }
  if (ring.empty()) return std::nullopt;
  Region r{c.vertices()};
  r = intersection(r, c.translated({-wa, 0}));
  if (r.empty()) return std::nullopt;
  r = intersection(r, c.translated({0, -wb}));
  if (r.empty()) return std::nullopt;
  r = intersection(r, c.translated({-wa, -wb}));
  if (r.empty()) return std::nullopt;
  return r.ring.front();
}

}  // namespace detail

// Searches direction pairs taken from edge and vertex-difference directions
// for the smallest gamma with integer ratios at most 2.
inline SandwichPair sandwich_parallelograms(const ConvexPolygon& c) {
  std::set<Point> dirset;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) dirset.insert(detail::canonical_direction(c[j] - c[i]));
  std::vector<Vec> dirs(dirset.begin(), dirset.end());

  struct Frame {
    AffineMap to_world;
    ConvexPolygon local;
    std::vector<detail::DPoint> local_d;
    Interval a, b;
  };
  std::vector<std::optional<Frame>> frames(dirs.size() * dirs.size());
  auto frame = [&](std::size_t i, std::size_t j) -> const Frame& {
    auto& slot = frames[i * dirs.size() + j];
    if (!slot) {
      AffineMap m = AffineMap::from_columns(dirs[i], dirs[j]);
      ConvexPolygon local = apply(m.inverse(), c);
      std::vector<detail::DPoint> d;
      for (const auto& p : local.vertices()) d.push_back({to_double(p.x), to_double(p.y)});
      slot = Frame{m, local, std::move(d), x_extent(local), y_extent(local)};
    }
    return *slot;
  };

  // (lambda1, lambda2) in increasing gamma order
  const std::array<std::pair<int, int>, 4> levels = {{{1, 1}, {2, 1}, {1, 2}, {2, 2}}};
  for (const auto& [l1, l2] : levels) {
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      for (std::size_t j = 0; j < dirs.size(); ++j) {
        if (i == j) continue;
        const Frame& f = frame(i, j);
        Scalar wa = f.a.length() / l1, wb = f.b.length() / l2;
        auto corner = detail::fit_rectangle(f.local, f.local_d, wa, wb);
        if (!corner) continue;
        SandwichPair s;
        Vec u = f.to_world.linear({1, 0}), v = f.to_world.linear({0, 1});
        s.P = {f.to_world(*corner + Point{wa / 2, wb / 2}), wa * u, wb * v};
        s.Q = {f.to_world({(f.a.lo + f.a.hi) / 2, (f.b.lo + f.b.hi) / 2}), f.a.length() * u,
               f.b.length() * v};
        s.lambda1 = l1;
        s.lambda2 = l2;
        s.gamma = gamma_of(s.lambda1, s.lambda2);
        if (!verify_sandwich(s, c)) throw Error(ErrorCode::VerificationFailed, "sandwich pair failed exact check");
        return s;
      }
    }
  }
  throw Error(ErrorCode::SearchFailed, "no parallelogram pair with ratios at most 2");
}

// H_in is the largest inscribed affinely regular hexagon found by the chord
// sweep; H_out is the smallest circumscribed centrally symmetric hexagon among
// the candidates tried. H_out may degenerate to a parallelogram.
struct HexagonSandwich {
  ConvexPolygon H_in;
  ConvexPolygon H_out;
  Scalar area_ratio;
};

namespace detail {

// x-range of c on the horizontal line y = h.
inline std::optional<Interval> chord(const ConvexPolygon& c, const Scalar& h) {
  std::optional<Interval> out;
  auto add = [&](const Scalar& x) {
    if (!out) out = Interval{x, x};
    out->lo = min(out->lo, x);
    out->hi = max(out->hi, x);
  };
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Point& a = c[i];
    const Point& b = c[i + 1];
    if (a.y == h) add(a.x);
    if ((a.y < h && h < b.y) || (b.y < h && h < a.y)) add(a.x + (h - a.y) * (b.x - a.x) / (b.y - a.y));
  }
  return out;
}

// Largest mu with some vertex of c on the boundary of mu*hex (hex centered at 0).
inline Scalar gauge_max(const ConvexPolygon& hex, const ConvexPolygon& c) {
  Scalar mu = 0;
  for (const auto& q : c.vertices()) {
    for (std::size_t i = 0; i < hex.size(); ++i) {
      Vec e = hex.edge(i);
      Scalar g = cross(e, q) / cross(e, hex[i]);
      mu = max(mu, g);
    }
  }
  return mu;
}

// Affinely regular hexagon inscribed in s0 (centered at the origin) with
// two opposite vertices on the line through 0 in direction u.
inline ConvexPolygon inscribed_hexagon(const ConvexPolygon& s0, const Vec& u) {
  AffineMap frame = AffineMap::from_columns(u, perp(u));
  ConvexPolygon t = apply(frame.inverse(), s0);
  Scalar rho = chord(t, 0)->hi;
  Scalar top = y_extent(t).hi;
  auto width = [&](const Scalar& h) { return chord(t, h)->length(); };
  Point p1, p6;
  if (width(top) >= rho) {
    Interval iv = *chord(t, top);
    Scalar mid = (iv.lo + iv.hi) / 2;
    p1 = {mid + rho / 2, top};
    p6 = {mid - rho / 2, top};
  } else {
    std::set<Scalar> hs{Scalar(0), top};
    for (const auto& v : t.vertices())
      if (v.y > 0) hs.insert(v.y);
    std::vector<Scalar> levels(hs.begin(), hs.end());
    Scalar h = top;
    for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
      Scalar wa = width(levels[k]), wb = width(levels[k + 1]);
      if (wa >= rho && rho >= wb) {
        h = wa == wb ? levels[k] : levels[k] + (wa - rho) * (levels[k + 1] - levels[k]) / (wa - wb);
        break;
      }
    }
    Interval iv = *chord(t, h);
    p1 = {iv.hi, h};
    p6 = {iv.lo, h};
  }
  Point p2{rho, 0};
  std::vector<Point> hex = {p2, p1, p6, -p2, -p1, -p6};
  for (auto& p : hex) p = frame(p);
  return ConvexPolygon(std::move(hex));
}

// Intersection of the strips supporting c (centered at the origin) that run
// parallel to the given directions.
inline ConvexPolygon strip_intersection(const std::vector<Vec>& dirs, const ConvexPolygon& c) {
  Scalar r = 1;
  for (const auto& v : c.vertices()) r = max(r, abs(v.x) + abs(v.y));
  r *= 4;
  std::vector<Point> ring = {{-r, -r}, {r, -r}, {r, r}, {-r, r}};
  for (const auto& d : dirs) {
    Vec n = perp(d);
    Scalar h = 0;
    for (const auto& v : c.vertices()) h = max(h, dot(n, v));
    Point o = h / dot(n, n) * n;
    ring = clip(ring, HalfPlane{o, -d});
    ring = clip(ring, HalfPlane{-o, d});
  }
  return ConvexPolygon(normalize_ring(ring));
}

}  // namespace detail

// Affinely regular: consecutive vertices a, b, c, d satisfy (a - b) + (c - b) = d - c.
inline bool is_affinely_regular_hexagon(const ConvexPolygon& h) {
  if (h.size() != 6 || !symmetry_center(h)) return false;
  for (std::size_t i = 0; i < 6; ++i)
    if ((h[i] - h[i + 1]) + (h[i + 2] - h[i + 1]) != h[i + 3] - h[i + 2]) return false;
  return true;
}

inline HexagonSandwich hexagon_sandwich(const ConvexPolygon& s, int uniform_directions = 64) {
  auto center = symmetry_center(s);
  if (!center) throw Error(ErrorCode::NotCentrallySymmetric, "polygon is not centrally symmetric");
  ConvexPolygon s0 = s.translated(-*center);
  std::vector<Vec> dirs;
  for (std::size_t i = 0; i < s0.size(); ++i) {
    dirs.push_back(s0[i]);
    dirs.push_back(perp(s0.edge(i)));
  }
  for (int k = 0; k < uniform_directions; ++k) {
    double th = std::numbers::pi * k / uniform_directions;
    dirs.push_back({dyadic(std::cos(th), 20), dyadic(std::sin(th), 20)});
  }
  std::optional<ConvexPolygon> hin;
  Scalar hin_area = 0;
  for (const auto& u : dirs) {
    if (u == Point{0, 0}) continue;
    ConvexPolygon h = detail::inscribed_hexagon(s0, u);
    Scalar a = area(h);
    if (!hin || a > hin_area) {
      hin = h;
      hin_area = a;
    }
  }
  // Outer candidates: the dilate of H_in, the strips along its short
  // diagonals, and every triple of edge-parallel strips of s.
  ConvexPolygon hout = hin->scaled(detail::gauge_max(*hin, s0));
  auto consider = [&](const ConvexPolygon& c) {
    if (area(c) < area(hout)) hout = c;
  };
  consider(detail::strip_intersection({(*hin)[1] - (*hin)[5], (*hin)[2] - (*hin)[0], (*hin)[3] - (*hin)[1]}, s0));
  const std::size_t m = s0.size() / 2;
  if (m <= 3) {
    consider(s0);
  } else {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (std::size_t k = j + 1; k < m; ++k)
          consider(detail::strip_intersection({s0.edge(i), s0.edge(j), s0.edge(k)}, s0));
  }
  return {hin->translated(*center), hout.translated(*center), hin_area / area(hout)};
}

// gamma <= 3 for a centrally symmetric hexagon: P spans vertices i, i+2,
// i+3, i+5 and Q is the smallest parallel parallelogram around h.
inline SandwichPair hexagon_sandwich_special(const ConvexPolygon& h) {
  if (h.size() != 6) throw Error(ErrorCode::NotHexagon, "expected six vertices");
  if (!symmetry_center(h)) throw Error(ErrorCode::NotCentrallySymmetric, "hexagon is not centrally symmetric");
  std::optional<SandwichPair> best;
  for (std::size_t r = 0; r < 3; ++r) {
    Vec e1 = h[r + 2] - h[r], e2 = h[r + 5] - h[r];
    AffineMap m = AffineMap::from_columns(e1, e2, h[r]);
    ConvexPolygon local = apply(m.inverse(), h);
    Interval a = x_extent(local), b = y_extent(local);
    SandwichPair s;
    s.P = {h[r] + Scalar(1, 2) * (e1 + e2), e1, e2};
    s.Q = {m({(a.lo + a.hi) / 2, (b.lo + b.hi) / 2}), a.length() * e1, b.length() * e2};
    s.lambda1 = a.length();
    s.lambda2 = b.length();
    if (gamma_of(s.lambda2, s.lambda1) < gamma_of(s.lambda1, s.lambda2)) {
      std::swap(s.P.e1, s.P.e2);
      std::swap(s.Q.e1, s.Q.e2);
      std::swap(s.lambda1, s.lambda2);
    }
    s.gamma = gamma_of(s.lambda1, s.lambda2);
    if (!best || s.gamma < best->gamma) best = s;
  }
  if (best->gamma > 3 || !verify_sandwich(*best, h))
    throw Error(ErrorCode::SearchFailed, "hexagon sandwich exceeded gamma 3");
  return *best;
}

}  // namespace pierce
