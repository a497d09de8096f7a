#pragma once

// Exact transversal and packing numbers for small families.
//
// Candidate points: any nonempty intersection of members is a convex region
// whose boundary is made of member boundaries, so it contains a vertex of
// the arrangement (two boundaries crossing), or it equals a whole member
// (whose vertices or reference point are candidates). Boxes use the lower
// corner of the intersection, which has member lower corners as coordinates.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>

#include "pierce/bodies.hpp"
#include "pierce/surd.hpp"

namespace pierce {

using Mask = std::uint64_t;

struct OracleLimits {
  std::size_t tau_max = 16;
  std::size_t nu_max = 24;
};

struct OracleResult {
  int tau = 0;
  std::vector<Coords> tau_points;
  int nu = 0;
  std::vector<std::size_t> nu_members;
  std::size_t candidates_used = 0;
};

// A point with coordinates a + b*sqrt(D) sharing one radicand.
struct QuadPoint {
  QuadNumber x;
  QuadNumber y;
  Scalar D;

  double approx_x() const { return x.approx(D); }
  double approx_y() const { return y.approx(D); }
};

inline bool contains_point(const Disk& d, const QuadPoint& p) {
  QuadNumber dx{p.x.a - d.center.x, p.x.b};
  QuadNumber dy{p.y.a - d.center.y, p.y.b};
  QuadNumber v = mul(dx, dx, p.D) + mul(dy, dy, p.D);
  v.a -= d.radius * d.radius;
  return v.sign(p.D) <= 0;
}

// Boundary crossings of two circles (tangent points included).
inline std::vector<QuadPoint> circle_intersections(const Disk& c1, const Disk& c2) {
  Vec d = c2.center - c1.center;
  Scalar d2 = dot(d, d);
  if (d2 == 0) return {};
  Scalar a = (c1.radius * c1.radius - c2.radius * c2.radius + d2) / (2 * d2);
  Scalar h2 = c1.radius * c1.radius / d2 - a * a;
  if (h2 < 0) return {};
  Point m = c1.center + a * d;
  if (h2 == 0) return {QuadPoint{{m.x, 0}, {m.y, 0}, 0}};
  // m ± sqrt(h2) * perp(d)
  return {QuadPoint{{m.x, -d.y}, {m.y, d.x}, h2}, QuadPoint{{m.x, d.y}, {m.y, -d.x}, h2}};
}

// A rational point inside every disk, near (px, py).
inline std::optional<Point> rational_point_in_disks(const std::vector<Disk>& ds, double px, double py) {
  auto inside = [&](const Point& q) {
    for (const auto& d : ds)
      if (!contains_point(d, q)) return false;
    return true;
  };
  for (int bits : {20, 32, 44, 52}) {
    Point q{dyadic(px, bits), dyadic(py, bits)};
    if (inside(q)) return q;
  }
  // tangency points are rational
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (std::size_t j = i + 1; j < ds.size(); ++j)
      for (const auto& t : circle_intersections(ds[i], ds[j]))
        if (t.D == 0 && inside({t.x.a, t.y.a})) return Point{t.x.a, t.y.a};
  // push inward along normals of the disks whose boundary passes through p
  std::vector<std::pair<double, double>> dirs, tight;
  double mx = 0, my = 0, rmin = 1e300;
  for (const auto& d : ds) {
    double r = to_double(d.radius);
    double cx = to_double(d.center.x) - px, cy = to_double(d.center.y) - py;
    double n = std::hypot(cx, cy);
    rmin = std::min(rmin, r);
    mx += cx / ds.size();
    my += cy / ds.size();
    if (n > 0 && std::abs(n - r) < 1e-7 * (1 + r)) tight.push_back({cx / n, cy / n});
  }
  auto push = [&](double x, double y) {
    double n = std::hypot(x, y);
    if (n > 0) dirs.push_back({x / n, y / n});
  };
  double sx = 0, sy = 0;
  for (const auto& [x, y] : tight) sx += x, sy += y;
  push(sx, sy);
  for (std::size_t i = 0; i < tight.size(); ++i)
    for (std::size_t j = i + 1; j < tight.size(); ++j) push(tight[i].first + tight[j].first, tight[i].second + tight[j].second);
  for (const auto& [x, y] : tight) push(x, y);
  push(mx, my);
  for (double eta : {1e-2, 1e-3, 1e-5, 1e-7, 1e-9, 1e-11}) {
    for (const auto& [ux, uy] : dirs) {
      Point q{dyadic(px + eta * rmin * ux, 52), dyadic(py + eta * rmin * uy, 52)};
      if (inside(q)) return q;
    }
  }
  return std::nullopt;
}

namespace detail {

// Intersection point of two closed segments when they meet in one point.
inline std::optional<Point> segment_crossing(const Point& a, const Point& b, const Point& c, const Point& d) {
  Vec r = b - a, s = d - c;
  Scalar den = cross(r, s);
  if (den == 0) return std::nullopt;
  Scalar t = cross(c - a, s) / den;
  Scalar u = cross(c - a, r) / den;
  if (t < 0 || t > 1 || u < 0 || u > 1) return std::nullopt;
  return a + t * r;
}

struct Candidate {
  Mask mask = 0;
  std::function<std::optional<Coords>()> point;
};

inline Mask hit_mask(const std::vector<Body>& bodies, const Coords& p) {
  Mask m = 0;
  for (std::size_t i = 0; i < bodies.size(); ++i)
    if (contains_point(bodies[i], p)) m |= Mask{1} << i;
  return m;
}

}  // namespace detail

inline std::vector<detail::Candidate> candidate_hit_sets(const Family& f, std::size_t limit = 16) {
  if (f.size() > limit || f.size() > 64) throw Error(ErrorCode::TooLarge, "family exceeds the oracle limit");
  auto bodies = realize_all(f);
  std::vector<detail::Candidate> out;
  auto add_rational = [&](const Coords& p) {
    Mask m = detail::hit_mask(bodies, p);
    if (m) out.push_back({m, [p] { return std::optional<Coords>(p); }});
  };
  switch (f.base.kind()) {
    case BodyKind::Polygon: {
      std::vector<ConvexPolygon> polys;
      for (const auto& b : bodies) polys.push_back(std::get<ConvexPolygon>(b));
      for (std::size_t i = 0; i < polys.size(); ++i) {
        add_rational(f.reference(i));
        for (const auto& v : polys[i].vertices()) add_rational(coords(v));
      }
      for (std::size_t i = 0; i < polys.size(); ++i)
        for (std::size_t j = i + 1; j < polys.size(); ++j) {
          if (!intersects(polys[i], polys[j])) continue;
          for (std::size_t a = 0; a < polys[i].size(); ++a)
            for (std::size_t b = 0; b < polys[j].size(); ++b)
              if (auto x = detail::segment_crossing(polys[i][a], polys[i][a + 1], polys[j][b], polys[j][b + 1]))
                add_rational(coords(*x));
        }
      break;
    }
    case BodyKind::Box: {
      std::size_t d = f.base.dim();
      std::vector<std::vector<Scalar>> axis(d);
      for (const auto& b : bodies)
        for (std::size_t k = 0; k < d; ++k) axis[k].push_back(std::get<Box>(b).lo[k]);
      for (auto& a : axis) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
      }
      std::vector<std::size_t> idx(d, 0);
      for (;;) {
        Coords p(d);
        for (std::size_t k = 0; k < d; ++k) p[k] = axis[k][idx[k]];
        add_rational(p);
        std::size_t k = 0;
        while (k < d && ++idx[k] == axis[k].size()) idx[k++] = 0;
        if (k == d) break;
      }
      break;
    }
    case BodyKind::Disk: {
      std::vector<Disk> disks;
      for (const auto& b : bodies) disks.push_back(std::get<Disk>(b));
      for (const auto& d : disks) add_rational(coords(d.center));
      for (std::size_t i = 0; i < disks.size(); ++i)
        for (std::size_t j = i + 1; j < disks.size(); ++j)
          for (const auto& q : circle_intersections(disks[i], disks[j])) {
            Mask m = 0;
            for (std::size_t k = 0; k < disks.size(); ++k)
              if (contains_point(disks[k], q)) m |= Mask{1} << k;
            if (!m) continue;
            out.push_back({m, [disks, m, q]() -> std::optional<Coords> {
                             std::vector<Disk> sel;
                             for (std::size_t k = 0; k < disks.size(); ++k)
                               if (m >> k & 1) sel.push_back(disks[k]);
                             if (q.D == 0) return coords({q.x.a, q.y.a});
                             auto p = rational_point_in_disks(sel, q.approx_x(), q.approx_y());
                             if (!p) return std::nullopt;
                             return coords(*p);
                           }});
          }
      break;
    }
  }
  return out;
}

// Maximal hit sets only, deduplicated; order is deterministic.
inline std::vector<detail::Candidate> reduce_candidates(std::vector<detail::Candidate> c) {
  std::stable_sort(c.begin(), c.end(), [](const auto& a, const auto& b) {
    int pa = std::popcount(a.mask), pb = std::popcount(b.mask);
    return pa != pb ? pa > pb : a.mask < b.mask;
  });
  std::vector<detail::Candidate> out;
  for (auto& x : c) {
    bool dominated = false;
    for (const auto& y : out)
      if ((x.mask & y.mask) == x.mask) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(std::move(x));
  }
  return out;
}

// Minimum number of sets covering `universe`; returns chosen set indices.
inline std::vector<std::size_t> min_set_cover(const std::vector<Mask>& sets, Mask universe) {
  const std::size_t n = std::bit_width(universe);
  std::vector<std::vector<std::size_t>> covering(n);
  for (std::size_t s = 0; s < sets.size(); ++s)
    for (std::size_t e = 0; e < n; ++e)
      if (sets[s] >> e & 1) covering[e].push_back(s);
  for (std::size_t e = 0; e < n; ++e)
    if ((universe >> e & 1) && covering[e].empty())
      throw Error(ErrorCode::SearchFailed, "element without a covering candidate");

  // greedy upper bound
  std::vector<std::size_t> best;
  {
    Mask left = universe;
    while (left) {
      std::size_t pick = 0;
      int gain = -1;
      for (std::size_t s = 0; s < sets.size(); ++s) {
        int g = std::popcount(sets[s] & left);
        if (g > gain) {
          gain = g;
          pick = s;
        }
      }
      best.push_back(pick);
      left &= ~sets[pick];
    }
  }
  // elements pairwise never covered by one set each need their own set
  auto lower_bound = [&](Mask left) {
    int lb = 0;
    while (left) {
      std::size_t e = std::countr_zero(left);
      Mask together = 0;
      for (auto s : covering[e]) together |= sets[s];
      left &= ~together;
      left &= ~(Mask{1} << e);
      ++lb;
    }
    return lb;
  };
  std::vector<std::size_t> chosen;
  std::function<void(Mask)> rec = [&](Mask left) {
    if (!left) {
      if (chosen.size() < best.size()) best = chosen;
      return;
    }
    if (chosen.size() + lower_bound(left) >= best.size()) return;
    std::size_t pick_e = 0, fewest = SIZE_MAX;
    for (Mask m = left; m; m &= m - 1) {
      std::size_t e = std::countr_zero(m);
      if (covering[e].size() < fewest) {
        fewest = covering[e].size();
        pick_e = e;
      }
    }
    std::vector<std::size_t> opts = covering[pick_e];
    std::stable_sort(opts.begin(), opts.end(), [&](std::size_t a, std::size_t b) {
      return std::popcount(sets[a] & left) > std::popcount(sets[b] & left);
    });
    for (auto s : opts) {
      chosen.push_back(s);
      rec(left & ~sets[s]);
      chosen.pop_back();
    }
  };
  rec(universe);
  return best;
}

// Maximum independent set of a graph on <= 64 vertices given as bitmasks.
inline std::vector<std::size_t> max_independent_set(const std::vector<Mask>& adj) {
  const std::size_t n = adj.size();
  Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  Mask best_set = 0;
  int best = 0;
  // greedy clique cover of `cand` bounds the independent set inside it
  auto clique_cover = [&](Mask cand) {
    int k = 0;
    while (cand) {
      Mask clique = 0, pool = cand;
      while (pool) {
        std::size_t v = std::countr_zero(pool);
        clique |= Mask{1} << v;
        pool &= adj[v];
        pool &= ~clique;
      }
      cand &= ~clique;
      ++k;
    }
    return k;
  };
  std::function<void(Mask, Mask)> rec = [&](Mask cur, Mask cand) {
    int size = std::popcount(cur);
    if (!cand) {
      if (size > best) {
        best = size;
        best_set = cur;
      }
      return;
    }
    if (size + clique_cover(cand) <= best) return;
    // branch on the candidate of highest degree within cand
    std::size_t v = std::countr_zero(cand);
    int deg = -1;
    for (Mask m = cand; m; m &= m - 1) {
      std::size_t u = std::countr_zero(m);
      int d = std::popcount(adj[u] & cand);
      if (d > deg) {
        deg = d;
        v = u;
      }
    }
    Mask bit = Mask{1} << v;
    rec(cur | bit, cand & ~adj[v] & ~bit);
    if (deg > 0) rec(cur, cand & ~bit);
  };
  rec(0, all);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (best_set >> i & 1) out.push_back(i);
  return out;
}

inline std::vector<Mask> adjacency_masks(const IntersectionGraph& g) {
  std::vector<Mask> adj(g.size(), 0);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (auto j : g.adj[i]) adj[i] |= Mask{1} << j;
  return adj;
}

inline std::pair<int, std::vector<Coords>> exact_tau(const Family& f, const OracleLimits& lim = {},
                                                     std::size_t* candidates_used = nullptr) {
  if (f.size() == 0) return {0, {}};
  auto cands = reduce_candidates(candidate_hit_sets(f, lim.tau_max));
  if (candidates_used) *candidates_used = cands.size();
  std::vector<Mask> sets;
  for (const auto& c : cands) sets.push_back(c.mask);
  Mask universe = f.size() == 64 ? ~Mask{0} : (Mask{1} << f.size()) - 1;
  auto pick = min_set_cover(sets, universe);
  std::vector<Coords> pts;
  for (auto s : pick) {
    auto p = cands[s].point();
    if (!p) throw Error(ErrorCode::PrecisionExhausted, "could not place a rational point in the hit region");
    pts.push_back(*p);
  }
  return {static_cast<int>(pick.size()), pts};
}

inline std::pair<int, std::vector<std::size_t>> exact_nu(const Family& f, const OracleLimits& lim = {}) {
  if (f.size() > lim.nu_max || f.size() > 64) throw Error(ErrorCode::TooLarge, "family exceeds the oracle limit");
  auto mis = max_independent_set(adjacency_masks(intersection_graph(f)));
  return {static_cast<int>(mis.size()), mis};
}

inline OracleResult oracle(const Family& f, const OracleLimits& lim = {}) {
  OracleResult r;
  auto [tau, pts] = exact_tau(f, lim, &r.candidates_used);
  r.tau = tau;
  r.tau_points = std::move(pts);
  auto [nu, members] = exact_nu(f, lim);
  r.nu = nu;
  r.nu_members = std::move(members);
  return r;
}

}  // namespace pierce
