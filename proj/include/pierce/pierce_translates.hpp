#pragma once

// Piercing algorithms for families of translates: greedy topmost-seed
// clustering with half-plane cover patterns, the line-grid method driven by a
// parallelogram sandwich, the two-point hexagon construction and lattice
// piercing.

#include <map>
#include <random>

#include "pierce/certificate.hpp"
#include "pierce/covers.hpp"
#include "pierce/oracle.hpp"
#include "pierce/sandwich.hpp"

namespace pierce {

struct GreedyOptions {
  std::size_t refine_budget = 12;  // exact optimum for the last cluster up to this size
};

namespace detail {

inline void require_translates(const Family& f) {
  if (f.kind != FamilyKind::Translates) throw Error(ErrorCode::InvalidFamily, "expected a family of translates");
  if (f.size() == 0) throw Error(ErrorCode::InvalidFamily, "family is empty");
}

inline std::vector<BoundsD> all_bounds(const std::vector<Body>& bodies) {
  std::vector<BoundsD> out;
  out.reserve(bodies.size());
  for (const auto& b : bodies) out.push_back(bounds(b));
  return out;
}

using DiskD = std::array<double, 3>;  // center x, y, radius

// Empty unless every body is a disk.
inline std::vector<DiskD> approx_disks(const std::vector<Body>& bodies) {
  std::vector<DiskD> out;
  out.reserve(bodies.size());
  for (const auto& b : bodies) {
    const Disk* d = std::get_if<Disk>(&b);
    if (!d) return {};
    out.push_back({to_double(d->center.x), to_double(d->center.y), to_double(d->radius)});
  }
  return out;
}

// +1 surely meet, -1 surely apart, 0 too close to call in doubles.
inline int disk_meet_hint(const DiskD& a, const DiskD& b) {
  double dx = a[0] - b[0], dy = a[1] - b[1], s = a[2] + b[2];
  double d2 = dx * dx + dy * dy, s2 = s * s, tol = 1e-9 * (1 + d2 + s2);
  if (d2 < s2 - tol) return 1;
  if (d2 > s2 + tol) return -1;
  return 0;
}

// Greedy partition: take members in the given order, each still-unassigned
// one becomes a seed and absorbs every unassigned member meeting it.
inline std::vector<Cluster> greedy_clusters(const std::vector<Body>& bodies, const std::vector<std::size_t>& order) {
  auto boxes = all_bounds(bodies);
  GridIndex index(boxes);
  auto approx = approx_disks(bodies);
  std::vector<char> taken(bodies.size(), 0);
  std::vector<Cluster> out;
  for (auto i : order) {
    if (taken[i]) continue;
    Cluster c;
    c.seed = i;
    for (auto j : index.query(boxes[i])) {
      if (taken[j]) continue;
      int hint = approx.empty() || j == i ? 0 : disk_meet_hint(approx[i], approx[j]);
      if (hint < 0) continue;
      if (j == i || hint > 0 || intersects(bodies[i], bodies[j])) {
        taken[j] = 1;
        c.members.push_back(j);
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

// Order by decreasing height, then x, then index.
inline std::vector<std::size_t> seed_order(const std::vector<Scalar>& height, const Family& f) {
  std::vector<std::size_t> order(f.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  // rounding to double is monotone, so distinct doubles decide exactly
  std::vector<double> hd(height.size());
  for (std::size_t i = 0; i < hd.size(); ++i) hd[i] = to_double(height[i]);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (hd[a] != hd[b]) return hd[a] > hd[b];
    if (height[a] != height[b]) return height[a] > height[b];
    const Coords &ta = f.members[a].t, &tb = f.members[b].t;
    for (std::size_t k = 0; k < ta.size(); ++k)
      if (ta[k] != tb[k]) return ta[k] < tb[k];
    return a < b;
  });
  return order;
}

// Pierce a cluster with anchor + offsets, keeping only offsets that are used.
inline void pierce_rational(const std::vector<Body>& bodies, Cluster& c, const Coords& anchor,
                            const std::vector<Coords>& offsets, std::vector<Coords>& points) {
  std::vector<Coords> cand;
  for (const auto& q : offsets) {
    Coords p(anchor.size());
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = anchor[k] + q[k];
    cand.push_back(std::move(p));
  }
  std::vector<char> used(cand.size(), 0);
  for (auto j : c.members) {
    bool hit = false;
    for (std::size_t k = 0; k < cand.size() && !hit; ++k)
      if (contains_point(bodies[j], cand[k])) used[k] = hit = true;
    if (!hit) throw Error(ErrorCode::VerificationFailed, "cover pattern missed a cluster member");
  }
  c.pattern_size = 0;
  for (std::size_t k = 0; k < cand.size(); ++k)
    if (used[k]) {
      points.push_back(cand[k]);
      ++c.pattern_size;
    }
}

// Disks: pattern points may be irrational. Members are grouped by the first
// pattern point they contain, then each group gets a rational point in the
// intersection of its disks.
inline void pierce_disks(const std::vector<Body>& bodies, Cluster& c, const Point& center,
                         const std::vector<SurdPoint>& offsets, std::vector<Coords>& points,
                         const std::vector<DiskD>* approx_members = nullptr) {
  std::vector<SurdPoint> cand;
  std::vector<std::pair<double, double>> approx;
  for (const auto& q : offsets) {
    cand.push_back(surd_point(center) + q);
    approx.push_back({cand.back().x.approx(), cand.back().y.approx()});
  }
  std::vector<std::vector<Disk>> groups(cand.size());
  for (auto j : c.members) {
    const Disk& d = std::get<Disk>(bodies[j]);
    double cx, cy, r;
    if (approx_members) {
      cx = (*approx_members)[j][0], cy = (*approx_members)[j][1], r = (*approx_members)[j][2];
    } else {
      cx = to_double(d.center.x), cy = to_double(d.center.y), r = to_double(d.radius);
    }
    bool hit = false;
    for (std::size_t k = 0; k < cand.size() && !hit; ++k) {
      double dist = std::hypot(approx[k].first - cx, approx[k].second - cy);
      double tol = 1e-9 * (1 + r + std::fabs(cx) + std::fabs(cy));
      if (dist > r + tol) continue;
      if (dist < r - tol) {
        hit = true;
      } else {
        SurdSum dx = cand[k].x - SurdSum(d.center.x), dy = cand[k].y - SurdSum(d.center.y);
        hit = (dx * dx + dy * dy - SurdSum(d.radius * d.radius)).sign() <= 0;
      }
      if (hit) groups[k].push_back(d);
    }
    if (!hit) throw Error(ErrorCode::VerificationFailed, "disk pattern missed a cluster member");
  }
  c.pattern_size = 0;
  for (std::size_t k = 0; k < cand.size(); ++k) {
    if (groups[k].empty()) continue;
    auto p = rational_point_in_disks(groups[k], approx[k].first, approx[k].second);
    if (!p) throw Error(ErrorCode::PrecisionExhausted, "could not rationalize a disk pattern point");
    points.push_back(coords(*p));
    ++c.pattern_size;
  }
}

// Replace the last cluster's points by an exact optimum when it is small.
inline void refine_last(const Family& f, PierceCertificate& cert, std::size_t budget) {
  if (cert.clusters.empty()) return;
  Cluster& last = cert.clusters.back();
  if (last.members.size() > budget || last.pattern_size <= 1) return;
  std::pair<int, std::vector<Coords>> best;
  try {
    best = exact_tau(f.subfamily(last.members), OracleLimits{budget, budget});
  } catch (const Error&) {
    return;
  }
  if (static_cast<std::size_t>(best.first) >= last.pattern_size) return;
  cert.points.resize(cert.points.size() - last.pattern_size);
  for (auto& p : best.second) cert.points.push_back(std::move(p));
  last.pattern_size = best.second.size();
  cert.refined = true;
}

// Grow a pairwise-disjoint witness greedily over the candidates (exact).
inline void extend_witness(const std::vector<Body>& bodies, std::vector<std::size_t>& witness,
                           const std::vector<std::size_t>& candidates) {
  auto boxes = all_bounds(bodies);
  std::vector<char> in(bodies.size(), 0);
  for (auto i : witness) in[i] = 1;
  GridIndex index(boxes);
  for (auto i : candidates) {
    if (in[i]) continue;
    bool free = true;
    for (auto j : index.query(boxes[i]))
      if (in[j] && intersects(bodies[i], bodies[j])) {
        free = false;
        break;
      }
    if (free) {
      in[i] = 1;
      witness.push_back(i);
    }
  }
  std::sort(witness.begin(), witness.end());
}

inline void collect_seeds(PierceCertificate& cert) {
  cert.witness.clear();
  for (const auto& c : cert.clusters) cert.witness.push_back(c.seed);
}

// Line-grid core in a frame where P is the unit cube: lo[j] is the lower
// corner of member j's P-translate, e the edge lengths of Q. Lines run along
// the last axis.
template <class Meets, class ToWorld>
PierceCertificate grid_core(const std::vector<Coords>& lo, const Coords& e, Meets&& meets, ToWorld&& to_world) {
  const std::size_t n = lo.size(), d = e.size();
  // line offsets avoiding every P-translate boundary: middle of the widest
  // gap between fractional parts
  Coords b(d, Scalar(0));
  for (std::size_t k = 0; k + 1 < d; ++k) {
    std::set<Scalar> fr;
    for (const auto& v : lo) fr.insert(v[k] - Scalar(floor_int(v[k])));
    std::vector<Scalar> s(fr.begin(), fr.end());
    Scalar best_gap = s.front() + 1 - s.back(), best_mid = (s.back() + s.front() + 1) / 2;
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      if (s[i + 1] - s[i] > best_gap) {
        best_gap = s[i + 1] - s[i];
        best_mid = (s[i] + s[i + 1]) / 2;
      }
    b[k] = best_mid - Scalar(floor_int(best_mid));
  }
  std::map<std::vector<long>, std::vector<std::size_t>> lines;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<long> key(d - 1);
    for (std::size_t k = 0; k + 1 < d; ++k) key[k] = ceil_long(lo[j][k] - b[k]);
    lines[key].push_back(j);
  }
  PierceCertificate cert;
  std::vector<long> mod(d - 1);
  long factor = ceil_long(e[d - 1]);
  for (std::size_t k = 0; k + 1 < d; ++k) {
    mod[k] = ceil_long(e[k] + 1);
    factor *= mod[k];
  }
  cert.factor = factor;
  std::map<std::vector<long>, std::vector<std::size_t>> classes;
  std::vector<char> taken(n, 0);
  const Scalar& ed = e[d - 1];
  for (auto& [key, idx] : lines) {
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t c) {
      if (lo[a][d - 1] != lo[c][d - 1]) return lo[a][d - 1] < lo[c][d - 1];
      return a < c;
    });
    std::vector<long> cls(d - 1);
    for (std::size_t k = 0; k + 1 < d; ++k) cls[k] = ((key[k] % mod[k]) + mod[k]) % mod[k];
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
      std::size_t i = idx[pos];
      if (taken[i]) continue;
      const Scalar c0 = lo[i][d - 1];
      Cluster cl;
      cl.seed = i;
      std::set<long> ks;
      for (std::size_t q = pos; q < idx.size() && lo[idx[q]][d - 1] <= c0 + ed; ++q) {
        std::size_t j = idx[q];
        if (taken[j] || (j != i && !meets(i, j))) continue;
        taken[j] = 1;
        cl.members.push_back(j);
        long k = std::max(1L, ceil_long(lo[j][d - 1] - c0));
        // the chosen ordinate lies in the member's P-range
        if (Scalar(c0 + k) < lo[j][d - 1] || Scalar(c0 + k) > lo[j][d - 1] + 1 || Scalar(k) > ceil_int(ed))
          throw Error(ErrorCode::VerificationFailed, "grid point outside the member's P-translate");
        ks.insert(k);
      }
      for (long k : ks) {
        Coords p(d);
        for (std::size_t a = 0; a + 1 < d; ++a) p[a] = b[a] + key[a];
        p[d - 1] = c0 + k;
        cert.points.push_back(to_world(p));
      }
      cl.pattern_size = ks.size();
      classes[cls].push_back(i);
      cert.clusters.push_back(std::move(cl));
    }
  }
  for (auto& [cls, seeds] : classes)
    if (seeds.size() > cert.witness.size()) cert.witness = seeds;
  std::sort(cert.witness.begin(), cert.witness.end());
  return cert;
}

// Seeds of the best class first, then other seeds, then everything else.
inline void extend_grid_witness(const std::vector<Body>& bodies, PierceCertificate& cert) {
  std::vector<std::size_t> cand;
  for (const auto& c : cert.clusters) cand.push_back(c.seed);
  for (std::size_t i = 0; i < bodies.size(); ++i) cand.push_back(i);
  extend_witness(bodies, cert.witness, cand);
}

}  // namespace detail

// Line-grid piercing for a polygon base with a parallelogram sandwich
// P ⊆ C ⊆ Q; factor ceil(l2) * ceil(l1 + 1).
inline PierceCertificate grid_pierce(const Family& f, const SandwichPair& s) {
  detail::require_translates(f);
  if (f.base.kind() != BodyKind::Polygon) throw Error(ErrorCode::UnsupportedBase, "sandwich needs a polygon base");
  if (!verify_sandwich(s, f.base.polygon())) throw Error(ErrorCode::VerificationFailed, "invalid sandwich");
  Point o = s.P.center - Scalar(1, 2) * (s.P.e1 + s.P.e2);
  AffineMap world = AffineMap::from_columns(s.P.e1, s.P.e2, o);
  AffineMap frame = AffineMap::from_columns(s.P.e1, s.P.e2).inverse();
  std::vector<Coords> lo;
  lo.reserve(f.size());
  for (const auto& m : f.members) lo.push_back(coords(frame(planar(m.t))));
  auto bodies = realize_all(f);
  auto cert = detail::grid_core(
      lo, Coords{s.lambda1, s.lambda2}, [&](std::size_t i, std::size_t j) { return intersects(bodies[i], bodies[j]); },
      [&](const Coords& p) { return coords(world(planar(p))); });
  detail::extend_grid_witness(bodies, cert);
  cert.method = "grid";
  return cert;
}

// Polygons use the parallelogram sandwich; boxes are their own sandwich.
inline PierceCertificate grid_pierce(const Family& f) {
  detail::require_translates(f);
  switch (f.base.kind()) {
    case BodyKind::Polygon: return grid_pierce(f, sandwich_parallelograms(f.base.polygon()));
    case BodyKind::Box: {
      const Box& base = f.base.box();
      const std::size_t d = base.dim();
      Coords side(d);
      for (std::size_t k = 0; k < d; ++k) side[k] = base.hi[k] - base.lo[k];
      std::vector<Coords> lo;
      for (const auto& m : f.members) {
        Coords v(d);
        for (std::size_t k = 0; k < d; ++k) v[k] = (base.lo[k] + m.t[k]) / side[k];
        lo.push_back(std::move(v));
      }
      auto bodies = realize_all(f);
      auto cert = detail::grid_core(
          lo, Coords(d, Scalar(1)), [&](std::size_t i, std::size_t j) { return intersects(bodies[i], bodies[j]); },
          [&](const Coords& p) {
            Coords w(d);
            for (std::size_t k = 0; k < d; ++k) w[k] = p[k] * side[k];
            return w;
          });
      detail::extend_grid_witness(bodies, cert);
      cert.method = "grid";
      return cert;
    }
    case BodyKind::Disk: break;
  }
  throw Error(ErrorCode::UnsupportedBase, "grid piercing needs a polygon or box base");
}

// Greedy topmost-first piercing. Each cluster is pierced by a half-plane
// cover pattern anchored at the seed; a member B meeting the seed A with
// B no higher gives t_B - t_A in the cut region, so some pattern point lies
// in B.
inline PierceCertificate greedy_pierce(const Family& f, const GreedyOptions& opt = {}) {
  detail::require_translates(f);
  auto bodies = realize_all(f);
  PierceCertificate cert;
  std::vector<Scalar> height(f.size());

  auto by_normal = [&](const Vec& n) {
    for (std::size_t i = 0; i < f.size(); ++i) height[i] = -dot(n, planar(f.members[i].t));
  };

  switch (f.base.kind()) {
    case BodyKind::Polygon: {
      const ConvexPolygon& c = f.base.polygon();
      auto center = symmetry_center(c);
      if (!center && c.size() != 3) return grid_pierce(f);
      CoverPattern pat;
      Point anchor;
      if (center) {
        ConvexPolygon c0 = c.translated(-*center);
        Vec n = is_parallelogram(c) ? perp(c.edge(0)) : Vec{0, -1};
        pat = halfplane_four_cover(c0, n);
        anchor = *center;
        cert.method = "greedy-symmetric";
      } else {
        anchor = c[0];
        pat = triangle_trapezoid_cover(c, anchor);
        cert.method = "greedy-triangle";
      }
      by_normal(*pat.halfplane);
      cert.factor = static_cast<long>(pat.size());
      std::vector<Coords> offs;
      for (const auto& q : pat.offsets) offs.push_back(coords(q));
      cert.clusters = detail::greedy_clusters(bodies, detail::seed_order(height, f));
      for (auto& cl : cert.clusters)
        detail::pierce_rational(bodies, cl, coords(anchor + planar(f.members[cl.seed].t)), offs, cert.points);
      break;
    }
    case BodyKind::Disk: {
      const Disk& d = f.base.disk();
      by_normal({0, -1});
      DiskPattern pat = disk_halfplane_pattern(d.radius);
      cert.factor = static_cast<long>(pat.size());
      cert.method = "greedy-disk";
      cert.clusters = detail::greedy_clusters(bodies, detail::seed_order(height, f));
      auto approx = detail::approx_disks(bodies);
      for (auto& cl : cert.clusters)
        detail::pierce_disks(bodies, cl, std::get<Disk>(bodies[cl.seed]).center, pat.offsets, cert.points, &approx);
      break;
    }
    case BodyKind::Box: {
      const Box& base = f.base.box();
      const std::size_t d = base.dim();
      Coords side(d);
      for (std::size_t k = 0; k < d; ++k) side[k] = base.hi[k] - base.lo[k];
      for (std::size_t i = 0; i < f.size(); ++i) height[i] = f.members[i].t[d - 1];
      auto offs = box_pattern(side, true);
      cert.factor = static_cast<long>(offs.size());
      cert.method = "greedy-box";
      cert.clusters = detail::greedy_clusters(bodies, detail::seed_order(height, f));
      for (auto& cl : cert.clusters)
        detail::pierce_rational(bodies, cl, std::get<Box>(bodies[cl.seed]).lo, offs, cert.points);
      break;
    }
  }
  detail::collect_seeds(cert);
  detail::refine_last(f, cert, opt.refine_budget);
  return cert;
}

// Translates of a centrally symmetric hexagon: two points when the family is
// pairwise intersecting, otherwise the line grid with a factor-3 sandwich.
inline PierceCertificate hexagon_pierce(const Family& f) {
  detail::require_translates(f);
  if (f.base.kind() != BodyKind::Polygon || f.base.polygon().size() != 6)
    throw Error(ErrorCode::NotHexagon, "base is not a hexagon");
  const ConvexPolygon& h = f.base.polygon();
  auto center = symmetry_center(h);
  if (!center) throw Error(ErrorCode::NotCentrallySymmetric, "hexagon is not centrally symmetric");
  if (!pairwise_intersecting(f)) {
    auto cert = grid_pierce(f, hexagon_sandwich_special(h));
    cert.method = "hexagon-grid";
    return cert;
  }
  // strip k: edge k and its opposite; n_k an outer normal, w_k its half width
  ConvexPolygon h0 = h.translated(-*center);
  Vec n[3];
  Scalar w[3], top[3];
  for (int k = 0; k < 3; ++k) {
    n[k] = -perp(h0.edge(k));
    w[k] = dot(n[k], h0[k]);
    if (w[k] < 0) {
      n[k] = -n[k];
      w[k] = -w[k];
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
      Scalar v = dot(n[k], *center + planar(f.members[i].t));
      if (i == 0 || v > top[k]) top[k] = v;
    }
  }
  // the translate of h filling strips a and b
  auto filling = [&](int a, int b) {
    Scalar ra = top[a] - w[a], rb = top[b] - w[b];
    Scalar det = n[a].x * n[b].y - n[a].y * n[b].x;
    return Point{(ra * n[b].y - rb * n[a].y) / det, (n[a].x * rb - n[b].x * ra) / det};
  };
  PierceCertificate cert;
  cert.method = "hexagon-two";
  cert.factor = 2;
  cert.witness = {0};
  Cluster cl;
  cl.seed = 0;
  for (std::size_t i = 0; i < f.size(); ++i) cl.members.push_back(i);
  auto bodies = realize_all(f);
  // Not every pair of filling translates covers the center region, so try
  // all three pairs.
  const int pairs[3][2][2] = {{{0, 1}, {0, 2}}, {{0, 1}, {1, 2}}, {{0, 2}, {1, 2}}};
  for (const auto& pr : pairs) {
    std::vector<Coords> cand = {coords(filling(pr[0][0], pr[0][1])), coords(filling(pr[1][0], pr[1][1]))};
    std::vector<char> used(2, 0);
    bool all = true;
    for (std::size_t i = 0; i < f.size() && all; ++i) {
      bool hit = false;
      for (std::size_t k = 0; k < 2 && !hit; ++k)
        if (contains_point(bodies[i], cand[k])) used[k] = hit = true;
      all = hit;
    }
    if (!all) continue;
    for (std::size_t k = 0; k < 2; ++k)
      if (used[k]) cert.points.push_back(cand[k]);
    break;
  }
  if (cert.points.empty()) throw Error(ErrorCode::VerificationFailed, "two-point hexagon construction missed a member");
  cl.pattern_size = cert.points.size();
  cert.clusters.push_back(std::move(cl));
  return cert;
}

// ---- lattices -------------------------------------------------------------

enum class LatticeRole { Covering, Packing };

// Lattice {i*u + j*v}; covering: S + lattice covers the plane, packing: the
// translates 2S + lattice are pairwise disjoint (S centered at the origin).
struct LatticeSpec {
  Vec u;
  Vec v;
  Scalar cell_area;
  LatticeRole role = LatticeRole::Covering;
};

struct LatticeOptions {
  int subdivision = 32;  // offsets per cell side
  int probes = 64;       // extra seeded random offsets
  std::uint64_t seed = 1;
  std::size_t exact_area_max = 15;
};

struct LatticePierceResult {
  PierceCertificate cert;
  Point offset;
  Scalar union_area;        // exact, or the sum of member areas
  bool exact_area = false;
  Integer count_bound;      // floor(union_area / cell_area)
  bool bound_met = false;
};

struct LatticeWitnessResult {
  std::vector<std::size_t> witness;
  Point offset;
  Scalar union_area;
  bool exact_area = false;
  Integer count_bound;      // ceil(union_area / cell_area) when exact
  bool bound_met = false;
};

namespace detail {

// Lattice points p + i*u + j*v inside c, as index pairs.
inline std::vector<std::pair<long, long>> lattice_points_in(const ConvexPolygon& c, const LatticeSpec& l,
                                                            const Point& p) {
  AffineMap to_world = AffineMap::from_columns(l.u, l.v, p);
  AffineMap to_lat = to_world.inverse();
  Scalar i0, i1, j0, j1;
  for (std::size_t k = 0; k < c.size(); ++k) {
    Point q = to_lat(c[k]);
    if (k == 0 || q.x < i0) i0 = q.x;
    if (k == 0 || q.x > i1) i1 = q.x;
    if (k == 0 || q.y < j0) j0 = q.y;
    if (k == 0 || q.y > j1) j1 = q.y;
  }
  std::vector<std::pair<long, long>> out;
  for (long i = ceil_long(i0); i <= floor_long(i1); ++i)
    for (long j = ceil_long(j0); j <= floor_long(j1); ++j)
      if (contains_point(c, to_world({i, j}))) out.push_back({i, j});
  return out;
}

// Tiling lattice of a centered hexagon or parallelogram.
inline LatticeSpec tiling_lattice(const ConvexPolygon& h, LatticeRole role) {
  auto c = symmetry_center(h);
  if (!c || *c != Point{0, 0}) throw Error(ErrorCode::NotCentrallySymmetric, "tile must be centered");
  if (h.size() == 4) return {h.edge(0), h.edge(1), area(h), role};
  if (h.size() == 6) return {h[0] + h[1], h[1] + h[2], area(h), role};
  throw Error(ErrorCode::UnsupportedBase, "tile must be a parallelogram or hexagon");
}

inline ConvexPolygon centered_base(const Family& f) {
  require_translates(f);
  if (f.base.kind() != BodyKind::Polygon) throw Error(ErrorCode::UnsupportedBase, "lattice methods need a polygon base");
  const ConvexPolygon& c = f.base.polygon();
  auto center = symmetry_center(c);
  if (!center) throw Error(ErrorCode::NotCentrallySymmetric, "lattice methods need a centrally symmetric base");
  return c.translated(-*center);
}

inline std::vector<Point> cell_offsets(const LatticeSpec& l, int k, int probes, std::uint64_t seed) {
  std::vector<Point> out;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) out.push_back(Scalar(a, k) * l.u + Scalar(b, k) * l.v);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < probes; ++i) {
    Scalar a(static_cast<long>(rng() >> 44), 1L << 20), b(static_cast<long>(rng() >> 44), 1L << 20);
    out.push_back(a * l.u + b * l.v);
  }
  return out;
}

// Lattice points p + L covered by the union of the members.
inline std::set<std::pair<long, long>> covered_points(const std::vector<ConvexPolygon>& members,
                                                      const LatticeSpec& l, const Point& p) {
  std::set<std::pair<long, long>> out;
  for (const auto& m : members)
    for (auto q : lattice_points_in(m, l, p)) out.insert(q);
  return out;
}

inline void union_area_dfs(const std::vector<ConvexPolygon>& ms, std::size_t next, const Region& cur, int depth,
                           Scalar& acc) {
  for (std::size_t i = next; i < ms.size(); ++i) {
    Region r = depth == 0 ? Region{ms[i].vertices()} : intersection(cur, ms[i]);
    if (r.empty()) continue;
    if (depth % 2 == 0) acc += r.area();
    else acc -= r.area();
    union_area_dfs(ms, i + 1, r, depth + 1, acc);
  }
}

}  // namespace detail

// Exact union area by inclusion-exclusion over nonempty intersections.
inline Scalar union_area(const std::vector<ConvexPolygon>& members) {
  Scalar acc = 0;
  detail::union_area_dfs(members, 0, Region{}, 0, acc);
  return acc;
}

// Covering role: the cell is covered by S-translates at nearby lattice points.
inline bool verify_covering(const ConvexPolygon& s0, const LatticeSpec& l) {
  if (cross(l.u, l.v) == 0) return false;
  ConvexPolygon cell = Parallelogram{Scalar(1, 2) * (l.u + l.v), l.u, l.v}.polygon();
  std::vector<ConvexPolygon> covers;
  for (auto [i, j] : detail::lattice_points_in(minkowski_sum(cell, reflect(s0)), l, {0, 0}))
    covers.push_back(s0.translated(Scalar(i) * l.u + Scalar(j) * l.v));
  return residue(cell.vertices(), covers).empty();
}

// Packing role: 2S and 2S + w disjoint for every nonzero lattice vector w
// that could bring them together (w in 4S).
inline bool verify_packing(const ConvexPolygon& s0, const LatticeSpec& l) {
  if (cross(l.u, l.v) == 0) return false;
  ConvexPolygon two = s0.scaled(2);
  for (auto [i, j] : detail::lattice_points_in(s0.scaled(4), l, {0, 0})) {
    if (i == 0 && j == 0) continue;
    if (intersects(two, two.translated(Scalar(i) * l.u + Scalar(j) * l.v))) return false;
  }
  return true;
}

// Default covering lattice: the tiling lattice of an inscribed centrally
// symmetric hexagon (the base itself for parallelograms and hexagons).
inline LatticeSpec default_covering_lattice(const ConvexPolygon& s0) {
  if (s0.size() <= 6) return detail::tiling_lattice(s0, LatticeRole::Covering);
  return detail::tiling_lattice(hexagon_sandwich(s0).H_in, LatticeRole::Covering);
}

// Default packing lattice: tiling lattice of 2(1 + eps) H_out.
inline LatticeSpec default_packing_lattice(const ConvexPolygon& s0, const Scalar& eps = Scalar(1, 100)) {
  ConvexPolygon h = s0.size() <= 6 ? s0 : hexagon_sandwich(s0).H_out;
  return detail::tiling_lattice(h.scaled(2 * (1 + eps)), LatticeRole::Packing);
}

// Pigeonhole piercing: every S-translate contains a point of p + L, so the
// lattice points inside the union pierce the family; the offset p is chosen
// to make that set small.
inline LatticePierceResult lattice_pierce(const Family& f, const LatticeSpec& l, const LatticeOptions& opt = {}) {
  ConvexPolygon s0 = detail::centered_base(f);
  if (l.role != LatticeRole::Covering || !verify_covering(s0, l))
    throw Error(ErrorCode::CoverageNotVerified, "lattice does not cover the plane with the base");
  std::vector<ConvexPolygon> ms;
  for (std::size_t i = 0; i < f.size(); ++i) ms.push_back(std::get<ConvexPolygon>(f.realize(i)));
  LatticePierceResult r;
  r.exact_area = ms.size() <= opt.exact_area_max;
  if (r.exact_area) {
    r.union_area = union_area(ms);
  } else {
    r.union_area = 0;
    for (const auto& m : ms) r.union_area += area(m);
  }
  r.count_bound = floor_int(r.union_area / l.cell_area);
  std::optional<std::set<std::pair<long, long>>> best;
  for (int k = opt.subdivision; k <= 4 * opt.subdivision; k *= 2) {
    for (const auto& p : detail::cell_offsets(l, k, opt.probes, opt.seed)) {
      auto pts = detail::covered_points(ms, l, p);
      if (!best || pts.size() < best->size()) {
        best = std::move(pts);
        r.offset = p;
      }
    }
    if (Integer(static_cast<long>(best->size())) <= r.count_bound || !r.exact_area) break;
  }
  r.bound_met = Integer(static_cast<long>(best->size())) <= r.count_bound;
  AffineMap to_world = AffineMap::from_columns(l.u, l.v, r.offset);
  for (auto [i, j] : *best) r.cert.points.push_back(coords(to_world({i, j})));
  auto bodies = realize_all(f);
  std::vector<std::size_t> all(f.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  detail::extend_witness(bodies, r.cert.witness, all);
  r.cert.factor = static_cast<long>((r.cert.points.size() + r.cert.witness.size() - 1) / r.cert.witness.size());
  r.cert.method = "lattice";
  return r;
}

inline LatticePierceResult lattice_pierce(const Family& f, const LatticeOptions& opt = {}) {
  return lattice_pierce(f, default_covering_lattice(detail::centered_base(f)), opt);
}

// Pigeonhole packing: members holding distinct points of p + L are pairwise
// disjoint, so one member per covered lattice point is a witness.
inline LatticeWitnessResult lattice_witness(const Family& f, const LatticeSpec& l, const LatticeOptions& opt = {}) {
  ConvexPolygon s0 = detail::centered_base(f);
  if (l.role != LatticeRole::Packing || !verify_packing(s0, l))
    throw Error(ErrorCode::PackingNotVerified, "lattice does not pack twice the base");
  std::vector<ConvexPolygon> ms;
  for (std::size_t i = 0; i < f.size(); ++i) ms.push_back(std::get<ConvexPolygon>(f.realize(i)));
  LatticeWitnessResult r;
  r.exact_area = ms.size() <= opt.exact_area_max;
  r.union_area = r.exact_area ? union_area(ms) : area(s0);
  r.count_bound = ceil_int(r.union_area / l.cell_area);
  std::size_t best = 0;
  for (int k = opt.subdivision; k <= 4 * opt.subdivision; k *= 2) {
    for (const auto& p : detail::cell_offsets(l, k, opt.probes, opt.seed)) {
      auto pts = detail::covered_points(ms, l, p);
      if (pts.size() > best || (best == 0 && r.witness.empty())) {
        best = pts.size();
        r.offset = p;
      }
    }
    if (Integer(static_cast<long>(best)) >= r.count_bound) break;
  }
  // one member per covered lattice point
  std::map<std::pair<long, long>, std::size_t> owner;
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (auto q : detail::lattice_points_in(ms[i], l, r.offset)) owner.emplace(q, i);
  std::vector<std::size_t> pick;
  for (const auto& [q, i] : owner) pick.push_back(i);
  std::sort(pick.begin(), pick.end());
  pick.erase(std::unique(pick.begin(), pick.end()), pick.end());
  // exact recheck, dropping anything that touches an earlier pick
  for (auto i : pick) {
    bool free = true;
    for (auto j : r.witness) free = free && !intersects(ms[i], ms[j]);
    if (free) r.witness.push_back(i);
  }
  r.bound_met = Integer(static_cast<long>(r.witness.size())) >= r.count_bound;
  // then grow to a maximal disjoint set
  auto bodies = realize_all(f);
  std::vector<std::size_t> all(f.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  detail::extend_witness(bodies, r.witness, all);
  return r;
}

inline LatticeWitnessResult lattice_witness(const Family& f, const LatticeOptions& opt = {}) {
  return lattice_witness(f, default_packing_lattice(detail::centered_base(f)), opt);
}

}  // namespace pierce
