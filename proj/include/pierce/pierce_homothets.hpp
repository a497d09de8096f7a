#pragma once

// Greedy smallest-first piercing for families of homothets s*C + t.

#include "pierce/pierce_translates.hpp"

namespace pierce {

struct HomothetOptions {
  std::size_t refine_budget = 12;
  std::size_t containment_checks = 3;  // members per cluster checked explicitly
};

namespace detail {

// Smallest scale first; equal scales by height, then translation, then index.
inline std::vector<std::size_t> smallest_first(const Family& f) {
  const std::size_t d = f.base.dim();
  std::vector<std::size_t> order(f.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Member &ma = f.members[a], &mb = f.members[b];
    if (ma.s != mb.s) return ma.s < mb.s;
    if (ma.t[d - 1] != mb.t[d - 1]) return ma.t[d - 1] > mb.t[d - 1];
    for (std::size_t k = 0; k < d; ++k)
      if (ma.t[k] != mb.t[k]) return ma.t[k] < mb.t[k];
    return a < b;
  });
  return order;
}

}  // namespace detail

// For B no smaller than A and meeting it at p, the homothet
// p + (s_A/s_B)(B - p) is a copy of A's size inside B that still meets A.
// Returns false if the construction fails the exact check.
inline bool containment_witness_ok(const Family& f, std::size_t a, std::size_t b) {
  const Scalar ratio = f.members[a].s / f.members[b].s;
  if (ratio > 1) return false;
  Body ba = f.realize(a), bb = f.realize(b);
  switch (f.base.kind()) {
    case BodyKind::Polygon: {
      const auto &pa = std::get<ConvexPolygon>(ba), &pb = std::get<ConvexPolygon>(bb);
      Region r = intersection(pa, pb);
      if (r.empty()) return false;
      const Point& p = r.ring[0];
      std::vector<Point> w;
      for (const auto& v : pb.vertices()) w.push_back(p + ratio * (v - p));
      for (const auto& v : w)
        if (!contains_point(pb, v)) return false;
      return intersects(ConvexPolygon::from_trusted(w), pa);
    }
    case BodyKind::Box: {
      const auto &xa = std::get<Box>(ba), &xb = std::get<Box>(bb);
      Box w = xb;
      for (std::size_t k = 0; k < xa.dim(); ++k) {
        Scalar p = max(xa.lo[k], xb.lo[k]);
        if (p > min(xa.hi[k], xb.hi[k])) return false;
        w.lo[k] = p + ratio * (xb.lo[k] - p);
        w.hi[k] = p + ratio * (xb.hi[k] - p);
        if (w.lo[k] < xb.lo[k] || w.hi[k] > xb.hi[k]) return false;
      }
      return intersects(Body(w), ba);
    }
    case BodyKind::Disk: {
      // radius-rA disk centered on segment cB -> cA, min(|v|, rB - rA) from cB:
      // inside B, and within 2rA of cA exactly when |v| <= rA + rB
      const auto &da = std::get<Disk>(ba), &db = std::get<Disk>(bb);
      Vec v = da.center - db.center;
      Scalar gap = db.radius - da.radius;
      Scalar lim = da.radius + db.radius;
      return gap >= 0 && dot(v, v) <= lim * lim;
    }
  }
  return false;
}

// Greedy smallest-first piercing. Each cluster member B contains a copy of
// the seed's size that meets the seed, so the homothet cover pattern scaled
// by the seed's factor and anchored at its reference pierces B.
inline PierceCertificate greedy_pierce_homothets(const Family& f, const HomothetOptions& opt = {}) {
  if (f.kind != FamilyKind::Homothets) throw Error(ErrorCode::InvalidFamily, "expected a family of homothets");
  if (f.size() == 0) throw Error(ErrorCode::InvalidFamily, "family is empty");
  auto bodies = realize_all(f);
  PierceCertificate cert;
  cert.clusters = detail::greedy_clusters(bodies, detail::smallest_first(f));

  switch (f.base.kind()) {
    case BodyKind::Polygon: {
      const ConvexPolygon& c = f.base.polygon();
      auto center = symmetry_center(c);
      Point ref = center ? *center : planar(ConvexBody::default_reference(c));
      CoverPattern pat = homothet_cover(c, ref);
      cert.factor = static_cast<long>(pat.size());
      cert.method = center ? "greedy-homothet-symmetric" : c.size() == 3 ? "greedy-homothet-triangle" : "greedy-homothet-grid";
      for (auto& cl : cert.clusters) {
        const Member& m = f.members[cl.seed];
        std::vector<Coords> offs;
        for (const auto& q : pat.offsets) offs.push_back(coords(m.s * q));
        detail::pierce_rational(bodies, cl, coords(m.s * ref + planar(m.t)), offs, cert.points);
      }
      break;
    }
    case BodyKind::Disk: {
      const Disk& d = f.base.disk();
      cert.method = "greedy-homothet-disk";
      cert.factor = 7;
      for (auto& cl : cert.clusters) {
        const Member& m = f.members[cl.seed];
        DiskPattern pat = disk_seven_pattern(m.s * d.radius);
        detail::pierce_disks(bodies, cl, std::get<Disk>(bodies[cl.seed]).center, pat.offsets, cert.points);
      }
      break;
    }
    case BodyKind::Box: {
      const Box& base = f.base.box();
      const std::size_t dim = base.dim();
      cert.method = "greedy-homothet-box";
      cert.factor = 1L << dim;
      for (auto& cl : cert.clusters) {
        const Member& m = f.members[cl.seed];
        Coords side(dim);
        for (std::size_t k = 0; k < dim; ++k) side[k] = m.s * (base.hi[k] - base.lo[k]);
        detail::pierce_rational(bodies, cl, std::get<Box>(bodies[cl.seed]).lo, box_pattern(side, false), cert.points);
      }
      break;
    }
  }
  for (const auto& cl : cert.clusters) {
    std::size_t checked = 0;
    for (auto j : cl.members) {
      if (j == cl.seed) continue;
      if (checked++ >= opt.containment_checks) break;
      if (!containment_witness_ok(f, cl.seed, j))
        throw Error(ErrorCode::VerificationFailed, "containment witness failed for a cluster member");
    }
  }
  detail::collect_seeds(cert);
  detail::refine_last(f, cert, opt.refine_budget);
  return cert;
}

}  // namespace pierce
