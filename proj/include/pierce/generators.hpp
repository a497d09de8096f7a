#pragma once

// Extremal instances and seeded random families.

#include <cstdint>
#include <random>
#include <string>

#include "pierce/bodies.hpp"

namespace pierce {

inline ConvexPolygon unit_square_polygon() { return ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }
inline ConvexPolygon unit_triangle_polygon() { return ConvexPolygon({{0, 0}, {1, 0}, {0, 1}}); }

// Regular-looking hexagon with rational vertices, centered at the origin.
inline ConvexPolygon rational_hexagon() {
  return ConvexPolygon({{2, 0}, {1, 2}, {-1, 2}, {-2, 0}, {-1, -2}, {1, -2}});
}

// Five axis-parallel unit squares whose intersection graph is a 5-cycle.
inline Family five_square_cycle() {
  Family f{ConvexBody::polygon(unit_square_polygon()), {}, FamilyKind::Translates};
  const Point corners[] = {{0, 0}, {1, Scalar(1, 2)}, {Scalar(1, 2), Scalar(3, 2)},
                           {Scalar(-1, 2), Scalar(3, 2)}, {-1, Scalar(1, 2)}};
  for (const auto& c : corners) f.members.push_back({coords(c), 1});
  return f;
}

// Three pairwise-tangent unit right triangles A, B, C plus the six copies
// X_Y = X shifted by eps toward Y. Order: A, B, C, A_B, A_C, B_A, B_C, C_A, C_B.
inline Family nine_triangles(const Scalar& eps) {
  if (eps <= 0) throw Error(ErrorCode::EpsilonTooLarge, "epsilon must be positive");
  Family f{ConvexBody::polygon(unit_triangle_polygon()), {}, FamilyKind::Translates};
  const Point base[3] = {{0, 0}, {1, 0}, {0, 1}};
  for (const auto& p : base) f.members.push_back({coords(p), 1});
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) {
      if (x == y) continue;
      f.members.push_back({coords(base[x] + eps * (base[y] - base[x])), 1});
    }
  }
  if (!pairwise_intersecting(f))
    throw Error(ErrorCode::EpsilonTooLarge, "members are no longer pairwise intersecting");
  return f;
}

// n^4 translates at the points (t1/n, t2/n), 1 <= t1, t2 <= n^2.
inline Family grid_family(int n, const ConvexBody& base, std::size_t cap = 20000) {
  if (n < 1) throw Error(ErrorCode::InvalidFamily, "n must be >= 1");
  if (base.dim() != 2) throw Error(ErrorCode::UnsupportedBase, "grid_family is planar");
  std::size_t count = static_cast<std::size_t>(n) * n * n * n;
  if (count > cap) throw Error(ErrorCode::TooLarge, "n^4 exceeds the instance cap");
  Family f{base, {}, FamilyKind::Translates};
  for (int a = 1; a <= n * n; ++a)
    for (int b = 1; b <= n * n; ++b) f.members.push_back({{Scalar(a, n), Scalar(b, n)}, 1});
  for (auto& m : f.members)
    for (auto& c : m.t) c.canonicalize();
  return f;
}

// Portable uniform draw in [lo, hi] from the raw engine output.
inline long draw(std::mt19937_64& rng, long lo, long hi) {
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(rng() % span);
}

inline Scalar draw_rational(std::mt19937_64& rng, const Scalar& lo, const Scalar& hi, long den = 1000) {
  long a = ceil_long(lo * den);
  long b = floor_long(hi * den);
  if (b < a) return lo;
  Scalar q(draw(rng, a, b), den);
  q.canonicalize();
  return q;
}

struct RandomFamilySpec {
  ConvexBody base;
  std::size_t n = 10;
  Scalar box_size = 10;
  FamilyKind kind = FamilyKind::Translates;
  Scalar scale_lo = 1;
  Scalar scale_hi = 1;
  std::uint64_t seed = 1;
  long denominator = 1000;
};

inline Family random_family(const RandomFamilySpec& spec) {
  if (spec.n < 1) throw Error(ErrorCode::InvalidFamily, "n must be >= 1");
  std::mt19937_64 rng(spec.seed);
  Family f{spec.base, {}, spec.kind};
  std::size_t d = spec.base.dim();
  for (std::size_t i = 0; i < spec.n; ++i) {
    Member m;
    for (std::size_t k = 0; k < d; ++k) m.t.push_back(draw_rational(rng, 0, spec.box_size, spec.denominator));
    m.s = spec.kind == FamilyKind::Translates ? Scalar(1)
                                              : draw_rational(rng, spec.scale_lo, spec.scale_hi, spec.denominator);
    if (m.s <= 0) m.s = spec.scale_hi;
    f.members.push_back(std::move(m));
  }
  return f;
}

// Translates whose translation vectors all lie in K = (C - C)/2; any two
// differences then lie in C - C, so every pair intersects.
inline Family pairwise_intersecting_family(const ConvexBody& base, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Family f{base, {}, FamilyKind::Translates};
  std::size_t d = base.dim();
  const long den = 997;
  auto accept = [&](const Coords& t) -> bool {
    switch (base.kind()) {
      case BodyKind::Polygon: {
        static thread_local ConvexPolygon cached;
        static thread_local ConvexPolygon half;
        if (!(cached == base.polygon()) || half.size() == 0) {
          cached = base.polygon();
          half = minkowski_sum(cached, reflect(cached)).scaled(Scalar(1, 2));
        }
        return contains_point(half, planar(t));
      }
      case BodyKind::Disk: {
        const Scalar& r = base.disk().radius;
        return t[0] * t[0] + t[1] * t[1] <= r * r;
      }
      case BodyKind::Box: {
        const auto& b = base.box();
        for (std::size_t k = 0; k < d; ++k) {
          Scalar h = (b.hi[k] - b.lo[k]) / 2;
          if (t[k] < -h || t[k] > h) return false;
        }
        return true;
      }
    }
    return false;
  };
  Scalar extent = 0;
  for (std::size_t i = 0; i < f.base.dim(); ++i) {
    Body shape = base.shape;
    BoundsD bd = bounds(shape);
    extent = dyadic(std::max({bd.x1 - bd.x0, bd.y1 - bd.y0}) + 1, 4);
    if (base.kind() == BodyKind::Box) {
      for (std::size_t k = 0; k < d; ++k) extent = max(extent, base.box().hi[k] - base.box().lo[k]);
    }
  }
  std::size_t attempts = 0;
  while (f.members.size() < n) {
    if (++attempts > 1000 * (n + 10)) throw Error(ErrorCode::ConstructionFailed, "rejection sampling failed");
    Coords t;
    for (std::size_t k = 0; k < d; ++k) t.push_back(draw_rational(rng, -extent, extent, den));
    if (accept(t)) f.members.push_back({std::move(t), 1});
  }
  if (!pairwise_intersecting(f)) throw Error(ErrorCode::ConstructionFailed, "family not pairwise intersecting");
  return f;
}

// Convex hull of random grid points in [-2, 2]^2 with denominator den.
inline ConvexPolygon random_convex_polygon(std::mt19937_64& rng, std::size_t max_vertices = 12, long den = 64) {
  for (;;) {
    std::size_t k = static_cast<std::size_t>(draw(rng, 3, static_cast<long>(max_vertices)));
    std::vector<Point> pts;
    for (std::size_t i = 0; i < k; ++i) pts.push_back({Scalar(draw(rng, -2 * den, 2 * den), den), Scalar(draw(rng, -2 * den, 2 * den), den)});
    for (auto& p : pts) p.x.canonicalize(), p.y.canonicalize();
    auto h = hull_points(pts);
    if (h.size() >= 3 && h.size() <= max_vertices) return ConvexPolygon::from_trusted(h);
  }
}

// Hull of +-p_i, centered at the origin, with a vertex count in [lo, hi].
inline ConvexPolygon random_symmetric_polygon(std::mt19937_64& rng, std::size_t lo = 8, std::size_t hi = 16,
                                              long den = 32) {
  for (;;) {
    std::size_t k = static_cast<std::size_t>(draw(rng, static_cast<long>(lo / 2), static_cast<long>(hi / 2 + 2)));
    std::vector<Point> pts;
    for (std::size_t i = 0; i < k; ++i) {
      Point p{Scalar(draw(rng, -2 * den, 2 * den), den), Scalar(draw(rng, -2 * den, 2 * den), den)};
      p.x.canonicalize(), p.y.canonicalize();
      pts.push_back(p);
      pts.push_back(-p);
    }
    auto h = hull_points(pts);
    if (h.size() >= lo && h.size() <= hi) return ConvexPolygon::from_trusted(h);
  }
}

// Random centrally symmetric hexagon: hull of +-a, +-b, +-c in general position.
inline ConvexPolygon random_hexagon(std::mt19937_64& rng) {
  for (;;) {
    auto h = random_symmetric_polygon(rng, 6, 6);
    if (h.size() == 6) return h;
  }
}

// Base bodies by name: square, triangle, disk, hexagon, octagon, symmetric,
// polygon, box (3-d unit cube). Random shapes draw from rng.
inline ConvexBody named_base(const std::string& name, std::mt19937_64& rng) {
  if (name == "square") return ConvexBody::polygon(unit_square_polygon());
  if (name == "triangle") return ConvexBody::polygon(unit_triangle_polygon());
  if (name == "disk") return ConvexBody::disk({0, 0}, 1);
  if (name == "hexagon") return ConvexBody::polygon(rational_hexagon());
  if (name == "octagon")
    return ConvexBody::polygon(ConvexPolygon({{2, 0}, {2, 1}, {1, 2}, {0, 2}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}));
  if (name == "symmetric") return ConvexBody::polygon(random_symmetric_polygon(rng));
  if (name == "polygon") return ConvexBody::polygon(random_convex_polygon(rng));
  if (name == "box") return ConvexBody::box({1, 1, 1});
  throw Error(ErrorCode::Parse, "unknown base '" + name + "'");
}

}  // namespace pierce
