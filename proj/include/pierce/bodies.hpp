#pragma once

// Convex body and family model: a base body C plus members s*C + t.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <variant>
#include <vector>

#include "pierce/geometry.hpp"

namespace pierce {

using Coords = std::vector<Scalar>;

inline Coords coords(const Point& p) { return {p.x, p.y}; }
inline Point planar(const Coords& c) { return {c.at(0), c.at(1)}; }

struct Disk {
  Point center;
  Scalar radius;
};

// Axis box [lo, hi] in d >= 2 dimensions.
struct Box {
  Coords lo;
  Coords hi;

  std::size_t dim() const { return lo.size(); }
};

enum class BodyKind { Polygon, Disk, Box };

// A realized body: polygon, disk or axis box.
using Body = std::variant<ConvexPolygon, Disk, Box>;

inline BodyKind kind_of(const Body& b) { return static_cast<BodyKind>(b.index()); }

inline const char* kind_name(BodyKind k) {
  switch (k) {
    case BodyKind::Polygon: return "polygon";
    case BodyKind::Disk: return "disk";
    case BodyKind::Box: return "box";
  }
  return "?";
}

inline bool contains_point(const Disk& d, const Point& p) {
  Vec v = p - d.center;
  return dot(v, v) <= d.radius * d.radius;
}

inline bool contains_point(const Box& b, const Coords& p) {
  if (p.size() != b.dim()) return false;
  for (std::size_t i = 0; i < b.dim(); ++i) {
    if (p[i] < b.lo[i] || p[i] > b.hi[i]) return false;
  }
  return true;
}

inline bool contains_point(const Body& body, const Coords& p) {
  return std::visit(
      [&](const auto& b) -> bool {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Box>) {
          return contains_point(b, p);
        } else {
          return p.size() == 2 && contains_point(b, planar(p));
        }
      },
      body);
}

inline bool intersects(const Disk& a, const Disk& b) {
  Vec v = a.center - b.center;
  Scalar r = a.radius + b.radius;
  return dot(v, v) <= r * r;
}

inline bool intersects(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a.hi[i] < b.lo[i] || b.hi[i] < a.lo[i]) return false;
  }
  return true;
}

inline bool intersects(const Body& a, const Body& b) {
  if (a.index() != b.index()) throw Error(ErrorCode::MixedKinds, "bodies of different kinds");
  switch (kind_of(a)) {
    case BodyKind::Polygon: return intersects(std::get<ConvexPolygon>(a), std::get<ConvexPolygon>(b));
    case BodyKind::Disk: return intersects(std::get<Disk>(a), std::get<Disk>(b));
    case BodyKind::Box: return intersects(std::get<Box>(a), std::get<Box>(b));
  }
  return false;
}

// Floating-point bounding box in the first two coordinates, padded outward.
struct BoundsD {
  double x0, y0, x1, y1;
};

inline BoundsD bounds(const Body& body) {
  BoundsD r{};
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, ConvexPolygon>) {
          Interval xs = x_extent(b), ys = y_extent(b);
          r = {to_double(xs.lo), to_double(ys.lo), to_double(xs.hi), to_double(ys.hi)};
        } else if constexpr (std::is_same_v<T, Disk>) {
          double cx = to_double(b.center.x), cy = to_double(b.center.y), rr = to_double(b.radius);
          r = {cx - rr, cy - rr, cx + rr, cy + rr};
        } else {
          r = {to_double(b.lo[0]), to_double(b.lo[1]), to_double(b.hi[0]), to_double(b.hi[1])};
        }
      },
      body);
  double pad = 1e-9 * (1.0 + std::max({std::fabs(r.x0), std::fabs(r.y0), std::fabs(r.x1), std::fabs(r.y1)}));
  return {r.x0 - pad, r.y0 - pad, r.x1 + pad, r.y1 + pad};
}

// Base body C with its reference point.
struct ConvexBody {
  Body shape;
  Coords reference;

  BodyKind kind() const { return kind_of(shape); }
  std::size_t dim() const {
    return kind() == BodyKind::Box ? std::get<Box>(shape).dim() : 2;
  }
  const ConvexPolygon& polygon() const { return std::get<ConvexPolygon>(shape); }
  const Disk& disk() const { return std::get<Disk>(shape); }
  const Box& box() const { return std::get<Box>(shape); }

  bool centrally_symmetric() const {
    if (kind() != BodyKind::Polygon) return true;
    return symmetry_center(polygon()).has_value();
  }

  // Center for symmetric bodies, lower-left vertex for other polygons,
  // min-corner for boxes.
  static Coords default_reference(const Body& shape) {
    switch (kind_of(shape)) {
      case BodyKind::Polygon: {
        const auto& p = std::get<ConvexPolygon>(shape);
        if (auto c = symmetry_center(p)) return coords(*c);
        Point best = p[0];
        for (const auto& v : p.vertices())
          if (v.y < best.y || (v.y == best.y && v.x < best.x)) best = v;
        return coords(best);
      }
      case BodyKind::Disk: return coords(std::get<Disk>(shape).center);
      case BodyKind::Box: return std::get<Box>(shape).lo;
    }
    return {};
  }

  static ConvexBody polygon(ConvexPolygon p) {
    Body b = std::move(p);
    Coords ref = default_reference(b);
    return {std::move(b), std::move(ref)};
  }
  static ConvexBody disk(Point center, Scalar radius) {
    if (radius <= 0) throw Error(ErrorCode::InvalidFamily, "disk radius must be positive");
    Body b = Disk{std::move(center), std::move(radius)};
    Coords ref = default_reference(b);
    return {std::move(b), std::move(ref)};
  }
  // Axis box [0, sides].
  static ConvexBody box(const Coords& sides) {
    if (sides.size() < 2) throw Error(ErrorCode::InvalidFamily, "box dimension must be >= 2");
    for (const auto& s : sides)
      if (s <= 0) throw Error(ErrorCode::InvalidFamily, "box sides must be positive");
    Body b = Box{Coords(sides.size(), Scalar(0)), sides};
    Coords ref = default_reference(b);
    return {std::move(b), std::move(ref)};
  }

  void validate() const {
    if (kind() == BodyKind::Disk && disk().radius <= 0)
      throw Error(ErrorCode::InvalidFamily, "disk radius must be positive");
    if (kind() == BodyKind::Box) {
      const auto& b = box();
      if (b.dim() < 2) throw Error(ErrorCode::InvalidFamily, "box dimension must be >= 2");
      for (std::size_t i = 0; i < b.dim(); ++i)
        if (b.hi[i] <= b.lo[i]) throw Error(ErrorCode::InvalidFamily, "box sides must be positive");
    }
    if (reference.size() != dim() || !contains_point(shape, reference))
      throw Error(ErrorCode::InvalidFamily, "reference point must lie in the body");
  }
};

struct Member {
  Coords t;
  Scalar s{1};
};

enum class FamilyKind { Translates, Homothets };

// s*C + t for every member: scale about the origin, then translate.
inline Body transform(const Body& base, const Scalar& s, const Coords& t) {
  return std::visit(
      [&](const auto& b) -> Body {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, ConvexPolygon>) {
          return b.scaled(s, planar(t));
        } else if constexpr (std::is_same_v<T, Disk>) {
          return Disk{s * b.center + planar(t), s * b.radius};
        } else {
          Box out = b;
          for (std::size_t i = 0; i < b.dim(); ++i) {
            out.lo[i] = s * b.lo[i] + t[i];
            out.hi[i] = s * b.hi[i] + t[i];
          }
          return out;
        }
      },
      base);
}

inline Coords transform(const Coords& p, const Scalar& s, const Coords& t) {
  Coords out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = s * p[i] + t[i];
  return out;
}

struct Family {
  ConvexBody base;
  std::vector<Member> members;
  FamilyKind kind = FamilyKind::Translates;

  std::size_t size() const { return members.size(); }

  void validate() const {
    base.validate();
    if (members.empty()) throw Error(ErrorCode::InvalidFamily, "family is empty");
    for (const auto& m : members) {
      if (m.t.size() != base.dim()) throw Error(ErrorCode::InvalidFamily, "translation has wrong dimension");
      if (m.s <= 0) throw Error(ErrorCode::InvalidFamily, "scale must be positive");
      if (kind == FamilyKind::Translates && m.s != 1)
        throw Error(ErrorCode::InvalidFamily, "translate family with scale != 1");
    }
  }

  Body realize(std::size_t i) const { return transform(base.shape, members.at(i).s, members.at(i).t); }
  Coords reference(std::size_t i) const { return transform(base.reference, members.at(i).s, members.at(i).t); }

  Family subfamily(const std::vector<std::size_t>& idx) const {
    Family f{base, {}, kind};
    for (auto i : idx) f.members.push_back(members.at(i));
    return f;
  }
};

inline Body realize(const Family& f, std::size_t i) { return f.realize(i); }

inline bool pierces(const Family& f, std::size_t i, const Coords& p) { return contains_point(f.realize(i), p); }

// Uniform grid over floating bounding boxes. Candidate lists are a superset
// of the true neighbors; callers confirm with the exact predicate.
class GridIndex {
 public:
  GridIndex() = default;

  explicit GridIndex(const std::vector<BoundsD>& boxes) : boxes_(boxes) {
    if (boxes_.empty()) return;
    std::vector<double> diam;
    diam.reserve(boxes_.size());
    for (const auto& b : boxes_) diam.push_back(std::max(b.x1 - b.x0, b.y1 - b.y0));
    std::nth_element(diam.begin(), diam.begin() + diam.size() / 2, diam.end());
    cell_ = std::max(diam[diam.size() / 2], 1e-12);
    ci0_ = cj0_ = std::numeric_limits<long long>::max();
    long long ci1 = std::numeric_limits<long long>::min(), cj1 = ci1;
    for (const auto& b : boxes_) {
      ci0_ = std::min(ci0_, cell_of(b.x0)), cj0_ = std::min(cj0_, cell_of(b.y0));
      ci1 = std::max(ci1, cell_of(b.x1)), cj1 = std::max(cj1, cell_of(b.y1));
    }
    double cells = static_cast<double>(ci1 - ci0_ + 1) * static_cast<double>(cj1 - cj0_ + 1);
    if (cells <= 4.0 * static_cast<double>(boxes_.size()) + 4096) {
      // dense: counting sort into one array, boxes stored in cell order
      ni_ = ci1 - ci0_ + 1, nj_ = cj1 - cj0_ + 1;
      start_.assign(static_cast<std::size_t>(ni_ * nj_) + 1, 0);
      for (const auto& b : boxes_) for_cells(b, [&](long long c) { ++start_[static_cast<std::size_t>(c) + 1]; });
      for (std::size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
      entries_.resize(start_.back());
      std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
      for (std::size_t i = 0; i < boxes_.size(); ++i)
        for_cells(boxes_[i], [&](long long c) { entries_[fill[static_cast<std::size_t>(c)]++] = {boxes_[i], i}; });
    } else {
      for (std::size_t i = 0; i < boxes_.size(); ++i)
        for_keys(boxes_[i], [&](long long key) { cells_[key].push_back(i); });
    }
  }

  // Every indexed item whose box overlaps q, each reported once, ascending.
  std::vector<std::size_t> query(const BoundsD& q) const {
    std::vector<std::size_t> out;
    auto overlap = [&](const BoundsD& b) { return b.x0 <= q.x1 && q.x0 <= b.x1 && b.y0 <= q.y1 && q.y0 <= b.y1; };
    if (ni_ > 0) {
      long long i0 = std::max(cell_of(q.x0), ci0_) - ci0_, i1 = std::min(cell_of(q.x1) - ci0_, ni_ - 1);
      long long j0 = std::max(cell_of(q.y0), cj0_) - cj0_, j1 = std::min(cell_of(q.y1) - cj0_, nj_ - 1);
      for (long long i = i0; i <= i1; ++i)
        for (long long j = j0; j <= j1; ++j) {
          auto c = static_cast<std::size_t>(i * nj_ + j);
          for (std::size_t e = start_[c]; e < start_[c + 1]; ++e)
            if (overlap(entries_[e].box)) out.push_back(entries_[e].index);
        }
    } else {
      for_keys(q, [&](long long key) {
        auto it = cells_.find(key);
        if (it == cells_.end()) return;
        for (auto i : it->second)
          if (overlap(boxes_[i])) out.push_back(i);
      });
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  double cell_size() const { return cell_; }

 private:
  struct Entry {
    BoundsD box;
    std::size_t index;
  };

  long long cell_of(double x) const { return static_cast<long long>(std::floor(x / cell_)); }

  // dense cell numbers
  template <class F>
  void for_cells(const BoundsD& b, F&& f) const {
    for (long long i = cell_of(b.x0); i <= cell_of(b.x1); ++i)
      for (long long j = cell_of(b.y0); j <= cell_of(b.y1); ++j) f((i - ci0_) * nj_ + (j - cj0_));
  }

  // packed (i, j) keys for the sparse fallback
  template <class F>
  void for_keys(const BoundsD& b, F&& f) const {
    for (long long i = cell_of(b.x0); i <= cell_of(b.x1); ++i)
      for (long long j = cell_of(b.y0); j <= cell_of(b.y1); ++j)
        f(static_cast<long long>((static_cast<unsigned long long>(i) << 32) ^
                                 (static_cast<unsigned long long>(j) & 0xffffffffULL)));
  }

  std::vector<BoundsD> boxes_;
  double cell_ = 1;
  long long ci0_ = 0, cj0_ = 0, ni_ = 0, nj_ = 0;
  std::vector<std::size_t> start_;
  std::vector<Entry> entries_;
  std::unordered_map<long long, std::vector<std::size_t>> cells_;
};

struct IntersectionGraph {
  std::vector<std::vector<std::size_t>> adj;  // sorted neighbor lists

  std::size_t size() const { return adj.size(); }
  std::size_t edge_count() const {
    std::size_t e = 0;
    for (const auto& a : adj) e += a.size();
    return e / 2;
  }
  bool has_edge(std::size_t i, std::size_t j) const {
    return std::binary_search(adj[i].begin(), adj[i].end(), j);
  }
  friend bool operator==(const IntersectionGraph& a, const IntersectionGraph& b) { return a.adj == b.adj; }
};

inline std::vector<Body> realize_all(const Family& f) {
  std::vector<Body> out;
  out.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out.push_back(f.realize(i));
  return out;
}

inline IntersectionGraph intersection_graph(const Family& f) {
  auto bodies = realize_all(f);
  std::vector<BoundsD> boxes;
  boxes.reserve(bodies.size());
  for (const auto& b : bodies) boxes.push_back(bounds(b));
  GridIndex index(boxes);
  IntersectionGraph g;
  g.adj.resize(bodies.size());
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    for (auto j : index.query(boxes[i])) {
      if (j <= i) continue;
      if (intersects(bodies[i], bodies[j])) {
        g.adj[i].push_back(j);
        g.adj[j].push_back(i);
      }
    }
  }
  for (auto& a : g.adj) std::sort(a.begin(), a.end());
  return g;
}

// All-pairs construction; the quadratic reference for the indexed build.
inline IntersectionGraph intersection_graph_brute(const Family& f) {
  auto bodies = realize_all(f);
  IntersectionGraph g;
  g.adj.resize(bodies.size());
  for (std::size_t i = 0; i < bodies.size(); ++i)
    for (std::size_t j = i + 1; j < bodies.size(); ++j)
      if (intersects(bodies[i], bodies[j])) {
        g.adj[i].push_back(j);
        g.adj[j].push_back(i);
      }
  return g;
}

inline bool pairwise_intersecting(const Family& f) {
  auto g = intersection_graph(f);
  for (const auto& a : g.adj)
    if (a.size() + 1 != g.size()) return false;
  return true;
}

// Applies x -> M x + b to the base body and every member. For boxes only
// positive diagonal maps keep the family axis-parallel.
inline Family normalize_affine(const Family& f, const AffineMap& map) {
  if (map.det() == 0) throw Error(ErrorCode::SingularMap, "affine map is singular");
  Family out = f;
  switch (f.base.kind()) {
    case BodyKind::Polygon: {
      AffineMap lin = map;
      lin.b = {0, 0};
      out.base.shape = apply(lin, f.base.polygon());
      out.base.reference = coords(lin(planar(f.base.reference)));
      break;
    }
    case BodyKind::Disk: {
      if (!map.is_similarity())
        throw Error(ErrorCode::DisksNotClosedUnderAffine, "disks admit only similarity maps");
      // scale factor sqrt(det) must be rational
      Scalar d = map.det() < 0 ? Scalar(-map.det()) : map.det();
      Integer num, den;
      if (!mpz_perfect_square_p(d.get_num_mpz_t()) || !mpz_perfect_square_p(d.get_den_mpz_t()))
        throw Error(ErrorCode::DisksNotClosedUnderAffine, "similarity scale is irrational");
      mpz_sqrt(num.get_mpz_t(), d.get_num_mpz_t());
      mpz_sqrt(den.get_mpz_t(), d.get_den_mpz_t());
      Scalar scale(num, den);
      AffineMap lin = map;
      lin.b = {0, 0};
      const auto& dk = f.base.disk();
      out.base.shape = Disk{lin(dk.center), scale * dk.radius};
      out.base.reference = coords(lin(planar(f.base.reference)));
      break;
    }
    case BodyKind::Box: {
      if (f.base.dim() != 2 || map.m01 != 0 || map.m10 != 0 || map.m00 <= 0 || map.m11 <= 0)
        throw Error(ErrorCode::UnsupportedBase, "boxes admit only positive diagonal maps");
      const auto& b = f.base.box();
      Box nb{{map.m00 * b.lo[0], map.m11 * b.lo[1]}, {map.m00 * b.hi[0], map.m11 * b.hi[1]}};
      out.base.shape = nb;
      out.base.reference = {map.m00 * f.base.reference[0], map.m11 * f.base.reference[1]};
      break;
    }
  }
  for (auto& m : out.members) m.t = coords(map(planar(m.t)));
  return out;
}

}  // namespace pierce
