#pragma once

#include <random>
#include <vector>

#include "pierce/geometry.hpp"

namespace pierce::testing {

inline Scalar rand_rational(std::mt19937_64& rng, long lo, long hi, long den = 64) {
  std::uniform_int_distribution<long> d(lo * den, hi * den);
  Scalar q(d(rng), den);
  q.canonicalize();
  return q;
}

inline Point rand_point(std::mt19937_64& rng, long lo, long hi, long den = 64) {
  return {rand_rational(rng, lo, hi, den), rand_rational(rng, lo, hi, den)};
}

inline ConvexPolygon random_convex(std::mt19937_64& rng, std::size_t max_vertices = 12, long den = 64) {
  for (;;) {
    std::uniform_int_distribution<std::size_t> k(3, max_vertices);
    std::size_t n = k(rng);
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(rand_point(rng, -2, 2, den));
    auto h = hull_points(pts);
    if (h.size() >= 3 && h.size() <= max_vertices) return ConvexPolygon::from_trusted(h);
  }
}

// hull of +-p_i: centrally symmetric about the origin
inline ConvexPolygon random_symmetric(std::mt19937_64& rng, std::size_t min_vertices = 8,
                                      std::size_t max_vertices = 16) {
  for (;;) {
    std::vector<Point> pts;
    std::uniform_int_distribution<std::size_t> k(min_vertices / 2, max_vertices / 2 + 2);
    std::size_t n = k(rng);
    for (std::size_t i = 0; i < n; ++i) {
      Point p = rand_point(rng, -2, 2, 32);
      pts.push_back(p);
      pts.push_back(-p);
    }
    auto h = hull_points(pts);
    if (h.size() >= min_vertices && h.size() <= max_vertices) return ConvexPolygon::from_trusted(h);
  }
}

}  // namespace pierce::testing
