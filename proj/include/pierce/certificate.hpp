#pragma once

// Piercing certificates: points, greedy clusters and a pairwise-disjoint
// witness, checked exactly against the family.

#include <string>

#include "pierce/bodies.hpp"

namespace pierce {

struct Cluster {
  std::size_t seed = 0;
  std::vector<std::size_t> members;
  std::size_t pattern_size = 0;  // points spent on this cluster
};

struct PierceCertificate {
  std::vector<Coords> points;
  std::vector<Cluster> clusters;
  std::vector<std::size_t> witness;
  long factor = 1;
  std::string method;
  bool refined = false;  // last cluster replaced by an exact optimum
};

struct Verification {
  bool pierced = false;
  bool disjoint = false;
  bool bounded = false;
  std::size_t unpierced = 0;

  bool ok() const { return pierced && disjoint && bounded; }
};

// Members not containing any point, found through the spatial index.
inline std::vector<std::size_t> unpierced_members(const Family& f, const std::vector<Coords>& points) {
  auto bodies = realize_all(f);
  std::vector<BoundsD> boxes;
  boxes.reserve(bodies.size());
  for (const auto& b : bodies) boxes.push_back(bounds(b));
  GridIndex index(boxes);
  std::vector<char> hit(bodies.size(), 0);
  for (const auto& p : points) {
    if (p.size() != f.base.dim()) continue;
    double x = to_double(p[0]), y = to_double(p[1]);
    for (auto i : index.query({x, y, x, y}))
      if (!hit[i] && contains_point(bodies[i], p)) hit[i] = 1;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bodies.size(); ++i)
    if (!hit[i]) out.push_back(i);
  return out;
}

inline bool pairwise_disjoint(const Family& f, const std::vector<std::size_t>& idx) {
  for (std::size_t i = 0; i < idx.size(); ++i)
    if (idx[i] >= f.size()) return false;
  return intersection_graph(f.subfamily(idx)).edge_count() == 0;
}

inline Verification verify_certificate(const Family& f, const PierceCertificate& c) {
  Verification v;
  v.unpierced = unpierced_members(f, c.points).size();
  v.pierced = v.unpierced == 0;
  v.disjoint = pairwise_disjoint(f, c.witness);
  v.bounded = c.points.size() <= static_cast<std::size_t>(c.factor) * c.witness.size();
  return v;
}

}  // namespace pierce
