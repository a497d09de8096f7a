#include <gtest/gtest.h>

#include "pierce/generators.hpp"
#include "pierce/pierce_translates.hpp"
#include "test_support.hpp"

using namespace pierce;
using namespace pierce::testing;

namespace {

// Brute-force soundness check, no spatial index.
void expect_sound(const Family& f, const PierceCertificate& c) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto b = f.realize(i);
    bool hit = false;
    for (const auto& p : c.points) hit = hit || contains_point(b, p);
    EXPECT_TRUE(hit) << c.method << ": member " << i << " unpierced";
  }
  for (std::size_t a = 0; a < c.witness.size(); ++a)
    for (std::size_t b = a + 1; b < c.witness.size(); ++b)
      EXPECT_FALSE(intersects(f.realize(c.witness[a]), f.realize(c.witness[b]))) << c.method << ": witness overlap";
  EXPECT_LE(c.points.size(), static_cast<std::size_t>(c.factor) * c.witness.size()) << c.method;
  EXPECT_TRUE(verify_certificate(f, c).ok()) << c.method;
}

Family translates_of(ConvexBody base, std::vector<Point> ts) {
  Family f{std::move(base), {}, FamilyKind::Translates};
  for (auto& t : ts) f.members.push_back({coords(t), 1});
  return f;
}

Family random_translates(const ConvexBody& base, std::size_t n, Scalar box, std::uint64_t seed) {
  RandomFamilySpec s;
  s.base = base;
  s.n = n;
  s.box_size = box;
  s.seed = seed;
  return random_family(s);
}

}  // namespace

TEST(Certificate, DetectsUnpiercedAndOverlap) {
  auto f = translates_of(ConvexBody::polygon(unit_square_polygon()), {{0, 0}, {3, 0}});
  PierceCertificate c;
  c.points = {{Scalar(1, 2), Scalar(1, 2)}};
  c.witness = {0, 1};
  c.factor = 1;
  auto v = verify_certificate(f, c);
  EXPECT_FALSE(v.pierced);
  EXPECT_EQ(v.unpierced, 1u);
  EXPECT_TRUE(v.disjoint);
  c.points.push_back({3, 1});  // corner of the second square
  EXPECT_TRUE(verify_certificate(f, c).ok());
  auto g = translates_of(ConvexBody::polygon(unit_square_polygon()), {{0, 0}, {1, 0}});
  c.witness = {0, 1};
  EXPECT_FALSE(verify_certificate(g, c).disjoint);
  c.witness = {0, 7};
  EXPECT_FALSE(verify_certificate(g, c).disjoint);
}

TEST(Certificate, BoundCountsPoints) {
  auto f = translates_of(ConvexBody::polygon(unit_square_polygon()), {{0, 0}});
  PierceCertificate c;
  c.points = {{0, 0}, {1, 1}, {1, 0}};
  c.witness = {0};
  c.factor = 2;
  auto v = verify_certificate(f, c);
  EXPECT_TRUE(v.pierced);
  EXPECT_FALSE(v.bounded);
}

TEST(GreedyTranslates, FiveCycleSquares) {
  auto f = five_square_cycle();
  auto c = greedy_pierce(f);
  expect_sound(f, c);
  EXPECT_LE(c.points.size(), 3u);
  EXPECT_GE(c.witness.size(), 2u);
  EXPECT_LE(c.points.size(), 2 * c.witness.size() - 1);
  EXPECT_EQ(c.factor, 2);
}

TEST(GreedyTranslates, SingleDisk) {
  auto f = translates_of(ConvexBody::disk({0, 0}, 1), {{5, 7}});
  auto c = greedy_pierce(f);
  expect_sound(f, c);
  EXPECT_EQ(c.points.size(), 1u);
}

TEST(GreedyTranslates, RandomUnitDisks) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto f = random_translates(ConvexBody::disk({0, 0}, 1), 50, 10, seed);
    auto c = greedy_pierce(f);
    expect_sound(f, c);
    EXPECT_EQ(c.factor, 4);
    EXPECT_LE(c.points.size(), 4 * c.witness.size() - (c.refined ? 1 : 0));
    // oracle on subsamples of 12
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 3; ++k) {
      std::vector<std::size_t> idx(f.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::shuffle(idx.begin(), idx.end(), rng);
      idx.resize(12);
      auto sub = f.subfamily(idx);
      auto cs = greedy_pierce(sub);
      expect_sound(sub, cs);
      auto o = oracle(sub);
      EXPECT_LE(cs.witness.size(), static_cast<std::size_t>(o.nu));
      EXPECT_LE(o.nu, o.tau);
      EXPECT_LE(static_cast<std::size_t>(o.tau), cs.points.size());
    }
  }
}

TEST(GreedyTranslates, SeedsPairwiseDisjointAndTopmost) {
  auto f = random_translates(ConvexBody::polygon(rational_hexagon()), 80, 20, 3);
  auto c = greedy_pierce(f);
  expect_sound(f, c);
  EXPECT_EQ(c.method, "greedy-symmetric");
  EXPECT_EQ(c.factor, 4);
  for (const auto& cl : c.clusters)
    for (auto j : cl.members) EXPECT_LE(f.members[j].t[1], f.members[cl.seed].t[1]);
}

TEST(GreedyTranslates, TrianglesUseFivePoints) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto f = random_translates(ConvexBody::polygon(ConvexPolygon({{0, 0}, {3, 1}, {1, 2}})), 60, 10, seed);
    auto c = greedy_pierce(f);
    expect_sound(f, c);
    EXPECT_EQ(c.method, "greedy-triangle");
    EXPECT_EQ(c.factor, 5);
  }
}

TEST(GreedyTranslates, ParallelogramsUseTwoPoints) {
  auto base = ConvexBody::polygon(ConvexPolygon({{0, 0}, {2, 1}, {3, 3}, {1, 2}}));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto f = random_translates(base, 60, 10, seed);
    auto c = greedy_pierce(f);
    expect_sound(f, c);
    EXPECT_EQ(c.factor, 2);
  }
}

TEST(GreedyTranslates, BoxesIn3d) {
  RandomFamilySpec s;
  s.base = ConvexBody::box({1, 2, 1});
  s.n = 60;
  s.box_size = 5;
  s.seed = 9;
  auto f = random_family(s);
  auto c = greedy_pierce(f);
  expect_sound(f, c);
  EXPECT_EQ(c.factor, 4);
}

TEST(GreedyTranslates, GeneralPolygonFallsBackToGrid) {
  auto base = ConvexBody::polygon(ConvexPolygon({{0, 0}, {4, 0}, {5, 2}, {2, 4}, {0, 2}}));
  auto f = random_translates(base, 40, 15, 2);
  auto c = greedy_pierce(f);
  EXPECT_EQ(c.method, "grid");
  expect_sound(f, c);
}

TEST(GreedyTranslates, ChainAgainstOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    ConvexBody base = trial % 3 == 0   ? ConvexBody::polygon(unit_square_polygon())
                      : trial % 3 == 1 ? ConvexBody::polygon(unit_triangle_polygon())
                                       : ConvexBody::disk({0, 0}, 1);
    auto f = random_translates(base, 6 + trial % 7, 4, 100 + trial);
    auto c = greedy_pierce(f);
    expect_sound(f, c);
    auto o = oracle(f);
    EXPECT_LE(c.witness.size(), static_cast<std::size_t>(o.nu)) << trial;
    EXPECT_LE(static_cast<std::size_t>(o.tau), c.points.size()) << trial;
  }
}

TEST(GridPierce, UnitSquaresFactorTwo) {
  auto f = random_translates(ConvexBody::polygon(unit_square_polygon()), 100, 12, 4);
  auto c = grid_pierce(f);
  expect_sound(f, c);
  EXPECT_EQ(c.factor, 2);
}

TEST(GridPierce, RandomPentagons) {
  auto base = ConvexBody::polygon(ConvexPolygon({{0, 0}, {3, 0}, {4, 2}, {1, 3}, {-1, 1}}));
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto f = random_translates(base, 100, 25, seed);
    auto c = grid_pierce(f);
    expect_sound(f, c);
    EXPECT_LE(c.factor, 6);
    EXPECT_LE(c.points.size(), 6 * c.witness.size());
  }
}

TEST(GridPierce, RandomPolygons) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 15; ++trial) {
    auto base = ConvexBody::polygon(random_convex(rng));
    auto f = random_translates(base, 50, 12, 200 + trial);
    auto c = grid_pierce(f);
    expect_sound(f, c);
    EXPECT_LE(c.factor, 6);
  }
}

TEST(GridPierce, TwoFarApart) {
  auto f = translates_of(ConvexBody::polygon(ConvexPolygon({{0, 0}, {2, 0}, {1, 1}})), {{0, 0}, {50, -30}});
  auto c = grid_pierce(f);
  expect_sound(f, c);
  EXPECT_EQ(c.points.size(), 2u);
  EXPECT_EQ(c.witness.size(), 2u);
}

TEST(GridPierce, Boxes) {
  RandomFamilySpec s;
  s.base = ConvexBody::box({2, 1, 3});
  s.n = 80;
  s.box_size = 8;
  s.seed = 12;
  auto f = random_family(s);
  auto c = grid_pierce(f);
  expect_sound(f, c);
  EXPECT_EQ(c.factor, 4);
}

TEST(HexagonPierce, OverlappingOneGivesTwoPoints) {
  auto h = ConvexBody::polygon(rational_hexagon());
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto f = pairwise_intersecting_family(h, 10, seed);
    auto c = hexagon_pierce(f);
    expect_sound(f, c);
    EXPECT_LE(c.points.size(), 2u);
  }
  // hand-made pairwise-intersecting family
  auto f = translates_of(h, {{0, 0}, {1, 1}, {-1, 1}, {1, -1}, {-1, -1}, {2, 0}, {-2, 0}, {0, 2}, {0, -2}, {1, 0}});
  ASSERT_TRUE(pairwise_intersecting(f));
  auto c = hexagon_pierce(f);
  expect_sound(f, c);
  EXPECT_LE(c.points.size(), 2u);
}

// Skinny hexagon where the first pair of filling translates leaves part of
// the center region uncovered; another pair must be used.
TEST(HexagonPierce, SkinnyHexagonNeedsOtherPair) {
  ConvexPolygon h({{Scalar(-61, 32), Scalar(-17, 32)},
                   {Scalar(-29, 16), Scalar(-27, 32)},
                   {0, Scalar(-25, 16)},
                   {Scalar(61, 32), Scalar(17, 32)},
                   {Scalar(29, 16), Scalar(27, 32)},
                   {0, Scalar(25, 16)}});
  auto f = pairwise_intersecting_family(ConvexBody::polygon(h), 41, 531);
  auto c = hexagon_pierce(f);
  expect_sound(f, c);
  EXPECT_EQ(c.method, "hexagon-two");
  EXPECT_LE(c.points.size(), 2u);
}

TEST(HexagonPierce, FarSeparated) {
  auto h = ConvexBody::polygon(rational_hexagon());
  auto f = translates_of(h, {{0, 0}, {20, 0}, {0, 20}, {-20, 5}, {40, 40}});
  auto c = hexagon_pierce(f);
  expect_sound(f, c);
  EXPECT_EQ(c.points.size(), 5u);
  EXPECT_EQ(c.witness.size(), 5u);
}

TEST(HexagonPierce, RandomFamilies) {
  auto h = ConvexBody::polygon(rational_hexagon());
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto f = random_translates(h, 60, 30, seed);
    auto c = hexagon_pierce(f);
    expect_sound(f, c);
    EXPECT_LE(c.points.size(), 3 * c.witness.size());
  }
}

TEST(HexagonPierce, RejectsNonHexagon) {
  auto f = translates_of(ConvexBody::polygon(unit_square_polygon()), {{0, 0}});
  try {
    hexagon_pierce(f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHexagon);
  }
}

namespace {

// Union area by peeling: area of each member minus the earlier ones.
Scalar union_area_by_residue(const std::vector<ConvexPolygon>& ms) {
  Scalar a = 0;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    std::vector<ConvexPolygon> prev(ms.begin(), ms.begin() + static_cast<long>(i));
    for (const auto& piece : residue(ms[i].vertices(), prev)) a += area(std::span<const Point>(piece));
  }
  return a;
}

std::vector<ConvexPolygon> polygons_of(const Family& f) {
  std::vector<ConvexPolygon> out;
  for (std::size_t i = 0; i < f.size(); ++i) out.push_back(std::get<ConvexPolygon>(f.realize(i)));
  return out;
}

}  // namespace

TEST(Lattice, UnionAreaMatchesResidue) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    auto base = ConvexBody::polygon(random_convex(rng, 8));
    auto f = random_translates(base, 2 + trial % 8, 4, 300 + trial);
    auto ms = polygons_of(f);
    EXPECT_EQ(union_area(ms), union_area_by_residue(ms)) << trial;
  }
}

TEST(Lattice, DefaultLatticesVerify) {
  std::mt19937_64 rng(22);
  ConvexPolygon h = rational_hexagon();
  EXPECT_TRUE(verify_covering(h, default_covering_lattice(h)));
  EXPECT_TRUE(verify_packing(h, default_packing_lattice(h)));
  EXPECT_FALSE(verify_packing(h, detail::tiling_lattice(h.scaled(2), LatticeRole::Packing)));  // tiles touch
  for (int trial = 0; trial < 5; ++trial) {
    ConvexPolygon s = random_symmetric(rng);
    s = s.translated(-*symmetry_center(s));
    EXPECT_TRUE(verify_covering(s, default_covering_lattice(s))) << trial;
    EXPECT_TRUE(verify_packing(s, default_packing_lattice(s))) << trial;
  }
  // a lattice too sparse to cover
  auto l = default_covering_lattice(h);
  l.u = Scalar(2) * l.u;
  EXPECT_FALSE(verify_covering(h, l));
}

TEST(Lattice, SingleMemberOnePoint) {
  auto f = translates_of(ConvexBody::polygon(rational_hexagon()), {{Scalar(1, 3), Scalar(2, 7)}});
  auto r = lattice_pierce(f);
  expect_sound(f, r.cert);
  EXPECT_EQ(r.cert.points.size(), 1u);
  EXPECT_TRUE(r.bound_met);
}

TEST(Lattice, FarApartHexagons) {
  auto f = translates_of(ConvexBody::polygon(rational_hexagon()), {{0, 0}, {30, 1}, {-25, 40}, {7, -33}});
  auto r = lattice_pierce(f);
  expect_sound(f, r.cert);
  EXPECT_EQ(r.cert.points.size(), 4u);
  auto w = lattice_witness(f);
  EXPECT_EQ(w.witness.size(), 4u);
}

TEST(Lattice, OverlappingHexagonsMeetAreaBound) {
  auto h = ConvexBody::polygon(rational_hexagon());
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto f = random_translates(h, 10, 4, seed);
    auto r = lattice_pierce(f);
    expect_sound(f, r.cert);
    ASSERT_TRUE(r.exact_area);
    EXPECT_EQ(r.union_area, union_area_by_residue(polygons_of(f)));
    EXPECT_EQ(r.count_bound, floor_int(r.union_area / area(rational_hexagon())));
    EXPECT_TRUE(r.bound_met);
    EXPECT_LE(Integer(static_cast<long>(r.cert.points.size())), r.count_bound);
  }
}

TEST(Lattice, WitnessDisjointAndAreaBound) {
  auto h = ConvexBody::polygon(rational_hexagon());
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto f = random_translates(h, 12, 12, seed);
    auto w = lattice_witness(f);
    EXPECT_TRUE(pairwise_disjoint(f, w.witness));
    Scalar cell = 4 * area(rational_hexagon()) * Scalar(101, 100) * Scalar(101, 100);
    EXPECT_GE(Integer(static_cast<long>(w.witness.size())), ceil_int(union_area_by_residue(polygons_of(f)) / cell));
  }
}

TEST(Lattice, CopiesOfOneTranslate) {
  auto f = translates_of(ConvexBody::polygon(rational_hexagon()), {{1, 1}, {1, 1}, {1, 1}});
  EXPECT_EQ(lattice_witness(f).witness.size(), 1u);
  auto r = lattice_pierce(f);
  expect_sound(f, r.cert);
}

TEST(Lattice, GeneralSymmetricBase) {
  std::mt19937_64 rng(23);
  ConvexPolygon s = random_symmetric(rng);
  auto f = random_translates(ConvexBody::polygon(s), 30, 15, 7);
  auto r = lattice_pierce(f, LatticeOptions{8, 16, 1, 15});
  expect_sound(f, r.cert);
  EXPECT_FALSE(r.exact_area);
  auto w = lattice_witness(f, LatticeOptions{8, 16, 1, 15});
  EXPECT_TRUE(pairwise_disjoint(f, w.witness));
}

TEST(Lattice, RejectsBadLattice) {
  auto f = translates_of(ConvexBody::polygon(rational_hexagon()), {{0, 0}});
  auto l = default_covering_lattice(rational_hexagon());
  l.v = Scalar(3) * l.v;
  try {
    lattice_pierce(f, l);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CoverageNotVerified);
  }
  try {
    lattice_witness(f, default_covering_lattice(rational_hexagon()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PackingNotVerified);
  }
}
