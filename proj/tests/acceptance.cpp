// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every certificate is re-verified here with the exact
// predicates; oracle values come from the exhaustive solver.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "pierce/dispatch.hpp"
#include "pierce/generators.hpp"

using namespace pierce;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  std::string first_failure;

  void fail(const std::string& why) {
    if (pass) first_failure = why;
    pass = false;
  }
  void check(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

int failures = 0;

void criterion(int id, const char* name, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  double sec = since(t0);
  if (!o.pass) ++failures;
  std::printf("%s [%2d] %s: %s (%.2fs)%s%s\n", o.pass ? "PASS" : "FAIL", id, name, o.note.str().c_str(), sec,
              o.pass ? "" : " -- ", o.first_failure.c_str());
  std::fflush(stdout);
}

double diameter(const ConvexBody& b) {
  auto bb = bounds(b.shape);
  return std::max(bb.x1 - bb.x0, bb.y1 - bb.y0);
}

Family random_of(const ConvexBody& base, std::size_t n, double spread, FamilyKind kind, std::uint64_t seed,
                 Scalar lo = 1, Scalar hi = 1) {
  RandomFamilySpec s;
  s.base = base;
  s.n = n;
  s.box_size = dyadic(spread * diameter(base), 6);
  if (s.box_size <= 0) s.box_size = 1;
  s.kind = kind;
  s.scale_lo = lo;
  s.scale_hi = hi;
  s.seed = seed;
  return random_family(s);
}

bool sound(const Family& f, const PierceCertificate& c) { return verify_certificate(f, c).ok(); }

std::string tag(const std::string& what, std::uint64_t seed) { return what + " seed " + std::to_string(seed); }

// Chain |witness| <= nu <= tau <= |points|, collected across criteria.
struct Chain {
  std::size_t checked = 0, broken = 0;
  std::string first;
  void add(const Family& f, const PierceCertificate& c, const std::string& where) {
    auto o = oracle(f);
    ++checked;
    bool ok = c.witness.size() <= static_cast<std::size_t>(o.nu) && o.nu <= o.tau &&
              static_cast<std::size_t>(o.tau) <= c.points.size();
    if (!ok && broken++ == 0) first = where;
  }
} chain;

struct GreedyCase {
  const char* name;
  std::function<ConvexBody(std::mt19937_64&)> base;
  long k;
  long refined_minus;  // points <= k*nu - refined_minus; 0 when no refined constant
};

void factor_protocol(Outcome& o, const std::vector<GreedyCase>& cases, FamilyKind kind, std::uint64_t salt) {
  std::size_t families = 0, refined_checks = 0;
  double worst = 0;
  for (const auto& gc : cases) {
    std::mt19937_64 rng(salt + static_cast<std::uint64_t>(gc.k) * 131);
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
      std::uint64_t seed = salt * 10007 + trial;
      ConvexBody base = gc.base(rng);
      Scalar lo = kind == FamilyKind::Homothets ? Scalar(1, 2) : Scalar(1);
      Scalar hi = kind == FamilyKind::Homothets ? Scalar(2) : Scalar(1);
      std::size_t n = 1 + rng() % 60;
      double spread = 0.5 + static_cast<double>(rng() % 80) / 10.0;
      Family f = random_of(base, n, spread, kind, seed, lo, hi);
      auto c = kind == FamilyKind::Homothets ? greedy_pierce_homothets(f) : greedy_pierce(f);
      ++families;
      o.check(sound(f, c), tag(std::string(gc.name) + " certificate", seed));
      o.check(c.factor <= gc.k, tag(std::string(gc.name) + " factor " + std::to_string(c.factor), seed));
      o.check(c.points.size() <= static_cast<std::size_t>(gc.k) * c.witness.size(),
              tag(std::string(gc.name) + " |points| > k|witness|", seed));
      worst = std::max(worst, static_cast<double>(c.points.size()) / static_cast<double>(c.witness.size()));

      // small instance: refined constant against the exact packing number
      std::size_t m = 2 + rng() % 11;
      Family g = random_of(base, m, 0.5 + static_cast<double>(rng() % 30) / 10.0, kind, seed + 1, lo, hi);
      auto cg = kind == FamilyKind::Homothets ? greedy_pierce_homothets(g) : greedy_pierce(g);
      o.check(sound(g, cg), tag(std::string(gc.name) + " small certificate", seed));
      if (gc.refined_minus > 0) {
        auto nu = exact_nu(g).first;
        ++refined_checks;
        o.check(static_cast<long>(cg.points.size()) <= gc.k * nu - gc.refined_minus,
                tag(std::string(gc.name) + " refined bound, points " + std::to_string(cg.points.size()) + " nu " +
                        std::to_string(nu),
                    seed));
      }
      if (trial % 4 == 0) chain.add(g, cg, tag(gc.name, seed));
    }
  }
  o.note << families << " families, " << refined_checks << " refined checks, max points/witness " << worst;
}

Family mapped(const Family& f, const AffineMap& a) {
  Family g{ConvexBody::polygon(apply(a, f.base.polygon())), {}, f.kind};
  for (const auto& m : f.members) g.members.push_back({coords(a.linear(planar(m.t))), m.s});
  return g;
}

double bench_seconds(std::size_t n, int repeats) {
  RandomFamilySpec s;
  s.base = ConvexBody::disk({0, 0}, 1);
  s.n = n;
  s.box_size = dyadic(2 * std::sqrt(static_cast<double>(n)), 8);
  s.seed = 2024;
  Family f = random_family(s);
  double best = 1e9;
  for (int r = 0; r < repeats; ++r) {
    auto t0 = Clock::now();
    auto c = greedy_pierce(f);
    best = std::min(best, since(t0));
    if (r == 0) {
      // exact check on an even sample of members
      std::vector<std::size_t> idx;
      for (std::size_t k = 0; k < 2000; ++k) idx.push_back(k * n / 2000);
      if (!unpierced_members(f.subfamily(idx), c.points).empty()) return -1;
    }
  }
  return best;
}

}  // namespace

int main() {
  auto t_all = Clock::now();

  criterion(1, "exact values on the two hand instances", [](Outcome& o) {
    auto t0 = Clock::now();
    auto a = oracle(five_square_cycle());
    double ta = since(t0);
    t0 = Clock::now();
    auto b = oracle(nine_triangles(Scalar(1, 100)));
    double tb = since(t0);
    o.check(a.tau == 3 && a.nu == 2, "five squares gave tau " + std::to_string(a.tau) + " nu " + std::to_string(a.nu));
    o.check(b.tau == 3 && b.nu == 1, "nine triangles gave tau " + std::to_string(b.tau) + " nu " + std::to_string(b.nu));
    o.check(ta < 1 && tb < 1, "oracle slower than 1 s");
    o.note << "five squares (" << a.tau << "," << a.nu << ") in " << ta << "s, nine triangles (" << b.tau << ","
           << b.nu << ") in " << tb << "s";
  });

  criterion(2, "greedy factors for translates", [](Outcome& o) {
    auto t0 = Clock::now();
    std::vector<GreedyCase> cases = {
        {"square", [](std::mt19937_64&) { return ConvexBody::polygon(unit_square_polygon()); }, 2, 1},
        {"triangle", [](std::mt19937_64&) { return ConvexBody::polygon(unit_triangle_polygon()); }, 5, 2},
        {"disk", [](std::mt19937_64&) { return ConvexBody::disk({0, 0}, 1); }, 4, 1},
        {"symmetric", [](std::mt19937_64& r) { return ConvexBody::polygon(random_symmetric_polygon(r)); }, 4, 1},
    };
    factor_protocol(o, cases, FamilyKind::Translates, 2);
    o.check(since(t0) < 60, "suite slower than 60 s");
  });

  criterion(3, "greedy factors for homothets", [](Outcome& o) {
    std::vector<GreedyCase> cases = {
        {"square", [](std::mt19937_64&) { return ConvexBody::polygon(unit_square_polygon()); }, 4, 3},
        {"triangle", [](std::mt19937_64&) { return ConvexBody::polygon(unit_triangle_polygon()); }, 12, 9},
        {"disk", [](std::mt19937_64&) { return ConvexBody::disk({0, 0}, 1); }, 7, 3},
        {"symmetric", [](std::mt19937_64& r) { return ConvexBody::polygon(random_symmetric_polygon(r)); }, 7, 0},
        {"polygon",
         [](std::mt19937_64& r) {
           for (;;) {
             auto c = random_convex_polygon(r);
             if (c.size() > 3 && !symmetry_center(c)) return ConvexBody::polygon(c);
           }
         },
         16, 0},
    };
    factor_protocol(o, cases, FamilyKind::Homothets, 3);
  });

  criterion(4, "sandwich parallelograms and grid piercing", [](Outcome& o) {
    std::mt19937_64 rng(4);
    int worst = 0;
    for (int t = 0; t < 100; ++t) {
      ConvexPolygon c = random_convex_polygon(rng, 12);
      auto s = sandwich_parallelograms(c);
      o.check(verify_sandwich(s, c), "sandwich fails exact check, trial " + std::to_string(t));
      o.check(s.gamma <= 6, "gamma " + std::to_string(s.gamma) + " on trial " + std::to_string(t));
      worst = std::max(worst, s.gamma);
      Family f = random_of(ConvexBody::polygon(c), 5 + t % 40, 1 + t % 6, FamilyKind::Translates, 400 + t);
      auto cert = grid_pierce(f, s);
      o.check(sound(f, cert), "grid certificate, trial " + std::to_string(t));
      o.check(cert.points.size() <= static_cast<std::size_t>(s.gamma) * cert.witness.size(),
              "grid |points| > gamma|witness|, trial " + std::to_string(t));
      if (t % 5 == 0 && f.size() <= 12) chain.add(f, cert, "grid trial " + std::to_string(t));
    }
    int para = 0;
    for (int t = 0; t < 30; ++t) {
      AffineMap a;
      do {
        a.m00 = draw_rational(rng, -3, 3, 8), a.m01 = draw_rational(rng, -3, 3, 8);
        a.m10 = draw_rational(rng, -3, 3, 8), a.m11 = draw_rational(rng, -3, 3, 8);
      } while (a.det() == 0);
      ConvexPolygon p = apply(a, unit_square_polygon());
      auto s = sandwich_parallelograms(p);
      o.check(s.gamma == 2 && verify_sandwich(s, p), "parallelogram gamma " + std::to_string(s.gamma));
      para += s.gamma == 2;
    }
    o.note << "max gamma " << worst << " over 100 polygons; gamma 2 on " << para << "/30 parallelograms";
  });

  criterion(5, "two points for pairwise intersecting hexagons", [](Outcome& o) {
    std::mt19937_64 rng(5);
    std::size_t most = 0;
    for (std::uint64_t t = 0; t < 50; ++t) {
      Family f = pairwise_intersecting_family(ConvexBody::polygon(random_hexagon(rng)), 2 + rng() % 40, 500 + t);
      auto c = hexagon_pierce(f);
      o.check(sound(f, c), tag("pairwise certificate", t));
      o.check(c.points.size() <= 2, tag("more than two points", t));
      most = std::max(most, c.points.size());
    }
    double worst = 0;
    for (std::uint64_t t = 0; t < 100; ++t) {
      Family f = random_of(ConvexBody::polygon(random_hexagon(rng)), 2 + rng() % 50, 1 + (rng() % 60) / 10.0,
                           FamilyKind::Translates, 600 + t);
      auto c = hexagon_pierce(f);
      o.check(sound(f, c), tag("general certificate", t));
      o.check(c.points.size() <= 3 * c.witness.size(), tag("|points| > 3|witness|", t));
      worst = std::max(worst, static_cast<double>(c.points.size()) / static_cast<double>(c.witness.size()));
    }
    o.note << "at most " << most << " points on 50 pairwise families; max points/witness " << worst
           << " on 100 general families";
  });

  criterion(6, "seven-translate and half-plane covers", [](Outcome& o) {
    std::mt19937_64 rng(6);
    std::size_t seven = 0, four = 0;
    for (int t = 0; t < 50; ++t) {
      ConvexPolygon s = random_symmetric_polygon(rng, 8, 16);
      s = s.translated(-*symmetry_center(s));
      auto p7 = seven_cover(s);
      bool ok7 = p7.size() <= 7 && residue(s.scaled(2).vertices(), p7.covers()).empty();
      o.check(ok7, "seven cover, trial " + std::to_string(t));
      seven += ok7;
      Vec n{draw_rational(rng, -5, 5, 4), draw_rational(rng, -5, 5, 4)};
      if (n == Point{0, 0}) n = {0, -1};
      auto p4 = halfplane_four_cover(s, n);
      auto half = clip(s.scaled(2).vertices(), HalfPlane{{0, 0}, -perp(n)});
      bool ok4 = p4.size() <= 4 && residue(half, p4.covers()).empty();
      o.check(ok4, "half-plane cover, trial " + std::to_string(t));
      four += ok4;
    }
    o.note << seven << "/50 seven covers, " << four << "/50 half-plane covers with empty residue";
  });

  criterion(7, "lattice piercing and packing bounds", [](Outcome& o) {
    std::mt19937_64 rng(7);
    double worst = 0;
    std::size_t met = 0;
    const Scalar eps(1, 100);
    for (std::uint64_t t = 0; t < 50; ++t) {
      ConvexPolygon h = random_hexagon(rng);
      Family f = random_of(ConvexBody::polygon(h), 1 + rng() % 12, 0.5 + (rng() % 40) / 10.0,
                           FamilyKind::Translates, 700 + t);
      std::vector<ConvexPolygon> ms;
      for (std::size_t i = 0; i < f.size(); ++i) ms.push_back(std::get<ConvexPolygon>(f.realize(i)));
      Scalar u = union_area(ms);
      auto r = lattice_pierce(f);
      auto w = lattice_witness(f);
      o.check(sound(f, r.cert), tag("lattice certificate", t));
      o.check(pairwise_disjoint(f, w.witness), tag("lattice witness not disjoint", t));
      o.check(r.exact_area && r.union_area == u, tag("union area disagrees", t));
      Integer up = floor_int(u / area(h));
      Integer down = ceil_int(u / (4 * area(h) * (1 + eps) * (1 + eps)));
      o.check(Integer(static_cast<long>(r.cert.points.size())) <= up,
              tag("count " + std::to_string(r.cert.points.size()) + " above area bound", t));
      o.check(Integer(static_cast<long>(w.witness.size())) >= down, tag("witness below area bound", t));
      met += Integer(static_cast<long>(r.cert.points.size())) <= up;
      double ratio = static_cast<double>(r.cert.points.size()) / static_cast<double>(w.witness.size());
      worst = std::max(worst, ratio);
      o.check(ratio <= 6, tag("combined ratio above 6", t));
    }
    o.note << "count bound met " << met << "/50, max certified ratio " << worst;
  });

  criterion(8, "oracle chain and affine invariance", [](Outcome& o) {
    // extra homothet instances beyond those collected above
    for (std::uint64_t t = 0; t < 20; ++t) {
      Family f = random_of(ConvexBody::disk({0, 0}, 1), 3 + t % 9, 2, FamilyKind::Homothets, 800 + t, Scalar(1, 2), 2);
      chain.add(f, greedy_pierce_homothets(f), tag("disk homothets", t));
    }
    o.check(chain.broken == 0, "chain broken at " + chain.first);
    std::mt19937_64 rng(8);
    std::size_t same = 0;
    for (std::uint64_t t = 0; t < 20; ++t) {
      ConvexPolygon c = t % 3 == 0 ? unit_triangle_polygon() : t % 3 == 1 ? unit_square_polygon() : random_convex_polygon(rng, 8);
      FamilyKind kind = t % 2 ? FamilyKind::Homothets : FamilyKind::Translates;
      Family f = random_of(ConvexBody::polygon(c), 4 + t % 8, 1.5, kind, 850 + t, Scalar(1, 2), 2);
      AffineMap a;
      do {
        a.m00 = draw_rational(rng, -4, 4, 16), a.m01 = draw_rational(rng, -4, 4, 16);
        a.m10 = draw_rational(rng, -4, 4, 16), a.m11 = draw_rational(rng, -4, 4, 16);
      } while (a.det() == 0);
      auto x = oracle(f), y = oracle(mapped(f, a));
      o.check(x.tau == y.tau && x.nu == y.nu, tag("oracle changed under an affine map", t));
      same += x.tau == y.tau && x.nu == y.nu;
    }
    o.note << chain.checked << " chains intact, " << same << "/20 mapped instances agree";
  });

  criterion(9, "grid of disks ratio", [](Outcome& o) {
    Family f = grid_family(2, ConvexBody::disk({0, 0}, 1));
    auto row = run_row("grid2-disk", f, RunOptions{}, 16);
    o.check(row.verified, "certificate");
    o.check(row.tau >= 0 && row.nu > 0, "oracle did not run");
    double ratio = row.nu > 0 ? static_cast<double>(row.tau) / row.nu : 0;
    o.check(ratio >= 1, "tau/nu below 1");
    o.note << "tau " << row.tau << " nu " << row.nu << " ratio " << ratio << "; row " << row.csv();
  });

  criterion(10, "greedy on 10^5 unit disks", [](Outcome& o) {
    double small = bench_seconds(10000, 3);
    double large = bench_seconds(100000, 2);
    o.check(small > 0 && large > 0, "sampled verification found an unpierced disk");
    o.check(large < 5, "10^5 disks took " + std::to_string(large) + " s");
    double growth = large / small;
    o.check(growth < 15, "growth " + std::to_string(growth));
    o.note << "10^4 in " << small << "s, 10^5 in " << large << "s, growth " << growth << "x";
  });

  std::printf("%s: %d of 10 criteria failed (%.1fs)\n", failures ? "FAIL" : "PASS", failures, since(t_all));
  return failures ? 1 : 0;
}
