#pragma once

// Method selection by name, and the per-instance report row used by the
// experiment runner.

#include <chrono>
#include <sstream>

#include "pierce/pierce_homothets.hpp"

namespace pierce {

struct RunOptions {
  std::string method = "auto";  // greedy | grid | lattice | hexagon | auto
  bool refine = true;
  std::uint64_t seed = 1;
};

inline bool is_hexagon_base(const Family& f) {
  return f.base.kind() == BodyKind::Polygon && f.base.polygon().size() == 6 && f.base.centrally_symmetric();
}

// Most specific applicable method for the family.
inline std::string auto_method(const Family& f) {
  if (f.kind == FamilyKind::Homothets) return "greedy";
  if (is_hexagon_base(f)) return "hexagon";
  if (f.base.kind() == BodyKind::Polygon) {
    const ConvexPolygon& c = f.base.polygon();
    if (!symmetry_center(c) && c.size() != 3) return "grid";
  }
  return "greedy";
}

inline PierceCertificate run_method(const Family& f, const RunOptions& opt) {
  std::string m = opt.method == "auto" ? auto_method(f) : opt.method;
  std::size_t budget = opt.refine ? 12 : 0;
  if (m == "greedy") {
    if (f.kind == FamilyKind::Homothets) return greedy_pierce_homothets(f, HomothetOptions{budget, 3});
    return greedy_pierce(f, GreedyOptions{budget});
  }
  if (f.kind == FamilyKind::Homothets) throw Error(ErrorCode::UnsupportedBase, "method '" + m + "' needs translates");
  if (m == "grid") return grid_pierce(f);
  if (m == "hexagon") return hexagon_pierce(f);
  if (m == "lattice") {
    LatticeOptions lo;
    lo.seed = opt.seed;
    return lattice_pierce(f, lo).cert;
  }
  throw Error(ErrorCode::Parse, "unknown method '" + m + "'");
}

struct ReportRow {
  std::string id;
  std::string method;
  std::size_t n = 0;
  std::size_t points = 0;
  std::size_t witness = 0;
  long factor = 0;
  double ratio = 0;  // points / witness
  int tau = -1;      // -1 when the oracle did not run
  int nu = -1;
  double millis = 0;
  bool verified = false;

  static std::string header() { return "id,method,n,points,witness,factor,ratio,tau,nu,ms,verified"; }
  std::string csv() const {
    std::ostringstream os;
    os << id << ',' << method << ',' << n << ',' << points << ',' << witness << ',' << factor << ',' << ratio << ','
       << tau << ',' << nu << ',' << millis << ',' << (verified ? 1 : 0);
    return os.str();
  }
};

// Run, verify, and optionally consult the oracle when n is small.
inline ReportRow run_row(const std::string& id, const Family& f, const RunOptions& opt, std::size_t oracle_max) {
  auto t0 = std::chrono::steady_clock::now();
  PierceCertificate c = run_method(f, opt);
  auto t1 = std::chrono::steady_clock::now();
  ReportRow r;
  r.id = id;
  r.method = c.method;
  r.n = f.size();
  r.points = c.points.size();
  r.witness = c.witness.size();
  r.factor = c.factor;
  r.ratio = r.witness ? static_cast<double>(r.points) / static_cast<double>(r.witness) : 0;
  r.millis = std::chrono::duration<double, std::milli>(t1 - t0).count();
  r.verified = verify_certificate(f, c).ok();
  if (f.size() <= oracle_max) {
    try {
      auto o = oracle(f);
      r.tau = o.tau;
      r.nu = o.nu;
    } catch (const Error&) {
    }
  }
  return r;
}

}  // namespace pierce
