// pierce: command-line front end. Exit codes: 0 ok, 1 verification
// failure, 2 parse error, 3 size limit.

#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "pierce/dispatch.hpp"
#include "pierce/generators.hpp"
#include "pierce/io.hpp"
#include "pierce/svg.hpp"

using namespace pierce;
using io::json;

namespace {

enum Exit { Ok = 0, VerifyFail = 1, ParseFail = 2, SizeLimit = 3 };

int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::Parse:
    case ErrorCode::InvalidFamily:
    case ErrorCode::DegenerateInput:
    case ErrorCode::MixedKinds:
    case ErrorCode::NotCentrallySymmetric:
    case ErrorCode::NotHexagon:
    case ErrorCode::UnsupportedBase:
      return ParseFail;
    case ErrorCode::TooLarge: return SizeLimit;
    default: return VerifyFail;
  }
}

void emit(const json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error(ErrorCode::Parse, "cannot write '" + out + "'");
  f << j.dump(2) << '\n';
}

// Unit disks or squares at constant density, box side 2*sqrt(n).
Family bench_family(const std::string& base, std::size_t n, std::uint64_t seed) {
  RandomFamilySpec s;
  s.base = base == "square" ? ConvexBody::polygon(unit_square_polygon()) : ConvexBody::disk({0, 0}, 1);
  s.n = n;
  s.box_size = dyadic(2 * std::sqrt(static_cast<double>(n)), 8);
  s.seed = seed;
  return random_family(s);
}

// Sampled exact check: up to `sample` members, spread evenly.
bool sampled_pierced(const Family& f, const PierceCertificate& c, std::size_t sample) {
  if (sample >= f.size()) return verify_certificate(f, c).pierced;
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < sample; ++k) idx.push_back(k * f.size() / sample);
  return unpierced_members(f.subfamily(idx), c.points).empty();
}

std::uint64_t digest(const PierceCertificate& c) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& p : c.points)
    for (const auto& x : p)
      for (char ch : to_string(x)) h = (h ^ static_cast<unsigned char>(ch)) * 1099511628211ULL;
  return h;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Piercing and packing certificates for families of translates and homothets"};
  app.require_subcommand(1);

  // pierce
  std::string in_file, out_file, svg_file;
  RunOptions run;
  auto* pierce_cmd = app.add_subcommand("pierce", "pierce a family and print a certificate");
  pierce_cmd->add_option("input", in_file, "instance JSON")->required();
  pierce_cmd->add_option("--method", run.method, "greedy|grid|lattice|hexagon|auto")
      ->check(CLI::IsMember({"greedy", "grid", "lattice", "hexagon", "auto"}));
  pierce_cmd->add_flag("--refine,!--no-refine", run.refine, "exact optimum for a small last cluster");
  pierce_cmd->add_option("--seed", run.seed, "seed for randomized offset probes");
  pierce_cmd->add_option("--svg", svg_file, "write an SVG drawing");
  pierce_cmd->add_option("-o,--output", out_file, "certificate file (default stdout)");

  // exact
  OracleLimits lim;
  auto* exact_cmd = app.add_subcommand("exact", "exact transversal and packing numbers");
  exact_cmd->add_option("input", in_file, "instance JSON")->required();
  exact_cmd->add_option("--tau-max", lim.tau_max, "largest n for the transversal search");
  exact_cmd->add_option("--nu-max", lim.nu_max, "largest n for the packing search");
  exact_cmd->add_option("-o,--output", out_file, "output file (default stdout)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "re-check a certificate file");
  verify_cmd->add_option("certificate", in_file, "certificate JSON")->required();

  // gen
  std::string gen_kind = "random", base_name = "disk", family_kind = "translates";
  std::size_t n = 20;
  std::string eps = "1/100", box_size = "10", scale_lo = "1", scale_hi = "2";
  std::uint64_t seed = 1;
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
  gen_cmd->add_option("generator", gen_kind, "five-cycle|nine-triangles|grid|random|pairwise")
      ->check(CLI::IsMember({"five-cycle", "nine-triangles", "grid", "random", "pairwise"}));
  gen_cmd->add_option("--base", base_name, "square|triangle|disk|hexagon|octagon|symmetric|polygon|box");
  gen_cmd->add_option("--kind", family_kind, "translates|homothets")->check(CLI::IsMember({"translates", "homothets"}));
  gen_cmd->add_option("--n", n, "member count (grid: side)");
  gen_cmd->add_option("--eps", eps, "nine-triangles epsilon");
  gen_cmd->add_option("--box-size", box_size, "translation range [0, b]");
  gen_cmd->add_option("--scale-lo", scale_lo, "homothet scale range");
  gen_cmd->add_option("--scale-hi", scale_hi, "homothet scale range");
  gen_cmd->add_option("--seed", seed, "random seed");
  gen_cmd->add_option("-o,--output", out_file, "output file (default stdout)");

  // experiment
  std::string n_range = "5:40", csv_file;
  std::size_t trials = 20, oracle_max = 12, threads = 0;
  auto* exp_cmd = app.add_subcommand("experiment", "batch random instances into a CSV report");
  exp_cmd->add_option("--base", base_name, "base body name");
  exp_cmd->add_option("--kind", family_kind, "translates|homothets")->check(CLI::IsMember({"translates", "homothets"}));
  exp_cmd->add_option("--method", run.method, "greedy|grid|lattice|hexagon|auto");
  exp_cmd->add_option("--n-range", n_range, "lo:hi member counts");
  exp_cmd->add_option("--trials", trials, "trials per configuration");
  exp_cmd->add_option("--box-size", box_size, "translation range [0, b]");
  exp_cmd->add_option("--scale-lo", scale_lo, "homothet scale range");
  exp_cmd->add_option("--scale-hi", scale_hi, "homothet scale range");
  exp_cmd->add_option("--oracle-max", oracle_max, "run the exact oracle up to this n");
  exp_cmd->add_option("--threads", threads, "worker threads (0: hardware)");
  exp_cmd->add_option("--seed", seed, "random seed");
  exp_cmd->add_option("--csv", csv_file, "CSV output (default stdout)");

  // conjecture
  std::string body_file, log_file = "extremal.jsonl";
  auto* conj_cmd = app.add_subcommand("conjecture", "compare tau and nu against the union area");
  conj_cmd->add_option("--body", body_file, "body JSON (centrally symmetric polygon)");
  conj_cmd->add_option("--base", base_name, "named base when no body file is given");
  conj_cmd->add_option("--trials", trials, "random families");
  conj_cmd->add_option("--n", n, "members per family (<= 15)");
  conj_cmd->add_option("--box-size", box_size, "translation range [0, b]");
  conj_cmd->add_option("--seed", seed, "random seed");
  conj_cmd->add_option("--log", log_file, "append-only JSONL of extremal records");

  // bench
  std::string bench_base = "disk";
  bool full_verify = false;
  auto* bench_cmd = app.add_subcommand("bench", "time greedy piercing on a large random family");
  bench_cmd->add_option("--n", n, "member count");
  bench_cmd->add_option("--base", bench_base, "disk|square")->check(CLI::IsMember({"disk", "square"}));
  bench_cmd->add_option("--seed", seed, "random seed");
  bench_cmd->add_flag("--full-verify", full_verify, "verify every member instead of a sample");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*pierce_cmd) {
      Family f = io::read_family(in_file);
      PierceCertificate c = run_method(f, run);
      Verification v = verify_certificate(f, c);
      emit(io::to_json(f, c, v), out_file);
      if (!svg_file.empty()) {
        std::ofstream s(svg_file);
        svg::write(s, f, c);
      }
      return v.ok() ? Ok : VerifyFail;
    }

    if (*exact_cmd) {
      Family f = io::read_family(in_file);
      if (f.size() > std::max(lim.tau_max, lim.nu_max))
        throw Error(ErrorCode::TooLarge, "family exceeds the oracle limit");
      emit(io::to_json(oracle(f, lim)), out_file);
      return Ok;
    }

    if (*verify_cmd) {
      json j = io::read_file(in_file);
      std::pair<Family, PierceCertificate> fc;
      try {
        fc = io::certificate_from(j);
      } catch (const json::exception& e) {
        throw Error(ErrorCode::Parse, e.what());
      }
      Verification v = verify_certificate(fc.first, fc.second);
      emit(io::to_json(v), "");
      return v.ok() ? Ok : VerifyFail;
    }

    if (*gen_cmd) {
      std::mt19937_64 rng(seed);
      Family f;
      if (gen_kind == "five-cycle") {
        f = five_square_cycle();
      } else if (gen_kind == "nine-triangles") {
        f = nine_triangles(parse_scalar(eps));
      } else if (gen_kind == "grid") {
        f = grid_family(static_cast<int>(n), named_base(base_name, rng));
      } else if (gen_kind == "pairwise") {
        f = pairwise_intersecting_family(named_base(base_name, rng), n, seed);
      } else {
        RandomFamilySpec s;
        s.base = named_base(base_name, rng);
        s.n = n;
        s.box_size = parse_scalar(box_size);
        s.kind = family_kind == "homothets" ? FamilyKind::Homothets : FamilyKind::Translates;
        s.scale_lo = parse_scalar(scale_lo);
        s.scale_hi = parse_scalar(scale_hi);
        s.seed = seed;
        f = random_family(s);
      }
      emit(io::to_json(f), out_file);
      return Ok;
    }

    if (*exp_cmd) {
      auto colon = n_range.find(':');
      std::size_t lo = std::stoul(n_range.substr(0, colon));
      std::size_t hi = colon == std::string::npos ? lo : std::stoul(n_range.substr(colon + 1));
      if (lo < 1 || hi < lo) throw Error(ErrorCode::Parse, "bad --n-range");
      // one job per (n, trial); results land in their own slot
      struct Job {
        std::size_t n, trial;
      };
      std::vector<Job> jobs;
      for (std::size_t m = lo; m <= hi; ++m)
        for (std::size_t t = 0; t < trials; ++t) jobs.push_back({m, t});
      std::vector<ReportRow> rows(jobs.size());
      std::vector<std::string> errors(jobs.size());
      std::atomic<std::size_t> next{0};
      Scalar bs = parse_scalar(box_size), sl = parse_scalar(scale_lo), sh = parse_scalar(scale_hi);
      auto worker = [&] {
        for (std::size_t k; (k = next++) < jobs.size();) {
          try {
            std::uint64_t s = seed * 1000003ULL + k;
            std::mt19937_64 rng(s);
            RandomFamilySpec spec;
            spec.base = named_base(base_name, rng);
            spec.n = jobs[k].n;
            spec.box_size = bs;
            spec.kind = family_kind == "homothets" ? FamilyKind::Homothets : FamilyKind::Translates;
            spec.scale_lo = sl;
            spec.scale_hi = sh;
            spec.seed = s;
            Family f = random_family(spec);
            RunOptions ro = run;
            ro.seed = s;
            rows[k] = run_row(std::to_string(jobs[k].n) + "-" + std::to_string(jobs[k].trial), f, ro, oracle_max);
          } catch (const std::exception& e) {
            errors[k] = e.what();
          }
        }
      };
      std::size_t nt = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
      std::vector<std::thread> pool;
      for (std::size_t i = 0; i < nt; ++i) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
      for (std::size_t k = 0; k < jobs.size(); ++k)
        if (!errors[k].empty()) throw Error(ErrorCode::VerificationFailed, "trial " + std::to_string(k) + ": " + errors[k]);

      std::ofstream file;
      if (!csv_file.empty()) file.open(csv_file);
      std::ostream& os = csv_file.empty() ? std::cout : file;
      os << ReportRow::header() << '\n';
      std::map<std::size_t, double> max_ratio;
      bool bad = false;
      for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& r = rows[k];
        os << r.csv() << '\n';
        max_ratio[r.n] = std::max(max_ratio[r.n], r.ratio);
        if (!r.verified || r.points > static_cast<std::size_t>(r.factor) * r.witness) bad = true;
        if (r.tau >= 0 && (r.witness > static_cast<std::size_t>(r.nu) || static_cast<std::size_t>(r.tau) > r.points))
          bad = true;
      }
      for (const auto& [m, ratio] : max_ratio) std::cerr << "n=" << m << " max ratio " << ratio << '\n';
      if (bad) {
        std::cerr << "a certificate failed verification or exceeded its factor\n";
        return VerifyFail;
      }
      return Ok;
    }

    if (*conj_cmd) {
      std::mt19937_64 rng(seed);
      ConvexBody base = body_file.empty() ? named_base(base_name, rng) : io::body_from(io::read_file(body_file));
      if (base.kind() != BodyKind::Polygon || !base.centrally_symmetric())
        throw Error(ErrorCode::NotCentrallySymmetric, "conjecture check needs a centrally symmetric polygon");
      if (n > 15) throw Error(ErrorCode::TooLarge, "exact union area is limited to 15 members");
      Scalar s_area = area(base.polygon());
      Scalar worst_tau = 0, worst_nu = -1;  // max tau*|S|/|U|, min 4*nu*|S|/|U|
      std::size_t counter_tau = 0, counter_nu = 0;
      std::ofstream log(log_file, std::ios::app);
      for (std::size_t t = 0; t < trials; ++t) {
        RandomFamilySpec spec;
        spec.base = base;
        spec.n = n;
        spec.box_size = parse_scalar(box_size);
        spec.seed = seed * 7919 + t;
        Family f = random_family(spec);
        std::vector<ConvexPolygon> ms;
        for (std::size_t i = 0; i < f.size(); ++i) ms.push_back(std::get<ConvexPolygon>(f.realize(i)));
        Scalar u = union_area(ms) / s_area;  // |F|/|S|
        auto o = oracle(f);
        Scalar rt = Scalar(o.tau) / u, rn = Scalar(4 * o.nu) / u;
        bool cand_tau = rt > 1, cand_nu = rn < 1;
        counter_tau += cand_tau;
        counter_nu += cand_nu;
        bool extremal = rt > worst_tau || worst_nu < 0 || rn < worst_nu;
        if (rt > worst_tau) worst_tau = rt;
        if (worst_nu < 0 || rn < worst_nu) worst_nu = rn;
        if (extremal || cand_tau || cand_nu) {
          json rec = {{"seed", spec.seed},   {"n", n},        {"tau", o.tau},
                      {"nu", o.nu},          {"area_ratio", to_string(u)},
                      {"tau_over_area", to_double(rt)}, {"four_nu_over_area", to_double(rn)},
                      {"counterexample_tau", cand_tau}, {"counterexample_nu", cand_nu},
                      {"instance", io::to_json(f)}};
          log << rec.dump() << '\n';
        }
      }
      json rep = {{"trials", trials},
                  {"max_tau_over_area", to_double(worst_tau)},
                  {"min_four_nu_over_area", to_double(worst_nu)},
                  {"tau_candidates", counter_tau},
                  {"nu_candidates", counter_nu}};
      emit(rep, "");
      return Ok;
    }

    if (*bench_cmd) {
      Family f = bench_family(bench_base, n, seed);
      auto t0 = std::chrono::steady_clock::now();
      PierceCertificate c = greedy_pierce(f);
      auto t1 = std::chrono::steady_clock::now();
      double sec = std::chrono::duration<double>(t1 - t0).count();
      bool ok = full_verify ? verify_certificate(f, c).ok() : sampled_pierced(f, c, 1000);
      json rep = {{"n", n},
                  {"base", bench_base},
                  {"seconds", sec},
                  {"members_per_second", static_cast<double>(n) / sec},
                  {"points", c.points.size()},
                  {"witness", c.witness.size()},
                  {"verified", ok},
                  {"verification", full_verify ? "full" : "sampled"},
                  {"digest", digest(c)}};
      emit(rep, "");
      return ok ? Ok : VerifyFail;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_for(e);
  } catch (const json::exception& e) {
    std::cerr << "error: Parse: " << e.what() << '\n';
    return ParseFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ParseFail;
  }
  return Ok;
}
