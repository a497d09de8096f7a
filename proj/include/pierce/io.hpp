#pragma once

// JSON for instances, certificates and oracle results. Rationals are "p/q"
// strings or JSON integers; floating point numbers are rejected so that
// files round-trip exactly.

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pierce/certificate.hpp"
#include "pierce/oracle.hpp"

namespace pierce::io {

using json = nlohmann::json;

inline json to_json(const Scalar& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return to_string(q);
}

inline Scalar scalar_from(const json& j) {
  if (j.is_number_unsigned()) return parse_scalar(std::to_string(j.get<unsigned long long>()));
  if (j.is_number_integer()) return parse_scalar(std::to_string(j.get<long long>()));
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_float()) throw Error(ErrorCode::Parse, "floating point number; write rationals as \"p/q\" strings");
  throw Error(ErrorCode::Parse, "expected a rational, got " + std::string(j.type_name()));
}

inline json to_json(const Coords& c) {
  json a = json::array();
  for (const auto& x : c) a.push_back(to_json(x));
  return a;
}

inline Coords coords_from(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, "expected a coordinate array");
  Coords c;
  for (const auto& x : j) c.push_back(scalar_from(x));
  return c;
}

inline Point point_from(const json& j) {
  Coords c = coords_from(j);
  if (c.size() != 2) throw Error(ErrorCode::Parse, "expected a planar point");
  return planar(c);
}

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::Parse, std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
std::vector<T> index_list(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, "expected an index array");
  std::vector<T> out;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<long long>() < 0) throw Error(ErrorCode::Parse, "bad index");
    out.push_back(static_cast<T>(x.get<long long>()));
  }
  return out;
}

}  // namespace detail

inline json to_json(const ConvexBody& b) {
  json j;
  switch (b.kind()) {
    case BodyKind::Polygon: {
      j["type"] = "polygon";
      j["vertices"] = json::array();
      for (const auto& v : b.polygon().vertices()) j["vertices"].push_back(to_json(coords(v)));
      break;
    }
    case BodyKind::Disk:
      j["type"] = "disk";
      j["center"] = to_json(coords(b.disk().center));
      j["radius"] = to_json(b.disk().radius);
      break;
    case BodyKind::Box:
      j["type"] = "box";
      j["lo"] = to_json(b.box().lo);
      j["hi"] = to_json(b.box().hi);
      break;
  }
  j["reference"] = to_json(b.reference);
  return j;
}

inline ConvexBody body_from(const json& j) {
  std::string type = detail::field(j, "type").get<std::string>();
  Body shape;
  if (type == "polygon") {
    std::vector<Point> v;
    for (const auto& p : detail::field(j, "vertices")) v.push_back(point_from(p));
    shape = ConvexPolygon(std::move(v));
  } else if (type == "disk") {
    Scalar r = scalar_from(detail::field(j, "radius"));
    if (r <= 0) throw Error(ErrorCode::InvalidFamily, "disk radius must be positive");
    shape = Disk{point_from(detail::field(j, "center")), r};
  } else if (type == "box") {
    Box b;
    if (j.contains("sides")) {
      b.hi = coords_from(j.at("sides"));
      b.lo = Coords(b.hi.size(), Scalar(0));
    } else {
      b.lo = coords_from(detail::field(j, "lo"));
      b.hi = coords_from(detail::field(j, "hi"));
    }
    if (b.lo.size() != b.hi.size()) throw Error(ErrorCode::Parse, "box corners differ in dimension");
    shape = b;
  } else {
    throw Error(ErrorCode::Parse, "unknown body type '" + type + "'");
  }
  Coords ref = j.contains("reference") ? coords_from(j.at("reference")) : ConvexBody::default_reference(shape);
  ConvexBody body{std::move(shape), std::move(ref)};
  body.validate();
  return body;
}

inline json to_json(const Family& f) {
  json j;
  j["base"] = to_json(f.base);
  j["kind"] = f.kind == FamilyKind::Translates ? "translates" : "homothets";
  j["members"] = json::array();
  for (const auto& m : f.members) {
    json mj;
    mj["t"] = to_json(m.t);
    if (f.kind == FamilyKind::Homothets) mj["s"] = to_json(m.s);
    j["members"].push_back(mj);
  }
  return j;
}

inline Family family_from(const json& j) {
  Family f;
  f.base = body_from(detail::field(j, "base"));
  std::string kind = j.value("kind", "translates");
  if (kind == "translates") f.kind = FamilyKind::Translates;
  else if (kind == "homothets") f.kind = FamilyKind::Homothets;
  else throw Error(ErrorCode::Parse, "unknown family kind '" + kind + "'");
  const json& ms = detail::field(j, "members");
  if (!ms.is_array()) throw Error(ErrorCode::Parse, "members must be an array");
  for (const auto& m : ms) {
    Member mem;
    mem.t = coords_from(detail::field(m, "t"));
    mem.s = m.contains("s") ? scalar_from(m.at("s")) : Scalar(1);
    f.members.push_back(std::move(mem));
  }
  f.validate();
  return f;
}

inline json to_json(const Verification& v) {
  return {{"pierced", v.pierced}, {"disjoint", v.disjoint}, {"bounded", v.bounded}, {"unpierced", v.unpierced}};
}

// Self-contained: the instance travels with the certificate.
inline json to_json(const Family& f, const PierceCertificate& c, const Verification& v) {
  json j;
  j["instance"] = to_json(f);
  j["method"] = c.method;
  j["factor"] = c.factor;
  j["refined"] = c.refined;
  j["points"] = json::array();
  for (const auto& p : c.points) j["points"].push_back(to_json(p));
  j["witness"] = c.witness;
  j["clusters"] = json::array();
  for (const auto& cl : c.clusters)
    j["clusters"].push_back({{"seed", cl.seed}, {"members", cl.members}, {"pattern_size", cl.pattern_size}});
  j["verification"] = to_json(v);
  return j;
}

inline std::pair<Family, PierceCertificate> certificate_from(const json& j) {
  Family f = family_from(detail::field(j, "instance"));
  PierceCertificate c;
  c.method = j.value("method", "");
  const json& factor = detail::field(j, "factor");
  if (!factor.is_number_integer() || factor.get<long long>() < 1) throw Error(ErrorCode::Parse, "bad factor");
  c.factor = factor.get<long>();
  c.refined = j.value("refined", false);
  for (const auto& p : detail::field(j, "points")) c.points.push_back(coords_from(p));
  c.witness = detail::index_list<std::size_t>(detail::field(j, "witness"));
  if (j.contains("clusters"))
    for (const auto& cj : j.at("clusters")) {
      Cluster cl;
      cl.seed = detail::index_list<std::size_t>(json::array({detail::field(cj, "seed")}))[0];
      cl.members = detail::index_list<std::size_t>(detail::field(cj, "members"));
      cl.pattern_size = cj.value("pattern_size", std::size_t{0});
      c.clusters.push_back(std::move(cl));
    }
  return {std::move(f), std::move(c)};
}

inline json to_json(const OracleResult& r) {
  json j;
  j["tau"] = r.tau;
  j["nu"] = r.nu;
  j["tau_points"] = json::array();
  for (const auto& p : r.tau_points) j["tau_points"].push_back(to_json(p));
  j["nu_members"] = r.nu_members;
  j["candidates"] = r.candidates_used;
  return j;
}

inline json parse(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open '" + path + "'");
  return parse(in);
}

inline Family read_family(const std::string& path) {
  json j = read_file(path);
  try {
    return family_from(j);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

}  // namespace pierce::io
