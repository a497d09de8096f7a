#pragma once

// Static SVG 1.1 drawing of a family with its piercing points and witness.
// Boxes of dimension > 2 are drawn by their first two coordinates.

#include <ostream>
#include <set>
#include <string>

#include "pierce/certificate.hpp"

namespace pierce::svg {

namespace detail {

inline void body(std::ostream& os, const Body& b, const char* style) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ConvexPolygon>) {
          os << "<polygon points=\"";
          for (const auto& v : x.vertices()) os << to_double(v.x) << ',' << to_double(v.y) << ' ';
          os << "\" " << style << "/>\n";
        } else if constexpr (std::is_same_v<T, Disk>) {
          os << "<circle cx=\"" << to_double(x.center.x) << "\" cy=\"" << to_double(x.center.y) << "\" r=\""
             << to_double(x.radius) << "\" " << style << "/>\n";
        } else {
          os << "<rect x=\"" << to_double(x.lo[0]) << "\" y=\"" << to_double(x.lo[1]) << "\" width=\""
             << to_double(x.hi[0] - x.lo[0]) << "\" height=\"" << to_double(x.hi[1] - x.lo[1]) << "\" " << style
             << "/>\n";
        }
      },
      b);
}

}  // namespace detail

inline void write(std::ostream& os, const Family& f, const PierceCertificate& c) {
  auto bodies = realize_all(f);
  double x0 = 0, y0 = 0, x1 = 1, y1 = 1;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    BoundsD b = bounds(bodies[i]);
    if (i == 0) {
      x0 = b.x0, y0 = b.y0, x1 = b.x1, y1 = b.y1;
    } else {
      x0 = std::min(x0, b.x0), y0 = std::min(y0, b.y0);
      x1 = std::max(x1, b.x1), y1 = std::max(y1, b.y1);
    }
  }
  double w = x1 - x0, h = y1 - y0, pad = 0.05 * std::max(w, h);
  double stroke = 0.004 * std::max(w, h), arm = 3 * stroke;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\""
     << static_cast<int>(800 * (h + 2 * pad) / (w + 2 * pad)) << "\" viewBox=\"" << x0 - pad << ' ' << -(y1 + pad)
     << ' ' << w + 2 * pad << ' ' << h + 2 * pad << "\">\n"
     << "<g transform=\"scale(1,-1)\" stroke-width=\"" << stroke << "\">\n";
  std::set<std::size_t> wit(c.witness.begin(), c.witness.end());
  for (std::size_t i = 0; i < bodies.size(); ++i)
    detail::body(os, bodies[i], "fill=\"steelblue\" fill-opacity=\"0.4\" stroke=\"navy\"");
  std::string outline = "fill=\"none\" stroke=\"darkorange\" stroke-width=\"" + std::to_string(3 * stroke) + "\"";
  for (auto i : wit)
    if (i < bodies.size()) detail::body(os, bodies[i], outline.c_str());
  for (const auto& p : c.points) {
    if (p.size() < 2) continue;
    double x = to_double(p[0]), y = to_double(p[1]);
    os << "<path d=\"M" << x - arm << ',' << y - arm << " L" << x + arm << ',' << y + arm << " M" << x - arm << ','
       << y + arm << " L" << x + arm << ',' << y - arm << "\" stroke=\"crimson\" stroke-width=\"" << 2 * stroke
       << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
}

}  // namespace pierce::svg
