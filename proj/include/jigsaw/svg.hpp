#pragma once

// SVG pictures of the triangulation near the real axis. Exact data is turned
// into doubles only here, printed with 12 significant digits.

#include "jigsaw/classify.hpp"
#include "jigsaw/cuspset.hpp"
#include "jigsaw/develop.hpp"

#include <cmath>
#include <complex>
#include <iomanip>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace jigsaw {

struct SvgOptions {
  Rational lo;
  Rational hi;
  int depth = 2;
  double width = 800;
  bool killers = true;
  bool marked_points = true;
  bool axes = true;
};

namespace svg_detail {

inline std::string num(double x) {
  if (std::fabs(x) < 1e-12) x = 0;  // avoid "-0"
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

inline double to_double(const Rational& q) { return q.get_d(); }

inline std::complex<double> act(const GroupElement& g, std::complex<double> z) {
  const double s = 1.0 / std::sqrt(g.d().get_d());
  const std::complex<double> a = g.m11().get_d() * s, b = g.m12().get_d() * s, c = g.m21().get_d() * s,
                             d = g.m22().get_d() * s;
  return (a * z + b) / (c * z + d);
}

struct Canvas {
  double x0, sx, base, height;
  double X(double x) const { return (x - x0) * sx; }
  double Y(double y) const { return base - y * sx; }
};

inline std::string label_class(const Rational& k) {
  if (k == 1) return "k1";
  return k > 1 ? "kbig" : "ksmall";
}

}  // namespace svg_detail

/// Draws the tiles reachable within `depth` steps from the strip triangles
/// over [lo, hi], killer intervals from `cover`, and the axes of `specials`.
inline std::string render_svg(const JigsawGroup& g, const SvgOptions& opt, const Cover* cover = nullptr,
                              const std::vector<SpecialReport>* specials = nullptr) {
  using namespace svg_detail;
  std::ostringstream out;
  const bool empty = !(opt.lo < opt.hi);
  const double span = empty ? 0.0 : to_double(opt.hi - opt.lo);
  const double sx = empty ? 1.0 : opt.width / span;
  const double height = empty ? 0.0 : 0.6 * opt.width + 20;
  Canvas cv{to_double(opt.lo), sx, height - 20, height};
  const double w = empty ? 0.0 : opt.width;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(height)
      << "\" viewBox=\"0 0 " << num(w) << " " << num(height) << "\">\n";
  if (empty) {
    out << "</svg>\n";
    return out.str();
  }
  out << "<style>path,line{fill:none;stroke-width:1}.k1{stroke:#222}.kbig{stroke:#c0392b}"
         ".ksmall{stroke:#2471a3}.axis{stroke:#27ae60;stroke-width:2;stroke-dasharray:6 3}"
         ".killer{fill:#f5b041;fill-opacity:0.25;stroke:none}.mark{fill:#000}</style>\n";
  out << "<clipPath id=\"win\"><rect x=\"0\" y=\"0\" width=\"" << num(w) << "\" height=\"" << num(height)
      << "\"/></clipPath>\n<g clip-path=\"url(#win)\">\n";

  const Rational& L = g.length();
  auto floor_div = [](const Rational& q) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
  };

  if (cover != nullptr && opt.killers) {
    for (const auto& k : cover->intervals) {
      const Integer first = floor_div(Rational((opt.lo - k.hi()) / L));
      const Integer last = floor_div(Rational((opt.hi - k.lo()) / L)) + 1;
      for (Integer t = first; t <= last; ++t) {
        const Rational lo = k.lo() + Rational(t) * L, hi = k.hi() + Rational(t) * L;
        if (hi <= opt.lo || lo >= opt.hi) continue;
        out << "<rect class=\"killer\" x=\"" << num(cv.X(to_double(lo))) << "\" y=\"0\" width=\""
            << num(to_double(Rational(hi - lo)) * sx) << "\" height=\"" << num(cv.base) << "\"/>\n";
      }
    }
  }

  // Tiles: strip triangles over the window, then `depth` layers of neighbours.
  const CuspStrip strip = cusp_strip(g, opt.lo);
  std::vector<DevelopedTile> layer;
  std::set<std::string> seen;
  auto key = [](const DevelopedTile& d) {
    std::vector<std::string> v;
    for (const auto& x : d.vertices()) v.push_back(x.str());
    std::sort(v.begin(), v.end());
    return v[0] + "|" + v[1] + "|" + v[2];
  };
  const Integer copies = floor_div(Rational((opt.hi - opt.lo) / L)) + 1;
  const GroupElement TL = GroupElement::translation(L);
  for (const auto& tri : strip.triangles) {
    DevelopedTile d = tri.tile;
    for (Integer t = 0; t <= copies; ++t) {
      if (seen.insert(key(d)).second) layer.push_back(d);
      d.placement = TL * d.placement;
    }
  }
  std::vector<DevelopedTile> all = layer;
  for (int level = 0; level < opt.depth; ++level) {
    std::vector<DevelopedTile> next;
    for (const auto& d : layer) {
      for (int s = 0; s < 3; ++s) {
        DevelopedTile n = neighbor(g, d, s).first;
        // Keep only tiles that meet the window.
        Rational lo, hi;
        bool first = true, unbounded = false;
        for (const auto& v : n.vertices()) {
          if (v.is_infinity()) {
            unbounded = true;
            continue;
          }
          if (first || v.value() < lo) lo = v.value();
          if (first || v.value() > hi) hi = v.value();
          first = false;
        }
        if (!unbounded && (hi <= opt.lo || lo >= opt.hi)) continue;
        if (seen.insert(key(n)).second) next.push_back(std::move(n));
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }

  std::set<std::string> drawn;
  for (const auto& d : all) {
    const TileType& type = g.jigsaw().tile(d.tile);
    for (int s = 0; s < 3; ++s) {
      const ExtendedRational p = d.vertex(s), q = d.vertex(next_side(s));
      std::string id = p < q ? p.str() + "~" + q.str() : q.str() + "~" + p.str();
      if (!drawn.insert(id).second) continue;
      const std::string cls = label_class(type.label(s));
      if (p.is_infinity() || q.is_infinity()) {
        const double x = to_double((p.is_infinity() ? q : p).value());
        out << "<line class=\"" << cls << "\" x1=\"" << num(cv.X(x)) << "\" y1=\"0\" x2=\"" << num(cv.X(x))
            << "\" y2=\"" << num(cv.base) << "\"/>\n";
      } else {
        const double a = to_double(p.value()), b = to_double(q.value());
        const double r = std::fabs(b - a) / 2 * sx;
        out << "<path class=\"" << cls << "\" d=\"M " << num(cv.X(std::min(a, b))) << " " << num(cv.base) << " A "
            << num(r) << " " << num(r) << " 0 0 1 " << num(cv.X(std::max(a, b))) << " " << num(cv.base) << "\"/>\n";
      }
    }
  }

  if (opt.marked_points) {
    std::set<std::string> marked;
    for (const auto& d : all) {
      const auto pts = std_marked_points(g.jigsaw().tile(d.tile));
      for (const auto& m : pts) {
        const std::complex<double> z =
            act(d.placement, std::complex<double>(to_double(m.x), std::sqrt(to_double(m.h2))));
        const double px = cv.X(z.real()), py = cv.Y(z.imag());
        if (px < -5 || px > w + 5 || py < -5) continue;
        const std::string id = num(px) + "," + num(py);
        if (!marked.insert(id).second) continue;
        out << "<circle class=\"mark\" cx=\"" << num(px) << "\" cy=\"" << num(py) << "\" r=\"2\"/>\n";
      }
    }
  }

  if (specials != nullptr && opt.axes) {
    for (const auto& s : *specials) {
      if (s.fixed_points.size() != 2) continue;
      const auto& p = s.fixed_points[0];
      const auto& q = s.fixed_points[1];
      if (p.is_infinity() || q.is_infinity()) continue;
      const double a = to_double(p.value()), b = to_double(q.value());
      const double r = std::fabs(b - a) / 2 * sx;
      out << "<path class=\"axis\" d=\"M " << num(cv.X(std::min(a, b))) << " " << num(cv.base) << " A " << num(r)
          << " " << num(r) << " 0 0 1 " << num(cv.X(std::max(a, b))) << " " << num(cv.base) << "\"/>\n";
    }
  }
  out << "</g>\n<line class=\"k1\" x1=\"0\" y1=\"" << num(cv.base) << "\" x2=\"" << num(w) << "\" y2=\""
      << num(cv.base) << "\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace jigsaw
