#pragma once

// Observation windows: origin-centered discs and squares parametrized by a
// size parameter rho (disc radius, or square half side).

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tcross/geom.hpp"

namespace tcross {

enum class WindowShape { disc, square };

inline const char* shape_name(WindowShape s) {
  return s == WindowShape::disc ? "disc" : "square";
}

inline WindowShape parse_shape(const std::string& s) {
  if (s == "disc") return WindowShape::disc;
  if (s == "square") return WindowShape::square;
  throw std::invalid_argument("unknown window shape: " + s);
}

struct WindowSpec {
  WindowShape shape = WindowShape::square;
  double rho = 1.0;

  double area() const {
    return shape == WindowShape::disc ? M_PI * rho * rho : 4.0 * rho * rho;
  }
  double circumradius() const {
    return shape == WindowShape::disc ? rho : rho * std::sqrt(2.0);
  }
  // Geometric tolerance used throughout a run, tied to the window scale.
  double epsilon(double scale = 1e-9) const { return scale * circumradius(); }

  bool contains(Point q, double eps = 0.0) const {
    if (shape == WindowShape::disc) return norm2(q) <= (rho + eps) * (rho + eps);
    return std::fabs(q.x) <= rho + eps && std::fabs(q.y) <= rho + eps;
  }

  // Convex polygon containing the window. Exact for squares; for discs a
  // circumscribed regular 256-gon (vertices pushed out so the disc fits).
  ConvexPolygon region_polygon() const {
    if (shape == WindowShape::square)
      return make_convex_polygon({{-rho, -rho}, {rho, -rho}, {rho, rho}, {-rho, rho}});
    const int n = 256;
    const double rv = rho / std::cos(M_PI / n);
    std::vector<Point> v;
    v.reserve(n);
    for (int i = 0; i < n; ++i) {
      const double a = 2.0 * M_PI * i / n;
      v.push_back({rv * std::cos(a), rv * std::sin(a)});
    }
    return make_convex_polygon(std::move(v));
  }

  // Length of segment ∩ window, exact for both shapes.
  double clipped_length(const Segment& s) const {
    const Point d = s.b - s.a;
    const double len = norm(d);
    if (!(len > 0.0)) return 0.0;
    double t0 = 0.0, t1 = 1.0;
    if (shape == WindowShape::square) {
      // Liang-Barsky interval clipping against |x| <= rho, |y| <= rho.
      const double lo[2] = {-rho, -rho}, hi[2] = {rho, rho};
      const double p[2] = {s.a.x, s.a.y}, q[2] = {d.x, d.y};
      for (int ax = 0; ax < 2; ++ax) {
        if (q[ax] == 0.0) {
          if (p[ax] < lo[ax] || p[ax] > hi[ax]) return 0.0;
          continue;
        }
        double ta = (lo[ax] - p[ax]) / q[ax];
        double tb = (hi[ax] - p[ax]) / q[ax];
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
      }
    } else {
      // Solve |a + t d|^2 = rho^2.
      const double A = norm2(d);
      const double B = 2.0 * dot(s.a, d);
      const double C = norm2(s.a) - rho * rho;
      const double disc = B * B - 4.0 * A * C;
      if (disc <= 0.0) return 0.0;  // the carrier line misses or grazes the circle
      const double sq = std::sqrt(disc);
      t0 = std::max(t0, (-B - sq) / (2.0 * A));
      t1 = std::min(t1, (-B + sq) / (2.0 * A));
    }
    return t1 > t0 ? (t1 - t0) * len : 0.0;
  }
};

}  // namespace tcross
