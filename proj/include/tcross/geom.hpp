#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace tcross {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point a) { return dot(a, a); }
inline double norm(Point a) { return std::sqrt(norm2(a)); }
inline double dist(Point a, Point b) { return norm(a - b); }

struct Segment {
  Point a, b;
  double length() const { return dist(a, b); }
  Point midpoint() const { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }
};

// Undirected line in (p, theta) form: {q : q.x cos(theta) + q.y sin(theta) = p}
// with theta in [0, pi). p is the signed offset of the foot point.
struct Line {
  double p = 0.0;
  double theta = 0.0;

  Point normal() const { return {std::cos(theta), std::sin(theta)}; }
  Point direction() const { return {-std::sin(theta), std::cos(theta)}; }
  Point foot() const { return p * normal(); }
  double signed_dist(Point q) const { return q.x * std::cos(theta) + q.y * std::sin(theta) - p; }

  // Normalizes an arbitrary halfplane boundary dot(q, n) = c to (p, theta).
  static Line from_normal_offset(Point n, double c) {
    const double len = norm(n);
    if (!(len > 0.0)) throw std::invalid_argument("line: zero normal");
    double theta = std::atan2(n.y, n.x);
    double p = c / len;
    if (theta < 0.0) {
      theta += M_PI;
      p = -p;
    }
    if (theta >= M_PI) {  // atan2 returned exactly pi
      theta -= M_PI;
      p = -p;
    }
    return Line{p, theta};
  }

  static Line through_points(Point a, Point b) {
    const Point d = b - a;
    if (!(norm2(d) > 0.0)) throw std::invalid_argument("line: coincident points");
    const Point n{-d.y, d.x};
    return from_normal_offset(n, dot(a, n));
  }
};

// Convex polygon, vertices in counterclockwise order, no duplicates.
// Vertex i starts edge i = (v[i], v[(i+1) % n]).
struct ConvexPolygon {
  std::vector<Point> v;

  std::size_t size() const { return v.size(); }
  Point vertex(std::size_t i) const { return v[i]; }
  Segment edge(std::size_t i) const { return {v[i], v[(i + 1) % v.size()]}; }
};

inline double signed_area(std::span<const Point> pts) {
  double s = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) s += cross(pts[i], pts[(i + 1) % n]);
  return 0.5 * s;
}

inline double polygon_area(const ConvexPolygon& poly) { return signed_area(poly.v); }

// Validating factory: prunes duplicate consecutive vertices (within eps),
// orients counterclockwise, rejects degenerate or non-convex input.
inline ConvexPolygon make_convex_polygon(std::vector<Point> pts, double eps = 1e-12) {
  for (const Point& q : pts)
    if (!std::isfinite(q.x) || !std::isfinite(q.y))
      throw std::invalid_argument("polygon: non-finite vertex");
  std::vector<Point> pruned;
  pruned.reserve(pts.size());
  for (const Point& q : pts) {
    if (pruned.empty() || dist(pruned.back(), q) > eps) pruned.push_back(q);
  }
  while (pruned.size() >= 2 && dist(pruned.front(), pruned.back()) <= eps) pruned.pop_back();
  if (pruned.size() < 3) throw std::invalid_argument("polygon: fewer than 3 distinct vertices");
  if (signed_area(pruned) < 0.0) std::reverse(pruned.begin(), pruned.end());
  const std::size_t n = pruned.size();
  if (!(signed_area(pruned) > 0.0)) throw std::invalid_argument("polygon: zero area");
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = pruned[i], b = pruned[(i + 1) % n], c = pruned[(i + 2) % n];
    const Point e1 = b - a, e2 = c - b;
    // Signed perpendicular distance of c from the ray a->b; convexity allows
    // slightly negative values only within tolerance.
    if (cross(e1, e2) < -eps * (norm(e1) + norm(e2)))
      throw std::invalid_argument("polygon: not convex");
  }
  ConvexPolygon poly;
  poly.v = std::move(pruned);
  return poly;
}

struct PolygonMetrics {
  double area = 0.0;
  double perimeter = 0.0;
  double diameter = 0.0;
  Point centroid{};
  std::size_t vertex_count = 0;
};

inline PolygonMetrics metrics(const ConvexPolygon& poly) {
  const std::size_t n = poly.size();
  if (n < 3) throw std::invalid_argument("metrics: degenerate polygon");
  PolygonMetrics m;
  m.vertex_count = n;
  double cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = poly.v[i], b = poly.v[(i + 1) % n];
    const double w = cross(a, b);
    m.area += w;
    cx += (a.x + b.x) * w;
    cy += (a.y + b.y) * w;
    m.perimeter += dist(a, b);
  }
  m.area *= 0.5;
  if (!(m.area > 0.0)) throw std::invalid_argument("metrics: degenerate polygon");
  m.centroid = {cx / (6.0 * m.area), cy / (6.0 * m.area)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      m.diameter = std::max(m.diameter, dist(poly.v[i], poly.v[j]));
  return m;
}

// Distance tolerance test: inside or within eps of the boundary.
inline bool point_in_convex(const ConvexPolygon& poly, Point q, double eps) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = poly.v[i], b = poly.v[(i + 1) % n];
    const Point e = b - a;
    const double len = norm(e);
    if (len == 0.0) continue;
    if (cross(e, q - a) < -eps * len) return false;
  }
  return true;
}

inline double dist_point_segment(Point q, Point a, Point b) {
  const Point d = b - a;
  const double l2 = norm2(d);
  if (l2 == 0.0) return dist(q, a);
  const double t = std::clamp(dot(q - a, d) / l2, 0.0, 1.0);
  return dist(q, a + t * d);
}

inline double dist_point_segment(Point q, const Segment& s) {
  return dist_point_segment(q, s.a, s.b);
}

// 0 when q lies inside.
inline double dist_point_convex(const ConvexPolygon& poly, Point q) {
  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = poly.v[i], b = poly.v[(i + 1) % n];
    if (cross(b - a, q - a) < 0.0) inside = false;
    best = std::min(best, dist_point_segment(q, a, b));
  }
  return inside ? 0.0 : best;
}

// --- halfplane clipping --------------------------------------------------
//
// Keeps the side dot(q, n) <= c, n unit. Vertices within eps of the boundary
// count as kept. `tags` (optional, one per edge, tag[i] for edge v[i]->v[i+1])
// follows the surviving edges; every new edge created on the cut receives
// `chord_tag`. Returns false when nothing of substance remains; the inputs
// are then unspecified.
inline bool clip_halfplane(std::vector<Point>& v, std::vector<int>* tags, Point n, double c,
                           int chord_tag, double eps) {
  const std::size_t count = v.size();
  if (count < 3) return false;
  static thread_local std::vector<double> d;
  d.clear();
  d.reserve(count);
  bool any_out = false, any_in = false;
  for (const Point& q : v) {
    const double s = dot(q, n) - c;
    d.push_back(s);
    if (s > eps) any_out = true;
    if (s < -eps) any_in = true;
  }
  if (!any_out) return true;  // unchanged
  if (!any_in) return false;  // entirely outside (or squeezed onto boundary)

  static thread_local std::vector<Point> out;
  static thread_local std::vector<int> out_tags;
  out.clear();
  out_tags.clear();
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = (i + 1) % count;
    const double da = d[i], db = d[j];
    const int tag = tags ? (*tags)[i] : 0;
    if (da <= eps) {
      out.push_back(v[i]);
      // A vertex sitting on the cut whose successor is outside starts the
      // chord edge; every other kept vertex keeps its own edge.
      out_tags.push_back(db > eps && da >= -eps ? chord_tag : tag);
    }
    const bool cross_out = da < -eps && db > eps;
    const bool cross_in = da > eps && db < -eps;
    if (cross_out || cross_in) {
      const double t = da / (da - db);
      const Point q = v[i] + t * (v[j] - v[i]);
      // Exit point starts the chord edge; entry point continues edge i.
      out.push_back(q);
      out_tags.push_back(cross_out ? chord_tag : tag);
    }
  }
  // Prune duplicates: dropping vertex k means the merged vertex takes the
  // outgoing edge (and tag) of the dropped one.
  std::size_t m = out.size();
  for (std::size_t k = 0; k + 1 < m;) {
    if (dist(out[k], out[k + 1]) <= eps) {
      out_tags[k] = out_tags[k + 1];
      out.erase(out.begin() + static_cast<std::ptrdiff_t>(k) + 1);
      out_tags.erase(out_tags.begin() + static_cast<std::ptrdiff_t>(k) + 1);
      --m;
    } else {
      ++k;
    }
  }
  while (m >= 2 && dist(out.front(), out.back()) <= eps) {
    out.pop_back();
    out_tags.pop_back();
    --m;
  }
  if (m < 3 || !(signed_area(out) > eps * eps)) return false;
  v = out;
  if (tags) *tags = out_tags;
  return true;
}

struct SplitResult {
  std::optional<ConvexPolygon> left;   // signed_dist <= 0 side
  std::optional<ConvexPolygon> right;  // signed_dist >= 0 side
};

// Splits a convex polygon by a line. A side is absent iff the line misses the
// polygon interior (then the whole polygon lands on the other side).
inline SplitResult split_by_line(const ConvexPolygon& poly, const Line& line, double eps) {
  if (poly.size() < 3) throw std::invalid_argument("split_by_line: degenerate polygon");
  const Point n = line.normal();
  SplitResult r;
  std::vector<Point> lo = poly.v;
  if (clip_halfplane(lo, nullptr, n, line.p, 0, eps)) r.left = ConvexPolygon{std::move(lo)};
  std::vector<Point> hi = poly.v;
  if (clip_halfplane(hi, nullptr, {-n.x, -n.y}, -line.p, 0, eps)) r.right = ConvexPolygon{std::move(hi)};
  if (!r.left && !r.right) throw std::invalid_argument("split_by_line: degenerate polygon");
  return r;
}

// Clips `poly` to a convex window; nullopt when the intersection is empty.
inline std::optional<ConvexPolygon> clip_to_window(const ConvexPolygon& poly,
                                                   const ConvexPolygon& window, double eps) {
  if (poly.size() < 3 || window.size() < 3)
    throw std::invalid_argument("clip_to_window: degenerate polygon");
  std::vector<Point> v = poly.v;
  const std::size_t n = window.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = window.v[i], b = window.v[(i + 1) % n];
    const Point e = b - a;
    const double len = norm(e);
    const Point nrm{e.y / len, -e.x / len};  // outward normal of a CCW window
    if (!clip_halfplane(v, nullptr, nrm, dot(a, nrm), 0, eps)) return std::nullopt;
  }
  return ConvexPolygon{std::move(v)};
}

// --- intersections --------------------------------------------------------

// Intersection of an infinite line with a segment. Collinear overlap yields
// nothing (the caller treats overlap as zero crossings).
inline std::optional<Point> line_segment_intersection(const Line& line, const Segment& s,
                                                      double eps) {
  const double da = line.signed_dist(s.a);
  const double db = line.signed_dist(s.b);
  const bool ona = std::fabs(da) <= eps, onb = std::fabs(db) <= eps;
  if (ona && onb) return std::nullopt;
  if (ona) return s.a;
  if (onb) return s.b;
  if ((da > 0.0) == (db > 0.0)) return std::nullopt;
  const double t = da / (da - db);
  return s.a + t * (s.b - s.a);
}

// Proper intersection of two segments; collinear overlap yields nothing.
inline std::optional<Point> segment_intersection(const Segment& s1, const Segment& s2,
                                                 double eps) {
  const Point r = s1.b - s1.a;
  const Point s = s2.b - s2.a;
  const double denom = cross(r, s);
  const double lr = norm(r), ls = norm(s);
  if (lr == 0.0 || ls == 0.0) return std::nullopt;
  if (std::fabs(denom) <= 1e-14 * lr * ls) return std::nullopt;  // parallel or collinear
  const Point w = s2.a - s1.a;
  const double t = cross(w, s) / denom;
  const double u = cross(w, r) / denom;
  const double tol_t = eps / lr, tol_u = eps / ls;
  if (t < -tol_t || t > 1.0 + tol_t || u < -tol_u || u > 1.0 + tol_u) return std::nullopt;
  return s1.a + std::clamp(t, 0.0, 1.0) * r;
}

// Points where a line crosses the polygon boundary, sorted along the line
// direction: generically 0 or 2 points; a vertex within eps of the line is
// reported once; tangency collapses to a single point.
inline std::vector<Point> boundary_crossings(const ConvexPolygon& poly, const Line& line,
                                             double eps) {
  const std::size_t n = poly.size();
  if (n < 3) throw std::invalid_argument("boundary_crossings: degenerate polygon");
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = line.signed_dist(poly.v[i]);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const double da = d[i], db = d[j];
    // An edge lying on the line is an overlap, not a crossing; neither it nor
    // its endpoints contribute.
    if (std::fabs(da) <= eps && std::fabs(db) <= eps) continue;
    if (std::fabs(da) <= eps) {
      const double dprev = d[(i + n - 1) % n];
      if (std::fabs(dprev) > eps) pts.push_back(poly.v[i]);  // vertex contact, owned here
      continue;
    }
    if (std::fabs(db) <= eps) continue;  // owned by the next edge
    if ((da > 0.0) != (db > 0.0)) {
      const double t = da / (da - db);
      pts.push_back(poly.v[i] + t * (poly.v[j] - poly.v[i]));
    }
  }
  const Point u = line.direction();
  std::sort(pts.begin(), pts.end(), [&](Point a, Point b) { return dot(a, u) < dot(b, u); });
  std::vector<Point> merged;
  for (const Point& q : pts) {
    if (merged.empty() || dist(merged.back(), q) > eps) merged.push_back(q);
  }
  if (merged.size() > 2) merged = {merged.front(), merged.back()};
  return merged;
}

// All proper crossings between a probe segment and a set of segments.
inline std::vector<Point> segment_crossings(std::span<const Segment> segs, const Segment& probe,
                                            double eps) {
  std::vector<Point> pts;
  for (const Segment& s : segs) {
    if (auto q = segment_intersection(s, probe, eps)) pts.push_back(*q);
  }
  return pts;
}

// Smallest disc containing all vertices (exact brute force over vertex pairs
// and triples; polygons here are small).
struct Disc {
  Point center{};
  double radius = 0.0;
};

namespace detail {
inline bool disc_covers(const Disc& d, std::span<const Point> pts, double slack) {
  for (const Point& q : pts)
    if (dist(q, d.center) > d.radius + slack) return false;
  return true;
}
inline std::optional<Disc> circumdisc(Point a, Point b, Point c) {
  const Point ab = b - a, ac = c - a;
  const double den = 2.0 * cross(ab, ac);
  if (std::fabs(den) < 1e-14 * norm(ab) * norm(ac)) return std::nullopt;
  const double n2b = norm2(ab), n2c = norm2(ac);
  const Point rel{(ac.y * n2b - ab.y * n2c) / den, (ab.x * n2c - ac.x * n2b) / den};
  const Point ctr = a + rel;
  return Disc{ctr, dist(ctr, a)};
}
}  // namespace detail

inline Disc enclosing_disc(std::span<const Point> pts) {
  if (pts.empty()) throw std::invalid_argument("enclosing_disc: no points");
  const double scale = [&] {
    double m = 0.0;
    for (const Point& q : pts) m = std::max({m, std::fabs(q.x), std::fabs(q.y)});
    return std::max(m, 1.0);
  }();
  const double slack = 1e-12 * scale;
  Disc best{pts[0], std::numeric_limits<double>::infinity()};
  const std::size_t n = pts.size();
  if (n == 1) return {pts[0], 0.0};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Disc d{0.5 * (pts[i] + pts[j]), 0.5 * dist(pts[i], pts[j])};
      if (d.radius < best.radius && detail::disc_covers(d, pts, slack)) best = d;
    }
  if (std::isfinite(best.radius)) return best;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const auto d = detail::circumdisc(pts[i], pts[j], pts[k]);
        if (d && d->radius < best.radius && detail::disc_covers(*d, pts, slack)) best = *d;
      }
  if (!std::isfinite(best.radius)) throw std::invalid_argument("enclosing_disc: degenerate points");
  return best;
}

}  // namespace tcross
