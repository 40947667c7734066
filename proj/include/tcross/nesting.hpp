#pragma once

// Nested tessellations: every cell of an initial tessellation is subdivided
// by its own independent copy of a component tessellation. The observable
// of interest is the number of points where component edges cross initial
// cell boundaries inside the window. Each such point belongs to exactly one
// (cell, component copy) pair, so the total is a per-cell sum.
//
// Exactness contract: for a line-model component every line hitting the
// smallest disc around the cell is sampled, so all crossings with the cell
// boundary are present. For a cell-nucleus component, any nucleus whose cell
// reaches a boundary point x lies within the nearest-nucleus distance of x;
// that distance is bounded edge by edge through the Lipschitz property of
// the nearest-nucleus function evaluated at the cell vertices. Nuclei are
// sampled on the cell's bounding box plus a margin that must dominate the
// bound, the relevant cells are built and certified, and their edges are
// exact pieces of the infinite component model.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "tcross/geom.hpp"
#include "tcross/moments.hpp"
#include "tcross/rng.hpp"
#include "tcross/tessellate.hpp"
#include "tcross/window.hpp"

namespace tcross {

// Component material local to one initial cell.
struct ComponentEdges {
  ModelKind kind = ModelKind::plt;
  std::vector<Line> lines;        // line model
  std::vector<Segment> segments;  // cell-nucleus model: certified true edges
};

namespace detail {

inline ComponentEdges component_lines_for_cell(double lam, const ConvexPolygon& cell,
                                               const SeedStream& seeds) {
  const Disc disc = enclosing_disc(cell.v);
  Rng rng(seeds.child(0).seed());
  ComponentEdges out;
  out.kind = ModelKind::plt;
  const std::int64_t n = rng.poisson(2.0 * lam * disc.radius);
  out.lines.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const double p_local = rng.uniform(-disc.radius, disc.radius);
    const double theta = rng.uniform(0.0, M_PI);
    const Point nrm{std::cos(theta), std::sin(theta)};
    out.lines.push_back({dot(disc.center, nrm) + p_local, theta});
  }
  return out;
}

inline ComponentEdges component_voronoi_for_cell(double gamma, const ConvexPolygon& cell,
                                                 const SeedStream& seeds, double eps,
                                                 int max_stages = 12) {
  double bx0 = std::numeric_limits<double>::infinity(), by0 = bx0;
  double bx1 = -bx0, by1 = -by0;
  for (const Point& q : cell.v) {
    bx0 = std::min(bx0, q.x);
    by0 = std::min(by0, q.y);
    bx1 = std::max(bx1, q.x);
    by1 = std::max(by1, q.y);
  }
  const double m0 = 3.5 / std::sqrt(gamma);
  std::vector<Point> nuclei;
  double m_prev = 0.0;
  for (int s = 0; s < max_stages; ++s) {
    const double m = m0 * std::ldexp(1.0, s);
    Rng rng(seeds.child(static_cast<std::uint64_t>(s)).seed());
    if (s == 0) {
      const Rect r{bx0 - m, by0 - m, bx1 + m, by1 + m};
      nuclei = sample_poisson_points(r, gamma, rng);
    } else {
      const Rect strips[4] = {
          {bx0 - m, by0 - m, bx1 + m, by0 - m_prev},
          {bx0 - m, by1 + m_prev, bx1 + m, by1 + m},
          {bx0 - m, by0 - m_prev, bx0 - m_prev, by1 + m_prev},
          {bx1 + m_prev, by0 - m_prev, bx1 + m, by1 + m_prev}};
      for (const Rect& r : strips) {
        auto extra = sample_poisson_points(r, gamma, rng);
        nuclei.insert(nuclei.end(), extra.begin(), extra.end());
      }
    }
    m_prev = m;
    if (nuclei.empty()) continue;

    const Rect domain{bx0 - m, by0 - m, bx1 + m, by1 + m};
    const PointGrid grid(nuclei, domain);

    // Bound the nearest-nucleus distance along the boundary: on the edge
    // (a, b) it is at most max(nn(a), nn(b)) + |ab| / 2.
    const auto nn_dist = [&](Point q) {
      double best2 = std::numeric_limits<double>::infinity();
      // Expand the query radius until at least one nucleus is seen.
      thread_local std::vector<int> hits;
      for (double t = m0; ; t *= 2.0) {
        grid.gather(nuclei, q, t, hits);
        for (int j : hits) best2 = std::min(best2, norm2(nuclei[static_cast<std::size_t>(j)] - q));
        if (!hits.empty()) return std::sqrt(best2);
        if (t > 4.0 * std::hypot(domain.width(), domain.height())) return t;
      }
    };
    std::vector<double> nn(cell.size());
    for (std::size_t i = 0; i < cell.size(); ++i) nn[i] = nn_dist(cell.v[i]);
    double r_sel = 0.0;
    for (std::size_t i = 0; i < cell.size(); ++i) {
      const Segment e = cell.edge(i);
      r_sel = std::max(r_sel, 0.5 * e.length() + std::max(nn[i], nn[(i + 1) % cell.size()]));
    }
    if (r_sel > m) continue;  // margin cannot contain all owners; enlarge

    std::vector<std::size_t> selected;
    for (std::size_t j = 0; j < nuclei.size(); ++j)
      if (dist_point_convex(cell, nuclei[j]) <= r_sel) selected.push_back(j);

    const ConvexPolygon base = domain.polygon();
    const double t_init = default_gather_radius(nuclei.size(), domain);
    VoronoiScratch scratch;
    std::vector<TessCell> cells;
    cells.reserve(selected.size());
    bool all_complete = true;
    for (std::size_t j : selected) {
      cells.push_back(build_voronoi_cell(nuclei, grid, j, domain, base, t_init, eps, scratch));
      if (!cells.back().complete) {
        all_complete = false;
        break;
      }
    }
    if (!all_complete) continue;

    ComponentEdges out;
    out.kind = ModelKind::pvt;
    std::unordered_map<std::uint64_t, char> seen;
    for (const TessCell& c : cells) {
      for (std::size_t i = 0; i < c.poly.size(); ++i) {
        if (c.tags[i] < 0) continue;
        const std::uint64_t a = static_cast<std::uint64_t>(std::min(c.owner, c.tags[i]));
        const std::uint64_t b = static_cast<std::uint64_t>(std::max(c.owner, c.tags[i]));
        if (seen.try_emplace((a << 32) | b, 1).second) out.segments.push_back(c.poly.edge(i));
      }
    }
    return out;
  }
  throw ExactnessError("component cells could not be certified; enlarge the margin");
}

}  // namespace detail

// Independent component material for one initial cell. All component edges
// that can cross the cell boundary are guaranteed to be present.
inline ComponentEdges component_edges_for_cell(const TessellationSpec& comp,
                                               const ConvexPolygon& cell,
                                               const SeedStream& seeds, double eps) {
  if (!(comp.intensity > 0.0))
    throw std::invalid_argument("component: intensity must be positive");
  if (comp.kind == ModelKind::plt)
    return detail::component_lines_for_cell(comp.intensity, cell, seeds);
  return detail::component_voronoi_for_cell(comp.intensity, cell, seeds, eps);
}

// Number of points where component edges cross the real boundary of the
// cell, optionally restricted to a window. Points closer than eps are
// counted once; that includes a crossing at a shared vertex of two boundary
// edges, which would otherwise be reported by both.
inline long cell_crossing_count(const TessCell& cell, const ComponentEdges& comp,
                                const WindowSpec* window, double eps) {
  thread_local std::vector<Point> pts;
  pts.clear();
  const auto real_edge = [&](std::size_t i) { return cell.tags.empty() || cell.tags[i] >= 0; };
  if (comp.kind == ModelKind::plt) {
    thread_local std::vector<Point> touch;
    for (const Line& l : comp.lines) {
      // A cell edge lying on the line is an overlap, not a crossing. Its
      // endpoints would still be reported by the neighbouring edges, so
      // collect them and drop any contact that lands there.
      touch.clear();
      for (std::size_t i = 0; i < cell.poly.size(); ++i) {
        const Segment e = cell.poly.edge(i);
        if (std::fabs(l.signed_dist(e.a)) <= eps && std::fabs(l.signed_dist(e.b)) <= eps) {
          touch.push_back(e.a);
          touch.push_back(e.b);
        }
      }
      for (std::size_t i = 0; i < cell.poly.size(); ++i) {
        if (!real_edge(i)) continue;
        const auto q = line_segment_intersection(l, cell.poly.edge(i), eps);
        if (!q) continue;
        bool tangent = false;
        for (const Point& t : touch) tangent = tangent || dist(*q, t) <= eps;
        if (tangent) continue;
        if (!window || window->contains(*q, eps)) pts.push_back(*q);
      }
    }
  } else {
    for (const Segment& s : comp.segments)
      for (std::size_t i = 0; i < cell.poly.size(); ++i) {
        if (!real_edge(i)) continue;
        if (auto q = segment_intersection(s, cell.poly.edge(i), eps))
          if (!window || window->contains(*q, eps)) pts.push_back(*q);
      }
  }
  // Merge points within eps of one another (single-link, greedy).
  long count = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool dup = false;
    for (std::size_t j = 0; j < i && !dup; ++j) dup = dist(pts[i], pts[j]) <= eps;
    if (!dup) ++count;
  }
  return count;
}

// Convenience overload for a bare polygon whose whole boundary is real.
inline long cell_crossing_count(const ConvexPolygon& poly, const ComponentEdges& comp,
                                const WindowSpec* window, double eps) {
  TessCell c;
  c.poly = poly;
  c.tags.assign(poly.size(), 0);
  return cell_crossing_count(c, comp, window, eps);
}

struct CrossingTotals {
  double z = 0.0;              // crossing points inside the window
  long cells_touched = 0;      // cells whose real boundary meets the window
  double boundary_length = 0;  // sum over cells of real boundary length in it
};

// The crossing functional over a generated initial tessellation. Cells are
// visited in their stored (anchor-sorted) order; cell r uses the seed child
// r, so the value is independent of any parallel scheduling.
inline CrossingTotals total_crossings(const PlanarTessellation& init,
                                      const TessellationSpec& comp, const WindowSpec& window,
                                      const SeedStream& comp_seeds, double eps) {
  CrossingTotals out;
  for (std::size_t r = 0; r < init.cells.size(); ++r) {
    const TessCell& cell = init.cells[r];
    if (init.spec.kind == ModelKind::pvt && !cell.complete)
      throw ExactnessError("initial cell not certified complete");
    const double blen = cell.real_boundary_length_in(window);
    if (blen <= 0.0) continue;  // boundary misses the window: nothing to count
    out.boundary_length += blen;
    ++out.cells_touched;
    const ComponentEdges comp_edges =
        component_edges_for_cell(comp, cell.poly, comp_seeds.child(r), eps);
    out.z += static_cast<double>(cell_crossing_count(cell, comp_edges, &window, eps));
  }
  return out;
}

// --- small exact helpers used by diagnostics and tests ---------------------

// Total length of line pieces inside an origin disc of the given radius.
inline double line_length_in_disc(const std::vector<Line>& lines, double radius) {
  double s = 0.0;
  for (const Line& l : lines) {
    const double d = std::fabs(l.p);
    if (d < radius) s += 2.0 * std::sqrt(radius * radius - d * d);
  }
  return s;
}

// Number of line pairs meeting strictly inside the origin disc.
inline long pair_intersections_in_disc(const std::vector<Line>& lines, double radius) {
  long count = 0;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const Point ni = lines[i].normal(), nj = lines[j].normal();
      const double det = ni.x * nj.y - ni.y * nj.x;
      if (std::fabs(det) < 1e-14) continue;
      const Point q{(lines[i].p * nj.y - lines[j].p * ni.y) / det,
                    (ni.x * lines[j].p - nj.x * lines[i].p) / det};
      if (norm(q) < radius) ++count;
    }
  return count;
}

}  // namespace tcross
