#pragma once

// Construction of planar random tessellations restricted to a bounded
// window: isotropic Poisson line tessellations and Poisson-Voronoi
// tessellations. Cells carry enough structure to tell which boundary pieces
// belong to the underlying unbounded model (real edges) and which are
// artifacts of the bounded construction domain.
//
// The Voronoi construction certifies every exported cell: a cell is complete
// once the disc of radius 2 rho around its nucleus lies inside the sampled
// domain, where rho is the circumradius of the clipped cell about the
// nucleus. Any nucleus outside that disc is too far to cut the cell, so the
// clipped polygon equals the cell of the infinite process. When an exported
// cell fails the test, the domain is enlarged (fresh points are added only
// in the new frame, which preserves the Poisson law) and cells are rebuilt.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tcross/geom.hpp"
#include "tcross/moments.hpp"
#include "tcross/rng.hpp"
#include "tcross/window.hpp"

namespace tcross {

// Raised when a construction cannot be made provably exact within its
// resource limits (domain extensions exhausted, inconsistent pairing, ...).
struct ExactnessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Edge tag for pieces of the construction-domain boundary.
constexpr int kTagRegion = -2;

struct TessCell {
  ConvexPolygon poly;
  std::vector<int> tags;  // one per edge; >= 0 identifies the real edge source
  Point anchor{};
  bool complete = false;  // poly is provably a whole cell of the infinite model
  int owner = -1;         // nucleus index for cell-nucleus models, else -1

  double real_boundary_length_in(const WindowSpec& w) const {
    double s = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i)
      if (tags[i] >= 0) s += w.clipped_length(poly.edge(i));
    return s;
  }
  double real_boundary_length() const {
    double s = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i)
      if (tags[i] >= 0) s += poly.edge(i).length();
    return s;
  }
};

struct TessEdge {
  Segment seg;
  int tag = -1;          // source id (line index, or smaller nucleus index)
  int multiplicity = 0;  // number of stored cells bordering the edge
};

struct PlanarTessellation {
  TessellationSpec spec{};
  ConvexPolygon region;         // construction domain
  std::vector<TessCell> cells;  // cells meeting the window, anchor-sorted
  std::vector<TessEdge> edges;  // distinct real edges of those cells
};

// Total length of distinct real edges inside the window. For a tessellation
// built over a domain containing the window this is exactly the edge length
// measure of the infinite model restricted to the window.
inline double edge_length_in(const PlanarTessellation& t, const WindowSpec& w) {
  double s = 0.0;
  for (const TessEdge& e : t.edges) s += w.clipped_length(e.seg);
  return s;
}

namespace detail {

inline bool cell_meets_window(const ConvexPolygon& poly, const WindowSpec& w, double eps) {
  if (w.shape == WindowShape::disc)
    return dist_point_convex(poly, {0.0, 0.0}) <= w.rho + eps;
  thread_local std::vector<Point> scratch;
  scratch = poly.v;
  if (!clip_halfplane(scratch, nullptr, {1.0, 0.0}, w.rho, 0, eps)) return false;
  if (!clip_halfplane(scratch, nullptr, {-1.0, 0.0}, w.rho, 0, eps)) return false;
  if (!clip_halfplane(scratch, nullptr, {0.0, 1.0}, w.rho, 0, eps)) return false;
  return clip_halfplane(scratch, nullptr, {0.0, -1.0}, w.rho, 0, eps);
}

inline bool anchor_less(const TessCell& a, const TessCell& b) {
  if (a.anchor.x != b.anchor.x) return a.anchor.x < b.anchor.x;
  return a.anchor.y < b.anchor.y;
}

}  // namespace detail

// --- Poisson line tessellation --------------------------------------------

// Isotropic Poisson line process with edge length intensity lam, restricted
// to lines hitting the origin-centered disc of the given radius. Offsets are
// uniform in (-radius, radius), directions uniform in [0, pi), and the hit
// count is Poisson with mean 2 * lam * radius. Draw order is fixed: count,
// then per line offset before angle.
inline std::vector<Line> sample_isotropic_lines(double lam, double radius, Rng& rng) {
  if (!(lam >= 0.0) || !(radius > 0.0))
    throw std::invalid_argument("line sampling: bad intensity or radius");
  const std::int64_t n = rng.poisson(2.0 * lam * radius);
  std::vector<Line> lines;
  lines.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const double p = rng.uniform(-radius, radius);
    const double theta = rng.uniform(0.0, M_PI);
    lines.push_back({p, theta});
  }
  return lines;
}

// Faces of the line arrangement restricted to a convex region. Edges created
// by line i carry tag i; pieces of the region boundary keep kTagRegion.
inline std::vector<TessCell> line_arrangement_faces(const ConvexPolygon& region,
                                                    const std::vector<Line>& lines,
                                                    double eps) {
  struct Face {
    std::vector<Point> v;
    std::vector<int> tags;
  };
  std::vector<Face> faces;
  faces.push_back({region.v, std::vector<int>(region.size(), kTagRegion)});
  std::vector<Face> next;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const Point n = lines[li].normal();
    const double c = lines[li].p;
    next.clear();
    next.reserve(faces.size() + 4);
    for (Face& f : faces) {
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (const Point& q : f.v) {
        const double d = dot(q, n);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
      }
      if (c <= lo + eps || c >= hi - eps) {  // line misses or only grazes
        next.push_back(std::move(f));
        continue;
      }
      Face left{f.v, f.tags};
      Face right{std::move(f.v), std::move(f.tags)};
      const bool la = clip_halfplane(left.v, &left.tags, n, c, static_cast<int>(li), eps);
      const bool ra = clip_halfplane(right.v, &right.tags, {-n.x, -n.y}, -c,
                                     static_cast<int>(li), eps);
      if (!la && !ra) throw ExactnessError("line split erased a face");
      if (la) next.push_back(std::move(left));
      if (ra) next.push_back(std::move(right));
    }
    faces.swap(next);
  }
  std::vector<TessCell> cells;
  cells.reserve(faces.size());
  for (Face& f : faces) {
    TessCell c;
    c.poly.v = std::move(f.v);
    c.tags = std::move(f.tags);
    c.anchor = metrics(c.poly).centroid;
    c.complete = std::none_of(c.tags.begin(), c.tags.end(),
                              [](int t) { return t == kTagRegion; });
    cells.push_back(std::move(c));
  }
  return cells;
}

namespace detail {

// Collapses per-cell line edges into distinct edges. Each interior piece of
// a line is seen from both sides with identical endpoints up to roundoff.
inline std::vector<TessEdge> pair_line_edges(const std::vector<TessCell>& cells,
                                             const std::vector<Line>& lines, double tol) {
  struct Entry {
    double mid, t0, t1;
    Segment seg;
  };
  std::unordered_map<int, std::vector<Entry>> per_line;
  for (const TessCell& c : cells) {
    for (std::size_t i = 0; i < c.poly.size(); ++i) {
      if (c.tags[i] < 0) continue;
      const Segment s = c.poly.edge(i);
      const Point u = lines[static_cast<std::size_t>(c.tags[i])].direction();
      const double ta = dot(s.a, u), tb = dot(s.b, u);
      Entry e{0.5 * (ta + tb), std::min(ta, tb), std::max(ta, tb), s};
      per_line[c.tags[i]].push_back(e);
    }
  }
  std::vector<int> tags;
  tags.reserve(per_line.size());
  for (const auto& kv : per_line) tags.push_back(kv.first);
  std::sort(tags.begin(), tags.end());
  std::vector<TessEdge> edges;
  for (int tag : tags) {
    auto& v = per_line[tag];
    std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) {
      if (a.mid != b.mid) return a.mid < b.mid;
      if (a.t0 != b.t0) return a.t0 < b.t0;
      return a.t1 < b.t1;
    });
    for (std::size_t k = 0; k < v.size();) {
      if (k + 1 < v.size() && std::fabs(v[k].t0 - v[k + 1].t0) <= tol &&
          std::fabs(v[k].t1 - v[k + 1].t1) <= tol) {
        edges.push_back({v[k].seg, tag, 2});
        k += 2;
      } else {
        edges.push_back({v[k].seg, tag, 1});
        k += 1;
      }
    }
  }
  return edges;
}

}  // namespace detail

// Poisson line tessellation observed through the window. The construction
// region is the window itself (its circumscribed polygon for discs): every
// line hitting the region is sampled, so each in-window piece of a face
// boundary that carries a line tag is exact, and pieces of the region
// boundary are flagged artifacts that no statistic may touch.
inline PlanarTessellation generate_line_tessellation(double lam, const WindowSpec& window,
                                                     const SeedStream& seeds, double eps) {
  PlanarTessellation t;
  t.spec = {ModelKind::plt, lam};
  t.region = window.region_polygon();
  double radius = 0.0;
  for (const Point& q : t.region.v) radius = std::max(radius, norm(q));
  Rng rng(seeds.child(0).seed());
  const std::vector<Line> lines = sample_isotropic_lines(lam, radius, rng);
  std::vector<TessCell> cells = line_arrangement_faces(t.region, lines, eps);
  std::erase_if(cells, [&](const TessCell& c) {
    return !detail::cell_meets_window(c.poly, window, eps);
  });
  std::sort(cells.begin(), cells.end(), detail::anchor_less);
  t.cells = std::move(cells);
  t.edges = detail::pair_line_edges(t.cells, lines, 4.0 * eps);
  return t;
}

// --- Poisson-Voronoi tessellation -----------------------------------------

struct Rect {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  bool contains(Point q) const { return q.x >= x0 && q.x <= x1 && q.y >= y0 && q.y <= y1; }
  bool contains_disc(Point c, double r) const {
    return c.x - r >= x0 && c.x + r <= x1 && c.y - r >= y0 && c.y + r <= y1;
  }
  ConvexPolygon polygon() const {
    return make_convex_polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
  }
};

// Homogeneous Poisson points on a rectangle. Draw order is fixed: count,
// then per point x before y.
inline std::vector<Point> sample_poisson_points(const Rect& r, double intensity, Rng& rng) {
  if (!(intensity >= 0.0) || !(r.area() > 0.0))
    throw std::invalid_argument("point sampling: bad intensity or rectangle");
  const std::int64_t n = rng.poisson(intensity * r.area());
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const double x = rng.uniform(r.x0, r.x1);
    const double y = rng.uniform(r.y0, r.y1);
    pts.push_back({x, y});
  }
  return pts;
}

namespace detail {

// Uniform bucket grid over a rectangle with CSR storage.
class PointGrid {
 public:
  PointGrid(const std::vector<Point>& pts, const Rect& box, double target_per_bucket = 2.0)
      : box_(box) {
    const double a = std::max(box.area(), 1e-300);
    const double dens = std::max(pts.size() / a, 1e-12);
    h_ = std::sqrt(target_per_bucket / dens);
    nx_ = std::max(1, static_cast<int>(box.width() / h_));
    ny_ = std::max(1, static_cast<int>(box.height() / h_));
    nx_ = std::min(nx_, 4096);
    ny_ = std::min(ny_, 4096);
    start_.assign(static_cast<std::size_t>(nx_) * ny_ + 1, 0);
    std::vector<int> bucket(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      bucket[i] = bucket_of(pts[i]);
      ++start_[static_cast<std::size_t>(bucket[i]) + 1];
    }
    for (std::size_t b = 1; b < start_.size(); ++b) start_[b] += start_[b - 1];
    items_.resize(pts.size());
    std::vector<int> cursor(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < pts.size(); ++i)
      items_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(bucket[i])]++)] =
          static_cast<int>(i);
  }

  // Indices of points within distance T of c (plus possibly a few more).
  void gather(const std::vector<Point>& pts, Point c, double T, std::vector<int>& out) const {
    out.clear();
    const int bx0 = clampx(static_cast<int>(std::floor((c.x - T - box_.x0) / cw())));
    const int bx1 = clampx(static_cast<int>(std::floor((c.x + T - box_.x0) / cw())));
    const int by0 = clampy(static_cast<int>(std::floor((c.y - T - box_.y0) / ch())));
    const int by1 = clampy(static_cast<int>(std::floor((c.y + T - box_.y0) / ch())));
    const double T2 = T * T;
    for (int by = by0; by <= by1; ++by)
      for (int bx = bx0; bx <= bx1; ++bx) {
        const std::size_t b = static_cast<std::size_t>(by) * nx_ + bx;
        for (int k = start_[b]; k < start_[b + 1]; ++k) {
          const int i = items_[static_cast<std::size_t>(k)];
          if (norm2(pts[static_cast<std::size_t>(i)] - c) <= T2) out.push_back(i);
        }
      }
  }

 private:
  double cw() const { return box_.width() / nx_; }
  double ch() const { return box_.height() / ny_; }
  int clampx(int v) const { return std::clamp(v, 0, nx_ - 1); }
  int clampy(int v) const { return std::clamp(v, 0, ny_ - 1); }
  int bucket_of(Point q) const {
    const int bx = clampx(static_cast<int>((q.x - box_.x0) / cw()));
    const int by = clampy(static_cast<int>((q.y - box_.y0) / ch()));
    return by * nx_ + bx;
  }

  Rect box_;
  double h_ = 1.0;
  int nx_ = 1, ny_ = 1;
  std::vector<int> start_;
  std::vector<int> items_;
};

}  // namespace detail

namespace detail {

struct VoronoiScratch {
  std::vector<int> cand;
  std::vector<std::pair<double, int>> order;
};

// One Voronoi cell, clipped to the domain rectangle. Gathers candidates in
// growing radii until the stop rule (no unseen nucleus can be within twice
// the current circumradius) is certain.
inline TessCell build_voronoi_cell(const std::vector<Point>& nuclei, const PointGrid& grid,
                                   std::size_t i, const Rect& domain,
                                   const ConvexPolygon& base, double t_init, double eps,
                                   VoronoiScratch& scratch) {
  const Point x = nuclei[i];
  const double diag = std::hypot(domain.width(), domain.height());
  double T = t_init;
  std::vector<Point> v;
  std::vector<int> tags;
  double rho = 0.0;
  for (;;) {
    v = base.v;
    tags.assign(v.size(), kTagRegion);
    grid.gather(nuclei, x, T, scratch.cand);
    scratch.order.clear();
    for (int j : scratch.cand)
      if (static_cast<std::size_t>(j) != i)
        scratch.order.emplace_back(norm2(nuclei[static_cast<std::size_t>(j)] - x), j);
    std::sort(scratch.order.begin(), scratch.order.end());
    const auto circumradius = [&] {
      double r2 = 0.0;
      for (const Point& q : v) r2 = std::max(r2, norm2(q - x));
      return std::sqrt(r2);
    };
    rho = circumradius();
    bool stopped = false;
    for (const auto& [d2, j] : scratch.order) {
      if (d2 > 4.0 * rho * rho) {  // distance exceeds 2 rho: cannot cut
        stopped = true;
        break;
      }
      const Point z = nuclei[static_cast<std::size_t>(j)];
      const Point dzx = z - x;
      const double len = norm(dzx);
      const Point n{dzx.x / len, dzx.y / len};
      const double c = dot({0.5 * (x.x + z.x), 0.5 * (x.y + z.y)}, n);
      if (!clip_halfplane(v, &tags, n, c, j, eps))
        throw ExactnessError("voronoi cell vanished during clipping");
      rho = circumradius();
    }
    if (stopped || 2.0 * rho <= T) break;
    T *= 2.0;  // gather radius too small to certify the stop rule
    if (T > 4.0 * diag)
      throw ExactnessError("voronoi gather radius exceeded the domain size");
  }
  TessCell c;
  c.poly.v = std::move(v);
  c.tags = std::move(tags);
  c.owner = static_cast<int>(i);
  c.anchor = metrics(c.poly).centroid;
  c.complete = domain.contains_disc(x, 2.0 * rho);
  return c;
}

inline double default_gather_radius(std::size_t n, const Rect& domain) {
  return 3.5 / std::sqrt(std::max(n / std::max(domain.area(), 1e-300), 1e-12));
}

}  // namespace detail

// Voronoi cells of all nuclei, clipped to the domain rectangle. Bisector
// edges carry the index of the neighbor nucleus as tag; leftover rectangle
// pieces keep kTagRegion. complete is the certification flag described at
// the top of the file.
inline std::vector<TessCell> voronoi_cells(const std::vector<Point>& nuclei, const Rect& domain,
                                           double eps) {
  if (nuclei.empty()) return {};
  const detail::PointGrid grid(nuclei, domain);
  const ConvexPolygon base = domain.polygon();
  const double t_init = detail::default_gather_radius(nuclei.size(), domain);
  std::vector<TessCell> cells;
  cells.reserve(nuclei.size());
  detail::VoronoiScratch scratch;
  for (std::size_t i = 0; i < nuclei.size(); ++i)
    cells.push_back(
        detail::build_voronoi_cell(nuclei, grid, i, domain, base, t_init, eps, scratch));
  return cells;
}

namespace detail {

inline std::vector<TessEdge> dedupe_nucleus_edges(const std::vector<TessCell>& cells) {
  std::unordered_map<std::uint64_t, std::size_t> seen;
  std::vector<TessEdge> edges;
  for (const TessCell& c : cells) {
    for (std::size_t i = 0; i < c.poly.size(); ++i) {
      if (c.tags[i] < 0) continue;
      const std::uint64_t a = static_cast<std::uint64_t>(std::min(c.owner, c.tags[i]));
      const std::uint64_t b = static_cast<std::uint64_t>(std::max(c.owner, c.tags[i]));
      const std::uint64_t key = (a << 32) | b;
      auto [it, fresh] = seen.try_emplace(key, edges.size());
      if (fresh)
        edges.push_back({c.poly.edge(i), static_cast<int>(a), 1});
      else
        ++edges[it->second].multiplicity;
    }
  }
  return edges;
}

}  // namespace detail

struct VoronoiGeneration {
  PlanarTessellation tess;
  int stages = 0;        // number of domain extensions that were needed
  std::size_t nuclei = 0;
};

// Poisson-Voronoi tessellation with nucleus intensity gamma, restricted to
// the cells meeting the window. All exported cells are certified complete;
// the construction domain starts at the window plus a guard margin of
// guard_factor / sqrt(gamma) and doubles the margin until certification
// succeeds everywhere it matters.
inline VoronoiGeneration generate_poisson_voronoi(double gamma, const WindowSpec& window,
                                                  const SeedStream& seeds, double eps,
                                                  double guard_factor = 5.0,
                                                  int max_stages = 12) {
  if (!(gamma > 0.0)) throw std::invalid_argument("voronoi: intensity must be positive");
  const double g0 = guard_factor / std::sqrt(gamma);
  std::vector<Point> nuclei;
  double half_prev = 0.0;
  for (int s = 0; s < max_stages; ++s) {
    const double half = window.rho + g0 * std::ldexp(1.0, s);
    Rng rng(seeds.child(static_cast<std::uint64_t>(s)).seed());
    if (s == 0) {
      const Rect r{-half, -half, half, half};
      nuclei = sample_poisson_points(r, gamma, rng);
    } else {
      // Extend by a frame of four strips; fixed order bottom, top, left,
      // right keeps the draw sequence reproducible.
      const Rect strips[4] = {{-half, -half, half, -half_prev},
                              {-half, half_prev, half, half},
                              {-half, -half_prev, -half_prev, half_prev},
                              {half_prev, -half_prev, half, half_prev}};
      for (const Rect& r : strips) {
        auto extra = sample_poisson_points(r, gamma, rng);
        nuclei.insert(nuclei.end(), extra.begin(), extra.end());
      }
    }
    half_prev = half;
    if (nuclei.empty()) continue;

    const Rect domain{-half, -half, half, half};
    std::vector<TessCell> cells = voronoi_cells(nuclei, domain, eps);
    std::erase_if(cells, [&](const TessCell& c) {
      return !detail::cell_meets_window(c.poly, window, eps);
    });
    const bool all_complete = std::all_of(cells.begin(), cells.end(),
                                          [](const TessCell& c) { return c.complete; });
    if (!all_complete) continue;
    std::sort(cells.begin(), cells.end(), detail::anchor_less);
    VoronoiGeneration out;
    out.tess.spec = {ModelKind::pvt, gamma};
    out.tess.region = domain.polygon();
    out.tess.cells = std::move(cells);
    out.tess.edges = detail::dedupe_nucleus_edges(out.tess.cells);
    out.stages = s;
    out.nuclei = nuclei.size();
    return out;
  }
  throw ExactnessError("voronoi: could not certify all window cells; enlarge the guard");
}

// The cell of a nucleus pinned at the origin, with the remaining nuclei a
// homogeneous Poisson process: the area-unbiased "typical" cell. Candidates
// are sampled in growing origin-centered discs (uniform via r = R sqrt(u));
// the cell is exact once twice its circumradius is covered by the sampled
// disc.
inline ConvexPolygon typical_voronoi_cell(double gamma, const SeedStream& seeds, double eps,
                                          int max_stages = 16) {
  if (!(gamma > 0.0)) throw std::invalid_argument("typical cell: intensity must be positive");
  const double r0 = 3.5 / std::sqrt(gamma);
  std::vector<Point> candidates;
  double r_prev = 0.0;
  for (int s = 0; s < max_stages; ++s) {
    const double r = r0 * std::ldexp(1.0, s);
    Rng rng(seeds.child(static_cast<std::uint64_t>(s)).seed());
    const double mean = gamma * M_PI * (r * r - r_prev * r_prev);
    const std::int64_t n = rng.poisson(mean);
    for (std::int64_t k = 0; k < n; ++k) {
      const double rr = std::sqrt(r_prev * r_prev +
                                  rng.next_unit() * (r * r - r_prev * r_prev));
      const double a = rng.uniform(0.0, 2.0 * M_PI);
      candidates.push_back({rr * std::cos(a), rr * std::sin(a)});
    }
    r_prev = r;
    if (candidates.empty()) continue;

    std::vector<std::pair<double, std::size_t>> order;
    order.reserve(candidates.size());
    for (std::size_t j = 0; j < candidates.size(); ++j)
      order.emplace_back(norm2(candidates[j]), j);
    std::sort(order.begin(), order.end());
    std::vector<Point> v{{-r, -r}, {r, -r}, {r, r}, {-r, r}};
    double rho = r * std::sqrt(2.0);
    for (const auto& [d2, j] : order) {
      if (d2 > 4.0 * rho * rho) break;
      const Point z = candidates[j];
      const double len = norm(z);
      const Point n{z.x / len, z.y / len};
      if (!clip_halfplane(v, nullptr, n, 0.5 * len, 0, eps))
        throw ExactnessError("typical cell vanished during clipping");
      rho = 0.0;
      for (const Point& q : v) rho = std::max(rho, norm(q));
    }
    if (2.0 * rho <= r) {
      ConvexPolygon poly;
      poly.v = std::move(v);
      return poly;
    }
  }
  throw ExactnessError("typical cell: certification radius kept growing");
}

// Deterministic plain-text description, used by the dump subcommand.
inline void dump_tessellation(std::ostream& os, const PlanarTessellation& t) {
  const auto put = [&os](double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    os.write(buf, res.ptr - buf);
  };
  os << "tessellation kind=" << kind_name(t.spec.kind) << " intensity=";
  put(t.spec.intensity);
  os << " cells=" << t.cells.size() << " edges=" << t.edges.size() << "\n";
  for (std::size_t i = 0; i < t.cells.size(); ++i) {
    const TessCell& c = t.cells[i];
    os << "cell " << i << " anchor=";
    put(c.anchor.x);
    os << ",";
    put(c.anchor.y);
    os << " complete=" << (c.complete ? 1 : 0) << " verts=" << c.poly.size() << "\n";
    for (std::size_t k = 0; k < c.poly.size(); ++k) {
      os << "  v ";
      put(c.poly.v[k].x);
      os << " ";
      put(c.poly.v[k].y);
      os << " tag=" << c.tags[k] << "\n";
    }
  }
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const TessEdge& e = t.edges[i];
    os << "edge " << i << " tag=" << e.tag << " mult=" << e.multiplicity << " ";
    put(e.seg.a.x);
    os << " ";
    put(e.seg.a.y);
    os << " ";
    put(e.seg.b.x);
    os << " ";
    put(e.seg.b.y);
    os << "\n";
  }
}

}  // namespace tcross
