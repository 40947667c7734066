#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "tcross/nesting.hpp"

using namespace tcross;

TEST_CASE("line length in a disc has the exact mean and variance") {
  Rng rng(40404u);
  const double lam = 1.0, rho = 3.0;
  const int reps = 4000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < reps; ++i) {
    const auto lines = sample_isotropic_lines(lam, rho, rng);
    const double v = line_length_in_disc(lines, rho);
    s += v;
    s2 += v * v;
  }
  const double mean = s / reps;
  const double var = (s2 - reps * mean * mean) / (reps - 1);
  const double want_mean = lam * M_PI * rho * rho;
  const double want_var = (16.0 / 3.0) * lam * rho * rho * rho;
  REQUIRE(std::abs(mean - want_mean) < 5.0 * std::sqrt(want_var / reps));
  REQUIRE(std::abs(var / want_var - 1.0) < 0.12);
}

TEST_CASE("mean chord of a hitting line is pi rho over two") {
  Rng rng(11u);
  const double rho = 2.0;
  double s = 0.0;
  long n = 0;
  for (int i = 0; i < 2000; ++i)
    for (const Line& l : sample_isotropic_lines(1.0, rho, rng)) {
      const double d = std::fabs(l.p);
      if (d < rho) {
        s += 2.0 * std::sqrt(rho * rho - d * d);
        ++n;
      }
    }
  REQUIRE(n > 5000);
  REQUIRE(std::abs(s / n - M_PI * rho / 2.0) < 0.05);
}

TEST_CASE("pair meeting intensity in a disc matches the square law") {
  Rng rng(2222u);
  const double lam = 1.0, rho = 4.0;
  const int reps = 2500;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < reps; ++i) {
    const double v = pair_intersections_in_disc(sample_isotropic_lines(lam, rho, rng), rho);
    s += v;
    s2 += v * v;
  }
  // Meeting points form a process of intensity lam^2 / pi, so the disc holds
  // lam^2 rho^2 of them on average.
  const double want = lam * lam * rho * rho;
  const double mean = s / reps;
  const double sd = std::sqrt((s2 - reps * mean * mean) / (reps - 1));
  REQUIRE(std::abs(mean - want) < 5.0 * sd / std::sqrt(double(reps)));
}

TEST_CASE("crossing counts match the boundary crossing primitive for lines") {
  Rng rng(808u);
  for (int it = 0; it < 200; ++it) {
    const ConvexPolygon poly = oracle::random_convex_polygon(rng, 3.0, 12);
    ComponentEdges comp;
    comp.kind = ModelKind::plt;
    for (int k = 0; k < 6; ++k)
      comp.lines.push_back({rng.uniform(-3.0, 3.0), rng.uniform(0.0, M_PI)});
    long want = 0;
    for (const Line& l : comp.lines) want += boundary_crossings(poly, l, 1e-9).size();
    REQUIRE(cell_crossing_count(poly, comp, nullptr, 1e-9) == want);
  }
}

TEST_CASE("hand built crossing configurations count correctly") {
  const ConvexPolygon sq = make_convex_polygon({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  const double eps = 1e-9;

  ComponentEdges comp;
  comp.kind = ModelKind::pvt;
  comp.segments.push_back({{-1.0, 1.0}, {3.0, 1.0}});  // spans the square: 2 crossings
  REQUIRE(cell_crossing_count(sq, comp, nullptr, eps) == 2);

  comp.segments.push_back({{1.0, 1.5}, {1.0, 3.0}});  // leaves through the top: 1
  REQUIRE(cell_crossing_count(sq, comp, nullptr, eps) == 3);

  comp.segments.push_back({{0.5, 0.5}, {1.5, 0.5}});  // interior only: 0
  REQUIRE(cell_crossing_count(sq, comp, nullptr, eps) == 3);

  comp.segments.push_back({{2.0, 1.0}, {2.0, 1.8}});  // collinear with an edge: 0
  REQUIRE(cell_crossing_count(sq, comp, nullptr, eps) == 3);

  // Two segments leaving through the same boundary point: merged into one.
  comp.segments.push_back({{1.0, 1.0}, {1.0, -1.0}});
  comp.segments.push_back({{0.5, 0.5}, {1.5, -0.5}});  // also passes (1, 0)
  REQUIRE(cell_crossing_count(sq, comp, nullptr, eps) == 4);

  // A component line along a cell edge is an overlap, not a crossing.
  ComponentEdges flat;
  flat.kind = ModelKind::plt;
  flat.lines.push_back({0.0, M_PI / 2.0});  // the x axis, carrying the bottom edge
  REQUIRE(cell_crossing_count(sq, flat, nullptr, eps) == 0);

  // Window restriction drops points outside.
  const WindowSpec half{WindowShape::square, 1.0};  // |x|,|y| <= 1
  ComponentEdges one;
  one.kind = ModelKind::pvt;
  one.segments.push_back({{-1.0, 1.0}, {3.0, 1.0}});
  // Crossings at (0,1) and (2,1); only the first is inside the window.
  REQUIRE(cell_crossing_count(sq, one, &half, eps) == 1);
}

TEST_CASE("a vertex crossing is counted once") {
  const ConvexPolygon sq = make_convex_polygon({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  ComponentEdges comp;
  comp.kind = ModelKind::plt;
  comp.lines.push_back(Line::through_points({-1.0, -1.0}, {3.0, 3.0}));  // main diagonal
  // The line meets the boundary exactly at the vertices (0,0) and (2,2).
  REQUIRE(cell_crossing_count(sq, comp, nullptr, 1e-9) == 2);
}

TEST_CASE("component crossings on a fixed boundary have the section intensity mean") {
  const ConvexPolygon sq = make_convex_polygon({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  const double perimeter = 8.0;
  const int reps = 20000;

  for (const ModelKind kind : {ModelKind::plt, ModelKind::pvt}) {
    const TessellationSpec comp{kind, 1.0};
    SeedStream seeds(kind == ModelKind::plt ? 600001u : 600002u);
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < reps; ++i) {
      const auto edges =
          component_edges_for_cell(comp, sq, seeds.child(static_cast<std::uint64_t>(i)), 1e-9);
      const double v = cell_crossing_count(sq, edges, nullptr, 1e-9);
      s += v;
      s2 += v * v;
    }
    const double mean = s / reps;
    const double sd = std::sqrt((s2 - reps * mean * mean) / (reps - 1));
    const double want = component_section_intensity(comp, 2, 1) * perimeter;
    REQUIRE(std::abs(mean - want) < 5.0 * sd / std::sqrt(double(reps)));
  }
}

TEST_CASE("crossing totals for a nested tessellation have the right mean") {
  const WindowSpec w{WindowShape::square, 6.0};
  const double eps = w.epsilon();
  const int reps = 120;

  // Line initial, line component: mean density 4 / pi.
  {
    const int line_reps = 600;
    double s = 0.0;
    for (int i = 0; i < line_reps; ++i) {
      SeedStream root(910000u + i);
      const auto init = generate_line_tessellation(1.0, w, root.child(0), eps);
      s += total_crossings(init, {ModelKind::plt, 1.0}, w, root.child(1), eps).z;
    }
    const double mean = s / (line_reps * w.area());
    REQUIRE(std::abs(mean - 4.0 / M_PI) < 0.08);
  }

  // Voronoi initial, line component: mean density 8 / pi.
  {
    double s = 0.0;
    for (int i = 0; i < reps; ++i) {
      SeedStream root(920000u + i);
      const auto init = generate_poisson_voronoi(1.0, w, root.child(0), eps);
      s += total_crossings(init.tess, {ModelKind::plt, 1.0}, w, root.child(1), eps).z;
    }
    const double mean = s / (reps * w.area());
    REQUIRE(std::abs(mean - 8.0 / M_PI) < 0.12);
  }
}

TEST_CASE("conditional crossing mean tracks the boundary length cell by cell") {
  // For one fixed initial tessellation, averaging over many component copies
  // must approach section intensity times the in-window boundary length.
  const WindowSpec w{WindowShape::square, 4.0};
  const double eps = w.epsilon();
  SeedStream root(3131u);
  const auto init = generate_poisson_voronoi(1.0, w, root.child(0), eps);
  const TessellationSpec comp{ModelKind::pvt, 1.0};

  double blen = 0.0;
  for (const TessCell& c : init.tess.cells) blen += c.real_boundary_length_in(w);

  const int reps = 400;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < reps; ++i) {
    const double v = total_crossings(init.tess, comp, w, root.child(2 + i), eps).z;
    s += v;
    s2 += v * v;
  }
  const double want = component_section_intensity(comp, 2, 1) * blen;
  const double mean = s / reps;
  const double sd = std::sqrt((s2 - reps * mean * mean) / (reps - 1));
  REQUIRE(std::abs(mean - want) < 5.0 * sd / std::sqrt(double(reps)));
}

TEST_CASE("crossing totals are deterministic in the seed") {
  const WindowSpec w{WindowShape::square, 5.0};
  const double eps = w.epsilon();
  const auto run = [&](std::uint64_t seed) {
    SeedStream root(seed);
    const auto init = generate_poisson_voronoi(1.0, w, root.child(0), eps);
    return total_crossings(init.tess, {ModelKind::pvt, 1.0}, w, root.child(1), eps);
  };
  const auto a = run(777u), b = run(777u), c = run(778u);
  REQUIRE(a.z == b.z);
  REQUIRE(a.cells_touched == b.cells_touched);
  REQUIRE(a.boundary_length == b.boundary_length);
  REQUIRE((a.z != c.z || a.boundary_length != c.boundary_length));
}

TEST_CASE("component construction rejects bad intensities") {
  const ConvexPolygon sq = make_convex_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  REQUIRE_THROWS_AS(component_edges_for_cell({ModelKind::plt, 0.0}, sq, SeedStream(1u), 1e-9),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(component_edges_for_cell({ModelKind::pvt, -2.0}, sq, SeedStream(1u), 1e-9),
                    std::invalid_argument);
}
