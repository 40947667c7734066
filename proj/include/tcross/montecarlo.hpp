#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "tcross/moments.hpp"
#include "tcross/nesting.hpp"
#include "tcross/stats.hpp"
#include "tcross/tessellate.hpp"
#include "tcross/window.hpp"

namespace tcross {

struct ExperimentConfig {
  TessellationSpec initial{ModelKind::pvt, 1.0};
  TessellationSpec component{ModelKind::pvt, 1.0};
  WindowShape shape = WindowShape::square;
  std::vector<double> rhos = {10.0};
  int replicates = 100;
  std::uint64_t seed = 1;
  int threads = 1;
  double eps_scale = 1e-9;
};

struct ReplicateRecord {
  int replicate = 0;
  double rho = 0.0;
  double window_area = 0.0;
  double z = 0.0;             // crossing points inside the window
  double edge_length = 0.0;   // distinct real edge length inside the window
  long cell_count = 0;        // cells whose anchor lies in the window
  std::uint64_t seed = 0;
  long millis = 0;            // kept for the record layout, always zero
};

inline MomentReport theory_for(const ExperimentConfig& cfg) {
  if (cfg.initial.kind == ModelKind::plt)
    return pht_nesting_moments(cfg.initial.intensity, cfg.component, 2, 1);
  return weak_nesting_moments(cfg.initial.intensity, cfg.component);
}

inline double standardize(double z, double area, const MomentReport& theory) {
  return (z - theory.mean_density * area) / std::pow(area, theory.norm_exponent);
}

// One replicate, fully determined by (config seed, rung index, replicate
// index). The stream splits so that the initial tessellation and the nested
// components never share draws.
inline ReplicateRecord run_replicate(const ExperimentConfig& cfg, std::size_t rho_idx,
                                     int rep) {
  const WindowSpec w{cfg.shape, cfg.rhos.at(rho_idx)};
  const double eps = w.epsilon(cfg.eps_scale);
  const SeedStream slot = SeedStream(cfg.seed).child(rho_idx).child(
      static_cast<std::uint64_t>(rep));
  const PlanarTessellation tess =
      cfg.initial.kind == ModelKind::plt
          ? generate_line_tessellation(cfg.initial.intensity, w, slot.child(0), eps)
          : generate_poisson_voronoi(cfg.initial.intensity, w, slot.child(0), eps).tess;
  const CrossingTotals totals = total_crossings(tess, cfg.component, w, slot.child(1), eps);

  ReplicateRecord r;
  r.replicate = rep;
  r.rho = w.rho;
  r.window_area = w.area();
  r.z = totals.z;
  r.edge_length = edge_length_in(tess, w);
  for (const TessCell& c : tess.cells)
    if (w.contains(c.anchor)) ++r.cell_count;
  r.seed = slot.seed();
  return r;
}

struct RunResult {
  ExperimentConfig config;
  std::vector<ReplicateRecord> records;  // rung major, replicate order inside
};

inline void validate(const ExperimentConfig& cfg) {
  if (cfg.rhos.empty()) throw std::invalid_argument("config: no window sizes");
  for (double rho : cfg.rhos)
    if (!(rho > 0.0)) throw std::invalid_argument("config: window size must be positive");
  if (cfg.replicates < 2) throw std::invalid_argument("config: need at least two replicates");
  if (cfg.threads < 1) throw std::invalid_argument("config: thread count must be positive");
  if (!(cfg.initial.intensity > 0.0) || !(cfg.component.intensity > 0.0))
    throw std::invalid_argument("config: intensities must be positive");
  if (!(cfg.eps_scale > 0.0) || !(cfg.eps_scale < 1e-3))
    throw std::invalid_argument("config: tolerance scale out of range");
}

// Replicates are independent tasks with preassigned slots and seeds, so the
// result is identical for every thread count.
inline RunResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const std::size_t per_rung = static_cast<std::size_t>(cfg.replicates);
  const std::size_t total = cfg.rhos.size() * per_rung;
  RunResult out;
  out.config = cfg;
  out.records.resize(total);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<std::size_t> next{0};

  const auto work = [&]() {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= total) return;
      try {
        out.records[t] = run_replicate(cfg, t / per_rung, static_cast<int>(t % per_rung));
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };

  if (cfg.threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(cfg.threads));
    for (int i = 0; i < cfg.threads; ++i) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

struct RungSummary {
  double rho = 0.0;
  double area = 0.0;
  long n = 0;
  double mean_z = 0.0;
  double var_z = 0.0;
  double mean_density = 0.0;     // mean_z / area, compare with theory.mean_density
  double var_normalized = 0.0;   // var_z / area^(2 norm_exponent)
  BootstrapResult var_boot;      // bootstrap of var_normalized
  KsResult ks;                   // standardized values against the limit law
  JbResult jb;
};

struct RunSummary {
  MomentReport theory;
  std::vector<RungSummary> rungs;
  RateFit rate;  // meaningful only when has_rate
  bool has_rate = false;
};

inline RunSummary summarize_run(const RunResult& run, int bootstrap_resamples = 1000) {
  const ExperimentConfig& cfg = run.config;
  RunSummary s;
  s.theory = theory_for(cfg);
  const std::size_t per_rung = static_cast<std::size_t>(cfg.replicates);
  std::vector<std::pair<double, double>> ladder;

  for (std::size_t ri = 0; ri < cfg.rhos.size(); ++ri) {
    RungSummary rg;
    rg.rho = cfg.rhos[ri];
    rg.area = WindowSpec{cfg.shape, rg.rho}.area();

    std::vector<double> zs, std_z;
    zs.reserve(per_rung);
    std_z.reserve(per_rung);
    for (std::size_t t = ri * per_rung; t < (ri + 1) * per_rung; ++t) {
      zs.push_back(run.records[t].z);
      std_z.push_back(standardize(run.records[t].z, rg.area, s.theory));
    }
    const SampleSummary sum = summarize(zs);
    rg.n = sum.n;
    rg.mean_z = sum.mean;
    rg.var_z = sum.variance();
    rg.mean_density = rg.mean_z / rg.area;
    const double norm = std::pow(rg.area, 2.0 * s.theory.norm_exponent);
    rg.var_normalized = rg.var_z / norm;

    // The rung's bootstrap stream sits one past the last replicate child, so
    // it never collides with a replicate's own stream.
    Rng boot(SeedStream(cfg.seed).child(ri).child(per_rung).seed());
    rg.var_boot = bootstrap_statistic(
        zs, [norm](const std::vector<double>& v) { return sample_variance(v) / norm; },
        bootstrap_resamples, boot);

    rg.ks = ks_test_normal(std_z, 0.0, std::sqrt(s.theory.asym_variance));
    if (rg.n >= 8) rg.jb = jarque_bera(summarize(std_z));

    ladder.push_back({rg.area, rg.var_z});
    s.rungs.push_back(rg);
  }

  if (ladder.size() >= 3) {
    s.rate = fit_variance_rate(ladder);
    s.has_rate = true;
  }
  return s;
}

struct EdgeVarianceEstimate {
  double mean_length = 0.0;  // sample mean of the in-window edge length
  double rho = 0.0;
  double area = 0.0;
  int replicates = 0;
  BootstrapResult var_per_area;  // Var(edge length) / |W|
};

// Asymptotic variance per unit area of the total edge length of a planar
// Voronoi tessellation. By scaling the limit does not depend on the
// intensity; the classical numerical value is brakke_constant().
inline EdgeVarianceEstimate estimate_edge_variance(double gamma, const WindowSpec& w,
                                                   int replicates, std::uint64_t seed,
                                                   double eps_scale = 1e-9,
                                                   int bootstrap_resamples = 1000) {
  if (replicates < 2) throw std::invalid_argument("edge variance: need two replicates");
  const double eps = w.epsilon(eps_scale);
  SeedStream root(seed);
  std::vector<double> lengths;
  lengths.reserve(static_cast<std::size_t>(replicates));
  double mean = 0.0;
  for (int rep = 0; rep < replicates; ++rep) {
    const auto gen = generate_poisson_voronoi(gamma, w, root.child(0).child(rep), eps);
    lengths.push_back(edge_length_in(gen.tess, w));
    mean += lengths.back();
  }
  EdgeVarianceEstimate e;
  e.mean_length = mean / replicates;
  e.rho = w.rho;
  e.area = w.area();
  e.replicates = replicates;
  Rng boot(root.child(1).seed());
  const double area = e.area;
  e.var_per_area = bootstrap_statistic(
      lengths, [area](const std::vector<double>& v) { return sample_variance(v) / area; },
      bootstrap_resamples, boot);
  return e;
}

struct InnerVarianceEstimate {
  double estimate = 0.0;        // initial intensity times the mean conditional variance
  double se = 0.0;              // spread of per-cell variances over the cells
  double mean_crossings = 0.0;  // average crossing count per cell, unscaled
  int cells = 0;
  int per_cell = 0;
};

// The within-cell part of the nesting variance: the conditional variance of
// the crossing count of one component against the full boundary of the
// typical initial cell, averaged over cells and scaled by the cell
// intensity. For a line component this equals 16 lam sqrt(gamma) / pi
// exactly; for a Voronoi component it approaches
// pvt_inner_variance_constant() at unit intensities.
inline InnerVarianceEstimate estimate_inner_variance(double gamma,
                                                     const TessellationSpec& component,
                                                     int cells, int per_cell,
                                                     std::uint64_t seed, double eps = 1e-9) {
  if (cells < 2 || per_cell < 2)
    throw std::invalid_argument("inner variance: need several cells and draws");
  SeedStream root(seed);
  SampleSummary per_cell_var;
  double mean_n = 0.0;
  for (int k = 0; k < cells; ++k) {
    const SeedStream cs = root.child(k);
    const ConvexPolygon cell = typical_voronoi_cell(gamma, cs.child(0), eps);
    SampleSummary inner;
    for (int m = 0; m < per_cell; ++m) {
      const auto edges = component_edges_for_cell(component, cell, cs.child(1).child(m), eps);
      inner.add(static_cast<double>(cell_crossing_count(cell, edges, nullptr, eps)));
    }
    per_cell_var.add(inner.variance());
    mean_n += inner.mean;
  }
  InnerVarianceEstimate e;
  e.estimate = gamma * per_cell_var.mean;
  e.se = gamma * per_cell_var.se();
  e.mean_crossings = mean_n / cells;
  e.cells = cells;
  e.per_cell = per_cell;
  return e;
}

}  // namespace tcross
