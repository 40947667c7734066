#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tcross/montecarlo.hpp"

namespace tcross {

// Error taxonomy for the command line tool: configuration and argument
// problems exit with 2, file problems with 3, exactness and numerical
// failures with 4.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline ModelKind parse_model(const std::string& s) {
  if (s == "plt") return ModelKind::plt;
  if (s == "pvt") return ModelKind::pvt;
  throw ConfigError("unknown model: " + s + " (expected plt or pvt)");
}

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj, const char* where,
                                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known)
      throw ConfigError(std::string("config: unknown key \"") + it.key() + "\" in " + where);
  }
}

inline double number_field(const nlohmann::json& obj, const char* where, const char* key) {
  if (!obj.contains(key))
    throw ConfigError(std::string("config: missing \"") + key + "\" in " + where);
  const nlohmann::json& v = obj.at(key);
  if (!v.is_number())
    throw ConfigError(std::string("config: \"") + key + "\" in " + where + " must be a number");
  return v.get<double>();
}

inline TessellationSpec parse_spec(const nlohmann::json& j, const char* where) {
  if (!j.is_object())
    throw ConfigError(std::string("config: ") + where + " must be an object");
  reject_unknown_keys(j, where, {"model", "intensity"});
  if (!j.contains("model") || !j.at("model").is_string())
    throw ConfigError(std::string("config: ") + where + " needs a \"model\" string");
  TessellationSpec spec;
  spec.kind = parse_model(j.at("model").get<std::string>());
  spec.intensity = number_field(j, where, "intensity");
  return spec;
}

}  // namespace detail

// Experiment description, e.g.
//   {"initial":   {"model": "pvt", "intensity": 1.0},
//    "component": {"model": "plt", "intensity": 1.0},
//    "window":    {"shape": "square", "rho": [10, 15, 20, 30]},
//    "replicates": 500, "seed": 1, "threads": 1}
// Unknown keys anywhere are rejected so a typo cannot silently fall back to
// a default.
inline ExperimentConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  detail::reject_unknown_keys(j, "the top level",
                              {"initial", "component", "window", "replicates", "seed",
                               "threads", "tolerance_scale"});
  for (const char* key : {"initial", "component", "window"})
    if (!j.contains(key))
      throw ConfigError(std::string("config: missing \"") + key + "\"");

  ExperimentConfig cfg;
  cfg.initial = detail::parse_spec(j.at("initial"), "initial");
  cfg.component = detail::parse_spec(j.at("component"), "component");

  const nlohmann::json& w = j.at("window");
  if (!w.is_object()) throw ConfigError("config: window must be an object");
  detail::reject_unknown_keys(w, "window", {"shape", "rho"});
  if (!w.contains("shape") || !w.at("shape").is_string())
    throw ConfigError("config: window needs a \"shape\" string");
  try {
    cfg.shape = parse_shape(w.at("shape").get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!w.contains("rho")) throw ConfigError("config: window needs \"rho\"");
  const nlohmann::json& rho = w.at("rho");
  cfg.rhos.clear();
  if (rho.is_number()) {
    cfg.rhos.push_back(rho.get<double>());
  } else if (rho.is_array() && !rho.empty()) {
    for (const nlohmann::json& r : rho) {
      if (!r.is_number()) throw ConfigError("config: window rho entries must be numbers");
      cfg.rhos.push_back(r.get<double>());
    }
  } else {
    throw ConfigError("config: window rho must be a number or a non-empty array");
  }

  if (j.contains("replicates")) {
    if (!j.at("replicates").is_number_integer())
      throw ConfigError("config: replicates must be an integer");
    cfg.replicates = j.at("replicates").get<int>();
  }
  if (j.contains("seed")) {
    const nlohmann::json& s = j.at("seed");
    if (!s.is_number_integer() || s.get<std::int64_t>() < 0)
      throw ConfigError("config: seed must be a non-negative integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  if (j.contains("threads")) {
    if (!j.at("threads").is_number_integer())
      throw ConfigError("config: threads must be an integer");
    cfg.threads = j.at("threads").get<int>();
  }
  if (j.contains("tolerance_scale"))
    cfg.eps_scale = detail::number_field(j, "the top level", "tolerance_scale");

  try {
    validate(cfg);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return parse_config(j);
}

// Shortest round-trip decimal form, locale independent.
inline std::string format_number(double v) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}
inline std::string format_number(long v) {
  char buf[24];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}
inline std::string format_number(std::uint64_t v) {
  char buf[24];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

inline const char* records_csv_header() {
  return "replicate,rho,window_area,z,edge_length,cell_count,seed,millis";
}

inline void write_records_csv(std::ostream& out, const std::vector<ReplicateRecord>& rs) {
  out << records_csv_header() << '\n';
  for (const ReplicateRecord& r : rs) {
    out << format_number(static_cast<long>(r.replicate)) << ',' << format_number(r.rho)
        << ',' << format_number(r.window_area) << ',' << format_number(r.z) << ','
        << format_number(r.edge_length) << ',' << format_number(r.cell_count) << ','
        << format_number(r.seed) << ',' << format_number(r.millis) << '\n';
  }
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

template <typename T>
inline T parse_field(const std::string& s, const char* what) {
  T v{};
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw IoError(std::string("records: bad ") + what + " value \"" + s + "\"");
  return v;
}

}  // namespace detail

inline std::vector<ReplicateRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("records: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != records_csv_header())
    throw IoError("records: unexpected header \"" + line + "\"");
  std::vector<ReplicateRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = detail::split_csv_line(line);
    if (f.size() != 8)
      throw IoError("records: expected 8 fields, got " + std::to_string(f.size()));
    ReplicateRecord r;
    r.replicate = detail::parse_field<int>(f[0], "replicate");
    r.rho = detail::parse_field<double>(f[1], "rho");
    r.window_area = detail::parse_field<double>(f[2], "window_area");
    r.z = detail::parse_field<double>(f[3], "z");
    r.edge_length = detail::parse_field<double>(f[4], "edge_length");
    r.cell_count = detail::parse_field<long>(f[5], "cell_count");
    r.seed = detail::parse_field<std::uint64_t>(f[6], "seed");
    r.millis = detail::parse_field<long>(f[7], "millis");
    out.push_back(r);
  }
  if (out.empty()) throw IoError("records: no data rows");
  return out;
}

inline nlohmann::json theory_json(const MomentReport& th) {
  return nlohmann::json{{"mean_density", th.mean_density},
                        {"asym_variance", th.asym_variance},
                        {"norm_exponent", th.norm_exponent},
                        {"facet_intensity", th.facet_intensity},
                        {"section_intensity", th.section_intensity},
                        {"multiplicity", th.multiplicity}};
}

inline nlohmann::json config_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["initial"] = {{"model", kind_name(cfg.initial.kind)},
                  {"intensity", cfg.initial.intensity}};
  j["component"] = {{"model", kind_name(cfg.component.kind)},
                    {"intensity", cfg.component.intensity}};
  j["window"] = {{"shape", shape_name(cfg.shape)}, {"rho", cfg.rhos}};
  j["replicates"] = cfg.replicates;
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  j["tolerance_scale"] = cfg.eps_scale;
  return j;
}

inline nlohmann::json summary_json(const RunSummary& s) {
  nlohmann::json j;
  j["theory"] = theory_json(s.theory);
  j["rungs"] = nlohmann::json::array();
  for (const RungSummary& rg : s.rungs) {
    nlohmann::json r{{"rho", rg.rho},
                     {"area", rg.area},
                     {"n", rg.n},
                     {"mean_z", rg.mean_z},
                     {"var_z", rg.var_z},
                     {"mean_density", rg.mean_density},
                     {"var_normalized", rg.var_normalized},
                     {"var_se", rg.var_boot.se},
                     {"var_lo", rg.var_boot.lo},
                     {"var_hi", rg.var_boot.hi},
                     {"ks_d", rg.ks.d},
                     {"ks_p", rg.ks.p}};
    if (rg.n >= 8) {
      r["jb"] = rg.jb.jb;
      r["jb_p"] = rg.jb.p;
    }
    j["rungs"].push_back(r);
  }
  if (s.has_rate)
    j["rate"] = {{"slope", s.rate.slope},
                 {"slope_se", s.rate.slope_se},
                 {"intercept", s.rate.intercept},
                 {"regime", rate_regime_name(s.rate.regime)}};
  return j;
}

// moments: evaluate the closed forms for the configured pair. For a line
// process initial the general (d, k) forms are available; the Voronoi
// initial has planar k = 1 theory only.
inline nlohmann::json cmd_moments(const ExperimentConfig& cfg, int d, int k) {
  MomentReport th;
  if (cfg.initial.kind == ModelKind::plt) {
    th = pht_nesting_moments(cfg.initial.intensity, cfg.component, d, k);
  } else {
    if (d != 2 || k != 1)
      throw ConfigError("moments: a Voronoi initial tessellation supports d = 2, k = 1 only");
    th = weak_nesting_moments(cfg.initial.intensity, cfg.component);
  }
  nlohmann::json j;
  j["config"] = config_json(cfg);
  j["dimension"] = d;
  j["facet_dimension"] = k;
  j["regime"] = cfg.initial.kind == ModelKind::plt ? "LONG_RANGE" : "SHORT_RANGE";
  j["theory"] = theory_json(th);
  if (cfg.initial.kind == ModelKind::plt) {
    j["initial_facet_intensity"] = pht_intensity(cfg.initial.intensity, d, k);
    j["initial_facet_variance"] = pht_sigma2(cfg.initial.intensity, d, k);
  }
  return j;
}

struct SimulateOutput {
  RunResult run;
  RunSummary summary;
};

inline SimulateOutput cmd_simulate(const ExperimentConfig& cfg) {
  SimulateOutput out;
  out.run = run_experiment(cfg);
  out.summary = summarize_run(out.run);
  return out;
}

// The initial tessellation of the first replicate of the first rung,
// regenerated from its recorded stream. Useful for eyeballing geometry.
inline void cmd_dump_first(const ExperimentConfig& cfg, std::ostream& os) {
  const WindowSpec w{cfg.shape, cfg.rhos.at(0)};
  const double eps = w.epsilon(cfg.eps_scale);
  const SeedStream slot = SeedStream(cfg.seed).child(0).child(0);
  const PlanarTessellation tess =
      cfg.initial.kind == ModelKind::plt
          ? generate_line_tessellation(cfg.initial.intensity, w, slot.child(0), eps)
          : generate_poisson_voronoi(cfg.initial.intensity, w, slot.child(0), eps).tess;
  dump_tessellation(os, tess);
}

// rate: the log-log fit of Var(Z) against |W| over the rungs of a records
// set, independent of any theory.
inline nlohmann::json cmd_rate(const std::vector<ReplicateRecord>& records) {
  std::map<double, std::vector<double>> by_rho;
  std::map<double, double> area_of;
  for (const ReplicateRecord& r : records) {
    by_rho[r.rho].push_back(r.z);
    const auto it = area_of.find(r.rho);
    if (it == area_of.end())
      area_of[r.rho] = r.window_area;
    else if (it->second != r.window_area)
      throw IoError("records: inconsistent window_area within one rho");
  }
  if (by_rho.size() < 3)
    throw ConfigError("rate: need at least three window sizes to fit a slope");

  nlohmann::json rungs = nlohmann::json::array();
  std::vector<std::pair<double, double>> ladder;
  for (const auto& [rho, zs] : by_rho) {
    if (zs.size() < 2)
      throw ConfigError("rate: each window size needs at least two replicates");
    const double v = sample_variance(zs);
    ladder.push_back({area_of[rho], v});
    rungs.push_back({{"rho", rho},
                     {"area", area_of[rho]},
                     {"n", zs.size()},
                     {"var_z", v}});
  }
  RateFit fit;
  try {
    fit = fit_variance_rate(ladder);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  nlohmann::json j;
  j["rungs"] = rungs;
  j["slope"] = fit.slope;
  j["slope_se"] = fit.slope_se;
  j["intercept"] = fit.intercept;
  j["regime"] = rate_regime_name(fit.regime);
  return j;
}

// The twin of an initial tessellation: the other model matched to the same
// edge length intensity, hence the same crossing mean. Standardizing one
// data set under both hypotheses separates them by the variance scaling.
inline TessellationSpec matched_twin(const TessellationSpec& initial) {
  if (initial.kind == ModelKind::pvt)
    return {ModelKind::plt, 2.0 * std::sqrt(initial.intensity)};
  return {ModelKind::pvt, initial.intensity * initial.intensity / 4.0};
}

struct StandardizeOutput {
  MomentReport long_theory;   // line process initial branch
  MomentReport short_theory;  // Voronoi initial branch
  bool hypothesis_is_long = false;
  nlohmann::json summary;
  std::string csv;
};

inline StandardizeOutput cmd_standardize(const ExperimentConfig& cfg,
                                         const std::vector<ReplicateRecord>& records) {
  StandardizeOutput out;
  ExperimentConfig twin_cfg = cfg;
  twin_cfg.initial = matched_twin(cfg.initial);
  const MomentReport hyp = theory_for(cfg);
  const MomentReport twin = theory_for(twin_cfg);
  out.hypothesis_is_long = cfg.initial.kind == ModelKind::plt;
  out.long_theory = out.hypothesis_is_long ? hyp : twin;
  out.short_theory = out.hypothesis_is_long ? twin : hyp;

  std::ostringstream csv;
  csv << "replicate,rho,window_area,z,standardized_long,standardized_short\n";
  std::map<double, std::pair<std::vector<double>, std::vector<double>>> by_rho;
  for (const ReplicateRecord& r : records) {
    const double sl = standardize(r.z, r.window_area, out.long_theory);
    const double ss = standardize(r.z, r.window_area, out.short_theory);
    csv << format_number(static_cast<long>(r.replicate)) << ',' << format_number(r.rho)
        << ',' << format_number(r.window_area) << ',' << format_number(r.z) << ','
        << format_number(sl) << ',' << format_number(ss) << '\n';
    by_rho[r.rho].first.push_back(sl);
    by_rho[r.rho].second.push_back(ss);
  }
  out.csv = csv.str();

  nlohmann::json rungs = nlohmann::json::array();
  for (const auto& [rho, pair] : by_rho) {
    const auto& [sl, ss] = pair;
    nlohmann::json r{{"rho", rho}, {"n", sl.size()}};
    const KsResult kl = ks_test_normal(sl, 0.0, std::sqrt(out.long_theory.asym_variance));
    const KsResult ks = ks_test_normal(ss, 0.0, std::sqrt(out.short_theory.asym_variance));
    r["ks_long"] = {{"d", kl.d}, {"p", kl.p}};
    r["ks_short"] = {{"d", ks.d}, {"p", ks.p}};
    rungs.push_back(r);
  }
  out.summary = nlohmann::json{
      {"hypothesis", out.hypothesis_is_long ? "LONG_RANGE" : "SHORT_RANGE"},
      {"long_theory", theory_json(out.long_theory)},
      {"short_theory", theory_json(out.short_theory)},
      {"rungs", rungs}};
  return out;
}

struct ConstantsBudget {
  double gamma = 1.0;              // initial Voronoi intensity
  double component_intensity = 1.0;
  ModelKind component = ModelKind::pvt;
  double rho = 25.0;               // square window for the edge variance
  int replicates = 200;
  int cells = 200;
  int per_cell = 100;
  std::uint64_t seed = 1;
};

inline nlohmann::json cmd_constants(const std::string& which, const ConstantsBudget& b) {
  if (which != "brakke" && which != "inner" && which != "both")
    throw ConfigError("constants: --which must be brakke, inner or both");
  nlohmann::json j;
  if (which == "brakke" || which == "both") {
    const WindowSpec w{WindowShape::square, b.rho};
    const EdgeVarianceEstimate e =
        estimate_edge_variance(b.gamma, w, b.replicates, SeedStream(b.seed).child(0).seed());
    j["edge_variance"] = {{"estimate", e.var_per_area.estimate},
                          {"se", e.var_per_area.se},
                          {"lo", e.var_per_area.lo},
                          {"hi", e.var_per_area.hi},
                          {"mean_length", e.mean_length},
                          {"area", e.area},
                          {"replicates", e.replicates},
                          {"reference", brakke_constant()}};
  }
  if (which == "inner" || which == "both") {
    const TessellationSpec comp{b.component, b.component_intensity};
    const InnerVarianceEstimate e = estimate_inner_variance(
        b.gamma, comp, b.cells, b.per_cell, SeedStream(b.seed).child(1).seed());
    const double reference =
        comp.kind == ModelKind::plt
            ? 16.0 * comp.intensity * std::sqrt(b.gamma) / M_PI
            : pvt_inner_variance_constant() * std::sqrt(b.gamma * comp.intensity);
    j["inner_variance"] = {{"estimate", e.estimate},
                           {"se", e.se},
                           {"mean_crossings", e.mean_crossings},
                           {"cells", e.cells},
                           {"per_cell", e.per_cell},
                           {"component", kind_name(comp.kind)},
                           {"reference", reference}};
  }
  return j;
}

}  // namespace tcross
