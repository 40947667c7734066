#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tcross/cli.hpp"

namespace {

using tcross::ConfigError;
using tcross::IoError;

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open output file: " + path);
  return f;
}

void emit(const std::string& path, const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream f = open_output(path);
  write(f);
  if (!f) throw IoError("failed while writing: " + path);
}

void emit_json(const std::string& path, const nlohmann::json& j) {
  emit(path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

std::vector<tcross::ReplicateRecord> load_records(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open records file: " + path);
  return tcross::read_records_csv(in);
}

int run(int argc, char** argv) {
  CLI::App app{"planar nested tessellation laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_path, summary_path, dump_path, records_path;
  std::uint64_t seed = 0;
  int threads = 0;
  int dim = 2, facet_dim = 1;
  std::string which = "both", component_name = "pvt";
  tcross::ConstantsBudget budget;

  CLI::App* moments = app.add_subcommand(
      "moments", "evaluate the closed form crossing moments for a configured pair");
  moments->add_option("--config", config_path, "experiment description (json)")->required();
  moments->add_option("--d", dim, "space dimension (line process initial only)");
  moments->add_option("--k", facet_dim, "facet dimension");
  moments->add_option("--out", out_path, "write json here instead of stdout");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "run the configured replicates and write a records csv");
  simulate->add_option("--config", config_path, "experiment description (json)")->required();
  CLI::Option* sim_seed = simulate->add_option("--seed", seed, "override the config seed");
  CLI::Option* sim_threads =
      simulate->add_option("--threads", threads, "override the config thread count");
  simulate->add_option("--out", out_path, "records csv path (stdout when omitted)");
  simulate->add_option("--summary", summary_path, "also write a summary json here");
  simulate->add_option("--dump", dump_path,
                       "also write the first replicate's initial tessellation here");

  CLI::App* rate = app.add_subcommand(
      "rate", "fit the growth of Var(Z) in the window area over the rungs");
  rate->add_option("--config", config_path, "experiment description (json)");
  rate->add_option("--records", records_path, "use an existing records csv instead");
  CLI::Option* rate_seed = rate->add_option("--seed", seed, "override the config seed");
  CLI::Option* rate_threads =
      rate->add_option("--threads", threads, "override the config thread count");
  rate->add_option("--out", out_path, "write json here instead of stdout");

  CLI::App* standardize = app.add_subcommand(
      "standardize", "standardize records under both the long and short range branches");
  standardize->add_option("--config", config_path, "experiment description (json)")
      ->required();
  standardize->add_option("--records", records_path, "records csv to standardize")
      ->required();
  standardize->add_option("--out", out_path, "standardized csv path (stdout when omitted)");
  standardize->add_option("--summary", summary_path, "also write the ks summary json here");

  CLI::App* constants = app.add_subcommand(
      "constants", "estimate the simulation calibrated variance constants");
  constants->add_option("--which", which, "brakke, inner or both");
  constants->add_option("--component", component_name, "component model for inner (plt|pvt)");
  constants->add_option("--gamma", budget.gamma, "initial Voronoi intensity");
  constants->add_option("--intensity", budget.component_intensity, "component intensity");
  constants->add_option("--rho", budget.rho, "square window half width for the edge variance");
  constants->add_option("--replicates", budget.replicates, "edge variance replicates");
  constants->add_option("--cells", budget.cells, "typical cells for inner");
  constants->add_option("--per-cell", budget.per_cell, "component draws per cell");
  constants->add_option("--seed", budget.seed, "master seed");
  constants->add_option("--out", out_path, "write json here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (app.got_subcommand(moments)) {
    const tcross::ExperimentConfig cfg = tcross::load_config(config_path);
    emit_json(out_path, tcross::cmd_moments(cfg, dim, facet_dim));
    return 0;
  }

  if (app.got_subcommand(simulate)) {
    tcross::ExperimentConfig cfg = tcross::load_config(config_path);
    if (*sim_seed) cfg.seed = seed;
    if (*sim_threads) cfg.threads = threads;
    tcross::validate(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    const tcross::SimulateOutput out = tcross::cmd_simulate(cfg);
    const auto t1 = std::chrono::steady_clock::now();
    std::cerr << "simulate: " << out.run.records.size() << " replicates in "
              << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
              << " ms\n";
    emit(out_path, [&](std::ostream& os) { tcross::write_records_csv(os, out.run.records); });
    if (!summary_path.empty()) emit_json(summary_path, tcross::summary_json(out.summary));
    if (!dump_path.empty())
      emit(dump_path, [&](std::ostream& os) { tcross::cmd_dump_first(cfg, os); });
    return 0;
  }

  if (app.got_subcommand(rate)) {
    std::vector<tcross::ReplicateRecord> records;
    if (!records_path.empty()) {
      records = load_records(records_path);
    } else if (!config_path.empty()) {
      tcross::ExperimentConfig cfg = tcross::load_config(config_path);
      if (*rate_seed) cfg.seed = seed;
      if (*rate_threads) cfg.threads = threads;
      tcross::validate(cfg);
      records = tcross::run_experiment(cfg).records;
    } else {
      throw ConfigError("rate: pass --records or --config");
    }
    emit_json(out_path, tcross::cmd_rate(records));
    return 0;
  }

  if (app.got_subcommand(standardize)) {
    const tcross::ExperimentConfig cfg = tcross::load_config(config_path);
    const std::vector<tcross::ReplicateRecord> records = load_records(records_path);
    const tcross::StandardizeOutput out = tcross::cmd_standardize(cfg, records);
    emit(out_path, [&](std::ostream& os) { os << out.csv; });
    if (!summary_path.empty()) emit_json(summary_path, out.summary);
    return 0;
  }

  if (app.got_subcommand(constants)) {
    budget.component = tcross::parse_model(component_name);
    const auto t0 = std::chrono::steady_clock::now();
    const nlohmann::json j = tcross::cmd_constants(which, budget);
    const auto t1 = std::chrono::steady_clock::now();
    std::cerr << "constants: estimated in "
              << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
              << " ms\n";
    emit_json(out_path, j);
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const tcross::ExactnessError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
}
