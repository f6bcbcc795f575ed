#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "goim/config.hpp"
#include "goim/errors.hpp"
#include "goim/graph_io.hpp"
#include "goim/harness.hpp"
#include "goim/output.hpp"
#include "goim/selftest.hpp"

namespace {

struct CommonOptions {
  std::uint64_t seed = 0;
  long trials = -1;  // -1: keep the subcommand default
  std::string out;
  std::string config_path;
  int threads = 0;
  std::string format = "csv";
  std::string ci = "wilson";
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_trials = true) {
  cmd->add_option("--seed", opt.seed, "Base random seed");
  if (with_trials) cmd->add_option("--trials", opt.trials, "Number of trials / samples");
  cmd->add_option("--out", opt.out, "Output path (default: stdout)");
  cmd->add_option("--config", opt.config_path, "JSON config file; flags override its values");
  cmd->add_option("--threads", opt.threads, "Worker threads (0 = all available)");
  cmd->add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--ci", opt.ci, "Confidence interval method")
      ->check(CLI::IsMember({"wilson", "clopper-pearson"}));
}

goim::CiMethod ci_method(const CommonOptions& opt) {
  return opt.ci == "wilson" ? goim::CiMethod::wilson : goim::CiMethod::clopper_pearson;
}

template <class WriteFn>
void emit(const CommonOptions& opt, WriteFn&& write) {
  if (opt.out.empty()) {
    write(std::cout);
  } else {
    std::ofstream file(opt.out, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output file " + opt.out);
    write(file);
  }
}

std::vector<goim::GraphSpec> parse_graphs(const std::vector<std::string>& texts,
                                          std::uint64_t default_seed) {
  std::vector<goim::GraphSpec> specs;
  specs.reserve(texts.size());
  for (const std::string& t : texts) specs.push_back(goim::GraphSpec::parse(t, default_seed));
  return specs;
}

struct MifFlags {
  int loops = 0;
  double squeeze_r = 0.0;
  double loss = 0.0;
  double tap = 0.0;
  double eta = 0.0;
  double cap = 0.0;
  std::string squeeze_variant;
  std::string gain_mode;
  double gain_r = 0.0;
  bool tap_conditioning = false;
};

void add_mif_flags(CLI::App* cmd, MifFlags& f) {
  cmd->add_option("--loops", f.loops, "Feedback loops per trial");
  cmd->add_option("--squeeze-r", f.squeeze_r, "Squeezing parameter per loop");
  cmd->add_option("--loss", f.loss, "Loss fraction per loop");
  cmd->add_option("--tap", f.tap, "Tapped fraction measured per loop");
  cmd->add_option("--eta", f.eta, "Feedback strength");
  cmd->add_option("--cap", f.cap, "Per-element saturation cap on the feedback");
  cmd->add_option("--squeeze-variant", f.squeeze_variant, "canonical | isotropic")
      ->check(CLI::IsMember({"canonical", "isotropic"}));
  cmd->add_option("--gain-mode", f.gain_mode, "squeeze | none | phase-insensitive")
      ->check(CLI::IsMember({"squeeze", "none", "phase-insensitive"}));
  cmd->add_option("--gain-r", f.gain_r, "Phase-insensitive gain parameter");
  cmd->add_flag("--tap-conditioning", f.tap_conditioning,
                "Condition each pulse on its tap measurement");
}

goim::MifConfig resolve_mif_config(const CLI::App* cmd, const CommonOptions& opt,
                                   const MifFlags& f) {
  goim::MifConfig cfg;
  if (!opt.config_path.empty()) cfg = goim::mif_config_from_file(opt.config_path);
  if (cmd->count("--loops")) cfg.n_loops = f.loops;
  if (cmd->count("--squeeze-r")) cfg.squeeze_r = f.squeeze_r;
  if (cmd->count("--loss")) cfg.loss_fraction = f.loss;
  if (cmd->count("--tap")) cfg.tap_fraction = f.tap;
  if (cmd->count("--eta")) cfg.eta = f.eta;
  if (cmd->count("--cap")) cfg.saturation_cap = f.cap;
  if (cmd->count("--squeeze-variant")) {
    cfg.squeeze_variant = goim::squeeze_variant_from_string(f.squeeze_variant);
  }
  if (cmd->count("--gain-mode")) {
    const double r = cmd->count("--gain-r") ? f.gain_r : cfg.gain_mode.r;
    cfg.gain_mode = goim::gain_mode_from_string(f.gain_mode, r);
  } else if (cmd->count("--gain-r")) {
    cfg.gain_mode.r = f.gain_r;
  }
  if (cmd->count("--tap-conditioning")) cfg.tap_conditioning = f.tap_conditioning;
  if (cmd->count("--seed")) cfg.seed = opt.seed;
  cfg.validate();
  return cfg;
}

int run_mif_command(const CLI::App* cmd, const CommonOptions& opt, const MifFlags& flags,
                    const std::vector<std::string>& graphs) {
  const goim::MifConfig cfg = resolve_mif_config(cmd, opt, flags);
  std::vector<goim::ExperimentSpec> specs;
  for (const goim::GraphSpec& g : parse_graphs(graphs, cfg.seed)) {
    goim::ExperimentSpec spec;
    spec.machine = goim::MachineKind::mif;
    spec.graph = g;
    spec.config = cfg;
    spec.trials = opt.trials < 0 ? 300 : opt.trials;
    specs.push_back(std::move(spec));
  }
  const bool progress = !opt.out.empty();
  const auto result = goim::run_sweep(specs, opt.threads, ci_method(opt),
                                      [&](const goim::SuccessSummary& s) {
                                        if (progress) {
                                          std::cerr << s.label << " p_hat="
                                                    << goim::format_probability(s.p_hat) << "\n";
                                        }
                                      });
  emit(opt, [&](std::ostream& os) {
    opt.format == "csv" ? goim::write_sweep_csv(os, result)
                        : goim::write_sweep_json(os, result);
  });
  return 0;
}

int run_odl_command(const CLI::App* cmd, const CommonOptions& opt,
                    const std::vector<std::string>& graphs, const goim::OdlConfig& base,
                    const std::string& gain_mode, double gain_r, bool unordered) {
  goim::OdlConfig cfg = base;
  if (!opt.config_path.empty()) cfg = goim::odl_config_from_file(opt.config_path);
  if (cmd->count("--loops")) cfg.n_loops = base.n_loops;
  if (cmd->count("--squeeze-r")) cfg.squeeze_r = base.squeeze_r;
  if (cmd->count("--pickoff")) cfg.pickoff_fraction = base.pickoff_fraction;
  if (cmd->count("--inject")) cfg.inject_fraction = base.inject_fraction;
  if (cmd->count("--gain-mode")) {
    cfg.gain_mode = goim::gain_mode_from_string(gain_mode, gain_r);
  } else if (cmd->count("--gain-r")) {
    cfg.gain_mode.r = gain_r;
  }
  if (cmd->count("--unordered-pairs")) cfg.ordered_pairs = !unordered;
  if (cmd->count("--seed")) cfg.seed = opt.seed;
  cfg.validate();

  std::vector<goim::ExperimentSpec> specs;
  for (const goim::GraphSpec& g : parse_graphs(graphs, cfg.seed)) {
    goim::ExperimentSpec spec;
    spec.machine = goim::MachineKind::odl;
    spec.graph = g;
    spec.config = cfg;
    spec.trials = opt.trials < 0 ? cfg.n_samples : opt.trials;
    specs.push_back(std::move(spec));
  }
  const auto result = goim::run_sweep(specs, opt.threads, ci_method(opt));
  emit(opt, [&](std::ostream& os) {
    opt.format == "csv" ? goim::write_sweep_csv(os, result)
                        : goim::write_sweep_json(os, result);
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian optical Ising machine simulator"};
  app.require_subcommand(1);

  // mif
  CommonOptions mif_opt;
  MifFlags mif_flags;
  std::vector<std::string> mif_graphs;
  CLI::App* mif = app.add_subcommand("mif", "Measurement-and-feedback machine sweep");
  mif->add_option("--graph", mif_graphs, "mobius:N | cubic:N[:SEED] | file:PATH")->required();
  add_common(mif, mif_opt);
  add_mif_flags(mif, mif_flags);

  // odl
  CommonOptions odl_opt;
  std::vector<std::string> odl_graphs;
  goim::OdlConfig odl_base;
  std::string odl_gain_mode = "squeeze";
  double odl_gain_r = 0.6;
  bool odl_unordered = false;
  CLI::App* odl = app.add_subcommand("odl", "Optical-delay-line machine sweep");
  odl->add_option("--graph", odl_graphs, "mobius:N | cubic:N[:SEED] | file:PATH")->required();
  add_common(odl, odl_opt);
  odl->add_option("--loops", odl_base.n_loops, "Round trips");
  odl->add_option("--squeeze-r", odl_base.squeeze_r, "Squeezing parameter per round trip");
  odl->add_option("--pickoff", odl_base.pickoff_fraction, "Picked-off fraction per coupling");
  odl->add_option("--inject", odl_base.inject_fraction, "Injected fraction at the recombiner");
  odl->add_option("--gain-mode", odl_gain_mode, "squeeze | phase-insensitive")
      ->check(CLI::IsMember({"squeeze", "phase-insensitive"}));
  odl->add_option("--gain-r", odl_gain_r, "Phase-insensitive gain parameter");
  odl->add_flag("--unordered-pairs", odl_unordered, "Couple each edge once per round trip");

  // cubic-hist
  CommonOptions hist_opt;
  MifFlags hist_flags;
  int hist_n = 16;
  int hist_graphs = 50;
  CLI::App* hist = app.add_subcommand(
      "cubic-hist", "Success-probability histogram over random cubic graphs");
  hist->add_option("--n", hist_n, "Spins per graph");
  hist->add_option("--graphs", hist_graphs, "Number of random graphs");
  add_common(hist, hist_opt);
  add_mif_flags(hist, hist_flags);

  // oracle
  CommonOptions oracle_opt;
  std::string oracle_graph;
  CLI::App* oracle = app.add_subcommand("oracle", "Print the exact ground-state energy");
  oracle->add_option("--graph", oracle_graph, "mobius:N | cubic:N[:SEED] | file:PATH")
      ->required();
  add_common(oracle, oracle_opt, false);

  // graph
  CommonOptions graph_opt;
  std::string graph_graph;
  CLI::App* graph = app.add_subcommand("graph", "Emit a graph as an edge list");
  graph->add_option("--graph", graph_graph, "mobius:N | cubic:N[:SEED] | file:PATH")
      ->required();
  add_common(graph, graph_opt, false);

  // selftest
  bool selftest_fast = false;
  CLI::App* selftest = app.add_subcommand("selftest", "Run the module invariant checks");
  selftest->add_flag("--fast", selftest_fast, "Reduced statistical sample sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    std::cerr << "run with --help for usage\n";
    return 1;
  }

  try {
    if (mif->parsed()) return run_mif_command(mif, mif_opt, mif_flags, mif_graphs);
    if (odl->parsed()) {
      return run_odl_command(odl, odl_opt, odl_graphs, odl_base, odl_gain_mode, odl_gain_r,
                             odl_unordered);
    }
    if (hist->parsed()) {
      goim::MifConfig cfg = resolve_mif_config(hist, hist_opt, hist_flags);
      std::optional<double> cap;
      if (hist->count("--cap")) cap = hist_flags.cap;
      cfg.saturation_cap.reset();
      const long trials = hist_opt.trials < 0 ? 100 : hist_opt.trials;
      const auto result = goim::run_cubic_histogram(hist_n, hist_graphs, trials, cap, cfg,
                                                    hist_opt.threads, ci_method(hist_opt));
      emit(hist_opt, [&](std::ostream& os) {
        hist_opt.format == "csv" ? goim::write_cubic_hist_csv(os, result)
                                 : goim::write_cubic_hist_json(os, result);
      });
      return 0;
    }
    if (oracle->parsed()) {
      const goim::GraphSpec spec = goim::GraphSpec::parse(oracle_graph, oracle_opt.seed);
      const goim::CouplingMatrix j = goim::build_graph(spec);
      const goim::GroundTruth truth = goim::ground_truth_for(spec, j, oracle_opt.threads);
      std::cout << goim::format_energy(truth.energy) << "\n";
      return 0;
    }
    if (graph->parsed()) {
      const goim::GraphSpec spec = goim::GraphSpec::parse(graph_graph, graph_opt.seed);
      const goim::CouplingMatrix j = goim::build_graph(spec);
      emit(graph_opt, [&](std::ostream& os) { goim::save_edge_list(os, j); });
      return 0;
    }
    if (selftest->parsed()) {
      return goim::run_selftest(selftest_fast, std::cout) == 0 ? 0 : 1;
    }
  } catch (const goim::numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
