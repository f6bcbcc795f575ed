#include "goim/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "goim/errors.hpp"
#include "goim/graph_io.hpp"

namespace goim {

namespace {

int resolve_threads(int threads) {
  return threads > 0 ? threads : omp_get_max_threads();
}

std::uint64_t parse_u64(const std::string& text) {
  size_t pos = 0;
  const unsigned long long v = std::stoull(text, &pos);
  if (pos != text.size()) throw std::invalid_argument("graph: invalid number \"" + text + "\"");
  return v;
}

int parse_int(const std::string& text) {
  size_t pos = 0;
  const long v = std::stol(text, &pos);
  if (pos != text.size() || v < 0 || v > 1000000) {
    throw std::invalid_argument("graph: invalid size \"" + text + "\"");
  }
  return static_cast<int>(v);
}

}  // namespace

std::string GraphSpec::label() const {
  switch (kind) {
    case Kind::mobius:
      return "mobius:" + std::to_string(n);
    case Kind::cubic:
      return "cubic:" + std::to_string(n) + ":" + std::to_string(seed);
    case Kind::file:
      return path;
  }
  return "";
}

GraphSpec GraphSpec::parse(const std::string& text, std::uint64_t default_seed) {
  GraphSpec spec;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "mobius") {
    spec.kind = Kind::mobius;
    if (rest.empty()) throw std::invalid_argument("graph: expected mobius:N");
    spec.n = parse_int(rest);
  } else if (head == "cubic") {
    spec.kind = Kind::cubic;
    if (rest.empty()) throw std::invalid_argument("graph: expected cubic:N[:SEED]");
    const auto second = rest.find(':');
    spec.n = parse_int(rest.substr(0, second));
    spec.seed = second == std::string::npos ? default_seed : parse_u64(rest.substr(second + 1));
  } else if (head == "file") {
    spec.kind = Kind::file;
    if (rest.empty()) throw std::invalid_argument("graph: expected file:PATH");
    spec.path = rest;
  } else {
    throw std::invalid_argument("graph: unknown kind \"" + head +
                                "\" (expected mobius:, cubic:, or file:)");
  }
  return spec;
}

CouplingMatrix build_graph(const GraphSpec& spec) {
  switch (spec.kind) {
    case GraphSpec::Kind::mobius:
      return mobius_ladder(spec.n);
    case GraphSpec::Kind::cubic: {
      RandomStream rng(spec.seed, 0);
      return random_cubic_graph(spec.n, rng);
    }
    case GraphSpec::Kind::file:
      return load_edge_list_file(spec.path);
  }
  throw std::invalid_argument("build_graph: unreachable");
}

GroundTruth ground_truth_for(const GraphSpec& spec, const CouplingMatrix& j, int threads) {
  if (j.n() <= kBruteForceLimit) return brute_force_ground(j, threads);
  if (spec.kind == GraphSpec::Kind::mobius) return mobius_ground_dp(spec.n);
  throw size_limit_error("ground_truth_for: no exact oracle beyond " +
                         std::to_string(kBruteForceLimit) +
                         " spins except for Moebius ladders");
}

std::vector<MifTrialRecord> run_mif_trials(const CouplingMatrix& j, const MifConfig& cfg,
                                           const GroundTruth& truth, long n_trials,
                                           int threads, std::uint64_t stream_base) {
  if (n_trials < 1) throw std::invalid_argument("run_mif_trials: need at least one trial");
  std::vector<MifTrialRecord> records(static_cast<size_t>(n_trials));
#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(threads))
  for (long t = 0; t < n_trials; ++t) {
    records[static_cast<size_t>(t)] = run_mif_trial(
        j, cfg, truth, RandomStream(cfg.seed, stream_base + static_cast<std::uint64_t>(t)));
  }
  return records;
}

std::vector<MifTrialRecord> run_mif_trials_serial(const CouplingMatrix& j,
                                                  const MifConfig& cfg,
                                                  const GroundTruth& truth, long n_trials,
                                                  std::uint64_t stream_base) {
  if (n_trials < 1) throw std::invalid_argument("run_mif_trials: need at least one trial");
  std::vector<MifTrialRecord> records(static_cast<size_t>(n_trials));
  for (long t = 0; t < n_trials; ++t) {
    records[static_cast<size_t>(t)] = run_mif_trial(
        j, cfg, truth, RandomStream(cfg.seed, stream_base + static_cast<std::uint64_t>(t)));
  }
  return records;
}

SweepResult run_sweep(const std::vector<ExperimentSpec>& specs, int threads, CiMethod ci,
                      const std::function<void(const SuccessSummary&)>& on_summary) {
  SweepResult result;
  for (const ExperimentSpec& spec : specs) {
    if (spec.trials < 1) throw std::invalid_argument("run_sweep: trials must be >= 1");
    const CouplingMatrix j = build_graph(spec.graph);
    const GroundTruth truth = ground_truth_for(spec.graph, j, threads);
    const std::string label = spec.graph.label();

    long successes = 0;
    if (spec.machine == MachineKind::mif) {
      const MifConfig& cfg = std::get<MifConfig>(spec.config);
      const auto records = run_mif_trials(j, cfg, truth, spec.trials, threads);
      for (long t = 0; t < spec.trials; ++t) {
        const auto& rec = records[static_cast<size_t>(t)];
        successes += rec.success ? 1 : 0;
        result.trials.push_back({label, t, rec.energy, truth.energy, rec.success});
      }
    } else {
      OdlConfig cfg = std::get<OdlConfig>(spec.config);
      cfg.n_samples = static_cast<int>(spec.trials);
      const OdlResult odl = run_odl(j, cfg, truth, threads);
      successes = odl.success_count;
      for (long t = 0; t < spec.trials; ++t) {
        const double energy = odl.energies[static_cast<size_t>(t)];
        result.trials.push_back({label, t, energy, truth.energy, energy == truth.energy});
      }
    }

    SuccessSummary summary = summarize(label, j.n(), successes, spec.trials, ci);
    if (on_summary) on_summary(summary);
    result.summaries.push_back(std::move(summary));
  }
  return result;
}

CubicHistogramResult run_cubic_histogram(int n_spins, int n_graphs, long trials_per_graph,
                                         std::optional<double> saturation_cap,
                                         const MifConfig& base, int threads, CiMethod ci) {
  if (n_spins > kBruteForceLimit) {
    throw size_limit_error("run_cubic_histogram: needs the enumeration oracle, so n <= " +
                           std::to_string(kBruteForceLimit));
  }
  if (n_graphs < 1) throw std::invalid_argument("run_cubic_histogram: n_graphs must be >= 1");
  if (trials_per_graph < 1) {
    throw std::invalid_argument("run_cubic_histogram: trials_per_graph must be >= 1");
  }

  CubicHistogramResult result;
  for (int g = 0; g < n_graphs; ++g) {
    GraphSpec spec;
    spec.kind = GraphSpec::Kind::cubic;
    spec.n = n_spins;
    spec.seed = derive_seed(base.seed, static_cast<std::uint64_t>(g));
    const CouplingMatrix j = build_graph(spec);
    const GroundTruth truth = brute_force_ground(j, threads);

    MifConfig cfg = base;
    cfg.saturation_cap = saturation_cap;
    cfg.seed = spec.seed;
    // stream_base 1 keeps trial streams clear of the generator stream (seed, 0)
    const auto records = run_mif_trials(j, cfg, truth, trials_per_graph, threads, 1);
    long successes = 0;
    for (const auto& rec : records) successes += rec.success ? 1 : 0;

    SuccessSummary summary = summarize(spec.label(), n_spins, successes, trials_per_graph, ci);
    const int bin =
        std::min(19, static_cast<int>(std::floor(summary.p_hat / 0.05)));
    result.histogram[static_cast<size_t>(bin)] += 1;
    result.per_graph.push_back(std::move(summary));
  }
  return result;
}

}  // namespace goim
