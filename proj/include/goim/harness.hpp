#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "goim/ising.hpp"
#include "goim/mif.hpp"
#include "goim/odl.hpp"
#include "goim/stats.hpp"

namespace goim {

enum class MachineKind { mif, odl };

// Graph selector as written on the command line:
//   "mobius:N"        Moebius ladder with N nodes
//   "cubic:N[:SEED]"  seeded random cubic graph (generator stream (SEED, 0))
//   "file:PATH"       edge-list file
struct GraphSpec {
  enum class Kind { mobius, cubic, file };
  Kind kind = Kind::mobius;
  int n = 0;
  std::uint64_t seed = 0;
  std::string path;

  std::string label() const;
  static GraphSpec parse(const std::string& text, std::uint64_t default_seed);
};

CouplingMatrix build_graph(const GraphSpec& spec);

// Exact ground truth: enumeration up to kBruteForceLimit spins, the
// transfer-matrix oracle for larger Moebius ladders, and size_limit_error
// otherwise.
GroundTruth ground_truth_for(const GraphSpec& spec, const CouplingMatrix& j, int threads = 0);

struct TrialRow {
  std::string graph_id;
  long trial = 0;
  double energy = 0.0;
  double ground_energy = 0.0;
  bool success = false;
};

struct ExperimentSpec {
  MachineKind machine = MachineKind::mif;
  GraphSpec graph;
  std::variant<MifConfig, OdlConfig> config;
  long trials = 300;  // MIF trials, or ODL readout samples
};

struct SweepResult {
  std::vector<SuccessSummary> summaries;
  std::vector<TrialRow> trials;
};

// Trial t draws its randomness from RandomStream(cfg.seed, stream_base + t),
// so results do not depend on the thread count or schedule.
std::vector<MifTrialRecord> run_mif_trials(const CouplingMatrix& j, const MifConfig& cfg,
                                           const GroundTruth& truth, long n_trials,
                                           int threads = 0, std::uint64_t stream_base = 0);
// Serial reference for the runner above; bit-identical results.
std::vector<MifTrialRecord> run_mif_trials_serial(const CouplingMatrix& j,
                                                  const MifConfig& cfg,
                                                  const GroundTruth& truth, long n_trials,
                                                  std::uint64_t stream_base = 0);

SweepResult run_sweep(const std::vector<ExperimentSpec>& specs, int threads = 0,
                      CiMethod ci = CiMethod::wilson,
                      const std::function<void(const SuccessSummary&)>& on_summary = {});

struct CubicHistogramResult {
  std::vector<SuccessSummary> per_graph;
  std::array<long, 20> histogram{};  // success-probability bins of width 0.05
};

// Success-probability histogram over seeded random cubic graphs. Graph g is
// generated from derive_seed(base.seed, g) (reported in its label, so it can
// be replayed with "cubic:N:SEED"); its trials use streams that do not depend
// on the saturation cap, so capped and uncapped runs are paired.
CubicHistogramResult run_cubic_histogram(int n_spins, int n_graphs, long trials_per_graph,
                                         std::optional<double> saturation_cap,
                                         const MifConfig& base, int threads = 0,
                                         CiMethod ci = CiMethod::wilson);

}  // namespace goim
