#pragma once

#include <cstdint>
#include <vector>

#include "goim/gaussian_state.hpp"
#include "goim/ising.hpp"
#include "goim/mif.hpp"

namespace goim {

// Optical-delay-line machine parameters. Defaults follow the reference
// operating point: 100 round trips, squeezing 0.2, 10% pick-off, 90:10
// recombiner, 1000 readout samples.
struct OdlConfig {
  int n_loops = 100;
  double squeeze_r = 0.2;
  double pickoff_fraction = 0.10;
  double inject_fraction = 0.10;
  GainMode gain_mode{GainKind::squeeze, 0.0};  // squeeze or phase_insensitive
  int n_samples = 1000;
  // Ordered pairs: every coupled (i, k) with i != k acts once per round trip,
  // so each undirected edge is traversed in both directions. When false only
  // i < k is traversed.
  bool ordered_pairs = true;
  std::uint64_t seed = 0;

  void validate() const;
};

struct OdlResult {
  GaussianState final_state;
  std::vector<SpinConfig> samples;
  std::vector<double> energies;
  long success_count = 0;
};

// Deterministic evolution of the delay-line loop; randomness enters only at
// sampling time. Couplings must be exactly -1 or 0.
GaussianState evolve_odl(const CouplingMatrix& j, const OdlConfig& cfg);

// Literal per-coupling sequence (append vacuum ancilla / beam splitter /
// pi shift / recombine / remove). Kept as the reference for evolve_odl,
// which reuses a single scratch mode instead of resizing; both produce
// bit-identical states.
GaussianState evolve_odl_reference(const CouplingMatrix& j, const OdlConfig& cfg);

OdlResult run_odl(const CouplingMatrix& j, const OdlConfig& cfg, const GroundTruth& truth,
                  int threads = 0);

}  // namespace goim
