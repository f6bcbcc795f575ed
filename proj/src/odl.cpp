#include "goim/odl.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "goim/errors.hpp"

namespace goim {

namespace {

void check_couplings(const CouplingMatrix& j) {
  for (int i = 0; i < j.n(); ++i) {
    for (int k = 0; k < j.n(); ++k) {
      if (i != k && j(i, k) != 0.0 && j(i, k) != -1.0) {
        throw unsupported_coupling_error(
            "run_odl: delay-line couplings must be -1 or 0");
      }
    }
  }
}

void gain_step(GaussianState& state, const OdlConfig& cfg, int n) {
  if (cfg.gain_mode.kind == GainKind::squeeze) {
    for (int m = 0; m < n; ++m) {
      kernel::squeeze(state, m, cfg.squeeze_r, SqueezeVariant::canonical);
    }
  } else {
    for (int m = 0; m < n; ++m) {
      kernel::phase_insensitive_gain(state, m, cfg.gain_mode.r);
    }
  }
}

}  // namespace

void OdlConfig::validate() const {
  if (n_loops < 1) throw std::invalid_argument("OdlConfig: n_loops must be >= 1");
  if (n_samples < 1) throw std::invalid_argument("OdlConfig: n_samples must be >= 1");
  if (!(pickoff_fraction >= 0.0 && pickoff_fraction <= 1.0)) {
    throw std::invalid_argument("OdlConfig: pickoff_fraction must lie in [0, 1]");
  }
  if (!(inject_fraction >= 0.0 && inject_fraction <= 1.0)) {
    throw std::invalid_argument("OdlConfig: inject_fraction must lie in [0, 1]");
  }
  if (!std::isfinite(squeeze_r)) {
    throw std::invalid_argument("OdlConfig: squeeze_r must be finite");
  }
  if (gain_mode.kind == GainKind::none) {
    throw std::invalid_argument("OdlConfig: gain_mode must be squeeze or phase-insensitive");
  }
  if (gain_mode.kind == GainKind::phase_insensitive && !(gain_mode.r >= 0.0)) {
    throw std::invalid_argument("OdlConfig: phase-insensitive gain parameter must be >= 0");
  }
}

GaussianState evolve_odl(const CouplingMatrix& j, const OdlConfig& cfg) {
  cfg.validate();
  check_couplings(j);
  const int n = j.n();
  if (n < 1) throw std::invalid_argument("evolve_odl: empty problem");

  // Workspace with one scratch mode at index n used as the delay-line
  // ancilla for every coupling.
  GaussianState state = vacuum_state(n + 1);
  for (int loop = 0; loop < cfg.n_loops; ++loop) {
    gain_step(state, cfg, n);
    for (int i = 0; i < n; ++i) {
      for (int k = cfg.ordered_pairs ? 0 : i + 1; k < n; ++k) {
        if (i == k || j(i, k) != -1.0) continue;
        kernel::reset_mode_to_vacuum(state, n);
        kernel::beam_splitter(state, i, n, 1.0 - cfg.pickoff_fraction);
        kernel::phase_shift(state, n, std::numbers::pi);
        kernel::beam_splitter(state, n, k, 1.0 - cfg.inject_fraction);
      }
    }
  }
  return remove_mode(state, n);
}

GaussianState evolve_odl_reference(const CouplingMatrix& j, const OdlConfig& cfg) {
  cfg.validate();
  check_couplings(j);
  const int n = j.n();
  if (n < 1) throw std::invalid_argument("evolve_odl: empty problem");

  GaussianState state = vacuum_state(n);
  for (int loop = 0; loop < cfg.n_loops; ++loop) {
    gain_step(state, cfg, n);
    for (int i = 0; i < n; ++i) {
      for (int k = cfg.ordered_pairs ? 0 : i + 1; k < n; ++k) {
        if (i == k || j(i, k) != -1.0) continue;
        state = append_vacuum_mode(state);
        state = beam_splitter(state, i, n, 1.0 - cfg.pickoff_fraction);
        state = phase_shift(state, n, std::numbers::pi);
        state = beam_splitter(state, n, k, 1.0 - cfg.inject_fraction);
        state = remove_mode(state, n);
      }
    }
  }
  return state;
}

OdlResult run_odl(const CouplingMatrix& j, const OdlConfig& cfg, const GroundTruth& truth,
                  int threads) {
  OdlResult result;
  result.final_state = evolve_odl(j, cfg);

  const Eigen::MatrixXd xs =
      sample_x_quadratures(result.final_state, cfg.n_samples, RandomStream(cfg.seed, 0), threads);
  result.samples.reserve(static_cast<size_t>(cfg.n_samples));
  result.energies.reserve(static_cast<size_t>(cfg.n_samples));
  for (int s = 0; s < cfg.n_samples; ++s) {
    SpinConfig spins = spins_from_x_displacement(xs.row(s).transpose());
    const double energy = ising_energy(j, spins);
    if (energy == truth.energy) ++result.success_count;
    result.energies.push_back(energy);
    result.samples.push_back(std::move(spins));
  }
  return result;
}

}  // namespace goim
