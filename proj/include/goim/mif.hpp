#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "goim/gaussian_state.hpp"
#include "goim/ising.hpp"
#include "goim/random.hpp"

namespace goim {

enum class GainKind { squeeze, none, phase_insensitive };

struct GainMode {
  GainKind kind = GainKind::squeeze;
  double r = 0.0;  // squeezing parameter of the phase-insensitive amplifier
};

// Measurement-and-injection-feedback machine parameters. Defaults follow the
// reference operating point: 300 loops, squeezing 0.2, 30% loss, 10% tap,
// feedback strength 0.001.
struct MifConfig {
  int n_loops = 300;
  double squeeze_r = 0.2;
  double loss_fraction = 0.30;
  double tap_fraction = 0.10;
  double eta = 0.001;
  std::optional<double> saturation_cap;  // per-element clamp on each loop's feedback
  SqueezeVariant squeeze_variant = SqueezeVariant::canonical;
  GainMode gain_mode{GainKind::squeeze, 0.0};
  // When true, each tap measurement also conditions the retained pulse on the
  // observed value (Bayesian update). Default off: the tap is modelled as a
  // lossy pick-off whose marginal is read out, which keeps the displacement
  // dynamics driven purely by the feedback term.
  bool tap_conditioning = false;
  std::uint64_t seed = 0;

  void validate() const;
};

struct MifTrialRecord {
  SpinConfig spins;
  double energy = 0.0;
  bool success = false;
  Eigen::VectorXd final_disp_x;
};

// Squeezing parameter at which the round-trip amplitude gain
// e^r * sqrt((1-loss)(1-tap)) reaches 1.
double mif_threshold_r(double loss_fraction, double tap_fraction);

// Spin readout: sign of each x displacement, with sign(0) = +1.
SpinConfig spins_from_x_displacement(const Eigen::VectorXd& disp_x);

MifTrialRecord run_mif_trial(const CouplingMatrix& j, const MifConfig& cfg,
                             const GroundTruth& truth, RandomStream rng);
// Uses RandomStream(cfg.seed, 0).
MifTrialRecord run_mif_trial(const CouplingMatrix& j, const MifConfig& cfg,
                             const GroundTruth& truth);

namespace detail {

// One tap: equivalent to appending a vacuum ancilla, mixing it with the mode
// on a beam splitter of transmission 1 - tap_fraction (ancilla picking up
// +sqrt(tap) of the signal), reading the ancilla's x marginal, and tracing
// the ancilla out. Mutates the state by the corresponding loss channel.
template <class Rng>
double tap_readout_x(GaussianState& state, int mode, double tap_fraction, Rng& rng) {
  const int ix = 2 * mode;
  const double mean = std::sqrt(tap_fraction) * state.disp[ix];
  const double variance =
      tap_fraction * state.cov(ix, ix) + (1.0 - tap_fraction) * 0.5;
  const double outcome = mean + std::sqrt(std::max(variance, 0.0)) * rng.normal();
  kernel::loss(state, mode, 1.0 - tap_fraction);
  return outcome;
}

// Same tap, but the retained mode is conditioned on the measured value.
template <class Rng>
double tap_readout_x_conditioning(GaussianState& state, int mode, double tap_fraction,
                                  Rng& rng) {
  GaussianState work = append_vacuum_mode(state);
  const int ancilla = work.n_modes() - 1;
  kernel::beam_splitter(work, ancilla, mode, 1.0 - tap_fraction);
  const double outcome = kernel::condition_on_last_mode(work, kAxisX, rng.normal());
  kernel::drop_last_mode(work);
  state = std::move(work);
  return outcome;
}

struct NoLoopObserver {
  void operator()(int, const GaussianState&) const {}
};

template <class Rng, class LoopObserver = NoLoopObserver>
MifTrialRecord run_mif_trial_impl(const CouplingMatrix& j, const MifConfig& cfg,
                                  const GroundTruth& truth, Rng& rng,
                                  LoopObserver&& observe = LoopObserver{}) {
  cfg.validate();
  const int n = j.n();
  if (n < 1) throw std::invalid_argument("run_mif_trial: empty problem");

  GaussianState state = vacuum_state(n);
  Eigen::VectorXd outcomes(n);
  Eigen::VectorXd delta = Eigen::VectorXd::Zero(2 * n);

  for (int loop = 1; loop <= cfg.n_loops; ++loop) {
    switch (cfg.gain_mode.kind) {
      case GainKind::squeeze:
        for (int m = 0; m < n; ++m) {
          kernel::squeeze(state, m, cfg.squeeze_r, cfg.squeeze_variant);
        }
        break;
      case GainKind::none:
        break;
      case GainKind::phase_insensitive:
        for (int m = 0; m < n; ++m) {
          kernel::phase_insensitive_gain(state, m, cfg.gain_mode.r);
        }
        break;
    }
    for (int m = 0; m < n; ++m) {
      kernel::loss(state, m, 1.0 - cfg.loss_fraction);
    }
    for (int m = 0; m < n; ++m) {
      outcomes[m] = cfg.tap_conditioning
                        ? tap_readout_x_conditioning(state, m, cfg.tap_fraction, rng)
                        : tap_readout_x(state, m, cfg.tap_fraction, rng);
    }
    // d -> d + loop * eta * J c on the x quadratures (1-based loop index)
    Eigen::VectorXd feedback = (static_cast<double>(loop) * cfg.eta) * (j.j() * outcomes);
    if (cfg.saturation_cap) {
      const double cap = *cfg.saturation_cap;
      feedback = feedback.cwiseMax(-cap).cwiseMin(cap);
    }
    for (int m = 0; m < n; ++m) delta[2 * m] = feedback[m];
    kernel::displace(state, delta);
    observe(loop, state);
  }

  MifTrialRecord rec;
  rec.final_disp_x.resize(n);
  for (int m = 0; m < n; ++m) rec.final_disp_x[m] = state.disp[2 * m];
  rec.spins = spins_from_x_displacement(rec.final_disp_x);
  rec.energy = ising_energy(j, rec.spins);
  rec.success = rec.energy == truth.energy;
  return rec;
}

}  // namespace detail

}  // namespace goim
