#include "goim/mif.hpp"

#include <cmath>
#include <stdexcept>

namespace goim {

void MifConfig::validate() const {
  if (n_loops < 1) throw std::invalid_argument("MifConfig: n_loops must be >= 1");
  if (!(loss_fraction >= 0.0 && loss_fraction <= 1.0)) {
    throw std::invalid_argument("MifConfig: loss_fraction must lie in [0, 1]");
  }
  if (!(tap_fraction >= 0.0 && tap_fraction <= 1.0)) {
    throw std::invalid_argument("MifConfig: tap_fraction must lie in [0, 1]");
  }
  if (!(eta >= 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("MifConfig: eta must be >= 0");
  }
  if (!std::isfinite(squeeze_r)) {
    throw std::invalid_argument("MifConfig: squeeze_r must be finite");
  }
  if (saturation_cap && !(*saturation_cap > 0.0)) {
    throw std::invalid_argument("MifConfig: saturation_cap must be positive");
  }
  if (gain_mode.kind == GainKind::phase_insensitive && !(gain_mode.r >= 0.0)) {
    throw std::invalid_argument("MifConfig: phase-insensitive gain parameter must be >= 0");
  }
}

double mif_threshold_r(double loss_fraction, double tap_fraction) {
  if (!(loss_fraction >= 0.0 && loss_fraction < 1.0) ||
      !(tap_fraction >= 0.0 && tap_fraction < 1.0)) {
    throw std::invalid_argument("mif_threshold_r: fractions must lie in [0, 1)");
  }
  const double transmission = (1.0 - loss_fraction) * (1.0 - tap_fraction);
  if (!(transmission > 0.0)) {
    throw std::invalid_argument("mif_threshold_r: total transmission must be positive");
  }
  return -0.5 * std::log(transmission);
}

SpinConfig spins_from_x_displacement(const Eigen::VectorXd& disp_x) {
  SpinConfig spins(static_cast<size_t>(disp_x.size()));
  for (Eigen::Index i = 0; i < disp_x.size(); ++i) {
    spins[static_cast<size_t>(i)] = disp_x[i] < 0.0 ? -1 : 1;  // sign(0) = +1
  }
  return spins;
}

MifTrialRecord run_mif_trial(const CouplingMatrix& j, const MifConfig& cfg,
                             const GroundTruth& truth, RandomStream rng) {
  return detail::run_mif_trial_impl(j, cfg, truth, rng);
}

MifTrialRecord run_mif_trial(const CouplingMatrix& j, const MifConfig& cfg,
                             const GroundTruth& truth) {
  RandomStream rng(cfg.seed, 0);
  return detail::run_mif_trial_impl(j, cfg, truth, rng);
}

}  // namespace goim
