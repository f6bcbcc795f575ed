#pragma once

#include <Eigen/Dense>

#include "goim/random.hpp"

namespace goim {

// N-mode Gaussian optical state: 2N x 2N covariance matrix plus 2N mean
// (displacement) vector. Quadratures are interleaved (x1, p1, x2, p2, ...)
// and the vacuum variance is 1/2 per quadrature, so vacuum has cov = I/2
// and disp = 0.
struct GaussianState {
  Eigen::MatrixXd cov;
  Eigen::VectorXd disp;

  int n_modes() const { return static_cast<int>(disp.size() / 2); }
};

// Measurement axis in phase space; angle 0 is the x (in-phase) quadrature
// and pi/2 is the p quadrature.
struct QuadratureAxis {
  double angle = 0.0;
};

inline constexpr QuadratureAxis kAxisX{0.0};
inline constexpr QuadratureAxis kAxisP{1.5707963267948966};

enum class SqueezeVariant {
  canonical,  // e^r on x, e^{-r} on p (symplectic)
  isotropic,  // e^r on both quadratures
};

GaussianState vacuum_state(int n_modes);

GaussianState squeeze(const GaussianState& state, int mode, double r,
                      SqueezeVariant variant = SqueezeVariant::canonical);

// Loss channel: beam splitter of the given transmission against a vacuum
// ancilla that is then traced out. Vacuum is an exact fixed point.
GaussianState loss(const GaussianState& state, int mode, double transmission);

// Two-mode mixer acting on (x_a, p_a, x_b, p_b) with c = sqrt(t),
// s = sqrt(1-t):  q_a' = c q_a + s q_b,  q_b' = -s q_a + c q_b.
GaussianState beam_splitter(const GaussianState& state, int mode_a, int mode_b,
                            double transmission);

GaussianState phase_shift(const GaussianState& state, int mode, double angle);

// disp += delta; covariance untouched. delta has length 2N.
GaussianState displace(const GaussianState& state, const Eigen::VectorXd& delta);

// Phase-insensitive amplifier with amplitude gain cosh(r): two-mode squeezer
// against a vacuum ancilla, ancilla traced out.
GaussianState phase_insensitive_gain(const GaussianState& state, int mode, double r);

GaussianState append_vacuum_mode(const GaussianState& state);

// Partial trace over one mode.
GaussianState remove_mode(const GaussianState& state, int mode);

struct HomodyneResult {
  double outcome = 0.0;
  GaussianState conditioned;  // one mode fewer than the input
};

// Homodyne measurement of one quadrature of `mode`. The outcome is drawn
// from the marginal along the axis; the returned state is the remaining
// N-1 modes conditioned on that outcome (Schur complement update with the
// rank-one pseudo-inverse of the projected block).
HomodyneResult homodyne(const GaussianState& state, int mode, QuadratureAxis axis,
                        RandomStream& rng);

// Mean and variance of the axis quadrature of one mode, before measurement.
struct QuadratureMarginal {
  double mean = 0.0;
  double variance = 0.0;
};
QuadratureMarginal quadrature_marginal(const GaussianState& state, int mode,
                                       QuadratureAxis axis);

// Joint i.i.d. samples of the x quadratures of all modes: one row per sample,
// one column per mode. Sample k is drawn from rng.substream(k), so the result
// is independent of the thread count.
Eigen::MatrixXd sample_x_quadratures(const GaussianState& state, int count,
                                     const RandomStream& rng, int threads = 0);
// Serial reference for the sampler above; bit-identical results.
Eigen::MatrixXd sample_x_quadratures_serial(const GaussianState& state, int count,
                                            const RandomStream& rng);

// All 2N moduli of the eigenvalues of (Omega * cov), sorted ascending; each
// symplectic eigenvalue appears twice. Physical states have all >= 1/2.
Eigen::VectorXd symplectic_eigenvalues(const GaussianState& state);
bool is_physical(const GaussianState& state, double tolerance = 1e-9);

double total_mean_photon_number(const GaussianState& state);
double purity_determinant(const GaussianState& state);  // det(2 cov); 1 for pure states

// In-place kernels behind the value-returning operations above. The machine
// loops use these to avoid temporaries; the arithmetic is identical.
namespace kernel {

void squeeze(GaussianState& state, int mode, double r, SqueezeVariant variant);
void loss(GaussianState& state, int mode, double transmission);
void beam_splitter(GaussianState& state, int mode_a, int mode_b, double transmission);
void phase_shift(GaussianState& state, int mode, double angle);
void displace(GaussianState& state, const Eigen::VectorXd& delta);
void phase_insensitive_gain(GaussianState& state, int mode, double r);

// Re-initializes one mode to vacuum and decorrelates it from the rest:
// equivalent to remove_mode followed by append_vacuum_mode, without moving
// any retained entry.
void reset_mode_to_vacuum(GaussianState& state, int mode);

// Conditions the first N-1 modes on a homodyne measurement of the last mode,
// using the standard-normal draw z for the outcome. After the call the last
// mode's rows/columns are stale; the caller shrinks or resets them. Returns
// the measured value.
double condition_on_last_mode(GaussianState& state, QuadratureAxis axis, double z);

// Drops the last mode's rows/columns (no conditioning).
void drop_last_mode(GaussianState& state);

}  // namespace kernel

}  // namespace goim
