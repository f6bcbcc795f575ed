#include "goim/gaussian_state.hpp"

#include <omp.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "goim/errors.hpp"

namespace goim {

namespace {

void check_mode(const GaussianState& state, int mode, const char* op) {
  if (mode < 0 || mode >= state.n_modes()) {
    throw std::invalid_argument(std::string(op) + ": mode index " + std::to_string(mode) +
                                " out of range for " + std::to_string(state.n_modes()) +
                                "-mode state");
  }
}

void check_unit_interval(double value, const char* op, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument(std::string(op) + ": " + name + " must lie in [0, 1]");
  }
}

// cos/sin with exact values at the multiples of pi/2 the machines use, so a
// pi phase shift is an exact sign flip.
void axis_components(double angle, double& c, double& s) {
  constexpr double pi = std::numbers::pi;
  if (angle == 0.0) {
    c = 1.0;
    s = 0.0;
  } else if (angle == pi || angle == -pi) {
    c = -1.0;
    s = 0.0;
  } else if (angle == pi / 2) {
    c = 0.0;
    s = 1.0;
  } else if (angle == -pi / 2) {
    c = 0.0;
    s = -1.0;
  } else {
    c = std::cos(angle);
    s = std::sin(angle);
  }
}

// Applies the congruence M -> G M G^T and d -> G d where G mixes the two
// quadrature indices ia, ib as (a', b') = (ca*a + sa*b, cb*a + sb*b).
void mix_pair(GaussianState& state, int ia, int ib, double ca, double sa, double cb,
              double sb) {
  Eigen::RowVectorXd row_a = state.cov.row(ia);
  state.cov.row(ia) = ca * row_a + sa * state.cov.row(ib);
  state.cov.row(ib) = cb * row_a + sb * state.cov.row(ib);

  Eigen::VectorXd col_a = state.cov.col(ia);
  state.cov.col(ia) = ca * col_a + sa * state.cov.col(ib);
  state.cov.col(ib) = cb * col_a + sb * state.cov.col(ib);

  const double da = state.disp[ia];
  state.disp[ia] = ca * da + sa * state.disp[ib];
  state.disp[ib] = cb * da + sb * state.disp[ib];

  // The row-then-column passes can leave the two crossed entries one ulp
  // apart; mirror them so cov stays exactly symmetric.
  state.cov(ib, ia) = state.cov(ia, ib);
}

int resolve_threads(int threads) {
  return threads > 0 ? threads : omp_get_max_threads();
}

}  // namespace

GaussianState vacuum_state(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("vacuum_state: need at least one mode");
  GaussianState state;
  state.cov = 0.5 * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  state.disp = Eigen::VectorXd::Zero(2 * n_modes);
  return state;
}

namespace kernel {

void squeeze(GaussianState& state, int mode, double r, SqueezeVariant variant) {
  check_mode(state, mode, "squeeze");
  if (!std::isfinite(r)) throw std::invalid_argument("squeeze: r must be finite");
  const double ax = std::exp(r);
  const double ap = variant == SqueezeVariant::canonical ? std::exp(-r) : ax;
  const int ix = 2 * mode, ip = ix + 1;
  state.cov.row(ix) *= ax;
  state.cov.row(ip) *= ap;
  state.cov.col(ix) *= ax;
  state.cov.col(ip) *= ap;
  state.disp[ix] *= ax;
  state.disp[ip] *= ap;
}

void loss(GaussianState& state, int mode, double transmission) {
  check_mode(state, mode, "loss");
  check_unit_interval(transmission, "loss", "transmission");
  const double t = transmission;
  const double rt = std::sqrt(t);
  const int ix = 2 * mode, ip = ix + 1;
  const double cxx = state.cov(ix, ix);
  const double cxp = state.cov(ix, ip);
  const double cpp = state.cov(ip, ip);
  state.cov.row(ix) *= rt;
  state.cov.row(ip) *= rt;
  state.cov.col(ix) *= rt;
  state.cov.col(ip) *= rt;
  // The mode's own block uses t directly (not sqrt(t)^2) so that vacuum is an
  // exact fixed point of the channel.
  state.cov(ix, ix) = t * cxx + (1.0 - t) * 0.5;
  state.cov(ip, ip) = t * cpp + (1.0 - t) * 0.5;
  state.cov(ix, ip) = t * cxp;
  state.cov(ip, ix) = t * cxp;
  state.disp[ix] *= rt;
  state.disp[ip] *= rt;
}

void beam_splitter(GaussianState& state, int mode_a, int mode_b, double transmission) {
  check_mode(state, mode_a, "beam_splitter");
  check_mode(state, mode_b, "beam_splitter");
  if (mode_a == mode_b) {
    throw std::invalid_argument("beam_splitter: the two modes must differ");
  }
  check_unit_interval(transmission, "beam_splitter", "transmission");
  const double c = std::sqrt(transmission);
  const double s = std::sqrt(1.0 - transmission);
  mix_pair(state, 2 * mode_a, 2 * mode_b, c, s, -s, c);
  mix_pair(state, 2 * mode_a + 1, 2 * mode_b + 1, c, s, -s, c);
}

void phase_shift(GaussianState& state, int mode, double angle) {
  check_mode(state, mode, "phase_shift");
  double c, s;
  axis_components(angle, c, s);
  mix_pair(state, 2 * mode, 2 * mode + 1, c, -s, s, c);
}

void displace(GaussianState& state, const Eigen::VectorXd& delta) {
  if (delta.size() != state.disp.size()) {
    throw std::invalid_argument("displace: delta must have length 2N");
  }
  if (!delta.allFinite()) {
    throw std::invalid_argument("displace: delta entries must be finite");
  }
  state.disp += delta;
}

void phase_insensitive_gain(GaussianState& state, int mode, double r) {
  check_mode(state, mode, "phase_insensitive_gain");
  if (!(r >= 0.0)) {
    throw std::invalid_argument("phase_insensitive_gain: r must be non-negative");
  }
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  const int ix = 2 * mode, ip = ix + 1;
  const double cxx = state.cov(ix, ix);
  const double cxp = state.cov(ix, ip);
  const double cpp = state.cov(ip, ip);
  state.cov.row(ix) *= ch;
  state.cov.row(ip) *= ch;
  state.cov.col(ix) *= ch;
  state.cov.col(ip) *= ch;
  state.cov(ix, ix) = ch * ch * cxx + sh * sh * 0.5;
  state.cov(ip, ip) = ch * ch * cpp + sh * sh * 0.5;
  state.cov(ix, ip) = ch * ch * cxp;
  state.cov(ip, ix) = ch * ch * cxp;
  state.disp[ix] *= ch;
  state.disp[ip] *= ch;
}

void reset_mode_to_vacuum(GaussianState& state, int mode) {
  check_mode(state, mode, "reset_mode_to_vacuum");
  const int ix = 2 * mode, ip = ix + 1;
  state.cov.row(ix).setZero();
  state.cov.row(ip).setZero();
  state.cov.col(ix).setZero();
  state.cov.col(ip).setZero();
  state.cov(ix, ix) = 0.5;
  state.cov(ip, ip) = 0.5;
  state.disp[ix] = 0.0;
  state.disp[ip] = 0.0;
}

double condition_on_last_mode(GaussianState& state, QuadratureAxis axis, double z) {
  const int n = state.n_modes();
  if (n < 1) throw std::invalid_argument("homodyne: state has no modes");
  const int ix = 2 * (n - 1), ip = ix + 1;
  const int kept = ix;  // number of retained quadratures

  double ux, up;
  axis_components(axis.angle, ux, up);

  const double mean = ux * state.disp[ix] + up * state.disp[ip];
  const double variance = ux * ux * state.cov(ix, ix) + 2.0 * ux * up * state.cov(ix, ip) +
                          up * up * state.cov(ip, ip);
  const double outcome = mean + std::sqrt(std::max(variance, 0.0)) * z;

  // (P C P)^+ for the rank-one projector P onto the axis is P / (u^T C u);
  // below the cutoff the pseudo-inverse is the zero matrix and nothing is
  // conditioned.
  if (variance > 1e-15 && kept > 0) {
    Eigen::VectorXd g =
        ux * state.cov.col(ix).head(kept) + up * state.cov.col(ip).head(kept);
    Eigen::VectorXd w = g * std::sqrt(1.0 / variance);
    state.cov.topLeftCorner(kept, kept).noalias() -= w * w.transpose();
    state.disp.head(kept) += g * ((outcome - mean) / variance);
  }
  return outcome;
}

void drop_last_mode(GaussianState& state) {
  const int n = state.n_modes();
  if (n < 1) throw std::invalid_argument("drop_last_mode: state has no modes");
  const int kept = 2 * (n - 1);
  state.cov.conservativeResize(kept, kept);
  state.disp.conservativeResize(kept);
}

}  // namespace kernel

GaussianState squeeze(const GaussianState& state, int mode, double r,
                      SqueezeVariant variant) {
  GaussianState out = state;
  kernel::squeeze(out, mode, r, variant);
  return out;
}

GaussianState loss(const GaussianState& state, int mode, double transmission) {
  GaussianState out = state;
  kernel::loss(out, mode, transmission);
  return out;
}

GaussianState beam_splitter(const GaussianState& state, int mode_a, int mode_b,
                            double transmission) {
  GaussianState out = state;
  kernel::beam_splitter(out, mode_a, mode_b, transmission);
  return out;
}

GaussianState phase_shift(const GaussianState& state, int mode, double angle) {
  GaussianState out = state;
  kernel::phase_shift(out, mode, angle);
  return out;
}

GaussianState displace(const GaussianState& state, const Eigen::VectorXd& delta) {
  GaussianState out = state;
  kernel::displace(out, delta);
  return out;
}

GaussianState phase_insensitive_gain(const GaussianState& state, int mode, double r) {
  GaussianState out = state;
  kernel::phase_insensitive_gain(out, mode, r);
  return out;
}

GaussianState append_vacuum_mode(const GaussianState& state) {
  const int old = static_cast<int>(state.disp.size());
  GaussianState out;
  out.cov = Eigen::MatrixXd::Zero(old + 2, old + 2);
  out.cov.topLeftCorner(old, old) = state.cov;
  out.cov(old, old) = 0.5;
  out.cov(old + 1, old + 1) = 0.5;
  out.disp = Eigen::VectorXd::Zero(old + 2);
  out.disp.head(old) = state.disp;
  return out;
}

GaussianState remove_mode(const GaussianState& state, int mode) {
  check_mode(state, mode, "remove_mode");
  if (state.n_modes() < 2) {
    throw std::invalid_argument("remove_mode: cannot remove the last remaining mode");
  }
  const int n = state.n_modes();
  std::vector<int> keep;
  keep.reserve(2 * (n - 1));
  for (int m = 0; m < n; ++m) {
    if (m == mode) continue;
    keep.push_back(2 * m);
    keep.push_back(2 * m + 1);
  }
  GaussianState out;
  out.cov = state.cov(keep, keep);
  out.disp = state.disp(keep);
  return out;
}

QuadratureMarginal quadrature_marginal(const GaussianState& state, int mode,
                                       QuadratureAxis axis) {
  check_mode(state, mode, "quadrature_marginal");
  double ux, up;
  axis_components(axis.angle, ux, up);
  const int ix = 2 * mode, ip = ix + 1;
  QuadratureMarginal m;
  m.mean = ux * state.disp[ix] + up * state.disp[ip];
  m.variance = ux * ux * state.cov(ix, ix) + 2.0 * ux * up * state.cov(ix, ip) +
               up * up * state.cov(ip, ip);
  return m;
}

HomodyneResult homodyne(const GaussianState& state, int mode, QuadratureAxis axis,
                        RandomStream& rng) {
  const int n = state.n_modes();
  if (n < 1) throw std::invalid_argument("homodyne: state has no modes");
  check_mode(state, mode, "homodyne");

  GaussianState work;
  if (mode == n - 1) {
    work = state;
  } else {
    // Permute the measured mode to the last slot; everything else keeps its
    // relative order.
    std::vector<int> order;
    order.reserve(2 * n);
    for (int m = 0; m < n; ++m) {
      if (m == mode) continue;
      order.push_back(2 * m);
      order.push_back(2 * m + 1);
    }
    order.push_back(2 * mode);
    order.push_back(2 * mode + 1);
    work.cov = state.cov(order, order);
    work.disp = state.disp(order);
  }

  HomodyneResult result;
  result.outcome = kernel::condition_on_last_mode(work, axis, rng.normal());
  kernel::drop_last_mode(work);
  result.conditioned = std::move(work);
  return result;
}

namespace {

// Lower factor L with L L^T = sigma. Tries a Cholesky factorization first,
// then escalating diagonal jitter, and finally a PSD eigenvalue square root
// (conditioning can leave the matrix indefinite at machine precision even
// though the underlying state is physical).
Eigen::MatrixXd factor_covariance(const Eigen::MatrixXd& sigma) {
  const int n = static_cast<int>(sigma.rows());
  if (n == 0) return sigma;
  for (double jitter : {0.0, 1e-12, 1e-11, 1e-10, 1e-9, 1e-8, 1e-7, 1e-6}) {
    Eigen::MatrixXd trial = sigma;
    trial.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(trial);
    if (llt.info() == Eigen::Success) return llt.matrixL();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
  if (es.info() != Eigen::Success) {
    throw numerical_error("sample_x_quadratures: eigendecomposition failed");
  }
  const double lmax = std::max(es.eigenvalues().maxCoeff(), 1.0);
  if (es.eigenvalues().minCoeff() < -1e-8 * lmax) {
    throw numerical_error(
        "sample_x_quadratures: x-quadrature covariance is not positive semidefinite");
  }
  return es.eigenvectors() *
         es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

void x_marginal(const GaussianState& state, Eigen::VectorXd& mu, Eigen::MatrixXd& sigma) {
  const int n = state.n_modes();
  mu.resize(n);
  sigma.resize(n, n);
  for (int i = 0; i < n; ++i) {
    mu[i] = state.disp[2 * i];
    for (int k = 0; k < n; ++k) sigma(i, k) = state.cov(2 * i, 2 * k);
  }
}

Eigen::MatrixXd sample_x_impl(const GaussianState& state, int count,
                              const RandomStream& rng, int threads, bool serial) {
  if (count < 1) throw std::invalid_argument("sample_x_quadratures: count must be >= 1");
  const int n = state.n_modes();
  Eigen::VectorXd mu;
  Eigen::MatrixXd sigma;
  x_marginal(state, mu, sigma);
  const Eigen::MatrixXd L = factor_covariance(sigma);

  Eigen::MatrixXd out(count, n);
  if (serial) {
    for (int k = 0; k < count; ++k) {
      RandomStream s = rng.substream(static_cast<std::uint64_t>(k));
      Eigen::VectorXd z(n);
      for (int i = 0; i < n; ++i) z[i] = s.normal();
      out.row(k) = (mu + L * z).transpose();
    }
  } else {
#pragma omp parallel for schedule(static) num_threads(resolve_threads(threads))
    for (int k = 0; k < count; ++k) {
      RandomStream s = rng.substream(static_cast<std::uint64_t>(k));
      Eigen::VectorXd z(n);
      for (int i = 0; i < n; ++i) z[i] = s.normal();
      out.row(k) = (mu + L * z).transpose();
    }
  }
  return out;
}

}  // namespace

Eigen::MatrixXd sample_x_quadratures(const GaussianState& state, int count,
                                     const RandomStream& rng, int threads) {
  return sample_x_impl(state, count, rng, threads, false);
}

Eigen::MatrixXd sample_x_quadratures_serial(const GaussianState& state, int count,
                                            const RandomStream& rng) {
  return sample_x_impl(state, count, rng, 1, true);
}

Eigen::VectorXd symplectic_eigenvalues(const GaussianState& state) {
  // |eig(Omega M)| computed as the singular values of S Omega S where
  // S = sqrt(M): S Omega S is similar to Omega M and skew-symmetric, and
  // both the symmetric eigendecomposition and the SVD always converge
  // (the nonsymmetric Schur iteration can stall on the purely imaginary
  // spectrum of Omega M). Negative directions of a hand-built invalid M
  // are clamped to zero, which correctly reports such states unphysical.
  const int dim = static_cast<int>(state.disp.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(state.cov);
  if (es.info() != Eigen::Success) {
    throw numerical_error("symplectic_eigenvalues: eigendecomposition failed");
  }
  const Eigen::MatrixXd sqrt_m = es.eigenvectors() *
                                 es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                                 es.eigenvectors().transpose();
  Eigen::MatrixXd omega_sqrt(dim, dim);  // Omega * sqrt_m
  for (int m = 0; m < dim / 2; ++m) {
    omega_sqrt.row(2 * m) = sqrt_m.row(2 * m + 1);
    omega_sqrt.row(2 * m + 1) = -sqrt_m.row(2 * m);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sqrt_m * omega_sqrt);
  Eigen::VectorXd moduli = svd.singularValues();
  std::sort(moduli.begin(), moduli.end());
  return moduli;
}

bool is_physical(const GaussianState& state, double tolerance) {
  if (state.n_modes() == 0) return true;
  return symplectic_eigenvalues(state).minCoeff() >= 0.5 - tolerance;
}

double total_mean_photon_number(const GaussianState& state) {
  double total = 0.0;
  for (int m = 0; m < state.n_modes(); ++m) {
    const int ix = 2 * m, ip = ix + 1;
    total += 0.5 * (state.cov(ix, ix) + state.cov(ip, ip) + state.disp[ix] * state.disp[ix] +
                    state.disp[ip] * state.disp[ip]) -
             0.5;
  }
  return total;
}

double purity_determinant(const GaussianState& state) {
  return (2.0 * state.cov).determinant();
}

}  // namespace goim
