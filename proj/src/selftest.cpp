#include "goim/selftest.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "goim/gaussian_state.hpp"
#include "goim/harness.hpp"
#include "goim/ising.hpp"
#include "goim/mif.hpp"
#include "goim/odl.hpp"
#include "goim/output.hpp"
#include "goim/stats.hpp"

namespace goim {

namespace {

struct Check {
  std::string name;
  std::function<void()> run;  // throws on failure
};

void require(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what);
}

// Random walk over the operation set starting from vacuum; states must stay
// symmetric and physical throughout.
void random_sequence_physicality(int cases) {
  RandomStream rng(424242, 7);
  for (int c = 0; c < cases; ++c) {
    const int n = 1 + static_cast<int>(rng.uniform_below(4));
    GaussianState s = vacuum_state(n);
    const int steps = 5 + static_cast<int>(rng.uniform_below(16));
    for (int step = 0; step < steps; ++step) {
      const int mode = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(s.n_modes())));
      // physical operations only: the isotropic squeeze variant is excluded,
      // since it is not a physical map on entangled inputs
      switch (rng.uniform_below(6)) {
        case 0:
          kernel::squeeze(s, mode, rng.uniform() - 0.5, SqueezeVariant::canonical);
          break;
        case 1:
          kernel::loss(s, mode, rng.uniform());
          break;
        case 2: {
          if (s.n_modes() < 2) break;
          int other = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(s.n_modes())));
          if (other == mode) other = (other + 1) % s.n_modes();
          kernel::beam_splitter(s, mode, other, rng.uniform());
          break;
        }
        case 3:
          kernel::phase_shift(s, mode, 6.283185307179586 * rng.uniform());
          break;
        case 4: {
          Eigen::VectorXd delta = Eigen::VectorXd::Zero(s.disp.size());
          delta[2 * mode] = 4.0 * rng.uniform() - 2.0;
          kernel::displace(s, delta);
          break;
        }
        case 5:
          kernel::phase_insensitive_gain(s, mode, 0.6 * rng.uniform());
          break;
      }
    }
    const double asym = (s.cov - s.cov.transpose()).cwiseAbs().maxCoeff();
    require(asym <= 1e-12, "covariance asymmetry " + std::to_string(asym));
    require(is_physical(s, 1e-9), "symplectic eigenvalue below 1/2");
  }
}

void loss_equals_beam_splitter_trace() {
  RandomStream rng(99, 3);
  GaussianState base = vacuum_state(2);
  kernel::squeeze(base, 0, 0.4, SqueezeVariant::canonical);
  kernel::squeeze(base, 1, -0.3, SqueezeVariant::canonical);
  kernel::beam_splitter(base, 0, 1, 0.35);
  Eigen::VectorXd delta(4);
  delta << 1.0, -0.5, 0.25, 2.0;
  kernel::displace(base, delta);
  for (double t : {0.0, 0.3, 0.7, 0.9, 1.0}) {
    const GaussianState direct = loss(base, 0, t);
    GaussianState via_bs = append_vacuum_mode(base);
    kernel::beam_splitter(via_bs, 0, 2, t);
    const GaussianState traced = remove_mode(via_bs, 2);
    const double dc = (direct.cov - traced.cov).cwiseAbs().maxCoeff();
    const double dd = (direct.disp - traced.disp).cwiseAbs().maxCoeff();
    require(dc <= 1e-12 && dd <= 1e-12, "loss != beam splitter + trace at t=" + std::to_string(t));
  }
}

void homodyne_moments(int draws) {
  GaussianState s = vacuum_state(1);
  kernel::squeeze(s, 0, 0.2, SqueezeVariant::canonical);
  RandomStream rng(31337, 0);
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < draws; ++i) {
    GaussianState copy = s;
    const double c = kernel::condition_on_last_mode(copy, kAxisX, rng.normal());
    sum += c;
    sum2 += c * c;
  }
  const double mean = sum / draws;
  const double var = sum2 / draws - mean * mean;
  const double expected = 0.5 * std::exp(0.4);
  require(std::abs(var - expected) <= 0.05 * expected,
          "homodyne variance " + std::to_string(var) + " vs " + std::to_string(expected));
}

void sampling_moments(int draws) {
  GaussianState s = vacuum_state(2);
  kernel::squeeze(s, 0, 0.5, SqueezeVariant::canonical);
  kernel::beam_splitter(s, 0, 1, 0.6);
  const Eigen::MatrixXd xs = sample_x_quadratures(s, draws, RandomStream(5, 5));
  const Eigen::VectorXd mean = xs.colwise().mean();
  Eigen::MatrixXd centered = xs.rowwise() - mean.transpose();
  Eigen::MatrixXd cov = centered.transpose() * centered / (draws - 1);
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      const double expect = s.cov(2 * i, 2 * k);
      require(std::abs(cov(i, k) - expect) <= 0.08 * std::max(1.0, std::abs(expect)),
              "sample covariance mismatch");
    }
  }
}

void oracle_cross_validation(int max_n) {
  for (int n = 4; n <= max_n; n += 2) {
    const GroundTruth bf = brute_force_ground(mobius_ladder(n));
    const GroundTruth dp = mobius_ground_dp(n);
    require(bf.energy == dp.energy,
            "oracle mismatch at n=" + std::to_string(n) + ": " + std::to_string(bf.energy) +
                " vs " + std::to_string(dp.energy));
  }
}

void cubic_graph_regularity(int draws) {
  for (int d = 0; d < draws; ++d) {
    RandomStream rng(1000 + static_cast<std::uint64_t>(d), 0);
    const CouplingMatrix j = random_cubic_graph(16, rng);
    for (int i = 0; i < 16; ++i) {
      int degree = 0;
      for (int k = 0; k < 16; ++k) {
        if (j(i, k) != 0.0) {
          require(j(i, k) == -1.0 && i != k, "cubic graph has an invalid entry");
          ++degree;
        }
      }
      require(degree == 3, "cubic graph is not 3-regular");
    }
  }
}

void interval_checks() {
  const auto [l1, h1] = wilson_interval(300, 300, 0.95);
  require(h1 == 1.0 && std::abs(l1 - 0.9873) < 5e-4, "wilson at 300/300");
  const auto [l2, h2] = wilson_interval(0, 300, 0.95);
  require(l2 == 0.0 && h2 > 0.0, "wilson at 0/300");
  for (long k : {0L, 5L, 150L, 299L, 300L}) {
    const auto [lo, hi] = wilson_interval(k, 300, 0.95);
    const double p = static_cast<double>(k) / 300.0;
    require(lo <= p && p <= hi, "wilson does not bracket p_hat");
    const auto [clo, chi] = clopper_pearson_interval(k, 300, 0.95);
    require(clo <= p && p <= chi, "clopper-pearson does not bracket p_hat");
  }
}

void mif_no_feedback_is_exactly_zero() {
  const CouplingMatrix j = mobius_ladder(8);
  const GroundTruth truth = brute_force_ground(j);
  MifConfig cfg;
  cfg.eta = 0.0;
  cfg.n_loops = 300;
  cfg.seed = 11;
  const MifTrialRecord rec = run_mif_trial(j, cfg, truth);
  require(rec.final_disp_x.cwiseAbs().maxCoeff() == 0.0,
          "displacement moved without feedback");
  for (int spin : rec.spins) require(spin == 1, "spin readout of zero displacement");
  require(std::abs(mif_threshold_r(0.30, 0.10) - (-0.5 * std::log(0.63))) < 1e-12,
          "threshold formula");
}

void odl_uncoupled_always_succeeds() {
  const CouplingMatrix j{Eigen::MatrixXd::Zero(4, 4)};
  OdlConfig cfg;
  cfg.n_samples = 200;
  cfg.seed = 3;
  const OdlResult r = run_odl(j, cfg, GroundTruth{0.0, false});
  require(r.success_count == cfg.n_samples, "zero couplings must always be at the optimum");
  const GaussianState again = evolve_odl(j, cfg);
  require((again.cov - r.final_state.cov).cwiseAbs().maxCoeff() == 0.0,
          "delay-line evolution is not deterministic");
}

void sweep_is_thread_independent() {
  ExperimentSpec spec;
  spec.machine = MachineKind::mif;
  spec.graph = GraphSpec::parse("mobius:6", 0);
  MifConfig cfg;
  cfg.n_loops = 60;
  cfg.seed = 17;
  spec.config = cfg;
  spec.trials = 12;
  std::ostringstream a, b;
  write_sweep_csv(a, run_sweep({spec}, 1));
  write_sweep_csv(b, run_sweep({spec}, 4));
  require(a.str() == b.str(), "sweep output depends on the thread count");
}

}  // namespace

int run_selftest(bool fast, std::ostream& out) {
  const std::vector<Check> checks = {
      {"physicality of random operation sequences",
       [&] { random_sequence_physicality(fast ? 100 : 1000); }},
      {"loss equals beam splitter + trace", loss_equals_beam_splitter_trace},
      {"homodyne marginal moments", [&] { homodyne_moments(fast ? 20000 : 100000); }},
      {"joint x-quadrature sampling moments", [&] { sampling_moments(fast ? 20000 : 100000); }},
      {"ground-state oracle cross-validation",
       [&] { oracle_cross_validation(fast ? 16 : kBruteForceLimit); }},
      {"random cubic graphs are simple and 3-regular",
       [&] { cubic_graph_regularity(fast ? 100 : 1000); }},
      {"confidence intervals", interval_checks},
      {"feedback-free machine keeps zero displacement", mif_no_feedback_is_exactly_zero},
      {"uncoupled delay line always at optimum", odl_uncoupled_always_succeeds},
      {"sweep output is thread independent", sweep_is_thread_independent},
  };

  int failures = 0;
  for (const Check& check : checks) {
    try {
      check.run();
      out << "ok   " << check.name << "\n";
    } catch (const std::exception& e) {
      ++failures;
      out << "FAIL " << check.name << ": " << e.what() << "\n";
    }
  }
  out << (failures == 0 ? "selftest passed" : "selftest FAILED") << " ("
      << checks.size() - static_cast<size_t>(failures) << "/" << checks.size() << ")\n";
  return failures;
}

}  // namespace goim
