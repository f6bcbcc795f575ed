// Timing comparison between the serial reference implementations and their
// OpenMP counterparts, with an equality check on the results.

#include <chrono>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "goim/gaussian_state.hpp"
#include "goim/harness.hpp"
#include "goim/ising.hpp"

namespace {

template <class Fn>
double time_ms(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

void report(const std::string& name, double serial_ms, double parallel_ms, bool equal) {
  std::printf("%-28s serial %9.1f ms   parallel %9.1f ms   speedup %5.2fx   results %s\n",
              name.c_str(), serial_ms, parallel_ms, serial_ms / parallel_ms,
              equal ? "identical" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP benchmark"};
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = all available)");
  CLI11_PARSE(app, argc, argv);

  {
    const goim::CouplingMatrix j = goim::mobius_ladder(32);
    const goim::GroundTruth truth = goim::mobius_ground_dp(32);
    goim::MifConfig cfg;
    cfg.seed = 42;
    std::vector<goim::MifTrialRecord> serial, parallel;
    const double t_serial = time_ms([&] { serial = goim::run_mif_trials_serial(j, cfg, truth, 64); });
    const double t_parallel =
        time_ms([&] { parallel = goim::run_mif_trials(j, cfg, truth, 64, threads); });
    bool equal = serial.size() == parallel.size();
    for (size_t i = 0; equal && i < serial.size(); ++i) {
      equal = serial[i].final_disp_x == parallel[i].final_disp_x &&
              serial[i].energy == parallel[i].energy;
    }
    report("mif trials (n=32, 64x)", t_serial, t_parallel, equal);
  }

  {
    const goim::CouplingMatrix j = goim::mobius_ladder(22);
    goim::GroundTruth serial, parallel;
    const double t_serial = time_ms([&] { serial = goim::brute_force_ground_serial(j); });
    const double t_parallel = time_ms([&] { parallel = goim::brute_force_ground(j, threads); });
    report("brute force ground (n=22)", t_serial, t_parallel,
           serial.energy == parallel.energy && serial.degenerate == parallel.degenerate);
  }

  {
    goim::GaussianState state = goim::vacuum_state(64);
    for (int m = 0; m < 64; ++m) goim::kernel::squeeze(state, m, 0.4, goim::SqueezeVariant::canonical);
    for (int m = 0; m + 1 < 64; ++m) goim::kernel::beam_splitter(state, m, m + 1, 0.7);
    const goim::RandomStream rng(7, 0);
    Eigen::MatrixXd serial, parallel;
    const double t_serial =
        time_ms([&] { serial = goim::sample_x_quadratures_serial(state, 100000, rng); });
    const double t_parallel =
        time_ms([&] { parallel = goim::sample_x_quadratures(state, 100000, rng, threads); });
    report("x sampling (n=64, 1e5)", t_serial, t_parallel, serial == parallel);
  }

  return 0;
}
