#pragma once

#include <Eigen/Dense>
#include <vector>

#include "goim/random.hpp"

namespace goim {

// Symmetric spin-spin coupling matrix with a zero diagonal. The benchmark
// generators emit entries in {-1, 0}; the file loader accepts real weights.
class CouplingMatrix {
 public:
  CouplingMatrix() = default;
  explicit CouplingMatrix(Eigen::MatrixXd j);  // validates symmetry + zero diagonal

  int n() const { return static_cast<int>(j_.rows()); }
  const Eigen::MatrixXd& j() const { return j_; }
  double operator()(int i, int k) const { return j_(i, k); }

 private:
  Eigen::MatrixXd j_;
};

// Spin configuration; every entry is -1 or +1.
using SpinConfig = std::vector<int>;

struct GroundTruth {
  double energy = 0.0;
  bool degenerate = false;  // more than one optimum up to global spin flip
};

// H = -sum_{i<k} J_ik s_i s_k (each pair counted once).
double ising_energy(const CouplingMatrix& j, const SpinConfig& s);

// Cycle of n nodes plus the n/2 diameters, all couplings -1. n even, >= 4.
CouplingMatrix mobius_ladder(int n);

// Uniform-ish simple 3-regular graph via the pairing model with whole-graph
// rejection of self-loops and duplicate edges. Couplings -1 on edges.
CouplingMatrix random_cubic_graph(int n, RandomStream& rng);

inline constexpr int kBruteForceLimit = 24;

// Exact minimum by enumerating 2^{n-1} configurations (first spin pinned to
// +1 by flip symmetry). Throws size_limit_error above kBruteForceLimit.
GroundTruth brute_force_ground(const CouplingMatrix& j, int threads = 0);
GroundTruth brute_force_ground_serial(const CouplingMatrix& j);

// Exact Moebius-ladder ground energy in O(n): transfer-matrix scan over the
// rung pairs (s_i, s_{i+n/2}) with the half-twist applied at closure.
GroundTruth mobius_ground_dp(int n);

}  // namespace goim
