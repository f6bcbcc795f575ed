#include "goim/ising.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "goim/errors.hpp"

namespace goim {

namespace {

struct Edge {
  int i;
  int k;
  double w;
  std::uint64_t pair_mask;  // bits i and k set
};

std::vector<Edge> edge_list(const CouplingMatrix& j) {
  std::vector<Edge> edges;
  const int n = j.n();
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      if (j(i, k) != 0.0) {
        edges.push_back({i, k, j(i, k), (1ULL << i) | (1ULL << k)});
      }
    }
  }
  return edges;
}

// Energy of the configuration encoded as a bitmask (bit set = spin -1).
double config_energy(const std::vector<Edge>& edges, std::uint64_t config) {
  double energy = 0.0;
  for (const Edge& e : edges) {
    // s_i * s_k = +1 when the two bits agree
    if (std::popcount(config & e.pair_mask) & 1) {
      energy += e.w;
    } else {
      energy -= e.w;
    }
  }
  return energy;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  constexpr std::uint64_t cap = std::uint64_t(1) << 62;
  return std::min(cap, a + std::min(b, cap));
}

int resolve_threads(int threads) {
  return threads > 0 ? threads : omp_get_max_threads();
}

}  // namespace

CouplingMatrix::CouplingMatrix(Eigen::MatrixXd j) : j_(std::move(j)) {
  if (j_.rows() != j_.cols()) {
    throw std::invalid_argument("CouplingMatrix: matrix must be square");
  }
  for (int i = 0; i < j_.rows(); ++i) {
    if (j_(i, i) != 0.0) {
      throw std::invalid_argument("CouplingMatrix: diagonal must be zero");
    }
    for (int k = i + 1; k < j_.cols(); ++k) {
      if (j_(i, k) != j_(k, i)) {
        throw std::invalid_argument("CouplingMatrix: matrix must be symmetric");
      }
      if (!std::isfinite(j_(i, k))) {
        throw std::invalid_argument("CouplingMatrix: entries must be finite");
      }
    }
  }
}

double ising_energy(const CouplingMatrix& j, const SpinConfig& s) {
  const int n = j.n();
  if (static_cast<int>(s.size()) != n) {
    throw std::invalid_argument("ising_energy: spin count does not match coupling matrix");
  }
  double energy = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      energy -= j(i, k) * s[i] * s[k];
    }
  }
  return energy;
}

CouplingMatrix mobius_ladder(int n) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("mobius_ladder: n must be even and >= 4");
  }
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  auto connect = [&](int a, int b) {
    j(a, b) = -1.0;
    j(b, a) = -1.0;
  };
  for (int i = 0; i < n; ++i) connect(i, (i + 1) % n);
  for (int i = 0; i < n / 2; ++i) connect(i, i + n / 2);
  return CouplingMatrix(std::move(j));
}

CouplingMatrix random_cubic_graph(int n, RandomStream& rng) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("random_cubic_graph: n must be even and >= 4");
  }
  std::vector<int> stubs(3 * n);
  for (int v = 0; v < n; ++v) {
    stubs[3 * v] = stubs[3 * v + 1] = stubs[3 * v + 2] = v;
  }
  for (int attempt = 0; attempt < 100000; ++attempt) {
    // Fisher-Yates on the stub list
    for (int i = static_cast<int>(stubs.size()) - 1; i > 0; --i) {
      const int k = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(i) + 1));
      std::swap(stubs[i], stubs[k]);
    }
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    bool simple = true;
    for (size_t t = 0; t + 1 < stubs.size() && simple; t += 2) {
      const int a = stubs[t], b = stubs[t + 1];
      if (a == b || j(a, b) != 0.0) {
        simple = false;
      } else {
        j(a, b) = -1.0;
        j(b, a) = -1.0;
      }
    }
    if (simple) return CouplingMatrix(std::move(j));
  }
  throw numerical_error("random_cubic_graph: pairing model failed to produce a simple graph");
}

GroundTruth brute_force_ground_serial(const CouplingMatrix& j) {
  const int n = j.n();
  if (n < 1) throw std::invalid_argument("brute_force_ground: empty problem");
  if (n > kBruteForceLimit) {
    throw size_limit_error(
        "brute_force_ground: enumeration is limited to " + std::to_string(kBruteForceLimit) +
        " spins; use mobius_ground_dp for larger Moebius ladders");
  }
  const std::vector<Edge> edges = edge_list(j);
  const std::uint64_t total = std::uint64_t(1) << (n - 1);
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    // spin 0 pinned to +1; bit b of (mask << 1) encodes spin b
    const double e = config_energy(edges, mask << 1);
    if (e < best) {
      best = e;
      count = 1;
    } else if (e == best) {
      ++count;
    }
  }
  return {best, count > 1};
}

GroundTruth brute_force_ground(const CouplingMatrix& j, int threads) {
  const int n = j.n();
  if (n < 1) throw std::invalid_argument("brute_force_ground: empty problem");
  if (n > kBruteForceLimit) {
    throw size_limit_error(
        "brute_force_ground: enumeration is limited to " + std::to_string(kBruteForceLimit) +
        " spins; use mobius_ground_dp for larger Moebius ladders");
  }
  const std::vector<Edge> edges = edge_list(j);
  const std::int64_t total = std::int64_t(1) << (n - 1);
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t count = 0;
#pragma omp parallel num_threads(resolve_threads(threads))
  {
    double local_best = std::numeric_limits<double>::infinity();
    std::uint64_t local_count = 0;
#pragma omp for schedule(static) nowait
    for (std::int64_t mask = 0; mask < total; ++mask) {
      const double e = config_energy(edges, static_cast<std::uint64_t>(mask) << 1);
      if (e < local_best) {
        local_best = e;
        local_count = 1;
      } else if (e == local_best) {
        ++local_count;
      }
    }
#pragma omp critical
    {
      if (local_best < best) {
        best = local_best;
        count = local_count;
      } else if (local_best == best) {
        count = saturating_add(count, local_count);
      }
    }
  }
  return {best, count > 1};
}

GroundTruth mobius_ground_dp(int n) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("mobius_ground_dp: n must be even and >= 4");
  }
  const int half = n / 2;
  auto spin_a = [](int st) { return (st & 1) ? -1 : 1; };
  auto spin_b = [](int st) { return (st & 2) ? -1 : 1; };
  // All couplings are -1, so each edge contributes +s*s' to the energy.
  auto rung = [&](int st) { return spin_a(st) * spin_b(st); };
  auto step = [&](int from, int to) {
    return spin_a(from) * spin_a(to) + spin_b(from) * spin_b(to);
  };
  auto twist = [&](int last, int first) {
    return spin_a(last) * spin_b(first) + spin_b(last) * spin_a(first);
  };

  int best = std::numeric_limits<int>::max();
  std::uint64_t best_count = 0;
  for (int first = 0; first < 4; ++first) {
    std::array<int, 4> cost;
    std::array<std::uint64_t, 4> paths;
    cost.fill(std::numeric_limits<int>::max());
    paths.fill(0);
    cost[first] = rung(first);
    paths[first] = 1;
    for (int col = 1; col < half; ++col) {
      std::array<int, 4> next_cost;
      std::array<std::uint64_t, 4> next_paths;
      next_cost.fill(std::numeric_limits<int>::max());
      next_paths.fill(0);
      for (int to = 0; to < 4; ++to) {
        for (int from = 0; from < 4; ++from) {
          if (paths[from] == 0) continue;
          const int c = cost[from] + step(from, to) + rung(to);
          if (c < next_cost[to]) {
            next_cost[to] = c;
            next_paths[to] = paths[from];
          } else if (c == next_cost[to]) {
            next_paths[to] = saturating_add(next_paths[to], paths[from]);
          }
        }
      }
      cost = next_cost;
      paths = next_paths;
    }
    for (int last = 0; last < 4; ++last) {
      if (paths[last] == 0) continue;
      const int total = cost[last] + twist(last, first);
      if (total < best) {
        best = total;
        best_count = paths[last];
      } else if (total == best) {
        best_count = saturating_add(best_count, paths[last]);
      }
    }
  }
  // best_count enumerates all 2^n configurations, which come in global-flip
  // pairs; more than one pair means a degenerate ground level.
  return {static_cast<double>(best), best_count > 2};
}

}  // namespace goim
