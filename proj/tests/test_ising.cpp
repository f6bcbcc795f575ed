#include <doctest.h>

#include <sstream>

#include "goim/errors.hpp"
#include "goim/graph_io.hpp"
#include "goim/ising.hpp"
#include "goim/random.hpp"

using namespace goim;

TEST_SUITE("ising") {

TEST_CASE("coupling matrix validation") {
  Eigen::MatrixXd ok = Eigen::MatrixXd::Zero(3, 3);
  ok(0, 1) = ok(1, 0) = -1.0;
  CHECK_NOTHROW(CouplingMatrix{ok});

  Eigen::MatrixXd diag = ok;
  diag(1, 1) = 2.0;
  CHECK_THROWS_AS(CouplingMatrix{diag}, std::invalid_argument);

  Eigen::MatrixXd asym = ok;
  asym(0, 2) = 1.0;
  CHECK_THROWS_AS(CouplingMatrix{asym}, std::invalid_argument);
}

TEST_CASE("ising energy") {
  const CouplingMatrix zero{Eigen::MatrixXd::Zero(4, 4)};
  CHECK(ising_energy(zero, {1, -1, 1, -1}) == 0.0);
  CHECK(ising_energy(zero, {1, 1, 1, 1}) == 0.0);

  // global flip symmetry on random instances
  RandomStream rng(6, 0);
  for (int c = 0; c < 20; ++c) {
    const int n = 3 + static_cast<int>(rng.uniform_below(6));
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    SpinConfig s(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      s[static_cast<size_t>(i)] = rng.uniform() < 0.5 ? -1 : 1;
      for (int k = i + 1; k < n; ++k) {
        j(i, k) = j(k, i) = std::floor(3.0 * rng.uniform()) - 1.0;
      }
    }
    const CouplingMatrix jm{j};
    SpinConfig flipped = s;
    for (int& v : flipped) v = -v;
    CHECK(ising_energy(jm, s) == ising_energy(jm, flipped));
  }

  // Moebius ladder with n=4 is K4; the balanced split reaches the minimum
  const CouplingMatrix k4 = mobius_ladder(4);
  CHECK(ising_energy(k4, {1, 1, -1, -1}) == -2.0);

  CHECK_THROWS_AS(ising_energy(k4, {1, 1, 1}), std::invalid_argument);
}

TEST_CASE("mobius ladder structure") {
  const CouplingMatrix m8 = mobius_ladder(8);
  int edges = 0;
  for (int i = 0; i < 8; ++i) {
    int degree = 0;
    for (int k = 0; k < 8; ++k) {
      if (m8(i, k) != 0.0) {
        CHECK(m8(i, k) == -1.0);
        ++degree;
        if (i < k) ++edges;
      }
    }
    CHECK(degree == 3);
  }
  CHECK(edges == 12);

  const CouplingMatrix m4 = mobius_ladder(4);
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) {
      CHECK(m4(i, k) == (i == k ? 0.0 : -1.0));
    }
  }

  const CouplingMatrix m6 = mobius_ladder(6);
  CHECK(m6(0, 1) == -1.0);
  CHECK(m6(0, 5) == -1.0);
  CHECK(m6(0, 3) == -1.0);
  CHECK(m6(0, 2) == 0.0);
  CHECK(m6(0, 4) == 0.0);

  CHECK_THROWS_AS(mobius_ladder(5), std::invalid_argument);
  CHECK_THROWS_AS(mobius_ladder(2), std::invalid_argument);
}

TEST_CASE("random cubic graphs are simple and 3-regular") {
  for (int draw = 0; draw < 1000; ++draw) {
    RandomStream rng(static_cast<std::uint64_t>(draw), 0);
    const CouplingMatrix j = random_cubic_graph(16, rng);
    for (int i = 0; i < 16; ++i) {
      CHECK(j(i, i) == 0.0);
      int degree = 0;
      for (int k = 0; k < 16; ++k) {
        if (j(i, k) != 0.0) {
          CHECK(j(i, k) == -1.0);
          ++degree;
        }
      }
      CHECK(degree == 3);
    }
  }

  // determinism for a fixed seed
  RandomStream a(42, 0), b(42, 0);
  CHECK(random_cubic_graph(16, a).j() == random_cubic_graph(16, b).j());

  // the only cubic graph on 4 vertices is K4
  RandomStream rng(7, 0);
  const CouplingMatrix k4 = random_cubic_graph(4, rng);
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) {
      CHECK(k4(i, k) == (i == k ? 0.0 : -1.0));
    }
  }

  RandomStream odd(1, 0);
  CHECK_THROWS_AS(random_cubic_graph(7, odd), std::invalid_argument);
}

TEST_CASE("brute force ground states of two-spin systems") {
  Eigen::MatrixXd ferro = Eigen::MatrixXd::Zero(2, 2);
  ferro(0, 1) = ferro(1, 0) = 1.0;
  const GroundTruth f = brute_force_ground(CouplingMatrix{ferro});
  CHECK(f.energy == -1.0);
  CHECK_FALSE(f.degenerate);

  Eigen::MatrixXd anti = Eigen::MatrixXd::Zero(2, 2);
  anti(0, 1) = anti(1, 0) = -1.0;
  const GroundTruth a = brute_force_ground(CouplingMatrix{anti});
  CHECK(a.energy == -1.0);
  CHECK_FALSE(a.degenerate);
}

TEST_CASE("brute force matches across serial and parallel paths") {
  for (int n : {4, 8, 12, 16}) {
    const CouplingMatrix j = mobius_ladder(n);
    const GroundTruth serial = brute_force_ground_serial(j);
    const GroundTruth parallel = brute_force_ground(j, 4);
    CHECK(serial.energy == parallel.energy);
    CHECK(serial.degenerate == parallel.degenerate);
  }
}

TEST_CASE("brute force rejects oversized problems") {
  CHECK_THROWS_AS(brute_force_ground(mobius_ladder(26)), size_limit_error);
}

TEST_CASE("transfer-matrix oracle agrees with enumeration") {
  CHECK(mobius_ground_dp(4).energy == -2.0);
  CHECK(brute_force_ground(mobius_ladder(4)).energy == -2.0);
  for (int n = 4; n <= 20; n += 2) {
    const GroundTruth dp = mobius_ground_dp(n);
    const GroundTruth bf = brute_force_ground(mobius_ladder(n));
    CHECK(dp.energy == bf.energy);
    CHECK(dp.degenerate == bf.degenerate);
  }
  CHECK_THROWS_AS(mobius_ground_dp(7), std::invalid_argument);
}

TEST_CASE("cubic ground energies stay within the edge-count bounds") {
  for (int d = 0; d < 10; ++d) {
    RandomStream rng(100 + static_cast<std::uint64_t>(d), 0);
    const CouplingMatrix j = random_cubic_graph(16, rng);
    const GroundTruth t = brute_force_ground(j);
    CHECK(t.energy >= -(3.0 * 16.0 / 2.0));
    CHECK(t.energy <= 0.0);
  }
}

TEST_CASE("edge list round trip") {
  RandomStream rng(55, 0);
  const CouplingMatrix j = random_cubic_graph(12, rng);
  std::stringstream buffer;
  save_edge_list(buffer, j);
  const CouplingMatrix back = load_edge_list(buffer);
  CHECK(back.j() == j.j());
}

TEST_CASE("edge list loader rejects malformed input") {
  std::stringstream no_header("oops");
  CHECK_THROWS_AS(load_edge_list(no_header), std::invalid_argument);

  std::stringstream self_loop("2 1\n0 0 1.0\n");
  CHECK_THROWS_AS(load_edge_list(self_loop), std::invalid_argument);

  std::stringstream out_of_range("2 1\n0 5 1.0\n");
  CHECK_THROWS_AS(load_edge_list(out_of_range), std::invalid_argument);

  std::stringstream duplicate("3 2\n0 1 1.0\n1 0 0.5\n");
  CHECK_THROWS_AS(load_edge_list(duplicate), std::invalid_argument);

  std::stringstream truncated("3 2\n0 1 1.0\n");
  CHECK_THROWS_AS(load_edge_list(truncated), std::invalid_argument);

  std::stringstream weighted("3 2\n0 1 0.5\n1 2 -2.25\n");
  const CouplingMatrix w = load_edge_list(weighted);
  CHECK(w(0, 1) == 0.5);
  CHECK(w(2, 1) == -2.25);
}

}  // TEST_SUITE
