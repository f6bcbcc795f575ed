#include <doctest.h>

#include <cmath>
#include <vector>

#include "goim/random.hpp"

using goim::RandomStream;

TEST_SUITE("random") {

TEST_CASE("identical identifiers reproduce the sequence exactly") {
  RandomStream a(123, 45);
  RandomStream b(123, 45);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.normal() == b.normal());
  }
}

TEST_CASE("different stream ids give different sequences") {
  RandomStream a(123, 0);
  RandomStream b(123, 1);
  int agree = 0;
  for (int i = 0; i < 64; ++i) {
    if (a.next_u64() == b.next_u64()) ++agree;
  }
  CHECK(agree == 0);
}

TEST_CASE("substreams are deterministic and distinct") {
  const RandomStream base(9, 2);
  RandomStream s1 = base.substream(7);
  RandomStream s2 = base.substream(7);
  RandomStream s3 = base.substream(8);
  CHECK(s1.normal() == s2.normal());
  CHECK(s1.next_u64() != s3.next_u64());
}

TEST_CASE("normal deviates have standard moments") {
  RandomStream rng(2024, 0);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("uniform_below is in range and hits every value") {
  RandomStream rng(5, 5);
  std::vector<int> seen(10, 0);
  for (int i = 0; i < 1000; ++i) {
    const auto v = rng.uniform_below(10);
    REQUIRE(v < 10);
    ++seen[static_cast<size_t>(v)];
  }
  for (int count : seen) CHECK(count > 0);
}

}  // TEST_SUITE
