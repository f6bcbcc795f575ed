#pragma once

#include <cstdint>
#include <random>

namespace goim {

// Deterministic random stream identified by (seed, stream_id). Equal
// identifiers reproduce the exact same sequence of deviates, so trials and
// samples can run in parallel on independent streams without any shared
// generator state. The normal() transform is implemented here (Box-Muller)
// rather than through std::normal_distribution so the produced values do not
// depend on the standard library implementation.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Independent child stream, deterministic in (seed, stream_id, k).
  RandomStream substream(std::uint64_t k) const;

  std::uint64_t next_u64();

  // Uniform on [0, 1).
  double uniform();

  // Unbiased uniform integer on [0, bound).
  std::uint64_t uniform_below(std::uint64_t bound);

  // Standard normal deviate.
  double normal();

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Stable 64-bit mix of (seed, k), used to label derived graph seeds so they
// can be reported and replayed from the command line.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k);

}  // namespace goim
