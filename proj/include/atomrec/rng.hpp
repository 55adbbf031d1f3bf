#pragma once

#include <cstdint>

namespace atomrec {

// Counter-addressable random stream: (master_seed, stream_index) pairs give
// statistically independent sequences, identical pairs reproduce identical
// sequences on every platform.
//
// Generator: xoshiro256++ seeded through SplitMix64 over the hashed
// (seed, index) pair. Gaussians use Box-Muller with one cached value.
// This choice is part of the output contract: results quoted for a given
// seed are tied to it.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t next_u64();

  // Uniform on [0, 1), 53-bit resolution.
  double next_double();

  // Standard normal.
  double next_gaussian();

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

 private:
  std::uint64_t state_[4];
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

}  // namespace atomrec
