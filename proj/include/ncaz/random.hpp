#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "ncaz/algebra.hpp"

namespace ncaz {

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based random stream. The key is the base seed; the stream id
/// occupies the high half of the counter, the draw index the low half.
/// Streams with distinct (seed, stream id) never share blocks, so trials can
/// be generated in any order or in parallel with identical results.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  /// Independent child stream, e.g. one per step or per grid point.
  [[nodiscard]] RandomStream substream(std::uint64_t tag) const;

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi);
  /// Standard normal via Box-Muller.
  double normal();
  Complex complex_normal();  // E|z|^2 = 1
  std::size_t index(std::size_t n);  // uniform on {0, ..., n-1}

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::uint64_t stream_id() const { return stream_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

/// SplitMix64 finalizer; used to derive stream ids from structured tags.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t combine_tags(std::uint64_t a, std::uint64_t b);

/// GUE-style draw: i.i.d. standard complex Gaussian entries, symmetrized.
HermitianElement random_hermitian(std::size_t dim, RandomStream& rng);

/// G G^dagger for a complex Gaussian G, scaled to operator norm 1.
HermitianElement random_positive(std::size_t dim, RandomStream& rng);

}  // namespace ncaz
