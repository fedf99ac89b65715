#pragma once

#include <array>
#include <cstdint>

namespace actnet {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
// A block is a pure function of (counter, key), so any draw can be
// addressed directly without sequencing through a stream.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Independent random stream addressed by (master_seed, seed_index,
// run_index). Draws inside a stream are further addressed by a domain and
// a counter, typically the dense node index, so a value never depends on
// the order in which other values are consumed. Identical coordinates
// reproduce identical values on any thread count.
class RngStream {
 public:
  // Draw domains. Cascade draws and mitigation draws are kept apart so
  // that paired mitigated/unmitigated runs share cascade randomness.
  enum Domain : std::uint32_t {
    kCascade = 0,  // one uniform per node per run
    kScore = 1,    // random-scheme score per node
    kTie = 2,      // tie-breaking key per node
    kGeneric = 3,  // sequential utility draws
  };

  RngStream(std::uint64_t master_seed, std::uint32_t seed_index,
            std::uint32_t run_index)
      : master_(master_seed), seed_index_(seed_index), run_index_(run_index) {}

  std::uint64_t master_seed() const { return master_; }
  std::uint32_t seed_index() const { return seed_index_; }
  std::uint32_t run_index() const { return run_index_; }

  std::uint64_t bits(Domain domain, std::uint32_t counter) const {
    const auto out = philox4x32(
        {counter, run_index_, seed_index_, static_cast<std::uint32_t>(domain)},
        {static_cast<std::uint32_t>(master_),
         static_cast<std::uint32_t>(master_ >> 32)});
    return static_cast<std::uint64_t>(out[0]) |
           (static_cast<std::uint64_t>(out[1]) << 32);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform(Domain domain, std::uint32_t counter) const {
    return static_cast<double>(bits(domain, counter) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t master_;
  std::uint32_t seed_index_;
  std::uint32_t run_index_;
};

// Sequential convenience wrapper for utility code (generators, shuffles)
// that just needs a reproducible sequence from a single 64-bit seed.
class SequentialRng {
 public:
  explicit SequentialRng(std::uint64_t seed) : stream_(seed, 0, 0) {}

  std::uint64_t next_bits() {
    return stream_.bits(RngStream::kGeneric, counter_++);
  }

  double next_uniform() {
    return static_cast<double>(next_bits() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) {
    return next_bits() % n;
  }

 private:
  RngStream stream_;
  std::uint32_t counter_ = 0;
};

}  // namespace actnet
