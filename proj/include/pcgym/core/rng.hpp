#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace pcgym {

// splitmix64 finalizer. Used to expand seeds and to derive sub-seeds.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// xoshiro256** (Blackman & Vigna) seeded through splitmix64. The standard
// library distributions are implementation-defined, so all sampling helpers
// live here to keep streams identical across platforms.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next(); }

  std::uint64_t next();
  // Uniform in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [lo, hi], inclusive.
  int uniform_int(int lo, int hi);
  // Uniform in [0, 1) with 53 bits of precision.
  double uniform();
  bool bernoulli(double p);

  // Seed for an independent child stream; does not advance this stream.
  std::uint64_t derive(std::uint64_t stream) const { return mix_seed(seed_, stream); }
  std::uint64_t seed() const { return seed_; }

  friend bool operator==(const Rng&, const Rng&) = default;

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t s_[4];
};

inline Rng seeded_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace pcgym
