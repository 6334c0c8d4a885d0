#pragma once

#include <cmath>
#include <cstdint>

namespace qnl {

// splitmix64, used to expand a master seed into independent per-run streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256** with hand-rolled variate transforms.  The standard library
// distributions are implementation-defined, so sampling goes through our own
// transforms to keep ensemble output byte-identical regardless of platform
// or worker count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  // Stream for run `run` of an ensemble seeded with `master`.  Adding runs
  // never reshuffles earlier ones.
  static Rng stream(std::uint64_t master, std::uint64_t run) {
    std::uint64_t sm = master ^ (0x9e3779b97f4a7c15ULL * (run + 1));
    std::uint64_t seed = splitmix64(sm);
    return Rng(seed);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform on [0, 1)
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

  // uniform on (0, 1]; safe as a log argument
  double uniform_pos() { return ((next_u64() >> 11) + 1) * 0x1.0p-53; }

  double exponential(double rate = 1.0) { return -std::log(uniform_pos()) / rate; }

  // Box-Muller; one value per call, the partner is cached.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform_pos();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t s_[4];
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace qnl
