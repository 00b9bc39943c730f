#ifndef MWCUT_RNG_HPP_
#define MWCUT_RNG_HPP_

#include <algorithm>
#include <cstdint>
#include <vector>

namespace mwcut {

/// Counter-based pseudo-random generator with an explicit (seed, stream) pair.
///
/// Output t of stream s is a pure function of (seed, s, t), so shards of a
/// computation can run on distinct streams in any order and still reproduce
/// the same numbers. Every randomized operation in the library takes an
/// RngState explicitly; nothing draws from hidden global state.
class RngState {
 public:
  explicit RngState(std::uint64_t seed = 0, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  /// A fresh generator on a derived stream, for per-shard determinism.
  RngState substream(std::uint64_t shard) const {
    return RngState(seed_, mix(stream_ + 0x9E3779B97F4A7C15ull, shard + 1));
  }

  std::uint64_t next_u64() {
    std::uint64_t v = counter_++;
    v = mix(seed_ + 0x2545F4914F6CDD1Dull, v);
    return mix(v, stream_ + 0x6A09E667F3BCC909ull);
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1]; never returns 0 so closed corners at
  /// threshold 0 cannot swallow the whole simplex.
  double uniform_open0() { return 1.0 - uniform(); }

  /// Uniform in (lo, hi].
  double uniform_in(double lo, double hi) { return lo + (hi - lo) * uniform_open0(); }

  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  /// Uniform random permutation of {0, .., n-1}.
  std::vector<int> permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) {
      int j = static_cast<int>(next_below(static_cast<std::uint64_t>(i) + 1));
      std::swap(p[i], p[j]);
    }
    return p;
  }

 private:
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9E3779B97F4A7C15ull * (b + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace mwcut

#endif  // MWCUT_RNG_HPP_
