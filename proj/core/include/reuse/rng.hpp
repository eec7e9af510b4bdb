#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace reuse {

// Deterministic draws on top of mt19937_64. The std distributions are
// implementation-defined, so anything that feeds a reproducibility contract
// goes through these instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n) {
    // Lemire's unbiased bounded draw.
    std::uint64_t x = gen_();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      std::uint64_t t = (0 - n) % n;
      while (lo < t) {
        x = gen_();
        m = static_cast<__uint128_t>(x) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform integer in [lo, hi] inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Uniform double in [0, 1).
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Sample k distinct indices from [0, n), ascending order (selection sampling).
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k) {
    std::vector<std::size_t> out;
    if (k >= n) {
      out.resize(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = i;
      return out;
    }
    out.reserve(k);
    std::size_t remaining = n, needed = k;
    for (std::size_t i = 0; i < n && needed > 0; ++i) {
      if (below(remaining) < needed) {
        out.push_back(i);
        --needed;
      }
      --remaining;
    }
    return out;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

// Zipf sampler over ranks 1..n with exponent s: P(i) proportional to i^-s.
// Inverse-CDF over precomputed cumulative weights.
class ZipfSampler {
 public:
  ZipfSampler(std::size_t n, double s);
  std::size_t draw(Rng& rng) const;  // returns rank in [1, n]
  double weight_sum() const { return cum_.empty() ? 0.0 : cum_.back(); }

 private:
  std::vector<double> cum_;
};

inline ZipfSampler::ZipfSampler(std::size_t n, double s) {
  cum_.reserve(n);
  double acc = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    acc += 1.0 / std::pow(static_cast<double>(i), s);
    cum_.push_back(acc);
  }
}

inline std::size_t ZipfSampler::draw(Rng& rng) const {
  double u = rng.unit() * cum_.back();
  auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
  return static_cast<std::size_t>(it - cum_.begin()) + 1;
}

}  // namespace reuse
