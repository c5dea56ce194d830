#pragma once

// Depolarizing-noise sampling and reproducible randomness. Streams are
// derived by hashing (master_seed, trial_index, path_id), so parallel trials
// never share generator state and results are independent of scheduling.

#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "qdec/pauli.hpp"

namespace qdec {

struct DepolarizingParams {
  double p = 0.0;  // physical error probability in [0,1]
};

struct SeedPlan {
  uint64_t master_seed = 0;
  uint64_t trial_index = 0;
};

namespace detail {

// splitmix64 finalizer (Stafford mix13).
inline uint64_t mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

}  // namespace detail

// splitmix64 generator; the seed fully determines the byte sequence.
class RandomStream {
 public:
  explicit RandomStream(uint64_t state) : state_(state) {}

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return detail::mix64(state_);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_double() {
    return double(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, bound) without modulo bias.
  uint64_t next_below(uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below: bound must be > 0");
    const uint64_t threshold = -bound % bound;
    for (;;) {
      const uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  uint64_t state_;
};

// Counter-based derivation: a pure hash of the (seed, trial, path) tuple.
inline RandomStream derive_stream(const SeedPlan& plan, uint64_t path_id) {
  uint64_t s = detail::mix64(plan.master_seed ^ 0x6a09e667f3bcc909ull);
  s = detail::mix64(s + 0x9e3779b97f4a7c15ull * (plan.trial_index + 1));
  s = detail::mix64(s + 0x9e3779b97f4a7c15ull * (path_id + 1));
  return RandomStream(s);
}

// Each qubit independently stays I with probability 1-p, else becomes
// X, Y or Z with probability p/3 each. A single uniform draw against the
// thresholds {1-p, 1-2p/3, 1-p/3} gives exact thirds.
inline SymplecticVector sample_depolarizing(std::size_t n,
                                            const DepolarizingParams& params,
                                            RandomStream& stream) {
  if (params.p < 0.0 || params.p > 1.0) {
    throw std::invalid_argument("sample_depolarizing: p must be in [0,1]");
  }
  const double p = params.p;
  SymplecticVector e(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = stream.next_double();
    if (u < 1.0 - p) continue;
    if (u < 1.0 - 2.0 * p / 3.0) {
      e.set_pauli(i, Pauli::X);
    } else if (u < 1.0 - p / 3.0) {
      e.set_pauli(i, Pauli::Y);
    } else {
      e.set_pauli(i, Pauli::Z);
    }
  }
  return e;
}

}  // namespace qdec
