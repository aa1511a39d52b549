#pragma once

#include <cstdint>
#include <stdexcept>

namespace relrank {

// All constructions act on total functions over the naturals.  Values are
// kept in 64 bits; operations that could silently wrap (pairing, sequence
// codes) check for overflow and throw instead.
using nat = std::uint64_t;

// Floor of the square root, exact for the full 64-bit range.
nat isqrt(nat n);

// splitmix64 finalizer.  Every seeded "random" object in the library is
// derived from this fixed mixer so that runs are reproducible bit-for-bit
// across platforms (no reliance on std::uniform_int_distribution, whose
// output is implementation-defined).
nat mix64(nat x);

// Deterministic stream value for (seed, index).
nat seeded_at(nat seed, nat index);

class Rng {
 public:
  explicit Rng(nat seed) : state_(seed) {}

  nat next() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_);
  }

  // Uniform-ish value in [0, bound); bound must be nonzero.  Modulo bias is
  // irrelevant here: these streams drive test fixtures, not statistics.
  nat below(nat bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
    return next() % bound;
  }

 private:
  nat state_;
};

}  // namespace relrank
