#pragma once

// Factorization by elementary row reduction to the identity (the Hermite
// normal form of a det-1 matrix), with every row operation recorded as a
// transvection power.

#include "wordfact/gensets.hpp"

namespace wordfact {

struct HnfStats {
  std::uint64_t transvection_count = 0;  // recorded row operations
  std::uint64_t expanded_length = 0;
};

/// `word` is the transforming word T over build_sl_elementary(n) with
/// evaluate(T) * e = I.
struct HnfTrace {
  Word word;
  HnfStats stats;
};

/// Throws std::domain_error for non-SL input and std::overflow_error when a
/// row multiplier does not fit in 64 bits.
HnfTrace hnf_trace(const IntMatrix& e);

/// A word over build_sl_elementary(n) evaluating to e (the inverse of T).
Word hnf_factor(const IntMatrix& e);

}  // namespace wordfact
