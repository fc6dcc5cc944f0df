#pragma once

// Staged factorization in Sp_2n(Z): an optional full-height greedy pass, then
// row-local height descent over the extended set until the residual is block
// diagonal, a determinant fix, and an SL_n factorization of the remaining block.

#include "wordfact/heightfactor.hpp"

#include <optional>

namespace wordfact {

struct BlockSplit {
  IntMatrix minor;  // top-left n x n block
  int det_sign = 1;
};

/// Requires a symplectic matrix with zero off-block height.
BlockSplit split_block_diagonal(const IntMatrix& a);

/// diag(M, M^-T) as a word in SPair letters of build_extended_symplectic(n),
/// from a word over build_sl_elementary(n).
Word lift_sl_word(const Word& w, std::size_t n);

enum class OutputLetters { Birman, Extended };

struct SymplecticOptions {
  OutputLetters letters = OutputLetters::Birman;
  std::size_t extension_depth = 3;
  /// Retry a stalled stage once with the side preference flipped.
  bool flip_retry = true;
  /// Run a full-height (||a - I||^2) greedy pass over the extended set before
  /// the row-local stages. Off reproduces the bare staged descent.
  bool full_height_prepass = true;
};

struct StageRecord {
  Word left;   // over the extended set
  Word right;
  IntMatrix residual;
  std::size_t steps = 0;
  std::size_t extension_steps = 0;
  bool flipped = false;
};

struct SympStageReport {
  std::optional<StageRecord> prepass;
  std::vector<StageRecord> stages;  // stage i = 1..2n at index i-1
  bool det_fix_applied = false;
  std::uint64_t minor_word_length = 0;
  std::uint64_t extended_length = 0;  // letters of the extended set
  std::uint64_t birman_length = 0;

  nlohmann::json to_json(const GenSet& extended) const;
};

struct SymplecticResult {
  Word word;
  std::shared_ptr<const GenSet> alphabet;  // extended or Birman set
  SympStageReport report;
};

/// Throws HeuristicStall (with the stage index) when a stage cannot reach h_i = 0.
SymplecticResult symplectic_factor(const IntMatrix& e, const SymplecticOptions& opts = {});

}  // namespace wordfact
