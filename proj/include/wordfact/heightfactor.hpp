#pragma once

// Greedy height descent: repeatedly multiply the residual on the left or the
// right by the generator (or short product of generators) that lowers the
// active height the most, per unit of expanded word length.

#include "wordfact/gensets.hpp"

#include <memory>
#include <stdexcept>

namespace wordfact {

/// Height functions as masked squared deviations from the identity.
struct HeightFn {
  enum class Kind { Full, OffBlock, RowLocal };
  Kind kind = Kind::Full;
  std::size_t rows = 0;  // RowLocal: prefix row count

  static HeightFn full() { return {Kind::Full, 0}; }
  static HeightFn offblock() { return {Kind::OffBlock, 0}; }
  static HeightFn rowlocal(std::size_t rows) { return {Kind::RowLocal, rows}; }

  Integer operator()(const IntMatrix& a) const;
  std::string name() const;
};

enum class StallPolicy { FallbackHNF, Error, ReturnResidual };
enum class SidePreference { RightFirst, LeftFirst };

struct ReductionConfig {
  HeightFn height = HeightFn::full();
  /// Longest product in the extension set; 1 disables the extension retry.
  std::size_t extension_depth = 3;
  StallPolicy stall_policy = StallPolicy::FallbackHNF;
  bool length_weighting = true;
  SidePreference side_preference = SidePreference::RightFirst;
  /// Stop after this many accepted steps (0: unlimited); no stall policy applies.
  std::size_t max_steps = 0;
  /// Re-evaluate the words after every step and compare with the residual.
  bool check_invariant = false;
};

/// residual = evaluate(left) * e * evaluate(right).
struct ReductionOutcome {
  Word left;
  Word right;
  IntMatrix residual;
  bool stalled = false;
  bool fallback_applied = false;
  bool step_limited = false;
  std::size_t steps = 0;
  std::size_t extension_steps = 0;
  /// Active height before the first step and after each accepted step.
  std::vector<Integer> height_trace;

  const Integer& final_height() const { return height_trace.back(); }
};

class HeuristicStall : public std::runtime_error {
 public:
  HeuristicStall(const std::string& what, IntMatrix residual, std::size_t stage, Integer height)
      : std::runtime_error(what), residual_(std::move(residual)), stage_(stage), height_(std::move(height)) {}

  const IntMatrix& residual() const noexcept { return residual_; }
  /// 0 for a plain reduction; the row-local stage index in the symplectic pipeline.
  std::size_t stage() const noexcept { return stage_; }
  const Integer& height() const noexcept { return height_; }

 private:
  IntMatrix residual_;
  std::size_t stage_;
  Integer height_;
};

struct ExtensionEntry {
  IntMatrix matrix;
  Word word;  // over the generating set
  std::uint64_t cost = 0;
  SparseDelta delta;
};

/// Distinct non-identity matrices of freely reduced products of at most
/// `depth` generators, each with a cheapest word. Cached per (set, depth).
std::shared_ptr<const std::vector<ExtensionEntry>> build_extension(const GenSet& gs, std::size_t depth);

/// Heights of a*g and g*a for every alphabet letter g, in the order
/// (g0 right, g0 left, g1 right, ...).
std::vector<Integer> one_step_heights(const IntMatrix& a, const GenSet& gs, const HeightFn& h);

/// Stops when the active height reaches 0.
ReductionOutcome greedy_reduce(const IntMatrix& e, const GenSet& gs, const ReductionConfig& cfg);

/// invert(left) * invert(right), freely reduced; equals e when the residual is I.
Word assemble_word(const ReductionOutcome& out);

/// Full-height greedy over build_sl_elementary(n) with the HNF fallback.
Word height_factor_sl(const IntMatrix& e, std::size_t extension_depth = 3, bool length_weighting = true);

}  // namespace wordfact
