#pragma once

// Word by congruence image: factor the image of e in SL_n(Z/pZ) by flooding
// the finite image, lift the word back to Z, and escalate p when the lift
// does not reproduce e.

#include "wordfact/floodsearch.hpp"

#include <map>
#include <memory>

namespace wordfact {

struct PrimeSchedule {
  std::uint64_t start_prime = 3;
  /// Primes are tried while |SL_n(p)| stays at or below this bound.
  Integer order_cap = 10'000'000;
  FloodBudget image_budget{2'000'000, true};
};

/// |SL_n(Z/pZ)| = p^{n(n-1)/2} prod_{k=2}^{n} (p^k - 1).
Integer sl_order_mod_p(std::size_t n, std::uint64_t p);

std::uint64_t next_prime(std::uint64_t p);

/// Cayley graph of a generating set reduced mod p; gen indices align with the
/// integral set (duplicates mod p are kept).
class ModularCayley {
 public:
  using Element = std::vector<std::uint32_t>;

  ModularCayley(const GenSet& gs, std::uint32_t p);

  Element identity() const;
  std::size_t gen_count() const { return gens_.size(); }
  void step(const Element& a, std::size_t gen, Element& out) const { mul_into(a, gens_[gen], out); }
  void key(const Element& a, std::string& out) const;
  Element decode(std::string_view key) const;
  Element multiply(const Element& a, const Element& b) const {
    Element out;
    mul_into(a, b, out);
    return out;
  }
  Element reduce(const IntMatrix& m) const;
  std::uint32_t modulus() const { return p_; }

 private:
  void mul_into(const Element& a, const Element& b, Element& out) const;

  std::size_t dim_;
  std::uint32_t p_;
  std::size_t width_;  // bytes per entry in keys
  std::vector<Element> gens_;
};

enum class PrimeAttemptResult { Lifted, LiftMismatch, ImageExhausted };

struct PrimeAttempt {
  std::uint64_t prime;
  PrimeAttemptResult result;
  std::uint64_t image_word_length;
};

struct CongruenceOutcome {
  std::optional<Word> word;  // empty: schedule exhausted
  std::vector<PrimeAttempt> attempts;
};

/// Keeps one flooded image per prime so repeated targets over the same
/// generating set share the image enumeration.
class CongruenceFactorizer {
 public:
  CongruenceFactorizer(std::shared_ptr<const GenSet> gs, PrimeSchedule schedule);

  CongruenceOutcome factor(const IntMatrix& e);
  const PrimeSchedule& schedule() const { return schedule_; }

 private:
  CayleyBall<ModularCayley>& image(std::uint32_t p);

  std::shared_ptr<const GenSet> gs_;
  PrimeSchedule schedule_;
  std::map<std::uint32_t, std::unique_ptr<CayleyBall<ModularCayley>>> images_;
};

CongruenceOutcome congruence_factor(std::shared_ptr<const GenSet> gs, const IntMatrix& e,
                                    const PrimeSchedule& schedule = {});

}  // namespace wordfact
