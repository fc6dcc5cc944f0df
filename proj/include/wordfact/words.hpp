#pragma once

// Words over an indexed, inverse-closed generator alphabet.
//
// A GenSet holds generator *symbols*; the inverse-closed alphabet has two
// entries per symbol: gen index 2s is symbol s, gen index 2s+1 its inverse,
// so inverse_index(g) == g ^ 1. Words store runs (symbol, nonzero exponent);
// lengths always count expanded letters (t^k contributes |k|).

#include "wordfact/exactmat.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wordfact {

/// Generator labels with 1-based indices, as they appear in the text format.
struct GenLabel {
  enum class Kind { Elementary, Y, U, Z, SPair, TopPair, BotPair };

  Kind kind = Kind::Elementary;
  int i = 0;
  int j = 0;

  static GenLabel elementary(int i, int j) { return {Kind::Elementary, i, j}; }
  static GenLabel y(int i) { return {Kind::Y, i, 0}; }
  static GenLabel u(int i) { return {Kind::U, i, 0}; }
  static GenLabel z(int i) { return {Kind::Z, i, 0}; }
  static GenLabel spair(int i, int j) { return {Kind::SPair, i, j}; }
  static GenLabel toppair(int i, int j) { return {Kind::TopPair, i, j}; }
  static GenLabel botpair(int i, int j) { return {Kind::BotPair, i, j}; }

  std::string text() const;
  bool two_index() const {
    return kind == Kind::Elementary || kind == Kind::SPair || kind == Kind::TopPair ||
           kind == Kind::BotPair;
  }

  friend bool operator==(const GenLabel&, const GenLabel&) = default;
};

struct Letter {
  std::uint32_t symbol = 0;
  std::int64_t exponent = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
};

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> runs);

  static Word of(std::uint32_t symbol, std::int64_t exponent = 1) { return Word({{symbol, exponent}}); }
  /// Single letter for an alphabet index (see GenSet).
  static Word of_gen(std::size_t gen) {
    return of(static_cast<std::uint32_t>(gen / 2), (gen & 1) ? -1 : 1);
  }

  std::span<const Letter> runs() const noexcept { return runs_; }
  bool empty() const noexcept { return runs_.empty(); }
  std::size_t run_count() const noexcept { return runs_.size(); }
  /// Number of factors: sum of |exponent|.
  std::uint64_t length() const;

  /// Appends a run verbatim (no merging); exponent must be nonzero.
  void push_back(Letter letter);
  void append(const Word& other);
  Word& operator*=(const Word& other) {
    append(other);
    return *this;
  }

  /// The word repeated |k| times, inverted when k < 0.
  Word power(std::int64_t k) const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> runs_;
};

inline Word operator*(Word a, const Word& b) {
  a.append(b);
  return a;
}

/// Cancels adjacent inverse letters and merges equal neighbours, cascading.
Word free_reduce(const Word& w);
/// Reversed order, exponents negated.
Word invert_word(const Word& w);
/// [a, b] = a^-1 b^-1 a b.
Word commutator(const Word& a, const Word& b);

struct GeneratorSpec {
  GenLabel label;
  IntMatrix matrix;
  std::optional<Word> expansion;  // over the GenSet's declared base
};

struct Generator {
  GenLabel label;
  IntMatrix matrix;
  IntMatrix inverse;
  SparseDelta delta;          // matrix - I (valid when has_delta)
  SparseDelta inverse_delta;  // inverse - I
  bool has_delta = false;
  std::optional<Word> expansion;
  /// Symbol index in the base set when this generator is itself a base letter.
  std::optional<std::uint32_t> base_symbol;
  /// Expanded length in base letters (1 for base letters).
  std::uint64_t cost = 1;
};

class ConstructionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class GenSet {
 public:
  /// Verifies unimodularity of every matrix, label uniqueness and, when a base
  /// is given, that every expansion evaluates to its generator's matrix.
  GenSet(std::string name, std::size_t dim, std::vector<GeneratorSpec> specs,
         std::shared_ptr<const GenSet> base = nullptr);

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t symbol_count() const noexcept { return gens_.size(); }
  /// Size of the inverse-closed alphabet (2 * symbols).
  std::size_t gen_count() const noexcept { return 2 * gens_.size(); }

  const Generator& symbol(std::size_t s) const { return gens_.at(s); }
  const IntMatrix& gen_matrix(std::size_t g) const {
    const auto& s = gens_[g / 2];
    return (g & 1) ? s.inverse : s.matrix;
  }
  const SparseDelta* gen_delta(std::size_t g) const {
    const auto& s = gens_[g / 2];
    if (!s.has_delta) return nullptr;
    return (g & 1) ? &s.inverse_delta : &s.delta;
  }
  static std::size_t inverse_index(std::size_t g) noexcept { return g ^ 1u; }
  static std::size_t gen_index(std::uint32_t symbol, bool inverse) noexcept {
    return 2 * static_cast<std::size_t>(symbol) + (inverse ? 1 : 0);
  }

  std::optional<std::uint32_t> find(const GenLabel& label) const;
  const std::shared_ptr<const GenSet>& base() const noexcept { return base_; }
  /// Content hash over dimension and all generator matrices.
  const std::string& fingerprint() const noexcept { return fingerprint_; }

  /// a <- a * gen (or its power).
  void right_multiply(IntMatrix& a, std::uint32_t symbol, std::int64_t exponent) const;
  /// a <- gen^exponent * a.
  void left_multiply(IntMatrix& a, std::uint32_t symbol, std::int64_t exponent) const;

 private:
  std::string name_;
  std::size_t dim_;
  std::vector<Generator> gens_;
  std::shared_ptr<const GenSet> base_;
  std::string fingerprint_;
};

/// Cost of a word counted in base letters (sum of |exp| * cost).
std::uint64_t expanded_length(const Word& w, const GenSet& gs);

/// Left-to-right product; the empty word evaluates to I.
IntMatrix evaluate(const Word& w, const GenSet& gs);

/// Substitutes expansions (inverted for negative exponents) and freely reduces.
/// The result is a word over gs.base().
Word expand_word(const Word& w, const GenSet& gs);

/// Grammar: terms separated by '*', term = label ['^' signed-int] or
/// '(' word ')' ['^' signed-int]; labels t[i,j], Yi, Ui, Zi, SP[i,j], TP[i,j],
/// BP[i,j]. "1" or blank is the empty word. Whitespace is insignificant.
Word parse_word(std::string_view text, const GenSet& gs);
/// Canonical text; exponent 1 is omitted, the empty word prints as "1".
std::string format_word(const Word& w, const GenSet& gs);

nlohmann::json word_to_json(const Word& w, const GenSet& gs);
Word word_from_json(const nlohmann::json& j, const GenSet& gs);

}  // namespace wordfact
