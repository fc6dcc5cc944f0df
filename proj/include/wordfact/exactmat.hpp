#pragma once

// Exact integer matrices and the group-membership / height predicates used by
// the factorizers. Entry access is 0-based; the row-local height takes a prefix
// row count 0..2n.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wordfact {

using Integer = mpz_class;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Dense square matrix over Z, row-major.
class IntMatrix {
 public:
  IntMatrix() : IntMatrix(1) {}
  explicit IntMatrix(std::size_t dim);
  IntMatrix(std::size_t dim, std::vector<Integer> entries);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }

  Integer& operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * dim_ + c];
  }

  std::span<const Integer> entries() const noexcept { return entries_; }
  std::span<Integer> entries() noexcept { return entries_; }

  bool is_identity() const;

  /// Canonical byte serialization: LEB128 dimension, then each entry in
  /// row-major order as (sign byte, LEB128 magnitude length, big-endian
  /// magnitude). Equal matrices have equal keys and vice versa.
  std::string content_key() const;
  void append_content_key(std::string& out) const;
  static IntMatrix from_content_key(std::string_view key);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t dim_;
  std::vector<Integer> entries_;
};

enum class GroupFamily { SL, Sp };

/// SL(n) acts on n x n matrices; Sp(2n) on 2n x 2n matrices.
struct GroupKind {
  GroupFamily family = GroupFamily::SL;
  std::size_t n = 2;

  std::size_t matrix_dim() const { return family == GroupFamily::Sp ? 2 * n : n; }
  std::string name() const;
  static GroupKind sl(std::size_t n) { return {GroupFamily::SL, n}; }
  /// dim is the matrix dimension 2n; odd values are rejected.
  static GroupKind sp_of_dim(std::size_t dim);
};

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);
inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) { return mat_mul(a, b); }

IntMatrix transpose(const IntMatrix& a);

/// Exact determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& a);

/// Throws std::domain_error unless det(a) = +-1.
IntMatrix unimodular_inverse(const IntMatrix& a);

/// I + k E_{row,col}.
IntMatrix transvection(std::size_t dim, std::size_t row, std::size_t col, long k = 1);

/// [[0, I_n], [-I_n, 0]] for dim = 2n.
IntMatrix symplectic_form(std::size_t dim);

bool is_sl_member(const IntMatrix& a);
bool is_sp_member(const IntMatrix& a);

/// ||a - I||^2.
Integer height_full(const IntMatrix& a);
/// Sum of squares of the top-right and bottom-left n x n blocks.
Integer height_offblock(const IntMatrix& a);
/// Off-block squares of the first `rows` rows (h_0 = 0, h_2n = offblock).
Integer height_rowlocal(const IntMatrix& a, std::size_t rows);

/// Entrywise reduction into [0, p).
IntMatrix mod_reduce(const IntMatrix& a, const Integer& p);

/// Sparse representation of g - I for a matrix g with small entries, so that
/// multiplying by g touches only the affected rows or columns.
class SparseDelta {
 public:
  struct Entry {
    std::uint32_t row;
    std::uint32_t col;
    long value;
  };

  SparseDelta() = default;
  /// Fails (returns false) when an entry of g - I does not fit in a long.
  static bool from_matrix(const IntMatrix& g, SparseDelta& out);

  std::span<const Entry> entries() const noexcept { return entries_; }
  std::size_t dim() const noexcept { return dim_; }
  /// (g - I)^2 = 0, so g^k = I + k (g - I).
  bool square_zero() const noexcept { return square_zero_; }

  /// Distinct columns with a nonzero entry, ascending.
  std::span<const std::uint32_t> touched_cols() const noexcept { return cols_; }
  /// Distinct rows with a nonzero entry, ascending.
  std::span<const std::uint32_t> touched_rows() const noexcept { return rows_; }

  /// a <- a * (I + k D)
  void right_apply(IntMatrix& a, long k = 1) const;
  /// a <- (I + k D) * a
  void left_apply(IntMatrix& a, long k = 1) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Entry> entries_;
  std::vector<std::uint32_t> cols_;
  std::vector<std::uint32_t> rows_;
  bool square_zero_ = false;
};

/// Multi-line text form: dimension, then one row per line.
std::string format_matrix(const IntMatrix& a);
/// Bracketed single-line form [[..],[..]].
std::string format_matrix_brackets(const IntMatrix& a);
/// Accepts either text form.
IntMatrix parse_matrix(std::string_view text);

}  // namespace wordfact
