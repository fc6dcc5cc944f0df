#pragma once

// Concrete generating sets. Builders are cached per n and return shared,
// immutable sets; every expansion word is verified by evaluation when the
// set is first built. Indices i, j are 1-based.

#include "wordfact/words.hpp"

#include <memory>
#include <string_view>

namespace wordfact {

/// All t_{i,j}, i != j, in row-major order of (i, j).
std::shared_ptr<const GenSet> build_sl_elementary(std::size_t n);
/// Symbol index of t_{i,j} in build_sl_elementary(n).
std::uint32_t elementary_symbol(std::size_t n, int i, int j);

/// Y_1..Y_n, U_1..U_n, Z_1..Z_{n-1} on 2n x 2n matrices.
std::shared_ptr<const GenSet> build_birman(std::size_t n);

IntMatrix birman_z_matrix(int i, std::size_t n);
/// t_{i,j} t_{n+j,n+i}^-1
IntMatrix spair_matrix(int i, int j, std::size_t n);
/// t_{i,n+j} t_{j,n+i}
IntMatrix toppair_matrix(int i, int j, std::size_t n);
/// t_{n+i,j} t_{n+j,i}
IntMatrix botpair_matrix(int i, int j, std::size_t n);

/// Birman words for the pair products; each is checked by evaluation.
Word spair_word(int i, int j, std::size_t n);
Word toppair_word(int i, int j, std::size_t n);
Word botpair_word(int i, int j, std::size_t n);

/// (Y_1^2 U_1)^2, evaluating to diag(A, A) with A = diag(-1, 1, ..., 1).
Word negator_word(std::size_t n);

/// Birman letters (same indices as build_birman) followed by SPair{i,j} for
/// all i != j, TopPair{i,j} and BotPair{i,j} for i < j.
std::shared_ptr<const GenSet> build_extended_symplectic(std::size_t n);

/// "sl:N", "birman:2N" or "extended:2N" (matrix dimension after the colon).
std::shared_ptr<const GenSet> genset_from_spec(std::string_view spec);

}  // namespace wordfact
