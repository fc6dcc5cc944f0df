#pragma once

// Reference implementations the library is checked against. They share no
// code with the library beyond the Integer type.

#include "wordfact/words.hpp"

#include <map>
#include <random>

namespace oracle {

using wordfact::IntMatrix;
using wordfact::Integer;

inline IntMatrix schoolbook(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.dim();
  IntMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Integer s = 0;
      for (std::size_t k = 0; k < n; ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

inline Integer squared_deviation(const IntMatrix& a) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const Integer d = a(i, j) - (i == j ? 1 : 0);
      s += d * d;
    }
  return s;
}

inline IntMatrix elementary(std::size_t n, std::size_t i, std::size_t j, long k = 1) {
  IntMatrix m = IntMatrix::identity(n);
  m(i - 1, j - 1) = k;
  return m;
}

/// Determinant by cofactor expansion (tiny dimensions only).
inline Integer cofactor_det(const IntMatrix& a) {
  const std::size_t n = a.dim();
  if (n == 1) return a(0, 0);
  Integer s = 0;
  for (std::size_t c = 0; c < n; ++c) {
    IntMatrix minor(n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t cc = 0, k = 0; cc < n; ++cc)
        if (cc != c) minor(r - 1, k++) = a(r, cc);
    const Integer t = a(0, c) * cofactor_det(minor);
    s += (c % 2 == 0) ? t : Integer(-t);
  }
  return s;
}

/// |SL_n(Z/p)| by enumerating all n x n matrices mod p.
inline std::size_t sl_order_brute(std::size_t n, long p) {
  std::vector<long> e(n * n, 0);
  std::size_t count = 0;
  while (true) {
    IntMatrix m(n);
    for (std::size_t k = 0; k < n * n; ++k) m.entries()[k] = e[k];
    Integer d = cofactor_det(m) % p;
    if (d < 0) d += p;
    if (d == 1) ++count;
    std::size_t k = 0;
    while (k < n * n && ++e[k] == p) e[k++] = 0;
    if (k == n * n) break;
  }
  return count;
}

/// Cayley distances of every element reachable by words of length <= max_len,
/// computed by enumerating all words (not only reduced ones).
inline std::map<std::string, std::size_t> distances_by_words(const wordfact::GenSet& gs, std::size_t max_len) {
  std::map<std::string, std::size_t> dist;
  std::vector<std::size_t> idx;
  for (std::size_t len = 0; len <= max_len; ++len) {
    idx.assign(len, 0);
    while (true) {
      IntMatrix m = IntMatrix::identity(gs.dim());
      for (auto g : idx) m = schoolbook(m, gs.gen_matrix(g));
      dist.emplace(m.content_key(), len);
      std::size_t k = 0;
      while (k < len && ++idx[k] == gs.gen_count()) idx[k++] = 0;
      if (k == len) break;
    }
  }
  return dist;
}

inline IntMatrix symplectic_j(std::size_t dim) {
  const std::size_t n = dim / 2;
  IntMatrix j(dim);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, n + i) = 1;
    j(n + i, i) = -1;
  }
  return j;
}

inline bool preserves_form(const IntMatrix& m) {
  IntMatrix t(m.dim());
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t c = 0; c < m.dim(); ++c) t(r, c) = m(c, r);
  const IntMatrix j = symplectic_j(m.dim());
  return schoolbook(schoolbook(m, j), t) == j;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntMatrix m(n);
  for (auto& x : m.entries()) x = d(rng);
  return m;
}

}  // namespace oracle
