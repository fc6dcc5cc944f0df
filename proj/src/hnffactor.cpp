#include "wordfact/hnffactor.hpp"

#include <stdexcept>

namespace wordfact {

namespace {

class RowReducer {
 public:
  explicit RowReducer(const IntMatrix& e) : a_(e), n_(e.dim()) {}

  /// row_i += k * row_j, recorded as t_{i,j}^k (0-based rows).
  void add_multiple(std::size_t i, std::size_t j, const Integer& k) {
    if (k == 0) return;
    if (!k.fits_slong_p()) throw std::overflow_error("row multiplier " + k.get_str() + " exceeds 64 bits");
    const long kk = k.get_si();
    for (std::size_t c = 0; c < n_; ++c) a_(i, c) += k * a_(j, c);
    ops_.push_back({elementary_symbol(n_, static_cast<int>(i + 1), static_cast<int>(j + 1)), kk});
  }

  /// (row_i, row_j) <- (row_j, -row_i) via t_{i,j} t_{j,i}^-1 t_{i,j} as row operations.
  void signed_swap(std::size_t i, std::size_t j) {
    add_multiple(i, j, 1);
    add_multiple(j, i, -1);
    add_multiple(i, j, 1);
  }

  void reduce() {
    for (std::size_t c = 0; c < n_; ++c) {
      const std::size_t p = gcd_cascade(c);
      if (p != c) {
        // bring the +-1 pivot to row c with a positive sign
        if (a_(p, c) == 1)
          signed_swap(c, p);
        else
          signed_swap(p, c);
      } else if (a_(c, c) == -1) {
        // det = 1 and columns < c already cleared rule this out for c = n-1
        if (c + 1 >= n_) throw std::logic_error("sign defect at the last pivot");
        signed_swap(c, c + 1);
        signed_swap(c, c + 1);
      }
      if (a_(c, c) != 1) throw std::logic_error("pivot is not 1 after the gcd cascade");
      for (std::size_t r = c + 1; r < n_; ++r) add_multiple(r, c, -a_(r, c));
      for (std::size_t r = 0; r < c; ++r) add_multiple(r, c, -a_(r, c));
    }
    if (!a_.is_identity()) throw std::logic_error("row reduction did not reach the identity");
  }

  const std::vector<Letter>& ops() const { return ops_; }

 private:
  /// Euclid on the column tail below row c using the smallest nonzero entry as
  /// pivot (ties to the lowest row); returns the row holding the final pivot.
  std::size_t gcd_cascade(std::size_t c) {
    while (true) {
      std::size_t pivot = n_;
      for (std::size_t r = c; r < n_; ++r) {
        if (a_(r, c) == 0) continue;
        if (pivot == n_ || abs(a_(r, c)) < abs(a_(pivot, c))) pivot = r;
      }
      if (pivot == n_) throw std::domain_error("matrix is singular");
      bool others = false;
      for (std::size_t r = c; r < n_; ++r) {
        if (r == pivot || a_(r, c) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a_(r, c).get_mpz_t(), a_(pivot, c).get_mpz_t());
        add_multiple(r, pivot, -q);
        if (a_(r, c) != 0) others = true;
      }
      if (!others) {
        if (abs(a_(pivot, c)) != 1) throw std::domain_error("matrix is not in SL_n(Z)");
        return pivot;
      }
    }
  }

  IntMatrix a_;
  std::size_t n_;
  std::vector<Letter> ops_;
};

}  // namespace

HnfTrace hnf_trace(const IntMatrix& e) {
  if (e.dim() < 2) throw DimensionError("HNF factorization needs dimension >= 2");
  if (!is_sl_member(e)) throw std::domain_error("matrix is not in SL_n(Z)");
  RowReducer reducer(e);
  reducer.reduce();
  // T = op_m ... op_1
  std::vector<Letter> rev(reducer.ops().rbegin(), reducer.ops().rend());
  HnfTrace trace;
  trace.word = free_reduce(Word(std::move(rev)));
  trace.stats.transvection_count = reducer.ops().size();
  trace.stats.expanded_length = trace.word.length();
  return trace;
}

Word hnf_factor(const IntMatrix& e) { return invert_word(hnf_trace(e).word); }

}  // namespace wordfact
