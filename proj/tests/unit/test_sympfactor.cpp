#include "oracles.hpp"
#include "wordfact/harness.hpp"
#include "wordfact/sympfactor.hpp"

#include <doctest.h>

using namespace wordfact;

namespace {

constexpr const char* kG34 = "U1*(U2^-1*U1*U2^-1)^2*Y1^-1*Y2^-1*U2^-1*Y2^-1*Z1*U2*Y2";

IntMatrix block_diag(const IntMatrix& m) {
  const std::size_t n = m.dim();
  const IntMatrix lower = transpose(unimodular_inverse(m));
  IntMatrix out(2 * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      out(r, c) = m(r, c);
      out(n + r, n + c) = lower(r, c);
    }
  return out;
}

}  // namespace

TEST_SUITE("sympfactor") {
  TEST_CASE("block splitting") {
    const IntMatrix m{{2, 1}, {1, 1}};
    const auto s = split_block_diagonal(block_diag(m));
    CHECK(s.minor == m);
    CHECK(s.det_sign == 1);
    const auto b = build_birman(2);
    const auto neg = split_block_diagonal(evaluate(negator_word(2), *b));
    CHECK(neg.det_sign == -1);
    CHECK_THROWS_AS(split_block_diagonal(transvection(4, 0, 2, -1)), std::domain_error);
    CHECK_THROWS_AS(split_block_diagonal(transvection(4, 0, 1)), std::domain_error);
    CHECK_THROWS_AS(split_block_diagonal(IntMatrix::identity(3)), DimensionError);
  }

  TEST_CASE("lifting SL words to block-diagonal words") {
    for (std::size_t n = 2; n <= 3; ++n) {
      const auto sl = build_sl_elementary(n);
      const auto ext = build_extended_symplectic(n);
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Word w = random_reduced_word(*sl, 15, seed);
        const Word lifted = lift_sl_word(w, n);
        CHECK(lifted.length() == w.length());
        CHECK(evaluate(lifted, *ext) == block_diag(evaluate(w, *sl)));
        for (const auto& l : lifted.runs()) CHECK(ext->symbol(l.symbol).label.kind == GenLabel::Kind::SPair);
      }
    }
  }

  TEST_CASE("worked examples") {
    const auto b = build_birman(2);
    CHECK(symplectic_factor(IntMatrix::identity(4)).word.empty());
    const IntMatrix g1 = evaluate(parse_word(kG34, *b), *b);
    const auto res = symplectic_factor(g1);
    CHECK(evaluate(res.word, *res.alphabet) == g1);
    CHECK(res.word.length() <= 30);
    CHECK(res.report.birman_length == res.word.length());
    const auto y = symplectic_factor(evaluate(parse_word("Y2^-1", *b), *b));
    CHECK(format_word(y.word, *y.alphabet) == "Y2^-1");
  }

  TEST_CASE("stage residuals") {
    for (std::size_t n = 2; n <= 3; ++n) {
      const auto b = build_birman(n);
      const auto ext = build_extended_symplectic(n);
      for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const IntMatrix e = evaluate(random_reduced_word(*b, 30, seed), *b);
        for (bool prepass : {true, false}) {
          SymplecticOptions opts;
          opts.full_height_prepass = prepass;
          opts.letters = OutputLetters::Extended;
          SymplecticResult res;
          try {
            res = symplectic_factor(e, opts);
          } catch (const HeuristicStall& s) {
            CHECK_FALSE(prepass);
            CHECK(is_sp_member(s.residual()));
            continue;
          }
          CHECK(evaluate(res.word, *ext) == e);
          CHECK(res.word.length() == res.report.extended_length);
          CHECK(expanded_length(res.word, *ext) >= res.word.length());
          const auto& st = res.report.stages;
          CHECK(st.size() == 2 * n);
          CHECK(res.report.prepass.has_value() == prepass);
          for (std::size_t i = 1; i <= st.size(); ++i) {
            const IntMatrix& r = st[i - 1].residual;
            CHECK(is_sp_member(r));
            CHECK(height_rowlocal(r, i) == 0);
          }
          CHECK(height_offblock(st.back().residual) == 0);
          const auto j = res.report.to_json(*ext);
          CHECK(j.at("stages").size() == 2 * n);
        }
        const auto birman = symplectic_factor(e);
        CHECK(birman.alphabet == b);
        CHECK(evaluate(birman.word, *b) == e);
      }
    }
  }

  TEST_CASE("rejects non-symplectic input") {
    CHECK_THROWS(symplectic_factor(transvection(4, 0, 1)));
    CHECK_THROWS(symplectic_factor(IntMatrix::identity(3)));
  }
}
