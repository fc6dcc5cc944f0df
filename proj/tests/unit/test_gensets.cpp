#include "oracles.hpp"
#include "wordfact/gensets.hpp"

#include <doctest.h>

using namespace wordfact;

namespace {

IntMatrix product(std::initializer_list<IntMatrix> ms) {
  IntMatrix out = IntMatrix::identity(ms.begin()->dim());
  for (const auto& m : ms) out = oracle::schoolbook(out, m);
  return out;
}

}  // namespace

TEST_SUITE("gensets") {
  TEST_CASE("elementary sets") {
    CHECK(build_sl_elementary(2)->gen_count() == 4);
    CHECK(build_sl_elementary(4)->gen_count() == 24);
    const auto gs = build_sl_elementary(4);
    for (std::size_t s = 0; s < gs->symbol_count(); ++s) {
      CHECK(is_sl_member(gs->symbol(s).matrix));
      const auto& l = gs->symbol(s).label;
      CHECK(gs->symbol(s).matrix == oracle::elementary(4, l.i, l.j));
      CHECK(elementary_symbol(4, l.i, l.j) == s);
    }
    CHECK_THROWS(build_sl_elementary(1));
  }

  TEST_CASE("Birman generators") {
    const auto b = build_birman(2);
    CHECK(b->gen_count() == 2 * (2 * 2 + 1));
    CHECK(b->symbol(*b->find(GenLabel::y(1))).matrix == IntMatrix{{1, 0, -1, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    for (std::size_t n = 2; n <= 4; ++n) {
      const auto bn = build_birman(n);
      CHECK(bn->gen_count() == 2 * (2 * n + n - 1));
      for (std::size_t s = 0; s < bn->symbol_count(); ++s) {
        CHECK(is_sp_member(bn->symbol(s).matrix));
        CHECK(oracle::preserves_form(bn->symbol(s).matrix));
      }
      const int dim = static_cast<int>(2 * n);
      for (int i = 1; i <= static_cast<int>(n); ++i) {
        CHECK(bn->symbol(*bn->find(GenLabel::y(i))).matrix == oracle::elementary(dim, i, n + i, -1));
        CHECK(bn->symbol(*bn->find(GenLabel::u(i))).matrix == oracle::elementary(dim, n + i, i, 1));
      }
      // Z_i = (t_{i+1,n+i} / t_{i+1,n+i+1})^{t_{i,i+1}} with a/b = a b^-1 and a^b = b^-1 a b
      for (int i = 1; i < static_cast<int>(n); ++i) {
        const IntMatrix q = oracle::schoolbook(oracle::elementary(dim, i + 1, n + i),
                                               unimodular_inverse(oracle::elementary(dim, i + 1, n + i + 1)));
        const IntMatrix t = oracle::elementary(dim, i, i + 1);
        const IntMatrix z = product({unimodular_inverse(t), q, t});
        CHECK(z == birman_z_matrix(i, n));
        CHECK(bn->symbol(*bn->find(GenLabel::z(i))).matrix == z);
      }
    }
  }

  TEST_CASE("pair words") {
    CHECK(spair_word(1, 2, 2).length() == 7);
    CHECK(spair_word(2, 1, 2).length() == 7);
    const auto b3 = build_birman(3);
    const IntMatrix sp13 =
        oracle::schoolbook(oracle::elementary(6, 1, 3), unimodular_inverse(oracle::elementary(6, 6, 4)));
    CHECK(evaluate(spair_word(1, 3, 3), *b3) == sp13);
    const auto b2 = build_birman(2);
    CHECK(evaluate(toppair_word(1, 2, 2), *b2) == IntMatrix{{1, 0, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    CHECK(evaluate(botpair_word(1, 2, 2), *b2) == IntMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 1, 1, 0}, {1, 0, 0, 1}});
  }

  TEST_CASE("every pair identity for n = 2..4") {
    for (std::size_t n = 2; n <= 4; ++n) {
      const auto b = build_birman(n);
      const int top = static_cast<int>(n), dim = static_cast<int>(2 * n);
      for (int i = 1; i <= top; ++i)
        for (int j = 1; j <= top; ++j) {
          if (i == j) continue;
          const IntMatrix want = oracle::schoolbook(oracle::elementary(dim, i, j),
                                                    unimodular_inverse(oracle::elementary(dim, n + j, n + i)));
          const IntMatrix got = evaluate(spair_word(i, j, n), *b);
          CHECK(got == want);
          CHECK(oracle::preserves_form(got));
          // diag(I + E_ij, (I + E_ij)^-T)
          CHECK(height_offblock(got) == 0);
          if (i < j) {
            const IntMatrix tp = oracle::schoolbook(oracle::elementary(dim, i, n + j), oracle::elementary(dim, j, n + i));
            const IntMatrix bp = oracle::schoolbook(oracle::elementary(dim, n + i, j), oracle::elementary(dim, n + j, i));
            CHECK(evaluate(toppair_word(i, j, n), *b) == tp);
            CHECK(evaluate(botpair_word(i, j, n), *b) == bp);
            CHECK(oracle::preserves_form(tp));
            CHECK(oracle::preserves_form(bp));
          }
        }
    }
  }

  TEST_CASE("extended set") {
    const auto ext = build_extended_symplectic(2);
    CHECK(ext->gen_count() == 18);
    for (std::size_t n = 2; n <= 4; ++n) {
      const auto e = build_extended_symplectic(n);
      CHECK(e->gen_count() == 2 * (3 * n - 1 + n * (n - 1) + n * (n - 1)));
      for (std::size_t s = 0; s < e->symbol_count(); ++s) {
        const auto& g = e->symbol(s);
        CHECK(is_sp_member(g.matrix));
        if (g.expansion) CHECK(evaluate(*g.expansion, *e->base()) == g.matrix);
      }
    }
  }

  TEST_CASE("negator") {
    for (std::size_t n = 2; n <= 4; ++n) {
      const auto b = build_birman(n);
      const Word w = negator_word(n);
      CHECK(w.length() == 6);
      CHECK(format_word(w, *b) == "Y1^2*U1*Y1^2*U1");
      const IntMatrix v = evaluate(w, *b);
      IntMatrix want = IntMatrix::identity(2 * n);
      want(0, 0) = -1;
      want(n, n) = -1;
      CHECK(v == want);
      CHECK(v * v == IntMatrix::identity(2 * n));
      CHECK(is_sp_member(v));
      CHECK(height_offblock(v) == 0);
    }
  }

  TEST_CASE("genset specs") {
    CHECK(genset_from_spec("sl:3")->dim() == 3);
    CHECK(genset_from_spec("birman:4")->gen_count() == 10);
    CHECK(genset_from_spec("extended:4")->gen_count() == 18);
    CHECK_THROWS(genset_from_spec("birman:5"));
    CHECK_THROWS(genset_from_spec("nope:4"));
    CHECK_THROWS(genset_from_spec("sl"));
  }
}
