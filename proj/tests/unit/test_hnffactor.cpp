#include "oracles.hpp"
#include "wordfact/hnffactor.hpp"

#include <doctest.h>

using namespace wordfact;

namespace {

IntMatrix random_sl(std::size_t n, std::size_t len, std::mt19937_64& rng) {
  const auto gs = build_sl_elementary(n);
  std::uniform_int_distribution<std::size_t> g(0, gs->gen_count() - 1);
  IntMatrix e = IntMatrix::identity(n);
  for (std::size_t s = 0; s < len; ++s) e = e * gs->gen_matrix(g(rng));
  return e;
}

}  // namespace

TEST_SUITE("hnffactor") {
  TEST_CASE("trivial and single transvections") {
    CHECK(hnf_factor(IntMatrix::identity(3)).empty());
    const auto gs = build_sl_elementary(2);
    const IntMatrix t5{{1, 5}, {0, 1}};
    const Word w = hnf_factor(t5);
    CHECK(evaluate(w, *gs) == t5);
    CHECK(w.length() == 5);
  }

  TEST_CASE("random round trips") {
    std::mt19937_64 rng(6);
    for (std::size_t n = 2; n <= 5; ++n) {
      const auto gs = build_sl_elementary(n);
      for (int t = 0; t < 20; ++t) {
        const IntMatrix e = random_sl(n, 30, rng);
        const HnfTrace tr = hnf_trace(e);
        CHECK(evaluate(tr.word, *gs) * e == IntMatrix::identity(n));
        CHECK(tr.stats.expanded_length == tr.word.length());
        const Word w = hnf_factor(e);
        CHECK(evaluate(w, *gs) == e);
        for (const auto& l : w.runs()) CHECK(gs->symbol(l.symbol).label.kind == GenLabel::Kind::Elementary);
      }
    }
  }

  TEST_CASE("large entries") {
    const auto gs = build_sl_elementary(2);
    IntMatrix e = IntMatrix::identity(2);
    for (int i = 0; i < 30; ++i) e = e * IntMatrix{{2, 1}, {1, 1}};
    CHECK(evaluate(hnf_factor(e), *gs) == e);
  }

  TEST_CASE("rejects non-members") {
    CHECK_THROWS_AS(hnf_factor(IntMatrix{{2, 0}, {0, 1}}), std::domain_error);
    CHECK_THROWS_AS(hnf_factor(IntMatrix{{-1, 0}, {0, 1}}), std::domain_error);
  }
}
