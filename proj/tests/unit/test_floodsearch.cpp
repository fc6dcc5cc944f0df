#include "oracles.hpp"
#include "wordfact/floodsearch.hpp"
#include "wordfact/gensets.hpp"

#include <doctest.h>

using namespace wordfact;

namespace {

const IntMatrix kA{{1, 0, 1, -1}, {1, 0, 0, 0}, {0, -1, 2, 0}, {0, -1, 0, 1}};

}  // namespace

TEST_SUITE("floodsearch") {
  TEST_CASE("identity and single letters") {
    const auto gs = build_sl_elementary(3);
    const auto id = flood_factor(*gs, IntMatrix::identity(3), {1000, true});
    REQUIRE(id.word);
    CHECK(id.word->empty());
    CHECK(id.certified_minimal);
    for (std::size_t g = 0; g < gs->gen_count(); ++g) {
      const auto out = flood_factor(*gs, gs->gen_matrix(g), {1000, true});
      REQUIRE(out.word);
      CHECK(*out.word == Word::of_gen(g));
      CHECK(out.stage == 1);
    }
  }

  TEST_CASE("the length-6 element of SL4") {
    const auto gs = build_sl_elementary(4);
    const auto out = flood_factor(*gs, kA, {200'000, true});
    REQUIRE(out.word);
    CHECK(out.word->length() == 6);
    CHECK(out.certified_minimal);
    CHECK(evaluate(*out.word, *gs) == kA);
    CHECK(out.stored_elements <= 200'000);
  }

  TEST_CASE("budget exhaustion is an outcome") {
    const auto gs = build_sl_elementary(4);
    const auto out = flood_factor(*gs, kA, {50, false});
    CHECK(out.exhausted());
    CHECK(out.stored_elements <= 50);
    CHECK_FALSE(min_word_length(*gs, kA, {50, true}).has_value());
  }

  TEST_CASE("minimal lengths equal brute-force distances") {
    for (std::size_t n = 2; n <= 3; ++n) {
      const auto gs = build_sl_elementary(n);
      const std::size_t radius = n == 2 ? 4 : 3;
      const auto truth = oracle::distances_by_words(*gs, radius);
      CayleyBall<IntegralCayley> ball{IntegralCayley(*gs)};
      ball.grow(1'000'000);
      for (const auto& [key, d] : truth) {
        const IntMatrix e = IntMatrix::from_content_key(key);
        const auto out = ball.query(e, true);
        REQUIRE(out.word);
        CHECK(out.word->length() == d);
        CHECK(evaluate(*out.word, *gs) == e);
      }
      // stage-2 answers once the ball is exhausted
      const auto fresh = oracle::distances_by_words(*gs, 2);
      for (const auto& [key, d] : fresh) {
        const auto len = min_word_length(*gs, IntMatrix::from_content_key(key), {1'000'000, true});
        REQUIRE(len);
        CHECK(*len == d);
      }
    }
  }

  TEST_CASE("stage two meets in the middle") {
    const auto gs = build_sl_elementary(3);
    CayleyBall<IntegralCayley> ball{IntegralCayley(*gs)};
    ball.grow(500);
    const std::size_t r = ball.completed_radius();
    CHECK(r >= 1);
    const auto truth = oracle::distances_by_words(*gs, 4);
    std::size_t hits = 0;
    for (const auto& [key, d] : truth) {
      if (d <= r + 1) continue;
      const IntMatrix e = IntMatrix::from_content_key(key);
      const auto out = ball.query(e, true);
      if (!out.word) continue;
      ++hits;
      CHECK(out.stage == 2);
      CHECK(evaluate(*out.word, *gs) == e);
      CHECK(out.word->length() >= d);
      if (out.certified_minimal) CHECK(out.word->length() == d);
    }
    CHECK(hits > 0);
  }

  TEST_CASE("symplectic pair word is minimal") {
    const auto b = build_birman(2);
    const auto out = flood_factor(*b, spair_matrix(1, 2, 2), {200'000, true});
    REQUIRE(out.word);
    CHECK(out.word->length() == 7);
    CHECK(out.certified_minimal);
  }

  TEST_CASE("deterministic words") {
    const auto gs = build_sl_elementary(3);
    const IntMatrix e = transvection(3, 0, 1, 2) * transvection(3, 2, 0, -1) * transvection(3, 1, 2);
    const auto a = flood_factor(*gs, e, {100'000, true});
    const auto b = flood_factor(*gs, e, {100'000, true});
    REQUIRE(a.word);
    CHECK(*a.word == *b.word);
  }

  TEST_CASE("finite closure") {
    // the images of the SL2 generators mod 2 close up as the whole group of order 6
    struct Mod2 {
      using Element = IntMatrix;
      const GenSet* gs;
      Element identity() const { return IntMatrix::identity(2); }
      std::size_t gen_count() const { return gs->gen_count(); }
      void step(const Element& a, std::size_t g, Element& out) const { out = mod_reduce(a * gs->gen_matrix(g), 2); }
      void key(const Element& a, std::string& out) const { a.append_content_key(out); }
      Element decode(std::string_view k) const { return IntMatrix::from_content_key(k); }
      Element multiply(const Element& a, const Element& b) const { return mod_reduce(a * b, 2); }
    };
    const auto gs = build_sl_elementary(2);
    CayleyBall<Mod2> ball{Mod2{gs.get()}};
    ball.grow(1000);
    CHECK(ball.closed());
    CHECK(ball.size() == oracle::sl_order_brute(2, 2));
  }
}
