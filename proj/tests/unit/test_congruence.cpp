#include "oracles.hpp"
#include "wordfact/congruence.hpp"
#include "wordfact/gensets.hpp"

#include <doctest.h>

using namespace wordfact;

TEST_SUITE("congruence") {
  TEST_CASE("orders of SL_n mod p") {
    CHECK(sl_order_mod_p(2, 3) == 24);
    CHECK(sl_order_mod_p(2, 5) == 120);
    CHECK(sl_order_mod_p(3, 2) == 168);
    CHECK(sl_order_mod_p(2, 3) == oracle::sl_order_brute(2, 3));
    CHECK(sl_order_mod_p(2, 5) == oracle::sl_order_brute(2, 5));
    CHECK(sl_order_mod_p(3, 2) == oracle::sl_order_brute(3, 2));
    CHECK(sl_order_mod_p(2, 7) == oracle::sl_order_brute(2, 7));
    CHECK_THROWS(sl_order_mod_p(1, 3));
    CHECK_THROWS(sl_order_mod_p(2, 4));
  }

  TEST_CASE("prime stepping") {
    CHECK(next_prime(2) == 3);
    CHECK(next_prime(3) == 5);
    CHECK(next_prime(7) == 11);
    CHECK(next_prime(89) == 97);
  }

  TEST_CASE("modular images have the group order") {
    const auto gs = build_sl_elementary(2);
    for (std::uint32_t p : {3u, 5u, 7u}) {
      CayleyBall<ModularCayley> ball{ModularCayley(*gs, p)};
      ball.grow(1'000'000);
      CHECK(ball.closed());
      CHECK(ball.size() == sl_order_mod_p(2, p));
    }
  }

  TEST_CASE("escalation to a larger prime") {
    const auto gs = build_sl_elementary(2);
    const IntMatrix e{{1, 2}, {0, 1}};
    const auto out = congruence_factor(gs, e);
    REQUIRE(out.word);
    CHECK(evaluate(*out.word, *gs) == e);
    REQUIRE(out.attempts.size() >= 2);
    CHECK(out.attempts.front().prime == 3);
    CHECK(out.attempts.front().result == PrimeAttemptResult::LiftMismatch);
    CHECK(out.attempts.back().prime == 5);
    CHECK(out.attempts.back().result == PrimeAttemptResult::Lifted);
  }

  TEST_CASE("schedule exhaustion is an outcome") {
    const auto gs = build_sl_elementary(2);
    PrimeSchedule ps;
    ps.order_cap = 30;
    const auto out = congruence_factor(gs, IntMatrix{{1, 9}, {0, 1}}, ps);
    CHECK_FALSE(out.word);
    CHECK(out.attempts.size() == 1);
  }

  TEST_CASE("random SL2 elements lift exactly") {
    const auto gs = build_sl_elementary(2);
    CongruenceFactorizer f(gs, {});
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::size_t> g(0, gs->gen_count() - 1);
    std::size_t found = 0;
    for (int t = 0; t < 30; ++t) {
      IntMatrix e = IntMatrix::identity(2);
      for (int s = 0; s < 8; ++s) e = e * gs->gen_matrix(g(rng));
      const auto out = f.factor(e);
      if (!out.word) continue;
      ++found;
      CHECK(evaluate(*out.word, *gs) == e);
    }
    CHECK(found > 0);
  }
}
