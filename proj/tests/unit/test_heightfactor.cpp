#include "oracles.hpp"
#include "wordfact/heightfactor.hpp"

#include <doctest.h>

#include <set>

using namespace wordfact;

namespace {

const IntMatrix kA{{1, 0, 1, -1}, {1, 0, 0, 0}, {0, -1, 2, 0}, {0, -1, 0, 1}};
constexpr const char* kMinimalWord = "t[1,4]^-1*t[2,1]*t[3,2]^-1*t[1,2]^-1*t[2,3]^-1*t[4,2]^-1";

ReductionConfig plain(std::size_t depth) {
  ReductionConfig cfg;
  cfg.extension_depth = depth;
  cfg.stall_policy = StallPolicy::ReturnResidual;
  return cfg;
}

}  // namespace

TEST_SUITE("heightfactor") {
  TEST_CASE("every single-letter move from the worked example is uphill") {
    const auto gs = build_sl_elementary(4);
    const auto hs = one_step_heights(kA, *gs, HeightFn::full());
    CHECK(hs.size() == 48);
    for (std::size_t g = 0; g < gs->gen_count(); ++g) {
      CHECK(hs[2 * g] == oracle::squared_deviation(oracle::schoolbook(kA, gs->gen_matrix(g))));
      CHECK(hs[2 * g + 1] == oracle::squared_deviation(oracle::schoolbook(gs->gen_matrix(g), kA)));
    }
    for (const auto& h : hs) CHECK(h >= 7);
    const auto out = greedy_reduce(kA, *gs, plain(1));
    CHECK(out.stalled);
    CHECK(out.steps == 0);
    CHECK(out.residual == kA);
  }

  TEST_CASE("a length-2 product breaks the stall") {
    const auto gs = build_sl_elementary(4);
    ReductionConfig cfg = plain(2);
    cfg.max_steps = 1;
    const auto out = greedy_reduce(kA, *gs, cfg);
    REQUIRE(out.steps == 1);
    CHECK(out.extension_steps == 1);
    CHECK(out.height_trace.front() == 7);
    CHECK(out.height_trace.back() <= 6);
    CHECK(out.left.length() + out.right.length() == 2);
  }

  TEST_CASE("partial-product height profiles") {
    const auto gs = build_sl_elementary(4);
    const Word w = parse_word(kMinimalWord, *gs);
    std::vector<long> left, right;
    const auto runs = w.runs();
    for (std::size_t k = 1; k <= runs.size(); ++k) {
      const Word prefix(std::vector<Letter>(runs.begin(), runs.begin() + static_cast<long>(k)));
      const Word suffix(std::vector<Letter>(runs.end() - static_cast<long>(k), runs.end()));
      left.push_back(height_full(evaluate(prefix, *gs)).get_si());
      right.push_back(height_full(evaluate(suffix, *gs)).get_si());
    }
    CHECK(left == std::vector<long>{1, 2, 3, 5, 7, 7});
    CHECK(right == std::vector<long>{1, 2, 4, 6, 7, 7});
  }

  TEST_CASE("extension sets") {
    const auto gs = build_sl_elementary(3);
    const auto e1 = build_extension(*gs, 1);
    CHECK(e1->size() == gs->gen_count());
    const auto e2 = build_extension(*gs, 2);
    CHECK(e2->size() > e1->size());
    CHECK(build_extension(*gs, 2) == e2);
    std::set<std::string> keys;
    for (const auto& x : *e2) {
      CHECK_FALSE(x.matrix.is_identity());
      CHECK(evaluate(x.word, *gs) == x.matrix);
      CHECK(x.cost == x.word.length());
      CHECK(x.cost <= 2);
      CHECK(keys.insert(x.matrix.content_key()).second);
    }
    // t12 t21 and t21 t12 are distinct depth-2 entries; t12 t12 collapses to a power
    const auto truth = oracle::distances_by_words(*gs, 2);
    std::size_t nontrivial = 0;
    for (const auto& [k, d] : truth)
      if (d > 0) ++nontrivial;
    CHECK(e2->size() == nontrivial);
  }

  TEST_CASE("descent invariants on random inputs") {
    const auto gs = build_sl_elementary(3);
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<std::size_t> g(0, gs->gen_count() - 1);
    for (int t = 0; t < 20; ++t) {
      IntMatrix e = IntMatrix::identity(3);
      for (int s = 0; s < 25; ++s) e = e * gs->gen_matrix(g(rng));
      ReductionConfig cfg = plain(3);
      cfg.check_invariant = true;
      const auto out = greedy_reduce(e, *gs, cfg);
      CHECK(evaluate(out.left, *gs) * e * evaluate(out.right, *gs) == out.residual);
      CHECK(out.height_trace.size() == out.steps + 1);
      for (std::size_t i = 1; i < out.height_trace.size(); ++i) CHECK(out.height_trace[i] < out.height_trace[i - 1]);
      CHECK(out.final_height() == height_full(out.residual));
      if (!out.stalled) {
        CHECK(out.residual.is_identity());
        CHECK(evaluate(assemble_word(out), *gs) == e);
      }
      CHECK(evaluate(height_factor_sl(e), *gs) == e);
    }
  }

  TEST_CASE("worked example through the full factorizer") {
    const auto gs = build_sl_elementary(4);
    const Word w = height_factor_sl(kA);
    CHECK(evaluate(w, *gs) == kA);
    CHECK(w.length() <= 12);
    CHECK(height_factor_sl(IntMatrix::identity(4)).empty());
  }

  TEST_CASE("stall policies") {
    const auto gs = build_sl_elementary(4);
    ReductionConfig cfg = plain(1);
    cfg.stall_policy = StallPolicy::Error;
    try {
      greedy_reduce(kA, *gs, cfg);
      FAIL("expected a stall");
    } catch (const HeuristicStall& s) {
      CHECK(s.residual() == kA);
      CHECK(s.height() == 7);
      CHECK(s.stage() == 0);
    }
    cfg.stall_policy = StallPolicy::FallbackHNF;
    const auto out = greedy_reduce(kA, *gs, cfg);
    CHECK(out.fallback_applied);
    CHECK(out.residual.is_identity());
    CHECK(evaluate(assemble_word(out), *gs) == kA);
  }

  TEST_CASE("height functions") {
    const IntMatrix y1 = transvection(4, 0, 2, -1);
    CHECK(HeightFn::full()(y1) == 1);
    CHECK(HeightFn::offblock()(y1) == 1);
    CHECK(HeightFn::rowlocal(0)(y1) == 0);
    CHECK(HeightFn::rowlocal(1)(kA) == height_rowlocal(kA, 1));
  }
}
