#include "oracles.hpp"
#include "wordfact/harness.hpp"

#include <doctest.h>

#include <sstream>

using namespace wordfact;

TEST_SUITE("harness") {
  TEST_CASE("random words are freely reduced with the requested length") {
    const auto gs = build_birman(2);
    std::vector<std::size_t> first(gs->gen_count(), 0);
    for (std::uint64_t seed = 0; seed < 10'000; ++seed) {
      const Word w = random_reduced_word(*gs, 12, seed);
      REQUIRE(w.length() == 12);
      REQUIRE(w.run_count() <= 12);
      REQUIRE(free_reduce(w).length() == 12);
      const auto& l = w.runs()[0];
      ++first[GenSet::gen_index(l.symbol, l.exponent < 0)];
    }
    // first letters are uniform over the 10 letters
    for (auto c : first) CHECK(c > 850);
    CHECK(random_reduced_word(*gs, 0, 3).empty());
    CHECK(random_reduced_word(*gs, 40, 99) == random_reduced_word(*gs, 40, 99));
    CHECK_FALSE(random_reduced_word(*gs, 40, 99) == random_reduced_word(*gs, 40, 100));
  }

  TEST_CASE("uniform_below") {
    std::mt19937_64 rng(1);
    std::vector<int> c(7, 0);
    for (int i = 0; i < 7000; ++i) {
      const auto x = uniform_below(rng, 7);
      REQUIRE(x < 7);
      ++c[x];
    }
    for (int v : c) CHECK(v > 850);
    std::uint64_t s = 0;
    CHECK(splitmix64(s) != splitmix64(s));
    CHECK(sample_seed(1, 20, 0) != sample_seed(1, 20, 1));
    CHECK(sample_seed(1, 20, 0) != sample_seed(1, 50, 0));
  }

  TEST_CASE("bench records") {
    BenchConfig cfg;
    cfg.group = GroupKind::sl(3);
    cfg.lengths = {10, 20};
    cfg.samples = 4;
    cfg.algorithms = {BenchAlgorithm::Height, BenchAlgorithm::Hnf};
    cfg.seed = 5;
    const auto recs = bench_run(cfg);
    REQUIRE(recs.size() == 16);
    for (const auto& r : recs) {
      CHECK(r.verified);
      CHECK_FALSE(r.stall);
      CHECK(r.q == doctest::Approx(100.0 * static_cast<double>(r.output_len) / static_cast<double>(r.input_len)));
      CHECK(r.wall_ms == 0);
    }
    CHECK(recs[0].algorithm == "height");
    CHECK(recs[1].algorithm == "hnf");
    CHECK(recs[0].input_len == 10);
    CHECK(recs.back().input_len == 20);
    const std::string csv = records_to_csv(cfg, recs);
    CHECK(csv == records_to_csv(cfg, bench_run(cfg)));
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    CHECK(line.rfind('#', 0) == 0);
    std::getline(is, line);
    CHECK(line == "group,dim,input_len,sample,algorithm,output_len,q,verified,stall,wall_ms");
    cfg.threads = 3;
    CHECK(records_to_csv(cfg, bench_run(cfg)) == csv);
  }

  TEST_CASE("trivial inputs") {
    BenchConfig cfg;
    cfg.lengths = {1};
    cfg.samples = 3;
    const auto recs = bench_run(cfg);
    for (const auto& r : recs) {
      CHECK(r.verified);
      CHECK(r.output_len == 1);
      CHECK(r.q == 100);
    }
  }

  TEST_CASE("sample counts") {
    BenchConfig cfg;
    CHECK(cfg.samples_for(20) == 50);
    CHECK(cfg.samples_for(100) == 10);
    CHECK(cfg.samples_for(100000) == 1);
    cfg.samples = 7;
    CHECK(cfg.samples_for(100) == 7);
  }

  TEST_CASE("ratio histogram") {
    std::vector<BenchRecord> recs(10);
    for (auto& r : recs) {
      r.input_len = 100;
      r.output_len = 55;
      r.q = 55;
    }
    auto h = bin_ratios(recs);
    CHECK(h.total == 10);
    CHECK(h.percent(5) == 100);
    CHECK(h.percent(4) == 0);
    recs[0].output_len = 2000;
    recs[0].q = 2000;
    recs[1].output_len = 0;
    recs[1].q = 0;
    h = bin_ratios(recs);
    CHECK(h.overflow == 1);
    CHECK(h.counts[0] == 1);
    std::size_t sum = h.overflow;
    for (auto c : h.counts) sum += c;
    CHECK(sum == h.total);
    CHECK(median_q(recs) == 55);
    CHECK(h.to_csv().find("bin") != std::string::npos);
  }

  TEST_CASE("config validation") {
    BenchConfig cfg;
    cfg.lengths = {};
    CHECK_THROWS(cfg.validate());
    cfg.lengths = {10};
    cfg.algorithms = {BenchAlgorithm::Symplectic};
    CHECK_THROWS(cfg.validate());
    cfg.group = GroupKind::sp_of_dim(4);
    CHECK_NOTHROW(cfg.validate());
    CHECK_THROWS(GroupKind::sp_of_dim(5));
    CHECK_THROWS(parse_algorithm("fast"));
    CHECK(algorithm_name(parse_algorithm("hnf")) == "hnf");
  }
}
