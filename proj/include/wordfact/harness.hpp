#pragma once

// Random-word benchmarks: seeded inputs, factorization by each algorithm,
// verification, q-ratio binning and CSV output.

#include "wordfact/gensets.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace wordfact {

inline constexpr const char* kRngName = "splitmix64+mt19937_64";

std::uint64_t splitmix64(std::uint64_t& state);

/// Independent stream seed for one (length, sample) cell.
std::uint64_t sample_seed(std::uint64_t seed, std::size_t length, std::size_t sample);

/// Uniform in [0, bound) by rejection, independent of the standard library's
/// distribution implementations.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Uniform letters from the inverse-closed alphabet, never the inverse of the
/// previous letter, so the word is freely reduced with exactly `length` letters.
Word random_reduced_word(const GenSet& gs, std::size_t length, std::uint64_t rng_seed);

enum class BenchAlgorithm { Hnf, Height, Symplectic };
std::string algorithm_name(BenchAlgorithm a);
BenchAlgorithm parse_algorithm(std::string_view name);

/// The generating set random inputs are drawn from: elementary for SL,
/// Birman for Sp.
std::shared_ptr<const GenSet> input_genset(const GroupKind& group);

struct BenchConfig {
  GroupKind group = GroupKind::sl(3);
  std::vector<std::size_t> lengths{20};
  /// Unset: 20000 / len / divisor (at least 1).
  std::optional<std::size_t> samples;
  std::size_t divisor = 20;
  std::vector<BenchAlgorithm> algorithms{BenchAlgorithm::Height};
  std::uint64_t seed = 1;
  std::size_t extension_depth = 3;
  bool record_timing = false;
  std::size_t threads = 1;

  std::size_t samples_for(std::size_t length) const;
  void validate() const;
};

struct BenchRecord {
  std::string group;
  std::size_t dim = 0;
  std::size_t input_len = 0;
  std::size_t sample = 0;
  std::string algorithm;
  std::uint64_t output_len = 0;
  double q = 0;
  bool verified = false;
  bool stall = false;
  double wall_ms = 0;
};

/// Records sorted by (input_len, sample, algorithm order in the config).
std::vector<BenchRecord> bench_run(const BenchConfig& cfg);

std::string records_to_csv(const BenchConfig& cfg, const std::vector<BenchRecord>& records);

struct RatioHistogram {
  std::size_t bin_width = 10;
  std::vector<std::size_t> counts;  // [k*w, (k+1)*w)
  std::size_t overflow = 0;         // q >= counts.size() * w
  std::size_t total = 0;

  double percent(std::size_t bin) const;
  double overflow_percent() const;
  std::string to_csv() const;
};

/// Bin index is floor(q / 10) computed exactly from the integer lengths.
RatioHistogram bin_ratios(const std::vector<BenchRecord>& records, std::size_t upper_edge = 1000);

double median_q(std::vector<BenchRecord> records);

}  // namespace wordfact
