#include "wordfact/harness.hpp"

#include "wordfact/heightfactor.hpp"
#include "wordfact/hnffactor.hpp"
#include "wordfact/sympfactor.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <thread>

namespace wordfact {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t sample_seed(std::uint64_t seed, std::size_t length, std::size_t sample) {
  std::uint64_t s = seed;
  std::uint64_t h = splitmix64(s);
  s = h ^ static_cast<std::uint64_t>(length);
  h = splitmix64(s);
  s = h ^ static_cast<std::uint64_t>(sample);
  return splitmix64(s);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

Word random_reduced_word(const GenSet& gs, std::size_t length, std::uint64_t rng_seed) {
  if (length > 0 && gs.gen_count() < 2) throw std::invalid_argument("generating set has no letters");
  std::mt19937_64 rng(rng_seed);
  Word w;
  std::size_t prev = 0;
  for (std::size_t k = 0; k < length; ++k) {
    std::size_t g;
    if (k == 0) {
      g = uniform_below(rng, gs.gen_count());
    } else {
      // uniform over the alphabet minus the inverse of the previous letter
      g = uniform_below(rng, gs.gen_count() - 1);
      if (g >= GenSet::inverse_index(prev)) ++g;
    }
    w.push_back(Word::of_gen(g).runs()[0]);
    prev = g;
  }
  return free_reduce(w);
}

std::string algorithm_name(BenchAlgorithm a) {
  switch (a) {
    case BenchAlgorithm::Hnf: return "hnf";
    case BenchAlgorithm::Height: return "height";
    case BenchAlgorithm::Symplectic: return "symplectic";
  }
  return "?";
}

BenchAlgorithm parse_algorithm(std::string_view name) {
  if (name == "hnf") return BenchAlgorithm::Hnf;
  if (name == "height") return BenchAlgorithm::Height;
  if (name == "symplectic") return BenchAlgorithm::Symplectic;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "' (hnf, height, symplectic)");
}

std::shared_ptr<const GenSet> input_genset(const GroupKind& group) {
  return group.family == GroupFamily::SL ? build_sl_elementary(group.n) : build_birman(group.n);
}

std::size_t BenchConfig::samples_for(std::size_t length) const {
  if (samples) return *samples;
  return std::max<std::size_t>(1, 20000 / length / std::max<std::size_t>(1, divisor));
}

void BenchConfig::validate() const {
  if (lengths.empty()) throw std::invalid_argument("no input lengths");
  for (auto l : lengths)
    if (l == 0) throw std::invalid_argument("input lengths must be positive");
  if (samples && *samples == 0) throw std::invalid_argument("samples must be at least 1");
  if (algorithms.empty()) throw std::invalid_argument("no algorithms");
  if (group.n < (group.family == GroupFamily::SL ? 2u : 1u)) throw std::invalid_argument("group too small");
  for (auto a : algorithms) {
    const bool sp = group.family == GroupFamily::Sp;
    if (sp != (a == BenchAlgorithm::Symplectic))
      throw std::invalid_argument(algorithm_name(a) + " does not apply to " + group.name());
  }
}

namespace {

struct Task {
  std::size_t length;
  std::size_t sample;
};

std::vector<BenchRecord> run_task(const BenchConfig& cfg, const GenSet& source, const Task& t) {
  const Word w = random_reduced_word(source, t.length, sample_seed(cfg.seed, t.length, t.sample));
  const IntMatrix m = evaluate(w, source);
  std::vector<BenchRecord> out;
  for (const auto alg : cfg.algorithms) {
    BenchRecord r;
    r.group = cfg.group.name();
    r.dim = m.dim();
    r.input_len = t.length;
    r.sample = t.sample;
    r.algorithm = algorithm_name(alg);
    const auto start = std::chrono::steady_clock::now();
    try {
      switch (alg) {
        case BenchAlgorithm::Hnf: {
          const auto gs = build_sl_elementary(m.dim());
          const Word f = hnf_factor(m);
          r.output_len = f.length();
          r.verified = evaluate(f, *gs) == m;
          break;
        }
        case BenchAlgorithm::Height: {
          const auto gs = build_sl_elementary(m.dim());
          ReductionConfig rc;
          rc.extension_depth = cfg.extension_depth;
          const auto red = greedy_reduce(m, *gs, rc);
          const Word f = assemble_word(red);
          r.output_len = f.length();
          r.stall = red.fallback_applied;
          r.verified = evaluate(f, *gs) == m;
          break;
        }
        case BenchAlgorithm::Symplectic: {
          SymplecticOptions so;
          so.extension_depth = cfg.extension_depth;
          const auto res = symplectic_factor(m, so);
          r.output_len = res.word.length();
          r.verified = evaluate(res.word, *res.alphabet) == m;
          break;
        }
      }
    } catch (const HeuristicStall&) {
      r.stall = true;
      r.verified = false;
    } catch (const std::overflow_error&) {
      r.verified = false;
    }
    if (cfg.record_timing)
      r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r.q = 100.0 * static_cast<double>(r.output_len) / static_cast<double>(r.input_len);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<BenchRecord> bench_run(const BenchConfig& cfg) {
  cfg.validate();
  const auto source = input_genset(cfg.group);
  std::vector<Task> tasks;
  for (auto len : cfg.lengths)
    for (std::size_t s = 0; s < cfg.samples_for(len); ++s) tasks.push_back({len, s});

  std::vector<std::vector<BenchRecord>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) results[i] = run_task(cfg, *source, tasks[i]);
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(cfg.threads, tasks.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<BenchRecord> records;
  for (auto& r : results) records.insert(records.end(), r.begin(), r.end());
  const auto rank = [&](const std::string& alg) {
    for (std::size_t i = 0; i < cfg.algorithms.size(); ++i)
      if (algorithm_name(cfg.algorithms[i]) == alg) return i;
    return cfg.algorithms.size();
  };
  std::stable_sort(records.begin(), records.end(), [&](const BenchRecord& a, const BenchRecord& b) {
    if (a.input_len != b.input_len) return a.input_len < b.input_len;
    if (a.sample != b.sample) return a.sample < b.sample;
    return rank(a.algorithm) < rank(b.algorithm);
  });
  return records;
}

std::string records_to_csv(const BenchConfig& cfg, const std::vector<BenchRecord>& records) {
  std::ostringstream os;
  os << "# seed=" << cfg.seed << ",rng=" << kRngName << "\n";
  os << "group,dim,input_len,sample,algorithm,output_len,q,verified,stall,wall_ms\n";
  char q[64], ms[64];
  for (const auto& r : records) {
    std::snprintf(q, sizeof q, "%.3f", r.q);
    std::snprintf(ms, sizeof ms, "%.3f", r.wall_ms);
    os << r.group << ',' << r.dim << ',' << r.input_len << ',' << r.sample << ',' << r.algorithm << ','
       << r.output_len << ',' << q << ',' << (r.verified ? 1 : 0) << ',' << (r.stall ? 1 : 0) << ',' << ms
       << "\n";
  }
  return os.str();
}

double RatioHistogram::percent(std::size_t bin) const {
  return total ? 100.0 * static_cast<double>(counts.at(bin)) / static_cast<double>(total) : 0.0;
}

double RatioHistogram::overflow_percent() const {
  return total ? 100.0 * static_cast<double>(overflow) / static_cast<double>(total) : 0.0;
}

std::string RatioHistogram::to_csv() const {
  std::ostringstream os;
  os << "bin_lo,bin_hi,count,percent\n";
  char buf[64];
  for (std::size_t k = 0; k < counts.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.2f", percent(k));
    os << k * bin_width << ',' << (k + 1) * bin_width << ',' << counts[k] << ',' << buf << "\n";
  }
  std::snprintf(buf, sizeof buf, "%.2f", overflow_percent());
  os << counts.size() * bin_width << ",inf," << overflow << ',' << buf << "\n";
  return os.str();
}

RatioHistogram bin_ratios(const std::vector<BenchRecord>& records, std::size_t upper_edge) {
  if (records.empty()) throw std::invalid_argument("no records to bin");
  RatioHistogram h;
  h.counts.assign((upper_edge + h.bin_width - 1) / h.bin_width, 0);
  for (const auto& r : records) {
    if (r.input_len == 0) throw std::invalid_argument("record with zero input length");
    // floor(q / 10) = floor(10 * out / in)
    const std::uint64_t bin = (10 * r.output_len) / r.input_len;
    if (bin < h.counts.size())
      ++h.counts[bin];
    else
      ++h.overflow;
    ++h.total;
  }
  return h;
}

double median_q(std::vector<BenchRecord> records) {
  if (records.empty()) throw std::invalid_argument("no records");
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.q < b.q; });
  const std::size_t m = records.size() / 2;
  return records.size() % 2 ? records[m].q : 0.5 * (records[m - 1].q + records[m].q);
}

}  // namespace wordfact
