// wordfact: factor, verify, search, bench and generating-set dump.
//
// Exit codes: 0 success, 1 verification failure, 2 stall or exhaustion,
// 3 usage error.

#include "wordfact/congruence.hpp"
#include "wordfact/floodsearch.hpp"
#include "wordfact/harness.hpp"
#include "wordfact/heightfactor.hpp"
#include "wordfact/hnffactor.hpp"
#include "wordfact/sympfactor.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

using namespace wordfact;
using nlohmann::json;

enum Exit { kOk = 0, kMismatch = 1, kStall = 2, kUsage = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "text";
};

std::string read_source(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw UsageError("cannot write " + g.out);
  f << text;
}

GroupKind group_of(const std::string& family, std::size_t dim) {
  if (family == "sl") return GroupKind::sl(dim);
  if (family == "sp") return GroupKind::sp_of_dim(dim);
  throw UsageError("unknown group '" + family + "' (sl, sp)");
}

struct FactorArgs {
  std::string group = "sl";
  std::size_t dim = 0;
  std::string matrix_path;
  std::string word_text;
  std::string algorithm;
  std::size_t extension_depth = 3;
  bool no_length_weighting = false;
  std::string letters = "birman";
  std::string order_cap = "10000000";
  std::uint64_t start_prime = 3;
  std::size_t max_elements = 1'000'000;
  bool no_prepass = false;
  bool report = false;
};

int run_factor(const Globals& g, const FactorArgs& a) {
  IntMatrix e;
  if (!a.matrix_path.empty()) {
    e = parse_matrix(read_source(a.matrix_path));
    if (a.dim && a.dim != e.dim()) throw UsageError("--dim does not match the matrix");
  } else {
    if (!a.dim) throw UsageError("--word needs --dim");
    const auto src = input_genset(group_of(a.group, a.dim));
    e = evaluate(parse_word(a.word_text, *src), *src);
  }
  const GroupKind group = group_of(a.group, e.dim());
  std::string alg = a.algorithm;
  if (alg.empty()) alg = group.family == GroupFamily::Sp ? "symplectic" : "height";

  Word word;
  std::shared_ptr<const GenSet> alphabet;
  json extra = json::object();
  try {
    if (alg == "symplectic") {
      if (group.family != GroupFamily::Sp) throw UsageError("symplectic needs --group sp");
      SymplecticOptions so;
      if (a.letters == "extended") {
        so.letters = OutputLetters::Extended;
      } else if (a.letters != "birman") {
        throw UsageError("--letters must be birman or extended");
      }
      so.extension_depth = a.extension_depth;
      so.full_height_prepass = !a.no_prepass;
      const auto res = symplectic_factor(e, so);
      word = res.word;
      alphabet = res.alphabet;
      if (a.report) extra["report"] = res.report.to_json(*build_extended_symplectic(group.n));
    } else if (group.family == GroupFamily::Sp) {
      throw UsageError(alg + " applies to SL only");
    } else if (alg == "hnf") {
      alphabet = build_sl_elementary(e.dim());
      word = hnf_factor(e);
    } else if (alg == "height") {
      alphabet = build_sl_elementary(e.dim());
      ReductionConfig rc;
      rc.extension_depth = a.extension_depth;
      rc.length_weighting = !a.no_length_weighting;
      const auto red = greedy_reduce(e, *alphabet, rc);
      word = assemble_word(red);
      extra["fallback"] = red.fallback_applied;
    } else if (alg == "congruence") {
      alphabet = build_sl_elementary(e.dim());
      PrimeSchedule ps;
      ps.start_prime = a.start_prime;
      ps.order_cap = Integer(a.order_cap);
      ps.image_budget.max_elements = a.max_elements;
      const auto out = congruence_factor(alphabet, e, ps);
      json attempts = json::array();
      for (const auto& t : out.attempts) {
        const char* r = t.result == PrimeAttemptResult::Lifted         ? "lifted"
                        : t.result == PrimeAttemptResult::LiftMismatch ? "lift_mismatch"
                                                                       : "image_exhausted";
        attempts.push_back({{"prime", t.prime}, {"result", r}});
      }
      extra["attempts"] = attempts;
      if (!out.word) {
        std::cerr << "congruence schedule exhausted\n";
        return kStall;
      }
      word = *out.word;
    } else if (alg == "flood") {
      alphabet = build_sl_elementary(e.dim());
      const auto out = flood_factor(*alphabet, e, {a.max_elements, true});
      if (out.exhausted()) {
        std::cerr << "element budget exhausted\n";
        return kStall;
      }
      word = *out.word;
      extra["certified_minimal"] = out.certified_minimal;
    } else {
      throw UsageError("unknown algorithm '" + alg + "'");
    }
  } catch (const HeuristicStall& s) {
    std::cerr << "stall: " << s.what() << "\nresidual " << format_matrix_brackets(s.residual()) << "\n";
    return kStall;
  }

  const bool ok = evaluate(word, *alphabet) == e;
  if (g.format == "json") {
    json j{{"group", group.name()},      {"dim", e.dim()},   {"algorithm", alg},
           {"word", format_word(word, *alphabet)}, {"letters", word_to_json(word, *alphabet)},
           {"length", word.length()},    {"verified", ok}};
    j.update(extra);
    emit(g, j.dump(2) + "\n");
  } else if (g.format == "csv") {
    emit(g, "group,dim,algorithm,length,verified,word\n" + group.name() + "," + std::to_string(e.dim()) + "," + alg +
                "," + std::to_string(word.length()) + "," + (ok ? "1" : "0") + ",\"" + format_word(word, *alphabet) +
                "\"\n");
  } else {
    emit(g, format_word(word, *alphabet) + "\n");
    std::cerr << "length " << word.length() << (ok ? " verified" : " MISMATCH") << "\n";
  }
  return ok ? kOk : kMismatch;
}

int run_verify(const Globals& g, const std::string& genset, const std::string& word_text, const std::string& word_path,
               const std::string& matrix_path) {
  const auto gs = genset_from_spec(genset);
  const std::string text = word_path.empty() ? word_text : read_source(word_path);
  const Word w = parse_word(text, *gs);
  const IntMatrix e = parse_matrix(read_source(matrix_path));
  const bool ok = e.dim() == gs->dim() && evaluate(w, *gs) == e;
  if (g.format == "json")
    emit(g, json{{"verified", ok}, {"length", w.length()}}.dump() + "\n");
  else
    emit(g, ok ? "verified\n" : "mismatch\n");
  return ok ? kOk : kMismatch;
}

int run_search(const Globals& g, const std::string& genset, const std::string& matrix_path, std::size_t max_elements,
               bool minimal) {
  const auto gs = genset_from_spec(genset);
  const IntMatrix e = parse_matrix(read_source(matrix_path));
  if (e.dim() != gs->dim()) throw UsageError("matrix dimension differs from the generating set");
  const auto out = flood_factor(*gs, e, {max_elements, minimal});
  if (out.exhausted()) {
    if (g.format == "json")
      emit(g, json{{"exhausted", true}, {"stored_elements", out.stored_elements}}.dump() + "\n");
    std::cerr << "element budget exhausted after " << out.stored_elements << " elements\n";
    return kStall;
  }
  if (g.format == "json") {
    emit(g, json{{"word", format_word(*out.word, *gs)},
                 {"length", out.word->length()},
                 {"certified_minimal", out.certified_minimal},
                 {"stage", out.stage},
                 {"stored_elements", out.stored_elements},
                 {"completed_radius", out.completed_radius}}
                    .dump(2) +
                "\n");
  } else {
    emit(g, format_word(*out.word, *gs) + "\n");
    std::cerr << "length " << out.word->length() << (out.certified_minimal ? " minimal" : " not certified minimal")
              << " (stage " << out.stage << ", " << out.stored_elements << " elements)\n";
  }
  return kOk;
}

struct BenchArgs {
  std::string group = "sl";
  std::size_t dim = 3;
  std::vector<std::size_t> lengths{20};
  std::size_t samples = 0;
  std::size_t divisor = 20;
  std::vector<std::string> algorithms;
  std::size_t extension_depth = 3;
  bool timing = false;
  std::size_t threads = 1;
  std::string histogram;
};

int run_bench(const Globals& g, const BenchArgs& a) {
  BenchConfig cfg;
  cfg.group = group_of(a.group, a.dim);
  cfg.lengths = a.lengths;
  if (a.samples) cfg.samples = a.samples;
  cfg.divisor = a.divisor;
  cfg.algorithms.clear();
  if (a.algorithms.empty()) {
    cfg.algorithms.push_back(cfg.group.family == GroupFamily::Sp ? BenchAlgorithm::Symplectic
                                                                  : BenchAlgorithm::Height);
  }
  for (const auto& s : a.algorithms) cfg.algorithms.push_back(parse_algorithm(s));
  cfg.seed = g.seed;
  cfg.extension_depth = a.extension_depth;
  cfg.record_timing = a.timing;
  cfg.threads = a.threads;
  cfg.validate();

  const auto records = bench_run(cfg);
  if (g.format == "json") {
    json arr = json::array();
    for (const auto& r : records)
      arr.push_back({{"group", r.group},     {"dim", r.dim},         {"input_len", r.input_len},
                     {"sample", r.sample},   {"algorithm", r.algorithm}, {"output_len", r.output_len},
                     {"q", r.q},             {"verified", r.verified}, {"stall", r.stall},
                     {"wall_ms", r.wall_ms}});
    emit(g, json{{"seed", cfg.seed}, {"rng", kRngName}, {"records", arr}}.dump(2) + "\n");
  } else {
    emit(g, records_to_csv(cfg, records));
  }
  if (!a.histogram.empty()) {
    std::ofstream h(a.histogram);
    if (!h) throw UsageError("cannot write " + a.histogram);
    for (const auto alg : cfg.algorithms) {
      std::vector<BenchRecord> sub;
      for (const auto& r : records)
        if (r.algorithm == algorithm_name(alg)) sub.push_back(r);
      h << "# algorithm=" << algorithm_name(alg) << "\n" << bin_ratios(sub).to_csv();
    }
  }
  bool stalled = false, ok = true;
  for (const auto& r : records) {
    if (r.stall && !r.verified) stalled = true;
    if (!r.verified && !r.stall) ok = false;
  }
  if (!ok) return kMismatch;
  return stalled ? kStall : kOk;
}

int run_dump(const Globals& g, const std::string& family, std::size_t dim) {
  std::shared_ptr<const GenSet> gs;
  if (family == "sl") {
    gs = build_sl_elementary(dim);
  } else if (family == "sp" || family == "birman") {
    gs = build_birman(GroupKind::sp_of_dim(dim).n);
  } else if (family == "extended") {
    gs = build_extended_symplectic(GroupKind::sp_of_dim(dim).n);
  } else {
    throw UsageError("unknown generating set '" + family + "' (sl, sp, extended)");
  }
  if (g.format == "json") {
    json arr = json::array();
    for (std::size_t s = 0; s < gs->symbol_count(); ++s) {
      const auto& x = gs->symbol(s);
      json item{{"label", x.label.text()}, {"matrix", format_matrix_brackets(x.matrix)}};
      if (x.expansion && gs->base()) item["expansion"] = format_word(*x.expansion, *gs->base());
      arr.push_back(item);
    }
    emit(g, json{{"name", gs->name()}, {"dim", gs->dim()}, {"generators", arr}}.dump(2) + "\n");
    return kOk;
  }
  std::ostringstream os;
  os << "# " << gs->name() << " (" << gs->symbol_count() << " generators and their inverses)\n";
  for (std::size_t s = 0; s < gs->symbol_count(); ++s) {
    const auto& x = gs->symbol(s);
    os << x.label.text() << " " << format_matrix_brackets(x.matrix);
    if (x.expansion && gs->base()) os << " = " << format_word(*x.expansion, *gs->base());
    os << "\n";
  }
  emit(g, os.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word factorization in SL_n(Z) and Sp_2n(Z)"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Benchmark seed")->capture_default_str();
  app.add_option("--out", g.out, "Write output to this file");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();

  FactorArgs fa;
  auto* factor = app.add_subcommand("factor", "Express a matrix as a word");
  factor->add_option("--group", fa.group, "sl or sp")->capture_default_str();
  factor->add_option("--dim", fa.dim, "Matrix dimension");
  auto* mopt = factor->add_option("--matrix", fa.matrix_path, "Matrix file ('-' for stdin)");
  auto* wopt = factor->add_option("--word", fa.word_text, "Input word over the elementary or Birman set");
  mopt->excludes(wopt);
  factor->add_option("--algorithm", fa.algorithm, "hnf, height, congruence, flood or symplectic");
  factor->add_option("--extension-depth", fa.extension_depth)->capture_default_str();
  factor->add_flag("--no-length-weighting", fa.no_length_weighting);
  factor->add_option("--letters", fa.letters, "birman or extended")->capture_default_str();
  factor->add_option("--order-cap", fa.order_cap)->capture_default_str();
  factor->add_option("--start-prime", fa.start_prime)->capture_default_str();
  factor->add_option("--max-elements", fa.max_elements)->capture_default_str();
  factor->add_flag("--no-prepass", fa.no_prepass, "Skip the full-height pass before the row-local stages");
  factor->add_flag("--report", fa.report, "Include the symplectic stage report (json format)");

  std::string vgenset, vword, vword_file, vmatrix;
  auto* verify = app.add_subcommand("verify", "Check that a word evaluates to a matrix");
  verify->add_option("--genset", vgenset, "sl:N, birman:2N or extended:2N")->required();
  auto* vw = verify->add_option("--word", vword);
  auto* vwf = verify->add_option("--word-file", vword_file);
  vw->excludes(vwf);
  verify->add_option("--matrix", vmatrix)->required();

  std::string sgenset, smatrix;
  std::size_t smax = 1'000'000;
  bool sminimal = false;
  auto* search = app.add_subcommand("search", "Breadth-first Cayley graph search");
  search->add_option("--genset", sgenset)->required();
  search->add_option("--matrix", smatrix)->required();
  search->add_option("--max-elements", smax)->capture_default_str();
  search->add_flag("--minimal", sminimal);

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Random-word benchmark");
  bench->add_option("--group", ba.group)->capture_default_str();
  bench->add_option("--dim", ba.dim)->capture_default_str();
  bench->add_option("--lengths", ba.lengths)->delimiter(',');
  bench->add_option("--samples", ba.samples, "Samples per length (default 20000/len/divisor)");
  bench->add_option("--divisor", ba.divisor)->capture_default_str();
  bench->add_option("--algorithms", ba.algorithms, "hnf, height, symplectic")->delimiter(',');
  bench->add_option("--extension-depth", ba.extension_depth)->capture_default_str();
  bench->add_flag("--timing", ba.timing, "Record wall_ms (output is then not reproducible)");
  bench->add_option("--threads", ba.threads)->capture_default_str();
  bench->add_option("--histogram", ba.histogram, "Write binned q percentages to this file");

  std::string dgroup = "sp";
  std::size_t ddim = 4;
  auto* genset = app.add_subcommand("genset", "Generating sets");
  genset->require_subcommand(1);
  auto* dump = genset->add_subcommand("dump", "Print labels, matrices and expansion words");
  dump->add_option("--group", dgroup, "sl, sp or extended")->capture_default_str();
  dump->add_option("--dim", ddim)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*factor) {
      if (fa.matrix_path.empty() && fa.word_text.empty()) throw UsageError("factor needs --matrix or --word");
      return run_factor(g, fa);
    }
    if (*verify) {
      if (vword.empty() == vword_file.empty()) throw UsageError("verify needs exactly one of --word, --word-file");
      return run_verify(g, vgenset, vword, vword_file, vmatrix);
    }
    if (*search) return run_search(g, sgenset, smatrix, smax, sminimal);
    if (*bench) return run_bench(g, ba);
    if (*dump) return run_dump(g, dgroup, ddim);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
