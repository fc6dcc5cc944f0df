#include "wordfact/heightfactor.hpp"

#include "wordfact/hnffactor.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

namespace wordfact {

Integer HeightFn::operator()(const IntMatrix& a) const {
  switch (kind) {
    case Kind::Full: return height_full(a);
    case Kind::OffBlock: return height_offblock(a);
    case Kind::RowLocal: return height_rowlocal(a, rows);
  }
  return 0;
}

std::string HeightFn::name() const {
  switch (kind) {
    case Kind::Full: return "full";
    case Kind::OffBlock: return "offblock";
    case Kind::RowLocal: return "rowlocal:" + std::to_string(rows);
  }
  return "?";
}

namespace {

/// Tracks per-row and per-column height contributions of the residual so a
/// candidate's new height only needs its touched columns (right) or rows (left).
class Scorer {
 public:
  Scorer(const IntMatrix& a, const HeightFn& h) : a_(a), n_(a.dim()), mask_(n_ * n_, 0), diag_(h.kind == HeightFn::Kind::Full) {
    if (h.kind == HeightFn::Kind::Full) {
      std::fill(mask_.begin(), mask_.end(), 1);
    } else {
      if (n_ % 2 != 0) throw DimensionError("block heights need an even dimension");
      const std::size_t half = n_ / 2;
      const std::size_t rows = h.kind == HeightFn::Kind::OffBlock ? n_ : h.rows;
      if (rows > n_) throw std::out_of_range("row-local height index exceeds the dimension");
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < n_; ++c) mask_[r * n_ + c] = (r < half) != (c < half);
    }
    col_.resize(n_);
    row_.resize(n_);
    refresh();
  }

  void refresh() {
    total_ = 0;
    for (auto& v : col_) v = 0;
    for (auto& v : row_) v = 0;
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) {
        if (!mask_[r * n_ + c]) continue;
        tmp_ = a_(r, c);
        if (diag_ && r == c) tmp_ -= 1;
        tmp_ *= tmp_;
        col_[c] += tmp_;
        row_[r] += tmp_;
      }
    for (const auto& v : col_) total_ += v;
  }

  const Integer& height() const { return total_; }

  /// Height of a * (I + D).
  Integer right_height(const SparseDelta& d) {
    Integer h = total_;
    for (const auto c : d.touched_cols()) {
      h -= col_[c];
      for (std::size_t r = 0; r < n_; ++r) {
        if (!mask_[r * n_ + c]) continue;
        tmp_ = a_(r, c);
        for (const auto& e : d.entries())
          if (e.col == c) tmp_ += e.value * a_(r, e.row);
        if (diag_ && r == c) tmp_ -= 1;
        h += tmp_ * tmp_;
      }
    }
    return h;
  }

  /// Height of (I + D) * a.
  Integer left_height(const SparseDelta& d) {
    Integer h = total_;
    for (const auto r : d.touched_rows()) {
      h -= row_[r];
      for (std::size_t c = 0; c < n_; ++c) {
        if (!mask_[r * n_ + c]) continue;
        tmp_ = a_(r, c);
        for (const auto& e : d.entries())
          if (e.row == r) tmp_ += e.value * a_(e.col, c);
        if (diag_ && r == c) tmp_ -= 1;
        h += tmp_ * tmp_;
      }
    }
    return h;
  }

 private:
  const IntMatrix& a_;
  std::size_t n_;
  std::vector<char> mask_;
  bool diag_;
  std::vector<Integer> col_, row_;
  Integer total_, tmp_;
};

struct Choice {
  bool found = false;
  std::size_t index = 0;
  bool left = false;
  Integer gain;
  std::uint64_t cost = 0;
};

/// Strictly better than the current best under the (weighted) score with
/// ties broken by larger gain, then smaller cost; otherwise scan order wins.
bool better(const Integer& gain, std::uint64_t cost, const Choice& best, bool weighted) {
  if (!best.found) return true;
  if (weighted) {
    const Integer lhs = gain * Integer(static_cast<unsigned long>(best.cost));
    const Integer rhs = best.gain * Integer(static_cast<unsigned long>(cost));
    if (lhs != rhs) return lhs > rhs;
  }
  if (gain != best.gain) return gain > best.gain;
  return cost < best.cost;
}

Integer dense_height(IntMatrix m, const HeightFn& h) { return h(m); }

struct ExtensionCache {
  std::mutex mu;
  std::map<std::pair<std::string, std::size_t>, std::shared_ptr<const std::vector<ExtensionEntry>>> sets;
};

ExtensionCache& extension_cache() {
  static ExtensionCache cache;
  return cache;
}

}  // namespace

std::shared_ptr<const std::vector<ExtensionEntry>> build_extension(const GenSet& gs, std::size_t depth) {
  if (depth < 1) throw std::invalid_argument("extension depth must be at least 1");
  auto& cache = extension_cache();
  const auto cache_key = std::make_pair(gs.fingerprint(), depth);
  {
    std::lock_guard lock(cache.mu);
    if (auto it = cache.sets.find(cache_key); it != cache.sets.end()) return it->second;
  }

  auto entries = std::make_shared<std::vector<ExtensionEntry>>();
  std::unordered_map<std::string, std::size_t> seen;
  struct Seq {
    IntMatrix m;
    std::vector<std::uint32_t> gens;
    std::uint64_t cost;
  };
  const auto consider = [&](const Seq& s) {
    if (s.m.is_identity()) return;
    std::string k = s.m.content_key();
    auto it = seen.find(k);
    if (it != seen.end() && (*entries)[it->second].cost <= s.cost) return;
    ExtensionEntry entry;
    if (!SparseDelta::from_matrix(s.m, entry.delta)) return;
    entry.matrix = s.m;
    Word w;
    for (const auto g : s.gens) w.push_back(Word::of_gen(g).runs()[0]);
    entry.word = free_reduce(w);
    entry.cost = s.cost;
    if (it != seen.end()) {
      (*entries)[it->second] = std::move(entry);
    } else {
      seen.emplace(std::move(k), entries->size());
      entries->push_back(std::move(entry));
    }
  };

  std::vector<Seq> level;
  for (std::uint32_t g = 0; g < gs.gen_count(); ++g) {
    level.push_back({gs.gen_matrix(g), {g}, gs.symbol(g / 2).cost});
    consider(level.back());
  }
  for (std::size_t d = 2; d <= depth; ++d) {
    std::vector<Seq> next;
    const bool last = d == depth;
    for (const auto& s : level) {
      for (std::uint32_t g = 0; g < gs.gen_count(); ++g) {
        if (g == GenSet::inverse_index(s.gens.back())) continue;
        Seq t{s.m, s.gens, s.cost + gs.symbol(g / 2).cost};
        gs.right_multiply(t.m, g / 2, (g & 1) ? -1 : 1);
        t.gens.push_back(g);
        consider(t);
        if (!last) next.push_back(std::move(t));
      }
    }
    level = std::move(next);
  }

  std::lock_guard lock(cache.mu);
  auto [it, fresh] = cache.sets.emplace(cache_key, std::move(entries));
  return it->second;
}

std::vector<Integer> one_step_heights(const IntMatrix& a, const GenSet& gs, const HeightFn& h) {
  std::vector<Integer> out;
  out.reserve(2 * gs.gen_count());
  for (std::uint32_t g = 0; g < gs.gen_count(); ++g) {
    const std::int64_t exp = (g & 1) ? -1 : 1;
    IntMatrix r = a, l = a;
    gs.right_multiply(r, g / 2, exp);
    gs.left_multiply(l, g / 2, exp);
    out.push_back(h(r));
    out.push_back(h(l));
  }
  return out;
}

ReductionOutcome greedy_reduce(const IntMatrix& e, const GenSet& gs, const ReductionConfig& cfg) {
  if (e.dim() != gs.dim()) throw DimensionError("matrix dimension differs from generating set");
  if (cfg.extension_depth < 1) throw std::invalid_argument("extension depth must be at least 1");

  ReductionOutcome out;
  IntMatrix a = e;
  Scorer scorer(a, cfg.height);
  std::vector<Letter> left_rev, right;
  const bool left_first = cfg.side_preference == SidePreference::LeftFirst;
  out.height_trace.push_back(scorer.height());

  const auto left_word = [&] { return Word(std::vector<Letter>(left_rev.rbegin(), left_rev.rend())); };

  // Scores (index, side) pairs in scan order: index ascending, preferred side first.
  const auto scan = [&](std::size_t count, auto&& delta_of, auto&& cost_of, auto&& dense_of) {
    Choice best;
    for (std::size_t i = 0; i < count; ++i) {
      const SparseDelta* d = delta_of(i);
      for (int pass = 0; pass < 2; ++pass) {
        const bool left = (pass == 0) == left_first;
        Integer nh;
        if (d) {
          nh = left ? scorer.left_height(*d) : scorer.right_height(*d);
        } else {
          nh = dense_height(left ? dense_of(i) * a : a * dense_of(i), cfg.height);
        }
        Integer gain = scorer.height() - nh;
        if (gain <= 0) continue;
        const std::uint64_t cost = cost_of(i);
        if (better(gain, cost, best, cfg.length_weighting)) {
          best.found = true;
          best.index = i;
          best.left = left;
          best.gain = std::move(gain);
          best.cost = cost;
        }
      }
    }
    return best;
  };

  std::shared_ptr<const std::vector<ExtensionEntry>> ext;
  const auto scan_base = [&] {
    return scan(
        gs.gen_count(), [&](std::size_t g) { return gs.gen_delta(g); },
        [&](std::size_t g) { return gs.symbol(g / 2).cost; }, [&](std::size_t g) { return gs.gen_matrix(g); });
  };
  const auto apply_base = [&](const Choice& c) {
    const auto sym = static_cast<std::uint32_t>(c.index / 2);
    const std::int64_t exp = (c.index & 1) ? -1 : 1;
    if (c.left) {
      gs.left_multiply(a, sym, exp);
      left_rev.push_back({sym, exp});
    } else {
      gs.right_multiply(a, sym, exp);
      right.push_back({sym, exp});
    }
  };
  while (scorer.height() != 0) {
    if (cfg.max_steps && out.steps >= cfg.max_steps) {
      out.step_limited = true;
      break;
    }
    Choice c = scan_base();
    if (c.found) {
      apply_base(c);
    } else {
      if (cfg.extension_depth >= 2) {
        if (!ext) ext = build_extension(gs, cfg.extension_depth);
        const auto& xs = *ext;
        c = scan(
            xs.size(), [&](std::size_t i) { return &xs[i].delta; }, [&](std::size_t i) { return xs[i].cost; },
            [&](std::size_t i) { return xs[i].matrix; });
        if (c.found) {
          const auto& x = xs[c.index];
          if (c.left) {
            x.delta.left_apply(a);
            left_rev.insert(left_rev.end(), x.word.runs().rbegin(), x.word.runs().rend());
          } else {
            x.delta.right_apply(a);
            right.insert(right.end(), x.word.runs().begin(), x.word.runs().end());
          }
          ++out.extension_steps;
        }
      }
      if (!c.found) break;
    }
    ++out.steps;
    scorer.refresh();
    out.height_trace.push_back(scorer.height());
    if (cfg.check_invariant && evaluate(left_word(), gs) * e * evaluate(Word(right), gs) != a)
      throw std::logic_error("reduction invariant violated after step " + std::to_string(out.steps));
  }

  out.left = free_reduce(left_word());
  out.right = free_reduce(Word(std::move(right)));
  out.residual = a;
  if (scorer.height() == 0 || out.step_limited) return out;

  switch (cfg.stall_policy) {
    case StallPolicy::ReturnResidual:
      out.stalled = true;
      return out;
    case StallPolicy::Error:
      throw HeuristicStall("greedy reduction stalled at height " + scorer.height().get_str(), a, 0,
                           scorer.height());
    case StallPolicy::FallbackHNF: {
      const std::size_t n = gs.dim();
      const auto sl = build_sl_elementary(n);
      const Word t = hnf_trace(a).word;
      Word mapped;
      for (const auto& l : t.runs()) {
        const auto sym = gs.find(sl->symbol(l.symbol).label);
        if (!sym) throw std::invalid_argument("HNF fallback needs elementary letters in " + gs.name());
        mapped.push_back({*sym, l.exponent});
      }
      out.left = free_reduce(mapped * out.left);
      out.residual = IntMatrix::identity(n);
      out.stalled = true;
      out.fallback_applied = true;
      out.height_trace.push_back(cfg.height(out.residual));
      return out;
    }
  }
  return out;
}

Word assemble_word(const ReductionOutcome& out) {
  return free_reduce(invert_word(out.left) * invert_word(out.right));
}

Word height_factor_sl(const IntMatrix& e, std::size_t extension_depth, bool length_weighting) {
  if (!is_sl_member(e)) throw std::domain_error("matrix is not in SL_n(Z)");
  const auto gs = build_sl_elementary(e.dim());
  ReductionConfig cfg;
  cfg.extension_depth = extension_depth;
  cfg.length_weighting = length_weighting;
  const Word w = assemble_word(greedy_reduce(e, *gs, cfg));
  if (evaluate(w, *gs) != e) throw std::logic_error("height factorization failed to reproduce its input");
  return w;
}

}  // namespace wordfact
