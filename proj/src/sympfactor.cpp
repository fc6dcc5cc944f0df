#include "wordfact/sympfactor.hpp"

namespace wordfact {

BlockSplit split_block_diagonal(const IntMatrix& a) {
  if (a.dim() % 2 != 0 || a.dim() == 0) throw DimensionError("block split needs an even dimension");
  if (!is_sp_member(a)) throw std::domain_error("matrix is not symplectic");
  if (height_offblock(a) != 0) throw std::domain_error("matrix has nonzero off-diagonal blocks");
  const std::size_t n = a.dim() / 2;
  BlockSplit out{IntMatrix(n), 1};
  IntMatrix lower(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      out.minor(r, c) = a(r, c);
      lower(r, c) = a(n + r, n + c);
    }
  const Integer det = determinant(out.minor);
  if (det != 1 && det != -1) throw std::logic_error("symplectic block has determinant " + det.get_str());
  out.det_sign = det == 1 ? 1 : -1;
  if (transpose(unimodular_inverse(out.minor)) != lower)
    throw std::logic_error("lower block is not the inverse transpose of the upper block");
  return out;
}

Word lift_sl_word(const Word& w, std::size_t n) {
  const auto sl = build_sl_elementary(n);
  const auto ext = build_extended_symplectic(n);
  Word out;
  for (const auto& l : w.runs()) {
    const auto& label = sl->symbol(l.symbol).label;
    const auto sym = ext->find(GenLabel::spair(label.i, label.j));
    if (!sym) throw std::logic_error("no SPair letter for " + label.text());
    out.push_back({*sym, l.exponent});
  }
  return out;
}

nlohmann::json SympStageReport::to_json(const GenSet& extended) const {
  nlohmann::json j;
  const auto record = [&](const StageRecord& s, std::size_t index) {
    return nlohmann::json{{"stage", index},
                          {"left", format_word(s.left, extended)},
                          {"right", format_word(s.right, extended)},
                          {"steps", s.steps},
                          {"extension_steps", s.extension_steps},
                          {"flipped", s.flipped},
                          {"residual", format_matrix_brackets(s.residual)}};
  };
  j["prepass"] = prepass ? record(*prepass, 0) : nlohmann::json(nullptr);
  j["stages"] = nlohmann::json::array();
  for (std::size_t i = 0; i < stages.size(); ++i) j["stages"].push_back(record(stages[i], i + 1));
  j["det_fix_applied"] = det_fix_applied;
  j["minor_word_length"] = minor_word_length;
  j["extended_length"] = extended_length;
  j["birman_length"] = birman_length;
  return j;
}

SymplecticResult symplectic_factor(const IntMatrix& e, const SymplecticOptions& opts) {
  if (e.dim() % 2 != 0 || e.dim() == 0) throw DimensionError("symplectic factorization needs an even dimension");
  if (!is_sp_member(e)) throw std::domain_error("matrix is not in Sp_2n(Z)");
  const std::size_t n = e.dim() / 2;
  const auto ext = build_extended_symplectic(n);

  SymplecticResult result;
  auto& report = result.report;
  IntMatrix a = e;
  if (opts.full_height_prepass) {
    ReductionConfig cfg;
    cfg.height = HeightFn::full();
    cfg.extension_depth = opts.extension_depth;
    cfg.stall_policy = StallPolicy::ReturnResidual;
    const ReductionOutcome out = greedy_reduce(a, *ext, cfg);
    a = out.residual;
    report.prepass = StageRecord{out.left, out.right, a, out.steps, out.extension_steps, false};
  }
  for (std::size_t i = 1; i <= 2 * n; ++i) {
    ReductionConfig cfg;
    cfg.height = HeightFn::rowlocal(i);
    cfg.extension_depth = opts.extension_depth;
    cfg.stall_policy = StallPolicy::ReturnResidual;
    ReductionOutcome out = greedy_reduce(a, *ext, cfg);
    bool flipped = false;
    if (out.stalled && opts.flip_retry) {
      cfg.side_preference = SidePreference::LeftFirst;
      out = greedy_reduce(a, *ext, cfg);
      flipped = true;
    }
    if (out.stalled)
      throw HeuristicStall("stage " + std::to_string(i) + " stalled at height " + out.final_height().get_str(),
                           out.residual, i, out.final_height());
    if (!is_sp_member(out.residual)) throw std::logic_error("stage residual left the symplectic group");
    a = out.residual;
    report.stages.push_back({out.left, out.right, a, out.steps, out.extension_steps, flipped});
  }

  // a = L e R with L = L_2n ... L_1 L_0 and R = R_0 R_1 ... R_2n
  Word left, right;
  if (report.prepass) {
    left = report.prepass->left;
    right = report.prepass->right;
  }
  for (const auto& s : report.stages) {
    left = s.left * left;
    right = right * s.right;
  }

  if (split_block_diagonal(a).det_sign < 0) {
    const Word neg = negator_word(n);  // Birman letters share their indices with the extended set
    a = a * evaluate(neg, *ext);
    right = right * neg;
    report.det_fix_applied = true;
  }
  const BlockSplit split = split_block_diagonal(a);
  Word middle;
  if (!split.minor.is_identity()) {
    const Word w = height_factor_sl(split.minor, opts.extension_depth);
    report.minor_word_length = w.length();
    middle = lift_sl_word(w, n);
  }

  const Word word = free_reduce(invert_word(left) * middle * invert_word(right));
  if (evaluate(word, *ext) != e) throw std::logic_error("symplectic factorization failed to reproduce its input");
  report.extended_length = word.length();
  const Word birman = expand_word(word, *ext);
  report.birman_length = birman.length();

  if (opts.letters == OutputLetters::Birman) {
    result.alphabet = ext->base();
    if (evaluate(birman, *result.alphabet) != e)
      throw std::logic_error("Birman expansion failed to reproduce the input");
    result.word = birman;
  } else {
    result.alphabet = ext;
    result.word = word;
  }
  return result;
}

}  // namespace wordfact
