#include "wordfact/floodsearch.hpp"

#include <stdexcept>

namespace wordfact {

FloodOutcome flood_factor(const GenSet& gs, const IntMatrix& e, const FloodBudget& budget) {
  if (e.dim() != gs.dim()) throw DimensionError("target dimension differs from generating set");
  if (budget.max_elements < 1) throw std::invalid_argument("flood budget must allow one element");
  CayleyBall<IntegralCayley> ball{IntegralCayley(gs)};
  const std::string target = e.content_key();
  FloodOutcome out;
  if (auto hit = ball.grow(budget.max_elements, &target)) {
    out.word = ball.word_to(*hit);
    out.stage = 1;
    out.certified_minimal = true;
    out.stored_elements = ball.size();
    out.completed_radius = ball.completed_radius();
  } else {
    out = ball.query(e, budget.require_minimal);
  }
  if (out.word && !(evaluate(*out.word, gs) == e))
    throw std::logic_error("floodsearch produced a word that does not evaluate to the target");
  return out;
}

std::optional<std::uint64_t> min_word_length(const GenSet& gs, const IntMatrix& e, FloodBudget budget) {
  budget.require_minimal = true;
  const auto out = flood_factor(gs, e, budget);
  if (!out.word || !out.certified_minimal) return std::nullopt;
  return out.word->length();
}

}  // namespace wordfact
