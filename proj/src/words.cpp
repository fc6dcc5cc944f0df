#include "wordfact/words.hpp"

#include <cctype>
#include <stdexcept>
#include <unordered_set>

namespace wordfact {

std::string GenLabel::text() const {
  const auto pair = [this](const char* head) {
    return std::string(head) + "[" + std::to_string(i) + "," + std::to_string(j) + "]";
  };
  switch (kind) {
    case Kind::Elementary: return pair("t");
    case Kind::Y: return "Y" + std::to_string(i);
    case Kind::U: return "U" + std::to_string(i);
    case Kind::Z: return "Z" + std::to_string(i);
    case Kind::SPair: return pair("SP");
    case Kind::TopPair: return pair("TP");
    case Kind::BotPair: return pair("BP");
  }
  return "?";
}

Word::Word(std::vector<Letter> runs) : runs_(std::move(runs)) {
  for (const auto& l : runs_)
    if (l.exponent == 0) throw std::invalid_argument("word run with zero exponent");
}

std::uint64_t Word::length() const {
  std::uint64_t total = 0;
  for (const auto& l : runs_)
    total += l.exponent < 0 ? static_cast<std::uint64_t>(-(l.exponent + 1)) + 1
                            : static_cast<std::uint64_t>(l.exponent);
  return total;
}

void Word::push_back(Letter letter) {
  if (letter.exponent == 0) throw std::invalid_argument("word run with zero exponent");
  runs_.push_back(letter);
}

void Word::append(const Word& other) {
  runs_.insert(runs_.end(), other.runs_.begin(), other.runs_.end());
}

Word Word::power(std::int64_t k) const {
  const Word base = k < 0 ? invert_word(*this) : *this;
  Word out;
  for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) out.append(base);
  return out;
}

Word free_reduce(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.run_count());
  for (const auto& l : w.runs()) {
    Letter cur = l;
    while (!stack.empty() && stack.back().symbol == cur.symbol) {
      cur.exponent += stack.back().exponent;
      stack.pop_back();
      if (cur.exponent == 0) break;
    }
    if (cur.exponent != 0) stack.push_back(cur);
  }
  return Word(std::move(stack));
}

Word invert_word(const Word& w) {
  std::vector<Letter> out(w.runs().rbegin(), w.runs().rend());
  for (auto& l : out) l.exponent = -l.exponent;
  return Word(std::move(out));
}

Word commutator(const Word& a, const Word& b) {
  return invert_word(a) * invert_word(b) * a * b;
}

GenSet::GenSet(std::string name, std::size_t dim, std::vector<GeneratorSpec> specs,
               std::shared_ptr<const GenSet> base)
    : name_(std::move(name)), dim_(dim), base_(std::move(base)) {
  if (dim == 0) throw DimensionError("generating set dimension must be positive");
  std::unordered_set<std::string> labels;
  fingerprint_ = std::to_string(dim) + ":";
  for (auto& spec : specs) {
    if (spec.matrix.dim() != dim)
      throw ConstructionError("generator " + spec.label.text() + " has wrong dimension");
    if (!labels.insert(spec.label.text()).second)
      throw ConstructionError("duplicate generator label " + spec.label.text());
    Generator g;
    g.label = spec.label;
    g.matrix = std::move(spec.matrix);
    try {
      g.inverse = unimodular_inverse(g.matrix);
    } catch (const std::domain_error&) {
      throw ConstructionError("generator " + g.label.text() + " is not unimodular");
    }
    if (!(mat_mul(g.matrix, g.inverse).is_identity()))
      throw ConstructionError("inverse check failed for " + g.label.text());
    g.has_delta = SparseDelta::from_matrix(g.matrix, g.delta) &&
                  SparseDelta::from_matrix(g.inverse, g.inverse_delta);
    if (base_) {
      if (spec.expansion) {
        if (!(evaluate(*spec.expansion, *base_) == g.matrix))
          throw ConstructionError("expansion of " + g.label.text() + " does not evaluate to its matrix");
        g.cost = spec.expansion->length();
      } else {
        g.base_symbol = base_->find(g.label);
        if (!g.base_symbol)
          throw ConstructionError("generator " + g.label.text() + " has neither expansion nor base letter");
        if (!(base_->symbol(*g.base_symbol).matrix == g.matrix))
          throw ConstructionError("generator " + g.label.text() + " differs from its base letter");
        g.cost = base_->symbol(*g.base_symbol).cost;
      }
      g.expansion = std::move(spec.expansion);
    } else if (spec.expansion) {
      throw ConstructionError("expansion given without a base generating set");
    }
    g.matrix.append_content_key(fingerprint_);
    gens_.push_back(std::move(g));
  }
}

std::optional<std::uint32_t> GenSet::find(const GenLabel& label) const {
  for (std::size_t s = 0; s < gens_.size(); ++s)
    if (gens_[s].label == label) return static_cast<std::uint32_t>(s);
  return std::nullopt;
}

namespace {

IntMatrix dense_power(const IntMatrix& m, std::uint64_t k) {
  IntMatrix result = IntMatrix::identity(m.dim());
  IntMatrix base = m;
  while (k) {
    if (k & 1) result = mat_mul(result, base);
    k >>= 1;
    if (k) base = mat_mul(base, base);
  }
  return result;
}

}  // namespace

void GenSet::right_multiply(IntMatrix& a, std::uint32_t symbol, std::int64_t exponent) const {
  const auto& g = gens_.at(symbol);
  if (g.has_delta && g.delta.square_zero()) {
    g.delta.right_apply(a, exponent);
    return;
  }
  const std::uint64_t reps = exponent < 0 ? -static_cast<std::uint64_t>(exponent) : exponent;
  if (g.has_delta && reps <= 8) {
    const auto& d = exponent < 0 ? g.inverse_delta : g.delta;
    for (std::uint64_t i = 0; i < reps; ++i) d.right_apply(a);
    return;
  }
  a = mat_mul(a, dense_power(exponent < 0 ? g.inverse : g.matrix, reps));
}

void GenSet::left_multiply(IntMatrix& a, std::uint32_t symbol, std::int64_t exponent) const {
  const auto& g = gens_.at(symbol);
  if (g.has_delta && g.delta.square_zero()) {
    g.delta.left_apply(a, exponent);
    return;
  }
  const std::uint64_t reps = exponent < 0 ? -static_cast<std::uint64_t>(exponent) : exponent;
  if (g.has_delta && reps <= 8) {
    const auto& d = exponent < 0 ? g.inverse_delta : g.delta;
    for (std::uint64_t i = 0; i < reps; ++i) d.left_apply(a);
    return;
  }
  a = mat_mul(dense_power(exponent < 0 ? g.inverse : g.matrix, reps), a);
}

std::uint64_t expanded_length(const Word& w, const GenSet& gs) {
  std::uint64_t total = 0;
  for (const auto& l : w.runs()) {
    const std::uint64_t reps = l.exponent < 0 ? -static_cast<std::uint64_t>(l.exponent) : l.exponent;
    total += reps * gs.symbol(l.symbol).cost;
  }
  return total;
}

IntMatrix evaluate(const Word& w, const GenSet& gs) {
  IntMatrix a = IntMatrix::identity(gs.dim());
  for (const auto& l : w.runs()) {
    if (l.symbol >= gs.symbol_count())
      throw std::out_of_range("word letter " + std::to_string(l.symbol) + " outside generating set " +
                              gs.name());
    gs.right_multiply(a, l.symbol, l.exponent);
  }
  return a;
}

Word expand_word(const Word& w, const GenSet& gs) {
  if (!gs.base()) return w;
  Word out;
  for (const auto& l : w.runs()) {
    const auto& g = gs.symbol(l.symbol);
    if (g.expansion) {
      out.append(g.expansion->power(l.exponent));
    } else if (g.base_symbol) {
      out.push_back({*g.base_symbol, l.exponent});
    } else {
      throw std::invalid_argument("letter " + g.label.text() + " has no expansion");
    }
  }
  return free_reduce(out);
}

namespace {

class WordParser {
 public:
  WordParser(std::string_view text, const GenSet& gs) : text_(text), gs_(gs) {}

  Word parse() {
    skip();
    if (pos_ == text_.size()) return {};
    if (text_.substr(pos_) == "1" || (text_[pos_] == '1' && rest_blank(pos_ + 1))) return {};
    Word w = product();
    skip();
    if (pos_ != text_.size()) throw ParseError("unexpected character", pos_);
    return w;
  }

 private:
  bool rest_blank(std::size_t from) const {
    for (std::size_t i = from; i < text_.size(); ++i)
      if (!std::isspace(static_cast<unsigned char>(text_[i]))) return false;
    return true;
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }
  std::int64_t integer(bool allow_sign) {
    skip();
    std::size_t start = pos_;
    bool neg = false;
    if (allow_sign && pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      neg = text_[pos_] == '-';
      ++pos_;
      skip();
    }
    std::size_t digits = pos_;
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > (INT64_MAX - 9) / 10) throw ParseError("integer too large", start);
      v = v * 10 + (text_[pos_++] - '0');
    }
    if (pos_ == digits) throw ParseError("expected integer", start);
    return neg ? -v : v;
  }

  Word product() {
    Word w = factor();
    while (accept('*')) w.append(factor());
    return w;
  }

  Word factor() {
    skip();
    Word base;
    if (accept('(')) {
      base = product();
      expect(')');
    } else {
      base = label();
    }
    if (accept('^')) {
      std::size_t at = pos_;
      std::int64_t k = integer(true);
      if (k == 0) throw ParseError("zero exponent", at);
      if (base.run_count() == 1) {
        Letter l = base.runs()[0];
        return Word::of(l.symbol, l.exponent * k);
      }
      return base.power(k);
    }
    return base;
  }

  Word label() {
    skip();
    const std::size_t start = pos_;
    auto starts = [&](std::string_view head) { return text_.substr(pos_, head.size()) == head; };
    GenLabel lab;
    auto pair_label = [&](GenLabel::Kind kind, std::size_t head) {
      pos_ += head;
      expect('[');
      int i = static_cast<int>(integer(false));
      expect(',');
      int j = static_cast<int>(integer(false));
      expect(']');
      return GenLabel{kind, i, j};
    };
    if (starts("SP")) {
      lab = pair_label(GenLabel::Kind::SPair, 2);
    } else if (starts("TP")) {
      lab = pair_label(GenLabel::Kind::TopPair, 2);
    } else if (starts("BP")) {
      lab = pair_label(GenLabel::Kind::BotPair, 2);
    } else if (starts("t")) {
      lab = pair_label(GenLabel::Kind::Elementary, 1);
    } else if (starts("Y") || starts("U") || starts("Z")) {
      const char head = text_[pos_++];
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw ParseError("expected generator index", pos_);
      int i = static_cast<int>(integer(false));
      lab = head == 'Y' ? GenLabel::y(i) : head == 'U' ? GenLabel::u(i) : GenLabel::z(i);
    } else {
      throw ParseError("expected generator label", start);
    }
    auto s = gs_.find(lab);
    if (!s) throw ParseError("label " + lab.text() + " not in generating set " + gs_.name(), start);
    return Word::of(*s);
  }

  std::string_view text_;
  const GenSet& gs_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text, const GenSet& gs) { return WordParser(text, gs).parse(); }

std::string format_word(const Word& w, const GenSet& gs) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& l : w.runs()) {
    if (!out.empty()) out += '*';
    out += gs.symbol(l.symbol).label.text();
    if (l.exponent != 1) out += "^" + std::to_string(l.exponent);
  }
  return out;
}

nlohmann::json word_to_json(const Word& w, const GenSet& gs) {
  auto arr = nlohmann::json::array();
  for (const auto& l : w.runs())
    arr.push_back({{"label", gs.symbol(l.symbol).label.text()}, {"exp", l.exponent}});
  return arr;
}

Word word_from_json(const nlohmann::json& j, const GenSet& gs) {
  if (!j.is_array()) throw std::invalid_argument("word JSON must be an array");
  Word w;
  for (const auto& item : j) {
    const Word one = parse_word(item.at("label").get<std::string>(), gs);
    if (one.run_count() != 1) throw std::invalid_argument("word JSON label must name one generator");
    const auto exp = item.at("exp").get<std::int64_t>();
    if (exp == 0) throw std::invalid_argument("word JSON exponent must be nonzero");
    w.push_back({one.runs()[0].symbol, exp});
  }
  return w;
}

}  // namespace wordfact
