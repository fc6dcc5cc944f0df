#include "wordfact/gensets.hpp"

#include "wordfact/floodsearch.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>

namespace wordfact {

namespace {

void require_rank(std::size_t n) {
  if (n < 2) throw std::invalid_argument("generating sets need n >= 2, got " + std::to_string(n));
}

void require_pair(int i, int j, std::size_t n) {
  const int top = static_cast<int>(n);
  if (i < 1 || j < 1 || i > top || j > top || i == j)
    throw std::invalid_argument("invalid index pair (" + std::to_string(i) + "," + std::to_string(j) +
                                ") for n = " + std::to_string(n));
}

template <class Build>
std::shared_ptr<const GenSet> cached(std::map<std::size_t, std::shared_ptr<const GenSet>>& cache,
                                     std::mutex& mu, std::size_t n, Build build) {
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto gs = build();
  cache.emplace(n, gs);
  return gs;
}

// Symbol indices inside build_birman(n).
std::uint32_t y_sym(int i) { return static_cast<std::uint32_t>(i - 1); }
std::uint32_t u_sym(int i, std::size_t n) { return static_cast<std::uint32_t>(n + i - 1); }
std::uint32_t z_sym(int i, std::size_t n) { return static_cast<std::uint32_t>(2 * n + i - 1); }

Word letters(std::initializer_list<Letter> ls) { return Word(std::vector<Letter>(ls)); }

void check_expansion(const Word& w, const IntMatrix& expected, const GenSet& birman, const std::string& what) {
  if (!(evaluate(w, birman) == expected))
    throw ConstructionError("expansion word for " + what + " failed self-verification");
}

/// Upper/lower pair fallback: a Birman word found by floodsearch.
Word flood_fallback(const IntMatrix& target, const GenSet& birman, const std::string& what) {
  const auto found = flood_factor(birman, target, FloodBudget{200'000, true});
  if (!found.word) throw ConstructionError("could not construct an expansion for " + what);
  return *found.word;
}

}  // namespace

std::uint32_t elementary_symbol(std::size_t n, int i, int j) {
  require_pair(i, j, n);
  const auto row = static_cast<std::uint32_t>(i - 1);
  const auto col = static_cast<std::uint32_t>(j - 1);
  return row * static_cast<std::uint32_t>(n - 1) + (col < row ? col : col - 1);
}

std::shared_ptr<const GenSet> build_sl_elementary(std::size_t n) {
  require_rank(n);
  static std::map<std::size_t, std::shared_ptr<const GenSet>> cache;
  static std::mutex mu;
  return cached(cache, mu, n, [n] {
    std::vector<GeneratorSpec> specs;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j)
          specs.push_back({GenLabel::elementary(static_cast<int>(i + 1), static_cast<int>(j + 1)),
                           transvection(n, i, j), std::nullopt});
    return std::make_shared<const GenSet>("sl:" + std::to_string(n), n, std::move(specs));
  });
}

IntMatrix birman_z_matrix(int i, std::size_t n) {
  if (i < 1 || static_cast<std::size_t>(i) >= n) throw std::invalid_argument("Z_i needs 1 <= i < n");
  IntMatrix z = IntMatrix::identity(2 * n);
  const std::size_t r = static_cast<std::size_t>(i - 1);
  z(r, n + r) = -1;
  z(r, n + r + 1) = 1;
  z(r + 1, n + r) = 1;
  z(r + 1, n + r + 1) = -1;
  return z;
}

IntMatrix spair_matrix(int i, int j, std::size_t n) {
  require_pair(i, j, n);
  IntMatrix m = IntMatrix::identity(2 * n);
  m(i - 1, j - 1) = 1;
  m(n + j - 1, n + i - 1) = -1;
  return m;
}

IntMatrix toppair_matrix(int i, int j, std::size_t n) {
  require_pair(i, j, n);
  IntMatrix m = IntMatrix::identity(2 * n);
  m(i - 1, n + j - 1) = 1;
  m(j - 1, n + i - 1) = 1;
  return m;
}

IntMatrix botpair_matrix(int i, int j, std::size_t n) {
  require_pair(i, j, n);
  IntMatrix m = IntMatrix::identity(2 * n);
  m(n + i - 1, j - 1) = 1;
  m(n + j - 1, i - 1) = 1;
  return m;
}

std::shared_ptr<const GenSet> build_birman(std::size_t n) {
  require_rank(n);
  static std::map<std::size_t, std::shared_ptr<const GenSet>> cache;
  static std::mutex mu;
  return cached(cache, mu, n, [n] {
    const std::size_t dim = 2 * n;
    std::vector<GeneratorSpec> specs;
    for (std::size_t i = 0; i < n; ++i)
      specs.push_back({GenLabel::y(static_cast<int>(i + 1)), transvection(dim, i, n + i, -1), std::nullopt});
    for (std::size_t i = 0; i < n; ++i)
      specs.push_back({GenLabel::u(static_cast<int>(i + 1)), transvection(dim, n + i, i, 1), std::nullopt});
    for (std::size_t i = 1; i < n; ++i)
      specs.push_back({GenLabel::z(static_cast<int>(i)), birman_z_matrix(static_cast<int>(i), n), std::nullopt});
    auto gs = std::make_shared<const GenSet>("birman:" + std::to_string(dim), dim, std::move(specs));
    for (std::size_t s = 0; s < gs->symbol_count(); ++s)
      if (!is_sp_member(gs->symbol(s).matrix))
        throw ConstructionError("Birman generator " + gs->symbol(s).label.text() + " is not symplectic");
    return gs;
  });
}

Word spair_word(int i, int j, std::size_t n) {
  require_rank(n);
  require_pair(i, j, n);
  static std::map<std::tuple<std::size_t, int, int>, Word> cache;
  static std::recursive_mutex mu;
  std::lock_guard lock(mu);
  if (auto it = cache.find({n, i, j}); it != cache.end()) return it->second;

  auto Yl = [](int k, std::int64_t e = 1) { return Letter{y_sym(k), e}; };
  auto Ul = [n](int k, std::int64_t e = 1) { return Letter{u_sym(k, n), e}; };
  auto Zl = [n](int k, std::int64_t e = 1) { return Letter{z_sym(k, n), e}; };

  Word w;
  if (j == i + 1) {
    w = letters({Yl(i, -1), Yl(i + 1, -1), Ul(i + 1, -1), Yl(i + 1, -1), Zl(i), Ul(i + 1), Yl(i + 1)});
  } else if (i == j + 1) {
    const int k = j;  // SPair{k+1,k}
    w = letters({Yl(k + 1), Yl(k), Ul(k), Yl(k), Zl(k, -1), Ul(k, -1), Yl(k, -1)});
  } else if (j == i + 2) {
    const int k = j;  // SPair{k-2,k}
    w = commutator(letters({Yl(k - 1), Zl(k - 1, -1), Ul(k), Yl(k)}),
                   letters({Ul(k - 1), Yl(k - 1), Zl(k - 2, -1), Ul(k - 1, -1)}));
  } else if (i == j + 2) {
    const int k = i;  // SPair{k,k-2}
    w = commutator(letters({Yl(k - 1), Zl(k - 2, -1), Ul(k - 2), Yl(k - 2)}),
                   letters({Ul(k - 1), Yl(k - 1), Zl(k - 1, -1), Ul(k - 1, -1)}));
  } else if (j > i) {
    // t_{i,j} = [t_{i,j-1}, t_{j-1,j}], carried over to the block-diagonal pairs
    w = commutator(spair_word(i, j - 1, n), spair_word(j - 1, j, n));
  } else {
    w = commutator(spair_word(i, j + 1, n), spair_word(j + 1, j, n));
  }
  w = free_reduce(w);
  check_expansion(w, spair_matrix(i, j, n), *build_birman(n),
                  "SP[" + std::to_string(i) + "," + std::to_string(j) + "]");
  cache.emplace(std::tuple{n, i, j}, w);
  return w;
}

Word toppair_word(int i, int j, std::size_t n) {
  require_rank(n);
  require_pair(i, j, n);
  if (i > j) throw std::invalid_argument("toppair_word needs i < j");
  const auto birman = build_birman(n);
  const IntMatrix target = toppair_matrix(i, j, n);
  Word w = free_reduce(commutator(spair_word(i, j, n), Word::of(y_sym(j), -1)) * Word::of(y_sym(i), -1));
  if (!(evaluate(w, *birman) == target)) w = flood_fallback(target, *birman, "TP");
  check_expansion(w, target, *birman, "TP[" + std::to_string(i) + "," + std::to_string(j) + "]");
  return w;
}

Word botpair_word(int i, int j, std::size_t n) {
  require_rank(n);
  require_pair(i, j, n);
  if (i > j) throw std::invalid_argument("botpair_word needs i < j");
  const auto birman = build_birman(n);
  const IntMatrix target = botpair_matrix(i, j, n);
  Word w = free_reduce(commutator(spair_word(i, j, n), Word::of(u_sym(i, n), -1)) *
                       Word::of(u_sym(j, n), -1));
  if (!(evaluate(w, *birman) == target)) w = flood_fallback(target, *birman, "BP");
  check_expansion(w, target, *birman, "BP[" + std::to_string(i) + "," + std::to_string(j) + "]");
  return w;
}

Word negator_word(std::size_t n) {
  require_rank(n);
  return letters({{y_sym(1), 2}, {u_sym(1, n), 1}, {y_sym(1), 2}, {u_sym(1, n), 1}});
}

std::shared_ptr<const GenSet> build_extended_symplectic(std::size_t n) {
  require_rank(n);
  static std::map<std::size_t, std::shared_ptr<const GenSet>> cache;
  static std::mutex mu;
  return cached(cache, mu, n, [n] {
    const auto birman = build_birman(n);
    std::vector<GeneratorSpec> specs;
    for (std::size_t s = 0; s < birman->symbol_count(); ++s)
      specs.push_back({birman->symbol(s).label, birman->symbol(s).matrix, std::nullopt});
    const int top = static_cast<int>(n);
    for (int i = 1; i <= top; ++i)
      for (int j = 1; j <= top; ++j)
        if (i != j) specs.push_back({GenLabel::spair(i, j), spair_matrix(i, j, n), spair_word(i, j, n)});
    for (int i = 1; i <= top; ++i)
      for (int j = i + 1; j <= top; ++j)
        specs.push_back({GenLabel::toppair(i, j), toppair_matrix(i, j, n), toppair_word(i, j, n)});
    for (int i = 1; i <= top; ++i)
      for (int j = i + 1; j <= top; ++j)
        specs.push_back({GenLabel::botpair(i, j), botpair_matrix(i, j, n), botpair_word(i, j, n)});
    auto gs = std::make_shared<const GenSet>("extended:" + std::to_string(2 * n), 2 * n, std::move(specs),
                                             birman);
    for (std::size_t s = 0; s < gs->symbol_count(); ++s)
      if (!is_sp_member(gs->symbol(s).matrix))
        throw ConstructionError("extended generator " + gs->symbol(s).label.text() + " is not symplectic");
    return gs;
  });
}

std::shared_ptr<const GenSet> genset_from_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("genset spec must be kind:dim");
  const std::string kind(spec.substr(0, colon));
  const std::string dim_text(spec.substr(colon + 1));
  std::size_t used = 0;
  unsigned long dim = 0;
  try {
    dim = std::stoul(dim_text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != dim_text.size() || dim == 0) throw std::invalid_argument("bad dimension in genset spec");
  if (kind == "sl") return build_sl_elementary(dim);
  if (dim % 2 != 0) throw std::invalid_argument("symplectic genset needs an even dimension");
  if (kind == "birman") return build_birman(dim / 2);
  if (kind == "extended") return build_extended_symplectic(dim / 2);
  throw std::invalid_argument("unknown genset kind '" + kind + "' (sl, birman, extended)");
}

}  // namespace wordfact
