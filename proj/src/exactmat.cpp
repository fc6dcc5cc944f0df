#include "wordfact/exactmat.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <sstream>
#include <utility>

namespace wordfact {

namespace {

void put_varint(std::string& out, std::size_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

std::size_t get_varint(std::string_view in, std::size_t& pos) {
  std::size_t v = 0;
  int shift = 0;
  while (true) {
    if (pos >= in.size()) throw std::invalid_argument("truncated content key");
    auto byte = static_cast<unsigned char>(in[pos++]);
    v |= static_cast<std::size_t>(byte & 0x7f) << shift;
    if (!(byte & 0x80)) return v;
    shift += 7;
  }
}

void require_square_dims(const IntMatrix& a, const IntMatrix& b) {
  if (a.dim() != b.dim())
    throw DimensionError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
}

void require_even(const IntMatrix& a) {
  if (a.dim() % 2 != 0)
    throw DimensionError("symplectic predicate needs even dimension, got " +
                         std::to_string(a.dim()));
}

}  // namespace

IntMatrix::IntMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
  if (dim == 0) throw DimensionError("matrix dimension must be positive");
}

IntMatrix::IntMatrix(std::size_t dim, std::vector<Integer> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim == 0) throw DimensionError("matrix dimension must be positive");
  if (entries_.size() != dim * dim)
    throw DimensionError("expected " + std::to_string(dim * dim) + " entries, got " +
                         std::to_string(entries_.size()));
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : IntMatrix(rows.size()) {
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != dim_) throw DimensionError("ragged matrix literal");
    std::size_t c = 0;
    for (long v : row) (*this)(r, c++) = v;
    ++r;
  }
}

IntMatrix IntMatrix::identity(std::size_t dim) {
  IntMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

bool IntMatrix::is_identity() const {
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

void IntMatrix::append_content_key(std::string& out) const {
  put_varint(out, dim_);
  for (const auto& x : entries_) {
    int sign = mpz_sgn(x.get_mpz_t());
    out.push_back(sign < 0 ? 1 : 0);
    if (sign == 0) {
      out.push_back(0);
      continue;
    }
    if (mpz_size(x.get_mpz_t()) == 1) {
      // single limb: emit big-endian bytes without a temporary buffer
      unsigned long mag = mpz_getlimbn(x.get_mpz_t(), 0);
      unsigned char buf[sizeof(unsigned long)];
      std::size_t len = 0;
      while (mag) {
        buf[len++] = static_cast<unsigned char>(mag & 0xff);
        mag >>= 8;
      }
      put_varint(out, len);
      for (std::size_t i = len; i-- > 0;) out.push_back(static_cast<char>(buf[i]));
      continue;
    }
    std::size_t count = 0;
    void* raw = mpz_export(nullptr, &count, 1, 1, 1, 0, x.get_mpz_t());
    put_varint(out, count);
    out.append(static_cast<const char*>(raw), count);
    void (*freefunc)(void*, std::size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefunc);
    freefunc(raw, count);
  }
}

std::string IntMatrix::content_key() const {
  std::string out;
  out.reserve(1 + 3 * entries_.size());
  append_content_key(out);
  return out;
}

IntMatrix IntMatrix::from_content_key(std::string_view key) {
  std::size_t pos = 0;
  std::size_t dim = get_varint(key, pos);
  IntMatrix m(dim);
  for (auto& x : m.entries_) {
    if (pos >= key.size()) throw std::invalid_argument("truncated content key");
    bool negative = key[pos++] != 0;
    std::size_t len = get_varint(key, pos);
    if (pos + len > key.size()) throw std::invalid_argument("truncated content key");
    if (len <= sizeof(unsigned long)) {
      unsigned long mag = 0;
      for (std::size_t i = 0; i < len; ++i)
        mag = (mag << 8) | static_cast<unsigned char>(key[pos + i]);
      x = mag;
    } else {
      mpz_import(x.get_mpz_t(), len, 1, 1, 1, 0, key.data() + pos);
    }
    pos += len;
    if (negative) x = -x;
  }
  if (pos != key.size()) throw std::invalid_argument("trailing bytes in content key");
  return m;
}

std::string GroupKind::name() const {
  return family == GroupFamily::SL ? "SL" + std::to_string(n) : "Sp" + std::to_string(2 * n);
}

GroupKind GroupKind::sp_of_dim(std::size_t dim) {
  if (dim == 0 || dim % 2 != 0) throw DimensionError("Sp requires an even dimension 2n");
  return {GroupFamily::Sp, dim / 2};
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  require_square_dims(a, b);
  const std::size_t n = a.dim();
  IntMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) mpz_addmul(out(i, j).get_mpz_t(), aik.get_mpz_t(), b(k, j).get_mpz_t());
    }
  return out;
}

IntMatrix transpose(const IntMatrix& a) {
  IntMatrix t(a.dim());
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c) t(c, r) = a(r, c);
  return t;
}

Integer determinant(const IntMatrix& a) {
  const std::size_t n = a.dim();
  IntMatrix m = a;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap_row, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = std::move(v);
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  const std::size_t n = a.dim();
  Integer det = determinant(a);
  if (abs(det) != 1) throw std::domain_error("matrix is not unimodular (det = " + det.get_str() + ")");
  // Gauss-Jordan over Q; the result is integral because det = +-1.
  std::vector<mpq_class> m(n * 2 * n);
  auto at = [&](std::size_t r, std::size_t c) -> mpq_class& { return m[r * 2 * n + c]; };
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) at(r, c) = a(r, c);
    at(r, n + r) = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (at(piv, col) == 0) ++piv;
    if (piv != col)
      for (std::size_t c = 0; c < 2 * n; ++c) std::swap(at(piv, c), at(col, c));
    mpq_class inv = 1 / at(col, col);
    for (std::size_t c = 0; c < 2 * n; ++c) at(col, c) *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || at(r, col) == 0) continue;
      mpq_class f = at(r, col);
      for (std::size_t c = 0; c < 2 * n; ++c) at(r, c) -= f * at(col, c);
    }
  }
  IntMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = at(r, n + c).get_num();
  return out;
}

IntMatrix transvection(std::size_t dim, std::size_t row, std::size_t col, long k) {
  if (row >= dim || col >= dim || row == col)
    throw std::invalid_argument("transvection needs distinct in-range indices");
  IntMatrix m = IntMatrix::identity(dim);
  m(row, col) = k;
  return m;
}

IntMatrix symplectic_form(std::size_t dim) {
  if (dim == 0 || dim % 2 != 0) throw DimensionError("symplectic form needs even dimension");
  const std::size_t n = dim / 2;
  IntMatrix j(dim);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, n + i) = 1;
    j(n + i, i) = -1;
  }
  return j;
}

bool is_sl_member(const IntMatrix& a) { return determinant(a) == 1; }

bool is_sp_member(const IntMatrix& a) {
  require_even(a);
  const IntMatrix j = symplectic_form(a.dim());
  return mat_mul(mat_mul(a, j), transpose(a)) == j;
}

Integer height_full(const IntMatrix& a) {
  Integer h = 0, d;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c) {
      d = a(r, c);
      if (r == c) d -= 1;
      h += d * d;
    }
  return h;
}

Integer height_rowlocal(const IntMatrix& a, std::size_t rows) {
  require_even(a);
  if (rows > a.dim())
    throw std::out_of_range("row-local height index " + std::to_string(rows) + " exceeds " +
                            std::to_string(a.dim()));
  const std::size_t n = a.dim() / 2;
  Integer h = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t begin = r < n ? n : 0;
    for (std::size_t c = begin; c < begin + n; ++c) h += a(r, c) * a(r, c);
  }
  return h;
}

Integer height_offblock(const IntMatrix& a) {
  require_even(a);
  return height_rowlocal(a, a.dim());
}

IntMatrix mod_reduce(const IntMatrix& a, const Integer& p) {
  if (p < 2) throw std::invalid_argument("modulus must be at least 2");
  IntMatrix out(a.dim());
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    mpz_fdiv_r(out.entries()[i].get_mpz_t(), a.entries()[i].get_mpz_t(), p.get_mpz_t());
  return out;
}

bool SparseDelta::from_matrix(const IntMatrix& g, SparseDelta& out) {
  out = SparseDelta{};
  out.dim_ = g.dim();
  for (std::size_t r = 0; r < g.dim(); ++r)
    for (std::size_t c = 0; c < g.dim(); ++c) {
      Integer v = g(r, c);
      if (r == c) v -= 1;
      if (v == 0) continue;
      if (!v.fits_slong_p()) return false;
      out.entries_.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c), v.get_si()});
    }
  for (const auto& e : out.entries_) {
    out.rows_.push_back(e.row);
    out.cols_.push_back(e.col);
  }
  for (auto* v : {&out.rows_, &out.cols_}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  // D^2 = 0 iff no entry (r,k) chains into an entry (k,c) with nonzero sum.
  IntMatrix sq(g.dim());
  for (const auto& a : out.entries_)
    for (const auto& b : out.entries_)
      if (a.col == b.row) sq(a.row, b.col) += Integer(a.value) * b.value;
  out.square_zero_ = true;
  for (const auto& x : sq.entries())
    if (x != 0) out.square_zero_ = false;
  return true;
}

void SparseDelta::right_apply(IntMatrix& a, long k) const {
  // Column c of a*(I + kD) is a[:,c] + k * sum_{(r,c,v)} v * a[:,r]; sources are
  // read before any target column is overwritten.
  const std::size_t n = a.dim();
  thread_local std::vector<Integer> scratch;
  scratch.resize(cols_.size() * n);
  for (std::size_t ci = 0; ci < cols_.size(); ++ci) {
    const auto c = cols_[ci];
    for (std::size_t r = 0; r < n; ++r) scratch[ci * n + r] = a(r, c);
  }
  for (const auto& e : entries_) {
    const auto ci = static_cast<std::size_t>(
        std::lower_bound(cols_.begin(), cols_.end(), e.col) - cols_.begin());
    long f;
    if (__builtin_mul_overflow(e.value, k, &f) || f == LONG_MIN)
      throw std::overflow_error("sparse multiplier overflows a long");
    for (std::size_t r = 0; r < n; ++r) {
      if (f >= 0)
        mpz_addmul_ui(scratch[ci * n + r].get_mpz_t(), a(r, e.row).get_mpz_t(), static_cast<unsigned long>(f));
      else
        mpz_submul_ui(scratch[ci * n + r].get_mpz_t(), a(r, e.row).get_mpz_t(), static_cast<unsigned long>(-f));
    }
  }
  for (std::size_t ci = 0; ci < cols_.size(); ++ci)
    for (std::size_t r = 0; r < n; ++r) std::swap(a(r, cols_[ci]), scratch[ci * n + r]);
}

void SparseDelta::left_apply(IntMatrix& a, long k) const {
  const std::size_t n = a.dim();
  thread_local std::vector<Integer> scratch;
  scratch.resize(rows_.size() * n);
  for (std::size_t ri = 0; ri < rows_.size(); ++ri) {
    const auto r = rows_[ri];
    for (std::size_t c = 0; c < n; ++c) scratch[ri * n + c] = a(r, c);
  }
  for (const auto& e : entries_) {
    const auto ri = static_cast<std::size_t>(
        std::lower_bound(rows_.begin(), rows_.end(), e.row) - rows_.begin());
    long f;
    if (__builtin_mul_overflow(e.value, k, &f) || f == LONG_MIN)
      throw std::overflow_error("sparse multiplier overflows a long");
    for (std::size_t c = 0; c < n; ++c) {
      if (f >= 0)
        mpz_addmul_ui(scratch[ri * n + c].get_mpz_t(), a(e.col, c).get_mpz_t(), static_cast<unsigned long>(f));
      else
        mpz_submul_ui(scratch[ri * n + c].get_mpz_t(), a(e.col, c).get_mpz_t(), static_cast<unsigned long>(-f));
    }
  }
  for (std::size_t ri = 0; ri < rows_.size(); ++ri)
    for (std::size_t c = 0; c < n; ++c) std::swap(a(rows_[ri], c), scratch[ri * n + c]);
}

std::string format_matrix(const IntMatrix& a) {
  std::string out = std::to_string(a.dim()) + "\n";
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t c = 0; c < a.dim(); ++c) {
      if (c) out += ' ';
      out += a(r, c).get_str();
    }
    out += '\n';
  }
  return out;
}

std::string format_matrix_brackets(const IntMatrix& a) {
  std::string out = "[";
  for (std::size_t r = 0; r < a.dim(); ++r) {
    out += r ? ",[" : "[";
    for (std::size_t c = 0; c < a.dim(); ++c) {
      if (c) out += ',';
      out += a(r, c).get_str();
    }
    out += ']';
  }
  return out + "]";
}

namespace {

class MatrixScanner {
 public:
  explicit MatrixScanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  void expect(char ch) {
    if (peek() != ch) throw ParseError(std::string("expected '") + ch + "'", pos_);
    ++pos_;
  }
  Integer integer() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) throw ParseError("expected integer", start);
    std::string token(text_.substr(start, pos_ - start));
    if (token[0] == '+') token.erase(0, 1);
    return Integer(token, 10);
  }
  std::size_t position() const { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

IntMatrix parse_matrix(std::string_view text) {
  MatrixScanner scan(text);
  if (scan.peek() == '[') {
    scan.expect('[');
    std::vector<std::vector<Integer>> rows;
    do {
      scan.expect('[');
      std::vector<Integer> row;
      row.push_back(scan.integer());
      while (scan.peek() == ',') {
        scan.expect(',');
        row.push_back(scan.integer());
      }
      scan.expect(']');
      rows.push_back(std::move(row));
      if (scan.peek() != ',') break;
      scan.expect(',');
    } while (true);
    scan.expect(']');
    if (!scan.at_end()) throw ParseError("trailing input", scan.position());
    const std::size_t dim = rows.size();
    std::vector<Integer> entries;
    for (auto& row : rows) {
      if (row.size() != dim) throw ParseError("matrix is not square", scan.position());
      for (auto& x : row) entries.push_back(std::move(x));
    }
    return IntMatrix(dim, std::move(entries));
  }
  std::size_t dim_pos = scan.position();
  Integer dim = scan.integer();
  if (dim < 1 || dim > 4096) throw ParseError("invalid dimension", dim_pos);
  const std::size_t n = dim.get_ui();
  std::vector<Integer> entries;
  entries.reserve(n * n);
  for (std::size_t i = 0; i < n * n; ++i) entries.push_back(scan.integer());
  if (!scan.at_end()) throw ParseError("trailing input", scan.position());
  return IntMatrix(n, std::move(entries));
}

}  // namespace wordfact
