#include "wordfact/congruence.hpp"

#include <stdexcept>

namespace wordfact {

namespace {

bool is_prime(std::uint64_t p) {
  Integer z(std::to_string(p));
  return p >= 2 && mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

}  // namespace

Integer sl_order_mod_p(std::size_t n, std::uint64_t p) {
  if (n < 2) throw std::invalid_argument("sl_order_mod_p needs n >= 2");
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  Integer q(std::to_string(p));
  Integer order;
  mpz_pow_ui(order.get_mpz_t(), q.get_mpz_t(), n * (n - 1) / 2);
  for (std::size_t k = 2; k <= n; ++k) {
    Integer pk;
    mpz_pow_ui(pk.get_mpz_t(), q.get_mpz_t(), k);
    order *= pk - 1;
  }
  return order;
}

std::uint64_t next_prime(std::uint64_t p) {
  std::uint64_t q = p + 1;
  while (!is_prime(q)) ++q;
  return q;
}

ModularCayley::ModularCayley(const GenSet& gs, std::uint32_t p)
    : dim_(gs.dim()), p_(p), width_(p <= 256 ? 1 : p <= 65536 ? 2 : 4) {
  gens_.reserve(gs.gen_count());
  for (std::size_t g = 0; g < gs.gen_count(); ++g) gens_.push_back(reduce(gs.gen_matrix(g)));
}

ModularCayley::Element ModularCayley::identity() const {
  Element e(dim_ * dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i) e[i * dim_ + i] = 1 % p_;
  return e;
}

ModularCayley::Element ModularCayley::reduce(const IntMatrix& m) const {
  const IntMatrix r = mod_reduce(m, Integer(p_));
  Element out(dim_ * dim_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint32_t>(r.entries()[i].get_ui());
  return out;
}

void ModularCayley::mul_into(const Element& a, const Element& b, Element& out) const {
  out.assign(dim_ * dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < dim_; ++k) {
        acc += std::uint64_t{a[i * dim_ + k]} * b[k * dim_ + j];
        if (acc >= (std::uint64_t{1} << 62)) acc %= p_;
      }
      out[i * dim_ + j] = static_cast<std::uint32_t>(acc % p_);
    }
}

void ModularCayley::key(const Element& a, std::string& out) const {
  for (auto v : a)
    for (std::size_t b = 0; b < width_; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

ModularCayley::Element ModularCayley::decode(std::string_view key) const {
  Element out(dim_ * dim_);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint32_t v = 0;
    for (std::size_t b = 0; b < width_; ++b)
      v |= std::uint32_t{static_cast<unsigned char>(key[i * width_ + b])} << (8 * b);
    out[i] = v;
  }
  return out;
}

CongruenceFactorizer::CongruenceFactorizer(std::shared_ptr<const GenSet> gs, PrimeSchedule schedule)
    : gs_(std::move(gs)), schedule_(std::move(schedule)) {
  if (!gs_) throw std::invalid_argument("congruence factorizer needs a generating set");
  if (!is_prime(schedule_.start_prime)) throw std::invalid_argument("start prime must be prime");
  if (schedule_.image_budget.max_elements < 1) throw std::invalid_argument("image budget must be positive");
}

CayleyBall<ModularCayley>& CongruenceFactorizer::image(std::uint32_t p) {
  auto it = images_.find(p);
  if (it == images_.end()) {
    auto ball = std::make_unique<CayleyBall<ModularCayley>>(ModularCayley(*gs_, p));
    ball->grow(schedule_.image_budget.max_elements);
    it = images_.emplace(p, std::move(ball)).first;
  }
  return *it->second;
}

CongruenceOutcome CongruenceFactorizer::factor(const IntMatrix& e) {
  if (e.dim() != gs_->dim()) throw DimensionError("target dimension differs from generating set");
  const std::size_t n = gs_->dim();
  CongruenceOutcome out;
  for (std::uint64_t p = schedule_.start_prime; sl_order_mod_p(n, p) <= schedule_.order_cap;
       p = next_prime(p)) {
    if (p > 0xffffffffu) break;
    auto& ball = image(static_cast<std::uint32_t>(p));
    const auto found = ball.query(ball.cayley().reduce(e), schedule_.image_budget.require_minimal);
    if (!found.word) {
      // image search ran out of memory: treated like a failed lift
      out.attempts.push_back({p, PrimeAttemptResult::ImageExhausted, 0});
      continue;
    }
    if (evaluate(*found.word, *gs_) == e) {
      out.attempts.push_back({p, PrimeAttemptResult::Lifted, found.word->length()});
      out.word = found.word;
      return out;
    }
    out.attempts.push_back({p, PrimeAttemptResult::LiftMismatch, found.word->length()});
  }
  return out;
}

CongruenceOutcome congruence_factor(std::shared_ptr<const GenSet> gs, const IntMatrix& e,
                                    const PrimeSchedule& schedule) {
  CongruenceFactorizer f(std::move(gs), schedule);
  return f.factor(e);
}

}  // namespace wordfact
