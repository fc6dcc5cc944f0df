#pragma once

// Breadth-first flooding of a Cayley graph from the identity, with the
// meet-in-the-middle second stage that intersects the stored ball A with eA.
//
// The engine is generic over the ring the matrices live in; a `Cayley`
// policy supplies:
//   using Element = ...;
//   Element identity() const;
//   std::size_t gen_count() const;
//   void step(const Element& a, std::size_t gen, Element& out) const;  // out = a * gen
//   void key(const Element& a, std::string& out) const;                // canonical bytes
//   Element decode(std::string_view key) const;
//   Element multiply(const Element& a, const Element& b) const;
//   bool equal(const Element& a, const Element& b) const;

#include "wordfact/words.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace wordfact {

struct FloodBudget {
  std::size_t max_elements = 1'000'000;
  bool require_minimal = false;
};

struct FloodOutcome {
  std::optional<Word> word;  // empty means ElementsExhausted
  /// True when the word is known to be a shortest word: found in stage 1,
  /// the whole group was enumerated, or (minimal mode) the stage-2 length is
  /// at most 2R+1 for a completely stored radius R.
  bool certified_minimal = false;
  int stage = 0;
  std::size_t stored_elements = 0;
  std::size_t completed_radius = 0;

  bool exhausted() const { return !word.has_value(); }
};

template <class Cayley>
class CayleyBall {
 public:
  using Element = typename Cayley::Element;
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  explicit CayleyBall(Cayley cayley) : cayley_(std::move(cayley)) {
    std::string k;
    cayley_.key(cayley_.identity(), k);
    insert(std::move(k), kNone, 0, 0);
    frontier_.push_back(0);
  }

  const Cayley& cayley() const { return cayley_; }
  std::size_t size() const { return nodes_.size(); }
  /// Every element of word length <= completed_radius() is stored.
  std::size_t completed_radius() const { return radius_; }
  /// The whole (finite) group has been enumerated.
  bool closed() const { return closed_; }

  /// Grows level by level (FIFO, generators in index order) until
  /// max_elements are stored, the group closes, or `stop` is inserted.
  /// Returns the node holding `stop` when it is reached.
  std::optional<std::uint32_t> grow(std::size_t max_elements, const std::string* stop = nullptr) {
    if (stop) {
      if (auto hit = find(*stop)) return hit;
    }
    Element a, b;
    std::string k;
    while (!closed_ && !full_) {
      std::vector<std::uint32_t> next;
      for (; cursor_ < frontier_.size(); ++cursor_) {
        const std::uint32_t id = frontier_[cursor_];
        a = cayley_.decode(*nodes_[id].key);
        for (std::size_t g = next_gen_; g < cayley_.gen_count(); ++g) {
          cayley_.step(a, g, b);
          k.clear();
          cayley_.key(b, k);
          if (index_.find(k) != index_.end()) continue;
          if (nodes_.size() >= max_elements) {
            next_gen_ = g;
            full_ = true;
            pending_next_.insert(pending_next_.end(), next.begin(), next.end());
            return std::nullopt;
          }
          const auto nid = insert(k, id, static_cast<std::uint32_t>(g), nodes_[id].depth + 1);
          next.push_back(nid);
          if (stop && k == *stop) {
            // Keep the level resumable: remember where we stopped.
            next_gen_ = g + 1;
            pending_next_.insert(pending_next_.end(), next.begin(), next.end());
            if (next_gen_ == cayley_.gen_count()) {
              next_gen_ = 0;
              ++cursor_;
            }
            return nid;
          }
        }
        next_gen_ = 0;
      }
      pending_next_.insert(pending_next_.end(), next.begin(), next.end());
      ++radius_;
      if (pending_next_.empty()) closed_ = true;
      frontier_ = std::move(pending_next_);
      pending_next_.clear();
      cursor_ = 0;
    }
    return std::nullopt;
  }

  /// Allows further growth after a budget stop (with a larger budget).
  void lift_budget() { full_ = false; }

  std::optional<std::uint32_t> find(const std::string& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::uint32_t depth(std::uint32_t id) const { return nodes_[id].depth; }

  /// The stored shortest word from the identity to node `id`.
  Word word_to(std::uint32_t id) const {
    std::vector<Letter> rev;
    for (std::uint32_t cur = id; nodes_[cur].parent != kNone; cur = nodes_[cur].parent)
      rev.push_back(Word::of_gen(nodes_[cur].gen).runs()[0]);
    return free_reduce(Word(std::vector<Letter>(rev.rbegin(), rev.rend())));
  }

  /// Stage 1 lookup followed, when needed, by the stage-2 ball intersection.
  /// Does not grow the ball.
  FloodOutcome query(const Element& e, bool require_minimal) const {
    FloodOutcome out;
    out.stored_elements = size();
    out.completed_radius = radius_;
    std::string k;
    cayley_.key(e, k);
    if (auto hit = find(k)) {
      out.word = word_to(*hit);
      out.stage = 1;
      out.certified_minimal = true;
      return out;
    }
    if (closed_) return out;  // not in the generated group
    // e = b a^-1 whenever e*a = b with a, b stored.
    std::uint32_t best_a = kNone, best_b = kNone;
    std::uint64_t best_len = std::numeric_limits<std::uint64_t>::max();
    for (std::uint32_t id = 0; id < nodes_.size(); ++id) {
      if (require_minimal && nodes_[id].depth >= best_len) continue;
      const Element ea = cayley_.multiply(e, cayley_.decode(*nodes_[id].key));
      k.clear();
      cayley_.key(ea, k);
      auto hit = find(k);
      if (!hit) continue;
      const std::uint64_t len = std::uint64_t{nodes_[id].depth} + nodes_[*hit].depth;
      if (len < best_len) {
        best_len = len;
        best_a = id;
        best_b = *hit;
      }
      if (!require_minimal) break;
    }
    if (best_a == kNone) return out;
    out.word = free_reduce(word_to(best_b) * invert_word(word_to(best_a)));
    out.stage = 2;
    out.certified_minimal = require_minimal && best_len <= 2 * radius_ + 1;
    return out;
  }

 private:
  struct Node {
    const std::string* key;
    std::uint32_t parent;
    std::uint32_t gen;
    std::uint32_t depth;
  };

  std::uint32_t insert(std::string key, std::uint32_t parent, std::uint32_t gen, std::uint32_t depth) {
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    auto [it, fresh] = index_.emplace(std::move(key), id);
    nodes_.push_back({&it->first, parent, gen, depth});
    return id;
  }

  Cayley cayley_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> frontier_;
  std::vector<std::uint32_t> pending_next_;
  std::size_t cursor_ = 0;
  std::size_t next_gen_ = 0;
  std::size_t radius_ = 0;
  bool closed_ = false;
  bool full_ = false;
};

/// Cayley graph of a GenSet acting on integer matrices.
class IntegralCayley {
 public:
  using Element = IntMatrix;
  explicit IntegralCayley(const GenSet& gs) : gs_(&gs) {}

  Element identity() const { return IntMatrix::identity(gs_->dim()); }
  std::size_t gen_count() const { return gs_->gen_count(); }
  void step(const Element& a, std::size_t gen, Element& out) const {
    out = a;
    gs_->right_multiply(out, static_cast<std::uint32_t>(gen / 2), (gen & 1) ? -1 : 1);
  }
  void key(const Element& a, std::string& out) const { a.append_content_key(out); }
  Element decode(std::string_view key) const { return IntMatrix::from_content_key(key); }
  Element multiply(const Element& a, const Element& b) const { return mat_mul(a, b); }
  const GenSet& genset() const { return *gs_; }

 private:
  const GenSet* gs_;
};

/// Algorithm "Floodsearch": stage 1 BFS with early exit, then stage 2.
/// Every returned word is checked to evaluate to e.
FloodOutcome flood_factor(const GenSet& gs, const IntMatrix& e, const FloodBudget& budget);

/// Shortest word length when it can be certified within the budget.
std::optional<std::uint64_t> min_word_length(const GenSet& gs, const IntMatrix& e, FloodBudget budget);

}  // namespace wordfact
