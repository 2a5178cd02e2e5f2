#pragma once

// Lazy expansion of the pattern-avoidance tree T(B): children, level counts
// and truncated subtrees by pruned depth-first search.

#include <atomic>
#include <cstdint>
#include <span>
#include <vector>

#include "invseq/bigint.hpp"
#include "invseq/closure.hpp"
#include "invseq/errors.hpp"
#include "invseq/seqcore.hpp"

namespace invseq {

inline constexpr std::uint64_t kDefaultNodeBudget = 1'000'000'000;

struct TreeNode {
  Word word;
  int level = 0;
};

inline TreeNode root_node(const PatternSet& b) { return {Word{root_letter(b.kind.kind)}, 0}; }

/// Children of w in T(B), ascending in the appended letter.
inline std::vector<Word> children(std::span<const Letter> w, const PatternSet& b) {
  std::vector<Word> out;
  if (w.size() >= kMaxWordLength) throw InvalidInput("word too long to extend");
  allowed_next(w, b.kind, b.avoid()).for_each([&](int x) {
    Word c(w.begin(), w.end());
    c.push_back(static_cast<Letter>(x));
    out.push_back(std::move(c));
  });
  return out;
}

/// Shared node budget; throws ResourceLimit once exhausted.
class NodeBudget {
 public:
  explicit NodeBudget(std::uint64_t limit = kDefaultNodeBudget) : limit_(limit) {}
  void charge(std::uint64_t n) {
    const std::uint64_t used = used_.fetch_add(n, std::memory_order_relaxed) + n;
    if (used > limit_) throw ResourceLimit("node budget of " + std::to_string(limit_) + " exceeded", used);
  }
  std::uint64_t used() const { return used_.load(std::memory_order_relaxed); }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::atomic<std::uint64_t> used_{0};
};

namespace detail {

// Adds the node counts of T(B; w) for relative levels 0..depth into
// counts[base + k]. The last level is counted from the allowed mask without
// materializing the leaves.
inline void dfs_count(Word& w, const PatternSet& b, int depth, std::vector<std::uint64_t>& counts, std::size_t base,
                      NodeBudget& budget) {
  counts[base] += 1;
  if (depth == 0) return;
  if (w.size() >= kMaxWordLength) throw InvalidInput("level exceeds the maximum word length");
  const LetterMask next = allowed_next(w, b.kind, b.avoid());
  const int n = next.count();
  budget.charge(static_cast<std::uint64_t>(n));
  if (depth == 1) {
    counts[base + 1] += static_cast<std::uint64_t>(n);
    return;
  }
  next.for_each([&](int x) {
    w.push_back(static_cast<Letter>(x));
    dfs_count(w, b, depth - 1, counts, base + 1, budget);
    w.pop_back();
  });
}

}  // namespace detail

/// Node counts per level of T(B; prefix), prefix at level 0.
inline std::vector<BigInt> subtree_level_counts(std::span<const Letter> prefix, const PatternSet& b, int depth,
                                                std::uint64_t budget = kDefaultNodeBudget) {
  if (depth < 0) throw InvalidInput("negative depth");
  if (!is_valid(prefix, b.kind)) throw InvalidInput("prefix " + format_word(prefix) + " is not valid for its kind");
  if (!avoids_all(prefix, b.avoid())) throw InvalidInput("prefix " + format_word(prefix) + " does not avoid " + b.describe());
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(depth) + 1, 0);
  Word w(prefix.begin(), prefix.end());
  NodeBudget nb(budget);
  detail::dfs_count(w, b, depth, counts, 0, nb);
  return {counts.begin(), counts.end()};
}

/// Tree levels 0..depth of T(B).
inline std::vector<BigInt> tree_level_counts(const PatternSet& b, int depth, std::uint64_t budget = kDefaultNodeBudget) {
  return subtree_level_counts(root_node(b).word, b, depth, budget);
}

/// Entry n = |I_n(B)| for n = 0..N (inversion, tree level n) or |P_n(B)|
/// (RGS, word length n, entry 0 = 1 for the empty word).
inline std::vector<BigInt> level_sizes(const PatternSet& b, int n_max, std::uint64_t budget = kDefaultNodeBudget) {
  if (n_max < 0) throw InvalidInput("negative level");
  if (b.kind.kind == Kind::Inversion) return tree_level_counts(b, n_max, budget);
  std::vector<BigInt> out{1};
  if (n_max == 0) return out;
  for (BigInt& c : tree_level_counts(b, n_max - 1, budget)) out.push_back(std::move(c));
  return out;
}

}  // namespace invseq
