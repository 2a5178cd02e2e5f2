#pragma once

// Brute-force ground truth: avoider counts by pruned DFS (optionally
// parallel) or by generate-then-filter, capped-alphabet extension counts and
// Wilf-equivalence checks.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "invseq/bigint.hpp"
#include "invseq/closure.hpp"
#include "invseq/errors.hpp"
#include "invseq/gentree.hpp"
#include "invseq/seqcore.hpp"

namespace invseq {

enum class CountMethod { Dfs, Filter };

inline const char* method_name(CountMethod m) { return m == CountMethod::Dfs ? "dfs" : "filter"; }

struct CountReport {
  std::vector<BigInt> counts;  // entry n = |I_n(B)| or |P_n(B)|
  CountMethod method = CountMethod::Dfs;
  double seconds = 0;
  std::uint64_t nodes = 0;
  int requested = 0;
  bool truncated = false;  // budget hit: counts stop before `requested`
};

struct OracleOptions {
  unsigned threads = 1;
  std::uint64_t budget = kDefaultNodeBudget;
  CountMethod method = CountMethod::Dfs;
};

inline unsigned default_threads() { return std::max(1U, std::thread::hardware_concurrency()); }

namespace detail {

// Length of the words holding |I_n| / |P_n|.
inline std::size_t word_length(Kind k, int n) { return k == Kind::Inversion ? static_cast<std::size_t>(n) + 1 : static_cast<std::size_t>(n); }

inline std::vector<std::uint64_t> dfs_counts(const PatternSet& b, int n_max, unsigned threads, NodeBudget& budget) {
  const Kind kind = b.kind.kind;
  // counts indexed by word length
  const std::size_t max_len = word_length(kind, n_max);
  std::vector<std::uint64_t> by_len(max_len + 1, 0);
  by_len[0] = 1;
  if (max_len == 0) return by_len;
  // Expand serially down to a split length, then hand the frontier to
  // workers.
  const std::size_t split = std::min<std::size_t>(max_len, 3);
  std::vector<Word> frontier{Word{root_letter(kind)}};
  for (std::size_t len = 1; len < split; ++len) {
    by_len[len] += frontier.size();
    std::vector<Word> next;
    for (const Word& w : frontier) {
      LetterMask m = allowed_next(w, b.kind, b.avoid());
      budget.charge(static_cast<std::uint64_t>(m.count()));
      m.for_each([&](int x) {
        Word c = w;
        c.push_back(static_cast<Letter>(x));
        next.push_back(std::move(c));
      });
    }
    frontier = std::move(next);
  }
  const int depth = static_cast<int>(max_len - split);
  std::atomic<std::size_t> cursor{0};
  std::mutex mu;
  std::exception_ptr failure;
  auto worker = [&] {
    std::vector<std::uint64_t> local(static_cast<std::size_t>(depth) + 1, 0);
    try {
      for (std::size_t i = cursor.fetch_add(1); i < frontier.size(); i = cursor.fetch_add(1)) {
        Word w = frontier[i];
        dfs_count(w, b, depth, local, 0, budget);
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!failure) failure = std::current_exception();
      cursor = frontier.size();
    }
    std::lock_guard lock(mu);
    for (int k = 0; k <= depth; ++k) by_len[split + static_cast<std::size_t>(k)] += local[static_cast<std::size_t>(k)];
  };
  const unsigned n_workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(frontier.size())));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return by_len;
}

inline void all_valid_words(std::size_t len, SeqKind kind, const std::function<void(const Word&)>& f) {
  Word w;
  std::function<void()> rec = [&] {
    if (w.size() == len) {
      f(w);
      return;
    }
    next_letter_range(w, kind).for_each([&](int x) {
      w.push_back(static_cast<Letter>(x));
      rec();
      w.pop_back();
    });
  };
  rec();
}

}  // namespace detail

/// Largest n the filter method accepts.
inline constexpr int kFilterMaxN = 7;

/// Counts for n = 0..N. When the node budget runs out the computation is
/// retried with a smaller N and the report is marked truncated.
inline CountReport count_avoiders(const PatternSet& b, int n_max, const OracleOptions& opt = {}) {
  if (n_max < 0) throw InvalidInput("negative n");
  CountReport rep;
  rep.method = opt.method;
  rep.requested = n_max;
  const auto t0 = std::chrono::steady_clock::now();
  if (opt.method == CountMethod::Filter) {
    if (n_max > kFilterMaxN) throw InvalidInput("filter method supports n <= " + std::to_string(kFilterMaxN));
    for (int n = 0; n <= n_max; ++n) {
      std::uint64_t c = 0;
      detail::all_valid_words(detail::word_length(b.kind.kind, n), b.kind, [&](const Word& w) {
        ++rep.nodes;
        if (avoids_all(w, b.avoid())) ++c;
      });
      rep.counts.emplace_back(c);
    }
  } else {
    auto run = [&](int n, NodeBudget& budget) {
      const auto by_len = detail::dfs_counts(b, n, opt.threads, budget);
      rep.counts.clear();
      for (int k = 0; k <= n; ++k) rep.counts.emplace_back(by_len[detail::word_length(b.kind.kind, k)]);
    };
    NodeBudget budget(opt.budget);
    try {
      run(n_max, budget);
      rep.nodes = budget.used();
    } catch (const ResourceLimit&) {
      // climb from n = 0 with a fresh budget and keep the last run that fit
      rep.truncated = true;
      rep.nodes = budget.used();
      NodeBudget retry(opt.budget);
      try {
        for (int n = 0; n < n_max; ++n) run(n, retry);
      } catch (const ResourceLimit&) {
      }
      rep.nodes += retry.used();
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

/// Entry k = number of words u of length k over {0..cap} such that prefix·u
/// avoids B (containment checked on the whole concatenation).
inline std::vector<BigInt> capped_extension_counts(std::span<const Letter> prefix, int cap, const PatternSet& b, int maxlen,
                                                   std::uint64_t budget = kDefaultNodeBudget) {
  if (cap < 0) throw InvalidInput("cap must be >= 0");
  if (maxlen < 0) throw InvalidInput("maxlen must be >= 0");
  if (!avoids_all(prefix, b.avoid())) throw InvalidInput("prefix " + format_word(prefix) + " does not avoid " + b.describe());
  if (prefix.size() + static_cast<std::size_t>(maxlen) > kMaxWordLength) throw InvalidInput("prefix plus maxlen exceeds the maximum word length");
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(maxlen) + 1, 0);
  NodeBudget nb(budget);
  Word w(prefix.begin(), prefix.end());
  const LetterMask alphabet = LetterMask::range(0, cap);
  std::function<void(int)> rec = [&](int k) {
    counts[static_cast<std::size_t>(k)] += 1;
    if (k == maxlen) return;
    const LetterMask next = alphabet & ~forbidden_next(w, b.avoid());
    nb.charge(static_cast<std::uint64_t>(next.count()));
    next.for_each([&](int x) {
      w.push_back(static_cast<Letter>(x));
      rec(k + 1);
      w.pop_back();
    });
  };
  rec(0);
  return {counts.begin(), counts.end()};
}

struct WilfResult {
  bool equal = true;
  std::optional<int> first_divergence;
  std::vector<BigInt> left, right;
};

inline WilfResult wilf_check(const PatternSet& b1, const PatternSet& b2, int n_max, const OracleOptions& opt = {}) {
  if (b1.kind.kind != b2.kind.kind) throw InvalidInput("Wilf check needs pattern sets of the same kind");
  WilfResult r;
  const CountReport c1 = count_avoiders(b1, n_max, opt);
  const CountReport c2 = count_avoiders(b2, n_max, opt);
  if (c1.truncated || c2.truncated) throw ResourceLimit("Wilf check could not reach n=" + std::to_string(n_max), c1.nodes + c2.nodes);
  r.left = c1.counts;
  r.right = c2.counts;
  for (int n = 0; n <= n_max; ++n) {
    if (r.left[static_cast<std::size_t>(n)] != r.right[static_cast<std::size_t>(n)]) {
      r.equal = false;
      r.first_divergence = n;
      break;
    }
  }
  return r;
}

}  // namespace invseq
