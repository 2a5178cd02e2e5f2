#pragma once

// Minimal inversion-sequence extensions of patterns, and pattern sets whose
// closure is avoidance-equivalent to the raw patterns.

#include <algorithm>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "invseq/errors.hpp"
#include "invseq/seqcore.hpp"

namespace invseq {

/// All inversion sequences θ1 τ1 θ2 τ2 ... θm τm in which every prefix ending
/// at τj has the least achievable length. Pattern letters keep their values.
inline std::vector<Pattern> l_tau(const Pattern& p) {
  if (!p.normalized()) throw InvalidInput("pattern " + p.str() + " is not normalized");
  std::vector<Word> stage{Word{}};
  for (Letter c : p.word()) {
    std::set<Word> next;
    // Every stage prefix has the same length, so the minimal filler length
    // is the same for all of them: c must sit at position >= c.
    const std::size_t len = stage.front().size();
    const std::size_t filler = c > len ? c - len : 0;
    for (const Word& u : stage) {
      Word w = u;
      w.resize(len + filler);
      std::function<void(std::size_t)> fill = [&](std::size_t i) {
        if (i == len + filler) {
          Word full = w;
          full.push_back(c);
          next.insert(std::move(full));
          return;
        }
        for (Letter v = 0; v <= i; ++v) {
          w[i] = v;
          fill(i + 1);
        }
      };
      fill(len);
    }
    stage.assign(next.begin(), next.end());
  }
  std::vector<Pattern> out;
  out.reserve(stage.size());
  for (Word& w : stage) out.emplace_back(std::move(w));
  return out;
}

/// Containment-minimal inversion sequences that contain p, found by an
/// exhaustive length-by-length search up to `max_len` letters.
inline std::vector<Pattern> minimal_inversion_basis(const Pattern& p, std::size_t max_len) {
  std::vector<Pattern> basis;
  if (is_valid(p.word(), SeqKind::inversion())) {
    basis.push_back(p);
    return basis;
  }
  Word w;
  for (std::size_t target = p.size(); target <= max_len; ++target) {
    const std::size_t known = basis.size();
    auto hits_known = [&] {
      for (std::size_t i = 0; i < known; ++i)
        if (contains(w, basis[i])) return true;
      return false;
    };
    std::function<void()> dfs = [&] {
      if (hits_known()) return;
      if (w.size() == target) {
        if (contains(w, p)) basis.emplace_back(w);
        return;
      }
      for (Letter x = 0; x <= w.size(); ++x) {
        w.push_back(x);
        dfs();
        w.pop_back();
      }
    };
    dfs();
  }
  return basis;
}

/// Forbidden patterns together with their avoidance-equivalent closure.
struct PatternSet {
  SeqKind kind = SeqKind::inversion();
  std::vector<Pattern> raw;
  /// Union of l_tau over raw (inversion kind); raw for RGS.
  std::vector<Pattern> extensions;
  /// extensions plus any further containment-minimal inversion sequences, so
  /// that avoiding raw and avoiding closure coincide on inversion sequences.
  std::vector<Pattern> closure;
  /// Length of the longest closure pattern (raw for RGS).
  int horizon_t = 0;
  /// Longest length searched when completing the closure.
  std::size_t completion_length = 0;

  /// Patterns used for membership tests: avoiding raw is the definition.
  std::span<const Pattern> avoid() const { return raw; }

  std::string describe() const {
    std::string s;
    for (const Pattern& p : raw) s += (s.empty() ? "" : ",") + p.str();
    return kind_name(kind.kind) + "{" + s + "}";
  }
};

/// Search bound for the closure completion of one pattern of length m whose
/// largest letter is t.
inline std::size_t completion_bound(const Pattern& p) {
  const std::size_t bound = p.size() + 2 * p.max_letter() + 2;
  return std::min<std::size_t>(bound, 10);
}

inline PatternSet build_pattern_set(std::vector<Pattern> patterns, SeqKind kind) {
  if (patterns.empty()) throw InvalidInput("empty pattern set");
  if (kind.kind == Kind::PlainWord) throw InvalidInput("pattern sets are defined for inversion or RGS kinds only");
  std::sort(patterns.begin(), patterns.end());
  patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
  PatternSet set;
  set.kind = kind;
  for (const Pattern& p : patterns) {
    if (p.size() == 1)
      throw InvalidInput("degenerate pattern " + p.str() + ": every sequence contains it, the tree is empty");
    if (kind.kind == Kind::RestrictedGrowth) {
      if (!is_valid(p.word(), SeqKind::rgs()))
        throw InvalidInput("RGS pattern " + p.str() + " is not itself a restricted growth sequence");
    } else if (!p.normalized()) {
      throw InvalidInput("pattern " + p.str() + " is not normalized");
    }
  }
  set.raw = patterns;
  if (kind.kind == Kind::RestrictedGrowth) {
    set.extensions = patterns;
    set.closure = patterns;
  } else {
    std::set<Pattern> ext;
    std::set<Pattern> all;
    for (const Pattern& p : patterns) {
      for (Pattern& q : l_tau(p)) {
        ext.insert(q);
        all.insert(q);
      }
      const std::size_t bound = completion_bound(p);
      set.completion_length = std::max(set.completion_length, bound);
      for (Pattern& q : minimal_inversion_basis(p, bound)) all.insert(std::move(q));
    }
    set.extensions.assign(ext.begin(), ext.end());
    set.closure.assign(all.begin(), all.end());
  }
  for (const Pattern& q : set.closure) set.horizon_t = std::max<int>(set.horizon_t, static_cast<int>(q.size()));
  return set;
}

/// Parses "000,021" (compact letters per pattern, comma separated).
inline std::vector<Pattern> parse_patterns(std::string_view text, Kind kind) {
  std::vector<Pattern> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(start, comma - start);
    if (tok.empty()) throw InvalidInput("empty pattern in list '" + std::string(text) + "'");
    out.push_back(Pattern::parse(tok, kind));
    start = comma + 1;
  }
  return out;
}

inline PatternSet make_pattern_set(std::string_view patterns, SeqKind kind) {
  return build_pattern_set(parse_patterns(patterns, kind.kind), kind);
}

inline bool extension_ok(std::span<const Letter> w, Letter x, const PatternSet& b) {
  return extension_ok(w, x, b.avoid());
}

}  // namespace invseq
