#pragma once

// Core sequence types: words, sequence kinds, patterns, order-isomorphic
// containment and the last-letter-anchored extension test.

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "invseq/errors.hpp"

namespace invseq {

using Letter = std::uint16_t;
using Word = std::vector<Letter>;

inline constexpr std::size_t kMaxWordLength = 64;
inline constexpr std::size_t kMaxPatternLength = 12;
inline constexpr int kMaskWidth = 128;

/// Fixed-width set of letters 0..127, used for candidate next letters.
class LetterMask {
 public:
  constexpr LetterMask() = default;

  static LetterMask range(int lo, int hi) {
    LetterMask m;
    m.set_range(lo, hi);
    return m;
  }

  static LetterMask full() { return range(0, kMaskWidth - 1); }

  void set(int x) {
    if (x < 0 || x >= kMaskWidth) return;
    word(x) |= std::uint64_t{1} << (x & 63);
  }

  bool test(int x) const {
    if (x < 0 || x >= kMaskWidth) return false;
    return (x < 64 ? lo_ : hi_) >> (x & 63) & 1U;
  }

  /// Sets every bit in [lo, hi]; no-op when the clamped range is empty.
  void set_range(int lo, int hi) {
    lo = std::max(lo, 0);
    hi = std::min(hi, kMaskWidth - 1);
    if (lo > hi) return;
    if (lo < 64) lo_ |= bits_between(lo, std::min(hi, 63));
    if (hi >= 64) hi_ |= bits_between(std::max(lo, 64) - 64, hi - 64);
  }

  int count() const { return std::popcount(lo_) + std::popcount(hi_); }
  bool empty() const { return (lo_ | hi_) == 0; }

  LetterMask& operator|=(const LetterMask& o) {
    lo_ |= o.lo_;
    hi_ |= o.hi_;
    return *this;
  }
  LetterMask& operator&=(const LetterMask& o) {
    lo_ &= o.lo_;
    hi_ &= o.hi_;
    return *this;
  }
  LetterMask operator~() const {
    LetterMask m;
    m.lo_ = ~lo_;
    m.hi_ = ~hi_;
    return m;
  }
  friend LetterMask operator&(LetterMask a, const LetterMask& b) { return a &= b; }
  friend LetterMask operator|(LetterMask a, const LetterMask& b) { return a |= b; }
  friend bool operator==(const LetterMask&, const LetterMask&) = default;

  /// Calls f(x) for every set letter in ascending order.
  template <class F>
  void for_each(F&& f) const {
    for (std::uint64_t b = lo_; b != 0; b &= b - 1) f(std::countr_zero(b));
    for (std::uint64_t b = hi_; b != 0; b &= b - 1) f(64 + std::countr_zero(b));
  }

 private:
  static std::uint64_t bits_between(int a, int b) {
    // bits a..b inclusive, 0 <= a <= b <= 63
    const std::uint64_t upper = b == 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << (b + 1)) - 1;
    return upper & ~((std::uint64_t{1} << a) - 1);
  }
  std::uint64_t& word(int x) { return x < 64 ? lo_ : hi_; }

  std::uint64_t lo_ = 0;
  std::uint64_t hi_ = 0;
};

enum class Kind : std::uint8_t { Inversion, RestrictedGrowth, PlainWord };

/// Which validity regime a word lives in. `cap` is only meaningful for
/// PlainWord (letters 0..cap) and is used by capped extension counting.
struct SeqKind {
  Kind kind = Kind::Inversion;
  int cap = 0;

  static constexpr SeqKind inversion() { return {Kind::Inversion, 0}; }
  static constexpr SeqKind rgs() { return {Kind::RestrictedGrowth, 0}; }
  static SeqKind plain(int cap) {
    if (cap < 0 || cap >= kMaskWidth) throw InvalidInput("plain-word cap out of range: " + std::to_string(cap));
    return {Kind::PlainWord, cap};
  }

  friend bool operator==(const SeqKind&, const SeqKind&) = default;
};

inline std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Inversion: return "inv";
    case Kind::RestrictedGrowth: return "rgs";
    case Kind::PlainWord: return "word";
  }
  return "?";
}

inline SeqKind parse_kind(std::string_view s) {
  if (s == "inv" || s == "inversion") return SeqKind::inversion();
  if (s == "rgs" || s == "restricted-growth") return SeqKind::rgs();
  throw InvalidInput("unknown sequence kind '" + std::string(s) + "' (expected inv or rgs)");
}

/// Letter of the root node of a pattern-avoidance tree.
inline Letter root_letter(Kind k) { return k == Kind::RestrictedGrowth ? 1 : 0; }

// ---------------------------------------------------------------------------
// Words

/// Parses "0,1,0,2" or the compact single-digit form "0102".
inline Word parse_word(std::string_view text) {
  Word w;
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) return w;
  if (text.find(',') == std::string_view::npos) {
    for (char c : text) {
      if (c < '0' || c > '9') throw InvalidInput("bad letter '" + std::string(1, c) + "' in word '" + std::string(text) + "'");
      w.push_back(static_cast<Letter>(c - '0'));
    }
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t comma = text.find(',', start);
      if (comma == std::string_view::npos) comma = text.size();
      auto tok = trim(text.substr(start, comma - start));
      unsigned value = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size() || value > 0xFFFF)
        throw InvalidInput("bad letter '" + std::string(tok) + "' in word '" + std::string(text) + "'");
      w.push_back(static_cast<Letter>(value));
      start = comma + 1;
    }
  }
  if (w.size() > kMaxWordLength) throw InvalidInput("word longer than " + std::to_string(kMaxWordLength) + " letters");
  return w;
}

inline std::string format_word(std::span<const Letter> w, bool compact = false) {
  const bool digits = compact && std::all_of(w.begin(), w.end(), [](Letter c) { return c <= 9; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0 && !digits) out += ',';
    out += std::to_string(w[i]);
  }
  return out;
}

inline bool is_valid(std::span<const Letter> w, SeqKind kind) {
  switch (kind.kind) {
    case Kind::Inversion:
      for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] > i) return false;
      return true;
    case Kind::RestrictedGrowth: {
      if (w.empty()) return true;
      if (w[0] != 1) return false;
      Letter mx = 1;
      for (std::size_t i = 1; i < w.size(); ++i) {
        if (w[i] == 0 || w[i] > mx + 1) return false;
        mx = std::max(mx, w[i]);
      }
      return true;
    }
    case Kind::PlainWord:
      return std::all_of(w.begin(), w.end(), [&](Letter c) { return c <= kind.cap; });
  }
  return false;
}

/// Letters that may be appended to a valid word before pattern filtering.
inline LetterMask next_letter_range(std::span<const Letter> w, SeqKind kind) {
  switch (kind.kind) {
    case Kind::Inversion:
      return LetterMask::range(0, static_cast<int>(w.size()));
    case Kind::RestrictedGrowth: {
      const int mx = w.empty() ? 0 : *std::max_element(w.begin(), w.end());
      return LetterMask::range(1, mx + 1);
    }
    case Kind::PlainWord:
      return LetterMask::range(0, kind.cap);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Patterns

class Pattern {
 public:
  Pattern() = default;

  /// `kind` selects the alphabet base: 0 for inversion/plain, 1 for RGS.
  explicit Pattern(Word letters, Kind kind = Kind::Inversion) : word_(std::move(letters)) {
    if (word_.empty()) throw InvalidInput("empty pattern");
    if (word_.size() > kMaxPatternLength)
      throw InvalidInput("pattern longer than " + std::to_string(kMaxPatternLength) + " letters");
    Word distinct = word_;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const Letter base = kind == Kind::RestrictedGrowth ? 1 : 0;
    normalized_ = true;
    for (std::size_t i = 0; i < distinct.size(); ++i)
      if (distinct[i] != base + i) normalized_ = false;
  }

  static Pattern parse(std::string_view text, Kind kind = Kind::Inversion) {
    return Pattern(parse_word(text), kind);
  }

  const Word& word() const noexcept { return word_; }
  std::size_t size() const noexcept { return word_.size(); }
  bool normalized() const noexcept { return normalized_; }
  Letter max_letter() const { return *std::max_element(word_.begin(), word_.end()); }
  std::string str() const { return format_word(word_, true); }

  friend bool operator==(const Pattern& a, const Pattern& b) { return a.word_ == b.word_; }
  friend auto operator<=>(const Pattern& a, const Pattern& b) { return a.word_ <=> b.word_; }

 private:
  Word word_;
  bool normalized_ = false;
};

namespace detail {

inline int order(int a, int b) { return (a > b) - (a < b); }

struct Placement {
  std::span<const Letter> w;
  std::span<const Letter> p;
  std::array<std::size_t, kMaxPatternLength> pos{};

  bool consistent(std::size_t idx, std::size_t at) const {
    for (std::size_t j = 0; j < idx; ++j)
      if (order(w[at], w[pos[j]]) != order(p[idx], p[j])) return false;
    return true;
  }

  bool find(std::size_t idx, std::size_t start) {
    if (idx == p.size()) return true;
    const std::size_t last = w.size() - (p.size() - idx);
    for (std::size_t at = start; at <= last; ++at) {
      if (!consistent(idx, at)) continue;
      pos[idx] = at;
      if (find(idx + 1, at + 1)) return true;
    }
    return false;
  }
};

// Enumerates occurrences of p[0..k-2] in w and marks the letters x for which
// the occurrence extends to a full occurrence of p ending at x.
struct AnchoredScan {
  std::span<const Letter> w;
  std::span<const Letter> p;
  LetterMask* out;
  std::array<std::size_t, kMaxPatternLength> pos{};

  void run(std::size_t idx, std::size_t start, int lo, int hi, int eq) {
    const std::size_t k = p.size();
    if (idx + 1 == k) {
      if (eq >= 0)
        out->set(eq);
      else
        out->set_range(lo + 1, hi - 1);
      return;
    }
    const std::size_t need = k - 1 - idx;
    if (w.size() < need) return;
    const std::size_t last = w.size() - need;
    const int rel = order(p[k - 1], p[idx]);
    for (std::size_t at = start; at <= last; ++at) {
      bool ok = true;
      for (std::size_t j = 0; j < idx && ok; ++j)
        ok = order(w[at], w[pos[j]]) == order(p[idx], p[j]);
      if (!ok) continue;
      int nlo = lo, nhi = hi, neq = eq;
      const int v = w[at];
      if (rel == 0)
        neq = v;
      else if (rel > 0)
        nlo = std::max(lo, v);
      else
        nhi = std::min(hi, v);
      if (neq < 0 && nhi - nlo < 2) continue;
      pos[idx] = at;
      run(idx + 1, at + 1, nlo, nhi, neq);
    }
  }
};

}  // namespace detail

/// True iff some subsequence of w is order-isomorphic to p (equalities and
/// strict inequalities both preserved).
inline bool contains(std::span<const Letter> w, std::span<const Letter> p) {
  if (p.empty()) return true;
  if (p.size() > w.size()) return false;
  detail::Placement pl{w, p, {}};
  return pl.find(0, 0);
}

inline bool contains(std::span<const Letter> w, const Pattern& p) { return contains(w, std::span<const Letter>(p.word())); }

inline bool avoids_all(std::span<const Letter> w, std::span<const Pattern> patterns) {
  return std::none_of(patterns.begin(), patterns.end(), [&](const Pattern& p) { return contains(w, p); });
}

/// Letters x such that w·x contains an occurrence of some pattern ending at
/// the appended position. When w avoids every pattern, these are exactly the
/// letters whose append creates a pattern.
inline LetterMask forbidden_next(std::span<const Letter> w, std::span<const Pattern> patterns) {
  LetterMask out;
  for (const Pattern& p : patterns) {
    if (p.size() == 1) return LetterMask::full();
    detail::AnchoredScan scan{w, p.word(), &out, {}};
    scan.run(0, 0, -1, kMaskWidth, -1);
  }
  return out;
}

/// Assuming w avoids every pattern: true iff w·x still avoids them.
inline bool extension_ok(std::span<const Letter> w, Letter x, std::span<const Pattern> patterns) {
  return !forbidden_next(w, patterns).test(x);
}

/// Valid children letters of w (ascending), filtered by the patterns.
inline LetterMask allowed_next(std::span<const Letter> w, SeqKind kind, std::span<const Pattern> patterns) {
  return next_letter_range(w, kind) & ~forbidden_next(w, patterns);
}

}  // namespace invseq
