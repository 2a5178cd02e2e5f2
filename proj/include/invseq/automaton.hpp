#pragma once

// Exact "future state" of a pattern-avoiding word: the kind-level data
// (length or running maximum), the letters whose append would complete an
// occurrence, and every shorter partial occurrence that could still grow.
// Two words with the same state have identical subtrees.

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <tuple>
#include <unordered_set>
#include <vector>

#include <boost/container_hash/hash.hpp>

#include "invseq/errors.hpp"
#include "invseq/seqcore.hpp"

namespace invseq {

class AvoidanceAutomaton {
 public:
  using StateId = std::uint32_t;

  AvoidanceAutomaton(std::span<const Pattern> patterns, SeqKind kind)
      : patterns_(patterns.begin(), patterns.end()),
        kind_(kind),
        index_(1024, Hash{this}, Eq{this}) {
    if (kind.kind == Kind::PlainWord) throw InvalidInput("automaton needs inversion or RGS kind");
    if (patterns_.size() > 255) throw InvalidInput("too many patterns for the automaton");
    for (const Pattern& p : patterns_)
      if (p.size() < 2) throw InvalidInput("degenerate pattern " + p.str());
    scratch_.clear();
    intern(0, LetterMask{}, scratch_);
  }

  AvoidanceAutomaton(const AvoidanceAutomaton&) = delete;
  AvoidanceAutomaton& operator=(const AvoidanceAutomaton&) = delete;

  StateId initial() const { return 0; }
  SeqKind kind() const { return kind_; }
  std::size_t state_count() const { return states_.size(); }

  LetterMask allowed(StateId s) const { return states_[s].allowed; }

  StateId step(StateId s, Letter x) {
    if (!states_[s].allowed.test(x)) throw InvalidInput("letter " + std::to_string(x) + " is not an allowed extension");
    const State from = states_[s];
    const int level = kind_.kind == Kind::Inversion ? from.level + 1 : std::max<int>(from.level, x);
    LetterMask forbidden = mask_of(from);
    decode(from, current_);
    scratch_.clear();
    auto keep = [&](Env& e) {
      if (!canon_env(e)) return;
      // One letter short of an occurrence: it can only forbid letters.
      if (static_cast<std::size_t>(e.stage) + 1 == patterns_[e.pid].size()) {
        const Cons& c = e.cons[0];
        if (c.eq >= 0)
          forbidden.set(c.eq);
        else
          forbidden.set_range(c.lo + 1, std::min<int>(c.hi - 1, kMaskWidth - 1));
      } else {
        scratch_.push_back(e);
      }
    };
    for (const Env& e : current_) {
      scratch_.push_back(e);
      if (!e.cons[0].admits(x)) continue;
      Env adv;
      adv.pid = e.pid;
      adv.stage = static_cast<std::uint8_t>(e.stage + 1);
      adv.n = static_cast<std::uint8_t>(e.n - 1);
      std::copy(e.cons.begin() + 1, e.cons.begin() + e.n, adv.cons.begin());
      tighten(patterns_[e.pid], e.stage, x, adv);
      keep(adv);
    }
    for (std::size_t pid = 0; pid < patterns_.size(); ++pid) {
      const Pattern& p = patterns_[pid];
      Env fresh;
      fresh.pid = static_cast<std::uint8_t>(pid);
      fresh.stage = 1;
      fresh.n = static_cast<std::uint8_t>(p.size() - 1);
      tighten(p, 0, x, fresh);
      keep(fresh);
    }
    normalize(scratch_);
    return intern(level, forbidden, scratch_);
  }

  /// State reached by reading w from the empty word; w must avoid the patterns
  /// and be valid for the kind.
  StateId feed(std::span<const Letter> w) {
    StateId s = initial();
    for (Letter x : w) s = step(s, x);
    return s;
  }

 private:
  static constexpr int kInf = 1 << 14;
  static constexpr int kMaskChunks = kMaskWidth / 16;

  // Constraint on a future letter: eq >= 0 pins the value, otherwise the
  // letter lies strictly between lo and hi.
  struct Cons {
    std::int16_t eq = -1, lo = -1, hi = kInf;
    bool admits(int x) const { return eq >= 0 ? x == eq : lo < x && x < hi; }
    bool dead() const { return eq < 0 && hi - lo < 2; }
    void canon() {
      if (eq < 0 && hi - lo == 2) eq = static_cast<std::int16_t>(lo + 1);
      if (eq >= 0) {
        lo = -1;
        hi = kInf;
      }
    }
    bool covers(const Cons& o) const {
      if (eq >= 0) return o.eq == eq;
      if (o.eq >= 0) return lo < o.eq && o.eq < hi;
      return lo <= o.lo && o.hi <= hi;
    }
    auto key() const { return std::tuple(eq, lo, hi); }
  };

  // A partial occurrence of pattern `pid` with `stage` letters matched;
  // cons[i] constrains the letter matching p[stage + i].
  struct Env {
    std::uint8_t pid = 0;
    std::uint8_t stage = 0;
    std::uint8_t n = 0;
    std::array<Cons, kMaxPatternLength> cons{};

    auto head() const { return std::tuple(pid, stage); }
    bool operator<(const Env& o) const {
      if (head() != o.head()) return head() < o.head();
      for (int i = 0; i < n; ++i)
        if (cons[i].key() != o.cons[i].key()) return cons[i].key() < o.cons[i].key();
      return false;
    }
    bool operator==(const Env& o) const {
      if (head() != o.head()) return false;
      for (int i = 0; i < n; ++i)
        if (cons[i].key() != o.cons[i].key()) return false;
      return true;
    }
    bool covers(const Env& o) const {
      if (head() != o.head()) return false;
      for (int i = 0; i < n; ++i)
        if (!cons[i].covers(o.cons[i])) return false;
      return true;
    }
  };

  // Key layout in the arena: forbidden mask chunks, then per envelope a
  // (pid, stage) word followed by (eq, lo, hi) triples.
  struct State {
    std::uint32_t offset = 0;
    std::uint16_t size = 0;
    std::int16_t level = 0;  // word length (inversion) or running maximum (RGS)
    LetterMask allowed;
  };

  struct Hash {
    const AvoidanceAutomaton* a;
    std::size_t operator()(StateId id) const {
      const State& s = a->lookup(id);
      std::size_t h = static_cast<std::size_t>(s.level);
      boost::hash_range(h, a->arena_.begin() + s.offset, a->arena_.begin() + s.offset + s.size);
      return h;
    }
  };
  struct Eq {
    const AvoidanceAutomaton* a;
    bool operator()(StateId x, StateId y) const {
      const State& s = a->lookup(x);
      const State& t = a->lookup(y);
      return s.level == t.level && s.size == t.size &&
             std::equal(a->arena_.begin() + s.offset, a->arena_.begin() + s.offset + s.size, a->arena_.begin() + t.offset);
    }
  };

  // The id one past the last state denotes the candidate being interned.
  const State& lookup(StateId id) const { return id == states_.size() ? candidate_ : states_[id]; }

  // Tightens constraints for p[i], i > at, after p[at] was matched by x.
  static void tighten(const Pattern& p, std::size_t at, int x, Env& e) {
    const Word& pw = p.word();
    for (std::size_t i = at + 1; i < pw.size(); ++i) {
      Cons& c = e.cons[i - e.stage];
      if (c.eq >= 0) {
        // A pinned value may come from a collapsed interval, so it can
        // still contradict the new relation.
        if (detail::order(c.eq, x) != detail::order(pw[i], pw[at])) c = Cons{-1, 0, 1};
        continue;
      }
      if (pw[i] == pw[at])
        c.eq = static_cast<std::int16_t>(x);
      else if (pw[i] > pw[at])
        c.lo = static_cast<std::int16_t>(std::max<int>(c.lo, x));
      else
        c.hi = static_cast<std::int16_t>(std::min<int>(c.hi, x));
    }
  }

  static bool canon_env(Env& e) {
    for (int i = 0; i < e.n; ++i) {
      if (e.cons[i].dead()) return false;
      e.cons[i].canon();
    }
    return true;
  }

  static void normalize(std::vector<Env>& envs) {
    std::sort(envs.begin(), envs.end());
    envs.erase(std::unique(envs.begin(), envs.end()), envs.end());
    std::size_t out = 0;
    for (std::size_t i = 0; i < envs.size(); ++i) {
      bool covered = false;
      for (std::size_t j = 0; j < envs.size() && !covered; ++j)
        covered = j != i && envs[j].covers(envs[i]);
      if (!covered) envs[out++] = envs[i];
    }
    envs.resize(out);
  }

  LetterMask mask_of(const State& s) const {
    LetterMask m;
    for (int c = 0; c < kMaskChunks; ++c) {
      const auto chunk = static_cast<std::uint16_t>(arena_[s.offset + c]);
      for (int j = 0; j < 16; ++j)
        if (chunk >> j & 1U) m.set(c * 16 + j);
    }
    return m;
  }

  void decode(const State& s, std::vector<Env>& envs) const {
    envs.clear();
    std::size_t i = s.offset + kMaskChunks;
    const std::size_t end = s.offset + s.size;
    while (i < end) {
      Env e;
      e.pid = static_cast<std::uint8_t>(arena_[i] >> 8);
      e.stage = static_cast<std::uint8_t>(arena_[i] & 0xFF);
      e.n = static_cast<std::uint8_t>(patterns_[e.pid].size() - e.stage);
      ++i;
      for (int k = 0; k < e.n; ++k, i += 3) e.cons[k] = Cons{arena_[i], arena_[i + 1], arena_[i + 2]};
      envs.push_back(e);
    }
  }

  StateId intern(int level, const LetterMask& forbidden, const std::vector<Env>& envs) {
    const std::size_t offset = arena_.size();
    for (int c = 0; c < kMaskChunks; ++c) {
      std::uint16_t chunk = 0;
      for (int j = 0; j < 16; ++j)
        if (forbidden.test(c * 16 + j)) chunk |= static_cast<std::uint16_t>(1U << j);
      arena_.push_back(static_cast<std::int16_t>(chunk));
    }
    for (const Env& e : envs) {
      arena_.push_back(static_cast<std::int16_t>(e.pid << 8 | e.stage));
      for (int k = 0; k < e.n; ++k) {
        arena_.push_back(e.cons[k].eq);
        arena_.push_back(e.cons[k].lo);
        arena_.push_back(e.cons[k].hi);
      }
    }
    if (arena_.size() - offset > 0xFFFF) throw ResourceLimit("automaton state too large", arena_.size() - offset);
    candidate_ = State{static_cast<std::uint32_t>(offset), static_cast<std::uint16_t>(arena_.size() - offset),
                       static_cast<std::int16_t>(level), {}};
    const auto id = static_cast<StateId>(states_.size());
    if (auto it = index_.find(id); it != index_.end()) {
      arena_.resize(offset);
      return *it;
    }
    const LetterMask range = kind_.kind == Kind::Inversion ? LetterMask::range(0, level) : LetterMask::range(1, level + 1);
    candidate_.allowed = range & ~forbidden;
    states_.push_back(candidate_);
    index_.insert(id);
    return id;
  }

  std::vector<Pattern> patterns_;
  SeqKind kind_;
  std::vector<std::int16_t> arena_;
  std::vector<State> states_;
  State candidate_;
  std::unordered_set<StateId, Hash, Eq> index_;
  std::vector<Env> current_, scratch_;
};

}  // namespace invseq
