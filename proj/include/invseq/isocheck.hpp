#pragma once

// Canonical plane-tree signatures of truncated avoidance subtrees, the
// bounded-depth equivalence test, and the depth consistency audit.

#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/container_hash/hash.hpp>

#include "invseq/automaton.hpp"
#include "invseq/closure.hpp"
#include "invseq/errors.hpp"
#include "invseq/seqcore.hpp"

namespace invseq {

using ShapeId = std::uint32_t;

/// Interned ordered-tree form. Id 0 is the single-node tree.
struct Shape {
  ShapeId id = 0;
  int depth = 0;
  friend bool operator==(const Shape&, const Shape&) = default;
};

/// Append-only hash-consing table: an ordered list of child shapes maps to
/// one identifier. Structural keys, so equal ids mean equal trees.
class ShapeTable {
 public:
  ShapeTable() { intern({}); }

  ShapeId intern(const std::vector<ShapeId>& children) {
    std::lock_guard lock(mu_);
    auto [it, inserted] = ids_.try_emplace(children, static_cast<ShapeId>(nodes_.size()));
    if (inserted) nodes_.push_back(children);
    return it->second;
  }

  std::vector<ShapeId> children(ShapeId id) const {
    std::lock_guard lock(mu_);
    return nodes_.at(id);
  }

  std::size_t size() const {
    std::lock_guard lock(mu_);
    return nodes_.size();
  }

  /// Nested-bracket rendering, e.g. "(()(()))".
  std::string render(ShapeId id) const {
    std::string out = "(";
    for (ShapeId c : children(id)) out += render(c);
    return out + ")";
  }

 private:
  struct Hash {
    std::size_t operator()(const std::vector<ShapeId>& v) const { return boost::hash_range(v.begin(), v.end()); }
  };
  mutable std::mutex mu_;
  std::vector<std::vector<ShapeId>> nodes_;
  std::unordered_map<std::vector<ShapeId>, ShapeId, Hash> ids_;
};

inline constexpr std::uint64_t kDefaultShapeBudget = 50'000'000;

/// Computes shapes of T(B; w) truncated at a given number of edge-levels.
/// Memoizes on (automaton state, depth), so distinct words with identical
/// future share work.
class ShapeEngine {
 public:
  explicit ShapeEngine(const PatternSet& b, std::uint64_t budget = kDefaultShapeBudget)
      : set_(b), automaton_(b.avoid(), b.kind), budget_(budget) {}

  const PatternSet& patterns() const { return set_; }
  ShapeTable& table() { return table_; }
  AvoidanceAutomaton& automaton() { return automaton_; }
  std::uint64_t work() const { return work_; }

  Shape shape_of(std::span<const Letter> w, int depth) {
    if (depth < 0) throw InvalidInput("negative shape depth");
    if (!is_valid(w, set_.kind)) throw InvalidInput("word " + format_word(w) + " is not valid for its kind");
    if (!avoids_all(w, set_.avoid())) throw InvalidInput("word " + format_word(w) + " does not avoid " + set_.describe());
    std::lock_guard lock(mu_);
    return {shape(automaton_.feed(w), depth), depth};
  }

  bool equivalent(std::span<const Letter> a, std::span<const Letter> b, std::optional<int> depth = std::nullopt) {
    const int d = depth.value_or(2 * set_.horizon_t);
    return shape_of(a, d) == shape_of(b, d);
  }

 private:
  ShapeId shape(AvoidanceAutomaton::StateId s, int depth) {
    if (depth == 0) return 0;
    // Most states are only ever asked for one depth: keep that answer in a
    // flat slot and spill the rest to a map.
    if (s < slot_.size() && slot_[s].depth == depth) return slot_[s].id;
    const std::uint64_t key = std::uint64_t{s} << 8 | static_cast<std::uint64_t>(depth);
    if (auto it = spill_.find(key); it != spill_.end()) return it->second;
    if (++work_ > budget_) throw ResourceLimit("shape computation", work_);
    std::vector<ShapeId> kids;
    automaton_.allowed(s).for_each([&](int x) { kids.push_back(static_cast<ShapeId>(x)); });
    for (ShapeId& k : kids) k = shape(automaton_.step(s, static_cast<Letter>(k)), depth - 1);
    const ShapeId id = table_.intern(kids);
    if (slot_.size() <= s) slot_.resize(std::max<std::size_t>(s + 1, automaton_.state_count()));
    if (slot_[s].depth == 0)
      slot_[s] = {depth, id};
    else
      spill_.emplace(key, id);
    return id;
  }

  struct Slot {
    int depth = 0;
    ShapeId id = 0;
  };

  PatternSet set_;
  AvoidanceAutomaton automaton_;
  ShapeTable table_;
  std::vector<Slot> slot_;
  std::unordered_map<std::uint64_t, ShapeId> spill_;
  std::uint64_t budget_;
  std::uint64_t work_ = 0;
  std::recursive_mutex mu_;
};

inline Shape shape_of(std::span<const Letter> w, const PatternSet& b, int depth) {
  ShapeEngine engine(b);
  return engine.shape_of(w, depth);
}

inline bool equivalent(std::span<const Letter> a, std::span<const Letter> b, const PatternSet& set,
                       std::optional<int> depth = std::nullopt) {
  ShapeEngine engine(set);
  return engine.equivalent(a, b, depth);
}

struct AuditReport {
  int max_level = 0;
  int depth = 0;
  int deeper = 0;
  std::size_t nodes = 0;
  std::size_t classes_shallow = 0;
  std::size_t classes_deep = 0;
  bool consistent = true;
  /// First pair equal at `depth` but different at `deeper`.
  std::optional<std::pair<Word, Word>> counterexample;
};

/// Checks on every node of levels 0..max_level that equivalence at `depth`
/// and at `deeper` induce the same partition.
inline AuditReport depth_audit(ShapeEngine& engine, int max_level, int depth, int deeper) {
  const PatternSet& b = engine.patterns();
  AuditReport rep;
  rep.max_level = max_level;
  rep.depth = depth;
  rep.deeper = deeper;
  std::unordered_map<ShapeId, std::pair<ShapeId, Word>> first;
  std::unordered_map<ShapeId, int> deep_ids;
  Word w{root_letter(b.kind.kind)};
  auto visit = [&](auto&& self, int level) -> void {
    ++rep.nodes;
    const Shape s1 = engine.shape_of(w, depth);
    const Shape s2 = engine.shape_of(w, deeper);
    deep_ids.emplace(s2.id, 0);
    auto [it, inserted] = first.try_emplace(s1.id, s2.id, w);
    if (!inserted && it->second.first != s2.id && rep.consistent) {
      rep.consistent = false;
      rep.counterexample = std::pair(it->second.second, w);
    }
    if (level == max_level) return;
    allowed_next(w, b.kind, b.avoid()).for_each([&](int x) {
      w.push_back(static_cast<Letter>(x));
      self(self, level + 1);
      w.pop_back();
    });
  };
  visit(visit, 0);
  rep.classes_shallow = first.size();
  rep.classes_deep = deep_ids.size();
  if (rep.classes_shallow != rep.classes_deep) rep.consistent = false;
  return rep;
}

}  // namespace invseq
