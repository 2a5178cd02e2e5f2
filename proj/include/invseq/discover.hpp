#pragma once

// Level-by-level discovery of equivalence classes and succession rules, and
// the JSON rule document.

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "invseq/bigint.hpp"
#include "invseq/closure.hpp"
#include "invseq/errors.hpp"
#include "invseq/gentree.hpp"
#include "invseq/isocheck.hpp"
#include "invseq/seqcore.hpp"

namespace invseq {

struct ClassInfo {
  int id = 0;
  Word rep;
  int level = 0;  // tree level of the representative
  int index = 0;  // left-to-right position among classes found at that level
  friend bool operator==(const ClassInfo& a, const ClassInfo& b) {
    return a.id == b.id && a.rep == b.rep && a.level == b.level && a.index == b.index;
  }
};

struct ClassTable {
  std::vector<ClassInfo> classes;
  std::unordered_map<ShapeId, int> lookup;

  friend bool operator==(const ClassTable& a, const ClassTable& b) { return a.classes == b.classes; }
};

enum class Status { Regular, Truncated };

struct RuleSet {
  int root = 0;
  std::map<int, std::vector<int>> rules;
  Status status = Status::Truncated;
  int depth = 0;
  friend bool operator==(const RuleSet&, const RuleSet&) = default;
};

struct Discovery {
  ClassTable table;
  RuleSet rules;
  int shape_depth = 0;
};

/// Runs the discovery loop for at most `max_depth` levels. Classes are
/// matched by the interned shape of depth `shape_depth` (default 2t).
inline Discovery discover(const PatternSet& b, int max_depth, std::optional<int> shape_depth = std::nullopt,
                          std::uint64_t budget = kDefaultShapeBudget) {
  if (max_depth < 1) throw InvalidInput("discovery depth must be >= 1");
  Discovery out;
  out.shape_depth = shape_depth.value_or(2 * b.horizon_t);
  ShapeEngine engine(b, budget);
  auto add_class = [&](const Word& w, int level, int index, ShapeId shape) {
    const int id = static_cast<int>(out.table.classes.size());
    out.table.classes.push_back({id, w, level, index});
    out.table.lookup.emplace(shape, id);
    return id;
  };
  const Word root = root_node(b).word;
  std::vector<int> queue{add_class(root, 0, 0, engine.shape_of(root, out.shape_depth).id)};
  out.rules.root = 0;
  out.rules.depth = max_depth;
  for (int i = 1; i <= max_depth && !queue.empty(); ++i) {
    std::vector<int> next;
    for (int c : queue) {
      std::vector<int> kids;
      for (const Word& child : children(out.table.classes[static_cast<std::size_t>(c)].rep, b)) {
        const ShapeId s = engine.shape_of(child, out.shape_depth).id;
        auto it = out.table.lookup.find(s);
        if (it != out.table.lookup.end()) {
          kids.push_back(it->second);
        } else {
          const int id = add_class(child, i, static_cast<int>(next.size()), s);
          next.push_back(id);
          kids.push_back(id);
        }
      }
      out.rules.rules[c] = std::move(kids);
    }
    queue = std::move(next);
  }
  out.rules.status = queue.empty() ? Status::Regular : Status::Truncated;
  return out;
}

/// Level counts obtained by iterating the concrete rules from the root.
/// Stops early (shorter result) when a class without a rule would be
/// expanded.
inline std::vector<BigInt> rule_level_counts(const RuleSet& r, int n_max) {
  std::vector<BigInt> out;
  std::map<int, BigInt> cur{{r.root, 1}};
  for (int n = 0; n <= n_max; ++n) {
    BigInt total = 0;
    for (const auto& [id, c] : cur) total += c;
    out.push_back(total);
    if (n == n_max) break;
    std::map<int, BigInt> next;
    for (const auto& [id, c] : cur) {
      auto it = r.rules.find(id);
      if (it == r.rules.end()) return out;
      for (int k : it->second) next[k] += c;
    }
    cur = std::move(next);
  }
  return out;
}

inline const char* status_name(Status s) { return s == Status::Regular ? "regular" : "truncated"; }

inline std::string export_rules(const Discovery& d) {
  nlohmann::ordered_json j;
  j["status"] = status_name(d.rules.status);
  j["depth"] = d.rules.depth;
  j["classes"] = nlohmann::ordered_json::array();
  for (const ClassInfo& c : d.table.classes) {
    nlohmann::ordered_json e;
    e["id"] = c.id;
    e["rep"] = format_word(c.rep);
    e["level"] = c.level;
    j["classes"].push_back(e);
  }
  j["rules"] = nlohmann::ordered_json::array();
  for (const auto& [id, kids] : d.rules.rules) {
    nlohmann::ordered_json e;
    e["id"] = id;
    e["children"] = kids;
    j["rules"].push_back(e);
  }
  return j.dump(2) + "\n";
}

/// Reads a document written by export_rules. Shapes are not part of the
/// document, so the lookup table comes back empty.
inline Discovery import_rules(const std::string& text) {
  Discovery d;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    const std::string status = j.at("status").get<std::string>();
    if (status != "regular" && status != "truncated") throw InvalidInput("bad status '" + status + "'");
    d.rules.status = status == "regular" ? Status::Regular : Status::Truncated;
    d.rules.depth = j.at("depth").get<int>();
    std::map<int, int> per_level;
    for (const auto& c : j.at("classes")) {
      ClassInfo info;
      info.id = c.at("id").get<int>();
      info.rep = parse_word(c.at("rep").get<std::string>());
      info.level = c.at("level").get<int>();
      info.index = per_level[info.level]++;
      if (info.id != static_cast<int>(d.table.classes.size())) throw InvalidInput("class ids must be dense and ordered");
      d.table.classes.push_back(std::move(info));
    }
    for (const auto& r : j.at("rules")) d.rules.rules[r.at("id").get<int>()] = r.at("children").get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed rule document: ") + e.what());
  }
  d.rules.root = 0;
  return d;
}

/// The concrete rules as a rule-language document with one nullary family
/// per class.
inline std::string export_rules_dsl(const Discovery& d, Kind kind) {
  std::string out = "# " + std::string(status_name(d.rules.status)) + " to depth " + std::to_string(d.rules.depth) + "\n";
  out += "kind: " + kind_name(kind) + "\n";
  out += "root: c" + std::to_string(d.rules.root) + "\n";
  for (const auto& [id, kids] : d.rules.rules) {
    out += "c" + std::to_string(id) + " ->";
    for (std::size_t i = 0; i < kids.size(); ++i) out += (i ? ", c" : " c") + std::to_string(kids[i]);
    out += "\n";
  }
  return out;
}

}  // namespace invseq
