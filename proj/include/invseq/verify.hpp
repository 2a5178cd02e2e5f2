#pragma once

// Cross-verification of one catalog class across independent counting
// engines, aligned on n.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "invseq/bigint.hpp"
#include "invseq/catalog.hpp"
#include "invseq/errors.hpp"
#include "invseq/oracle.hpp"
#include "invseq/ruledsl.hpp"
#include "invseq/series.hpp"

namespace invseq {

enum class Engine { Oracle, Rules, Series, Formula, Published };

inline const char* engine_name(Engine e) {
  switch (e) {
    case Engine::Oracle: return "oracle";
    case Engine::Rules: return "rules";
    case Engine::Series: return "series";
    case Engine::Formula: return "formula";
    case Engine::Published: return "published";
  }
  return "?";
}

inline Engine parse_engine(const std::string& s) {
  for (Engine e : {Engine::Oracle, Engine::Rules, Engine::Series, Engine::Formula, Engine::Published})
    if (s == engine_name(e)) return e;
  throw InvalidInput("unknown engine '" + s + "' (oracle, rules, series, formula, published)");
}

struct VerifyPlan {
  std::string cls;
  int n = 10;
  std::vector<Engine> engines;  // empty: every engine the class supports
  std::optional<long> param;
  unsigned threads = 1;
  std::uint64_t budget = kDefaultNodeBudget;
  bool detect_offset = true;
};

struct EngineColumn {
  Engine engine = Engine::Oracle;
  std::vector<std::optional<BigInt>> values;  // index n
  std::optional<int> offset;                  // formula index shift applied
  std::string note;
};

struct VerifyResult {
  std::string cls;
  int n = 0;
  std::vector<EngineColumn> columns;
  bool agree = true;
  std::optional<int> first_mismatch;
  int compared = 0;  // rows where at least two engines have a value
  std::vector<std::string> notes;
};

inline std::vector<Engine> available_engines(const CatalogEntry& e) {
  std::vector<Engine> out{Engine::Oracle, Engine::Rules};
  if (e.series) out.push_back(Engine::Series);
  if (e.formula) out.push_back(Engine::Formula);
  if (!e.published.empty()) out.push_back(Engine::Published);
  return out;
}

/// Runs the selected engines. The published list, when the class has one,
/// is always included as a reference column.
inline VerifyResult verify(const VerifyPlan& plan) {
  if (plan.n < 0) throw InvalidInput("N must be >= 0");
  const CatalogEntry& entry = catalog_entry(plan.cls);
  const std::optional<long> param = entry_param(entry, plan.param);
  const std::vector<Engine> avail = available_engines(entry);
  std::vector<Engine> engines = plan.engines.empty() ? avail : plan.engines;
  if (!entry.published.empty() && std::find(engines.begin(), engines.end(), Engine::Published) == engines.end())
    engines.push_back(Engine::Published);
  std::sort(engines.begin(), engines.end());
  engines.erase(std::unique(engines.begin(), engines.end()), engines.end());
  for (Engine e : engines)
    if (std::find(avail.begin(), avail.end(), e) == avail.end())
      throw InvalidInput(std::string("class '") + entry.name + "' has no " + engine_name(e) + " engine");
  if (engines.size() < 2) throw InvalidInput("verification needs at least two engines");

  VerifyResult res;
  res.cls = entry.name;
  res.n = plan.n;
  const std::size_t rows = static_cast<std::size_t>(plan.n) + 1;
  auto column = [&](Engine e, const std::vector<BigInt>& v, std::size_t from = 0) {
    EngineColumn c;
    c.engine = e;
    c.values.assign(rows, std::nullopt);
    for (std::size_t i = from; i < rows && i < v.size(); ++i) c.values[i] = v[i];
    return c;
  };
  const PatternSet b = entry_pattern_set(entry, param);
  const Kind kind = entry.kind;
  std::optional<Engine> formula_pending;
  for (Engine e : engines) {
    switch (e) {
      case Engine::Oracle: {
        OracleOptions opt;
        opt.threads = plan.threads;
        opt.budget = plan.budget;
        const CountReport r = count_avoiders(b, plan.n, opt);
        res.columns.push_back(column(e, r.counts));
        if (r.truncated)
          res.columns.back().note = "node budget reached, stopped at n=" + std::to_string(static_cast<int>(r.counts.size()) - 1);
        break;
      }
      case Engine::Rules: {
        const ParamRuleSet rs = entry_rules(entry, param);
        const int levels = kind == Kind::Inversion ? plan.n : std::max(0, plan.n - 1);
        res.columns.push_back(column(e, counts_by_size(kind, level_counts(rs, levels))));
        break;
      }
      case Engine::Series: {
        FormulaId id{*entry.series, std::nullopt};
        if (param) id.param = static_cast<int>(*param);
        res.columns.push_back(column(e, series_counts(id, plan.n), static_cast<std::size_t>(entry.series_from)));
        break;
      }
      case Engine::Formula:
        formula_pending = e;
        break;
      case Engine::Published:
        res.columns.push_back(column(e, entry_published(entry)));
        break;
    }
  }
  if (formula_pending) {
    const FormulaTerms f = formula_terms(*entry.formula, plan.n + 1);
    EngineColumn c;
    c.engine = Engine::Formula;
    c.values.assign(rows, std::nullopt);
    int s = 0;
    if (plan.detect_offset) {
      // reference: the first other column with enough values
      std::vector<BigInt> ref;
      for (const EngineColumn& o : res.columns) {
        std::vector<BigInt> v;
        for (const auto& x : o.values) {
          if (!x) break;
          v.push_back(*x);
        }
        if (v.size() > ref.size()) ref = std::move(v);
      }
      if (auto d = detect_offset(f, ref)) {
        s = *d;
        c.offset = s;
        c.note = "formula index offset +" + std::to_string(s);
      } else {
        c.note = "no consistent index offset found";
      }
    }
    for (std::size_t i = 0; i < rows; ++i) c.values[i] = f.at(static_cast<int>(i) + s);
    res.columns.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < rows; ++i) {
    std::optional<BigInt> first;
    int present = 0;
    for (const EngineColumn& c : res.columns) {
      if (!c.values[i]) continue;
      ++present;
      if (!first) {
        first = c.values[i];
      } else if (*first != *c.values[i] && res.agree) {
        res.agree = false;
        res.first_mismatch = static_cast<int>(i);
      }
    }
    if (present >= 2) ++res.compared;
  }
  if (res.compared == 0) {
    res.agree = false;
    res.notes.push_back("no n where two engines overlap");
  }
  for (const EngineColumn& c : res.columns)
    if (!c.note.empty()) res.notes.push_back(std::string(engine_name(c.engine)) + ": " + c.note);
  return res;
}

inline std::string render_table(const VerifyResult& r, bool csv) {
  std::ostringstream out;
  std::vector<std::string> head{"n"};
  for (const EngineColumn& c : r.columns) head.push_back(engine_name(c.engine));
  std::vector<std::vector<std::string>> body;
  for (int i = 0; i <= r.n; ++i) {
    std::vector<std::string> row{std::to_string(i)};
    for (const EngineColumn& c : r.columns) {
      const auto& v = c.values[static_cast<std::size_t>(i)];
      row.push_back(v ? v->str() : (csv ? "" : "-"));
    }
    body.push_back(std::move(row));
  }
  if (csv) {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? "," : "") << cells[k];
      out << "\n";
    };
    line(head);
    for (const auto& row : body) line(row);
    return out.str();
  }
  std::vector<std::size_t> width(head.size(), 0);
  auto widen = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) width[k] = std::max(width[k], cells[k].size());
  };
  widen(head);
  for (const auto& row : body) widen(row);
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? "  " : "") << std::string(width[k] - cells[k].size(), ' ') << cells[k];
    out << "\n";
  };
  line(head);
  for (const auto& row : body) line(row);
  out << "class " << r.cls << ": " << (r.agree ? "all engines agree" : "MISMATCH");
  if (r.first_mismatch) out << " (first at n=" << *r.first_mismatch << ")";
  out << " on " << r.compared << " compared rows\n";
  for (const std::string& n : r.notes) out << "note: " << n << "\n";
  return out.str();
}

}  // namespace invseq
