#pragma once

// Parametric succession rules: a small line-oriented language, exact level
// counting by dynamic programming over labels, and replay against the
// concrete avoidance tree.
//
//   # comment
//   kind: inv
//   param l = 4
//   root: a[1]
//   weight T[m] = lemma44(m) ; guard: m>=1
//   a[m] -> a[m+1], range(j=1..m: b[m,j]) ; guard: m>=1
//   b[m,j] -> repeat(j: b[m,j-1]), range(i=j..m+1: b[m+1,i]) ; guard: 0<=j<=m
//   f -> f

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "invseq/bigint.hpp"
#include "invseq/closure.hpp"
#include "invseq/errors.hpp"
#include "invseq/gentree.hpp"
#include "invseq/seqcore.hpp"
#include "invseq/series.hpp"

namespace invseq {

/// c + Σ coef[i]·slot[i]
struct Affine {
  long c = 0;
  std::vector<long> coef;

  bool constant() const {
    return std::all_of(coef.begin(), coef.end(), [](long v) { return v == 0; });
  }
  long eval(const std::vector<long>& env) const {
    long v = c;
    for (std::size_t i = 0; i < coef.size(); ++i)
      if (coef[i] != 0) v += coef[i] * env.at(i);
    return v;
  }
  Affine& operator+=(const Affine& o) {
    c += o.c;
    if (coef.size() < o.coef.size()) coef.resize(o.coef.size(), 0);
    for (std::size_t i = 0; i < o.coef.size(); ++i) coef[i] += o.coef[i];
    return *this;
  }
  Affine& operator*=(long k) {
    c *= k;
    for (long& v : coef) v *= k;
    return *this;
  }
};

enum class CmpOp { Le, Lt, Ge, Gt, Eq };

/// expr op 0
struct Condition {
  Affine expr;
  CmpOp op = CmpOp::Le;
  bool holds(const std::vector<long>& env) const {
    const long v = expr.eval(env);
    switch (op) {
      case CmpOp::Le: return v <= 0;
      case CmpOp::Lt: return v < 0;
      case CmpOp::Ge: return v >= 0;
      case CmpOp::Gt: return v > 0;
      case CmpOp::Eq: return v == 0;
    }
    return false;
  }
};

struct ParamLabel {
  int family = 0;
  std::vector<long> params;
  friend auto operator<=>(const ParamLabel&, const ParamLabel&) = default;
  friend bool operator==(const ParamLabel&, const ParamLabel&) = default;
};

struct LabelExpr {
  int family = 0;
  std::vector<Affine> args;
  int line = 0, column = 0;
};

struct RuleItem {
  enum class Type { Single, Repeat, Range } type = Type::Single;
  LabelExpr label;
  Affine count;       // Repeat
  Affine lo, hi;      // Range bounds, inclusive
  bool down = false;  // Range iterates hi..lo
  int slot = -1;      // Range index slot
  std::string text;
};

struct RuleTemplate {
  int family = 0;
  std::vector<std::string> vars;
  std::vector<Condition> guard;
  std::vector<RuleItem> items;
  int slots = 0;  // vars plus range indices
  int line = 0;
  std::string guard_text;
  std::string source;
};

struct WeightFamily {
  int family = 0;
  std::vector<std::string> vars;
  std::string series;
  std::optional<Affine> arg;
  std::vector<Condition> guard;
  int line = 0;
  std::string source;
};

struct Family {
  std::string name;
  int arity = -1;
  bool weight = false;
  int line = 0;
};

class ParamRuleSet {
 public:
  std::vector<Family> families;
  std::vector<RuleTemplate> templates;
  std::vector<WeightFamily> weights;
  ParamLabel root;
  std::map<std::string, long> params;
  Kind kind = Kind::Inversion;

  std::size_t family_count() const { return families.size(); }
  std::size_t template_count() const { return templates.size(); }

  std::optional<int> family_id(const std::string& name) const {
    for (std::size_t i = 0; i < families.size(); ++i)
      if (families[i].name == name) return static_cast<int>(i);
    return std::nullopt;
  }

  bool is_weight(const ParamLabel& l) const { return families.at(static_cast<std::size_t>(l.family)).weight; }

  std::string label_str(const ParamLabel& l) const {
    std::string s = families.at(static_cast<std::size_t>(l.family)).name;
    if (l.params.empty()) return s;
    s += "[";
    for (std::size_t i = 0; i < l.params.size(); ++i) s += (i ? "," : "") + std::to_string(l.params[i]);
    return s + "]";
  }

  /// Ordered children of a label; first template whose guard holds.
  std::vector<ParamLabel> expand(const ParamLabel& l) const {
    if (is_weight(l)) throw InvalidInput("weight label " + label_str(l) + " has no children rule");
    for (const RuleTemplate& t : templates) {
      if (t.family != l.family) continue;
      std::vector<long> env(static_cast<std::size_t>(t.slots), 0);
      std::copy(l.params.begin(), l.params.end(), env.begin());
      if (!std::all_of(t.guard.begin(), t.guard.end(), [&](const Condition& c) { return c.holds(env); })) continue;
      std::vector<ParamLabel> out;
      auto make = [&](const LabelExpr& e) {
        ParamLabel c{e.family, {}};
        for (const Affine& a : e.args) c.params.push_back(a.eval(env));
        return c;
      };
      for (const RuleItem& it : t.items) {
        switch (it.type) {
          case RuleItem::Type::Single:
            out.push_back(make(it.label));
            break;
          case RuleItem::Type::Repeat: {
            const long n = it.count.eval(env);
            if (n < 0) throw InvariantViolation("negative repeat count " + std::to_string(n) + " in " + label_str(l));
            if (n > 0) {
              const ParamLabel c = make(it.label);
              out.insert(out.end(), static_cast<std::size_t>(n), c);
            }
            break;
          }
          case RuleItem::Type::Range: {
            const long lo = it.lo.eval(env), hi = it.hi.eval(env);
            if (it.down) {
              for (long i = hi; i >= lo; --i) {
                env[static_cast<std::size_t>(it.slot)] = i;
                out.push_back(make(it.label));
              }
            } else {
              for (long i = lo; i <= hi; ++i) {
                env[static_cast<std::size_t>(it.slot)] = i;
                out.push_back(make(it.label));
              }
            }
            break;
          }
        }
      }
      return out;
    }
    throw InvariantViolation("no rule applies to label " + label_str(l));
  }

  const WeightFamily& weight_of(const ParamLabel& l) const {
    for (const WeightFamily& w : weights)
      if (w.family == l.family) {
        const std::vector<long>& env = l.params;
        if (!std::all_of(w.guard.begin(), w.guard.end(), [&](const Condition& c) { return c.holds(env); }))
          throw InvariantViolation("weight label " + label_str(l) + " violates its guard");
        return w;
      }
    throw InvariantViolation("no weight declared for " + label_str(l));
  }

  /// Subtree node counts below a weight label, relative levels 0..depth.
  std::vector<BigInt> weight_counts(const ParamLabel& l, int depth) const {
    const WeightFamily& w = weight_of(l);
    FormulaId id{w.series, std::nullopt};
    if (w.arg) id.param = static_cast<int>(w.arg->eval(l.params));
    const int s = count_power_shift(w.series);
    return catalog_series(id, depth + s).integer_coeffs(s, depth + s);
  }

  std::string to_text() const;
  nlohmann::ordered_json to_json() const;
};

namespace dsl {

enum class Tok { Ident, Int, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  long value = 0;
  int line = 0, column = 0;
};

inline std::vector<Token> lex(const std::string& src, int line) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = src.find('#') == std::string::npos ? src.size() : src.find('#');
  while (i < n) {
    const char ch = src[i];
    const int col = static_cast<int>(i) + 1;
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < n && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, src.substr(i, j - i), 0, line, col});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < n && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j - i > 9) throw ParseError("integer literal too large", line, col);
      out.push_back({Tok::Int, src.substr(i, j - i), std::stol(src.substr(i, j - i)), line, col});
      i = j;
      continue;
    }
    static const char* two[] = {"->", "..", "<=", ">=", "=="};
    bool matched = false;
    for (const char* t : two) {
      if (src.compare(i, 2, t) == 0) {
        out.push_back({Tok::Sym, t, 0, line, col});
        i += 2;
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string("[](),;:=+-*<>").find(ch) != std::string::npos) {
      out.push_back({Tok::Sym, std::string(1, ch), 0, line, col});
      ++i;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + ch + "'", line, col);
  }
  out.push_back({Tok::End, "", 0, line, static_cast<int>(n) + 1});
  return out;
}

struct FamilyRef {
  std::string name;
  int arity = 0;
  int line = 0, column = 0;
};

class LineParser {
 public:
  LineParser(const std::string& src, int line, ParamRuleSet& rs, std::vector<FamilyRef>& refs)
      : src_(src), toks_(lex(src, line)), rs_(rs), refs_(refs) {}

  void parse() {
    const Token& t = peek();
    if (t.kind == Tok::End) return;
    if (t.kind == Tok::Ident && peek(1).text == ":" && (t.text == "root" || t.text == "kind")) {
      next();
      next();
      if (t.text == "root") {
        const LabelExpr e = label_expr();
        ParamLabel l{e.family, {}};
        for (const Affine& a : e.args) {
          if (!a.constant()) fail("root label arguments must be constants", t);
          l.params.push_back(a.c);
        }
        rs_.root = l;
        root_seen_ = true;
      } else {
        const Token& k = expect(Tok::Ident, "sequence kind");
        if (k.text == "inv" || k.text == "inversion")
          rs_.kind = Kind::Inversion;
        else if (k.text == "rgs")
          rs_.kind = Kind::RestrictedGrowth;
        else
          fail("unknown kind '" + k.text + "'", k);
      }
    } else if (t.kind == Tok::Ident && t.text == "param" && peek(1).kind == Tok::Ident) {
      next();
      const Token& name = next();
      expect_sym("=");
      const long v = signed_int();
      if (!rs_.params.count(name.text)) rs_.params[name.text] = v;
    } else if (t.kind == Tok::Ident && t.text == "weight" && peek(1).kind == Tok::Ident) {
      next();
      weight();
    } else {
      rule();
    }
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'", peek());
  }

  bool root_seen() const { return root_seen_; }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg, const Token& at) const { throw ParseError(msg, at.line, at.column); }
  const Token& expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) fail("expected " + what + ", found '" + peek().text + "'", peek());
    return next();
  }
  void expect_sym(const std::string& s) {
    if (peek().kind != Tok::Sym || peek().text != s) fail("expected '" + s + "', found '" + peek().text + "'", peek());
    next();
  }
  bool accept_sym(const std::string& s) {
    if (peek().kind == Tok::Sym && peek().text == s) {
      next();
      return true;
    }
    return false;
  }
  long signed_int() {
    const bool neg = accept_sym("-");
    const long v = expect(Tok::Int, "integer").value;
    return neg ? -v : v;
  }
  std::string slice(const Token& from, const Token& to_excl) const {
    const std::size_t a = static_cast<std::size_t>(from.column - 1);
    const std::size_t b = static_cast<std::size_t>(to_excl.column - 1);
    std::string s = src_.substr(a, b > a ? b - a : 0);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
  }

  int slot_of(const std::string& name) const {
    for (std::size_t i = 0; i < scope_.size(); ++i)
      if (scope_[i] == name) return static_cast<int>(i);
    return -1;
  }

  Affine expr() {
    Affine a = term();
    while (peek().kind == Tok::Sym && (peek().text == "+" || peek().text == "-")) {
      const bool minus = next().text == "-";
      Affine b = term();
      if (minus) b *= -1;
      a += b;
    }
    return a;
  }
  Affine term() {
    Affine a = factor();
    while (peek().kind == Tok::Sym && peek().text == "*") {
      const Token& op = next();
      Affine b = factor();
      if (!a.constant() && !b.constant()) fail("non-affine expression (product of two variables)", op);
      if (a.constant()) {
        b *= a.c;
        a = b;
      } else {
        a *= b.c;
      }
    }
    return a;
  }
  Affine factor() {
    const Token& t = peek();
    if (accept_sym("-")) {
      Affine a = factor();
      a *= -1;
      return a;
    }
    if (accept_sym("(")) {
      Affine a = expr();
      expect_sym(")");
      return a;
    }
    if (t.kind == Tok::Int) {
      next();
      return Affine{t.value, {}};
    }
    if (t.kind == Tok::Ident) {
      next();
      const int s = slot_of(t.text);
      if (s >= 0) {
        Affine a;
        a.coef.assign(static_cast<std::size_t>(s) + 1, 0);
        a.coef[static_cast<std::size_t>(s)] = 1;
        return a;
      }
      auto p = rs_.params.find(t.text);
      if (p != rs_.params.end()) return Affine{p->second, {}};
      fail("unknown variable '" + t.text + "'", t);
    }
    fail("expected an expression, found '" + t.text + "'", t);
  }

  int family_ref(const Token& name, int arity) {
    auto id = rs_.family_id(name.text);
    if (!id) {
      rs_.families.push_back({name.text, -1, false, 0});
      id = static_cast<int>(rs_.families.size()) - 1;
    }
    refs_.push_back({name.text, arity, name.line, name.column});
    return *id;
  }

  LabelExpr label_expr() {
    const Token& name = expect(Tok::Ident, "label");
    LabelExpr e;
    e.line = name.line;
    e.column = name.column;
    if (accept_sym("[")) {
      if (!accept_sym("]")) {
        do e.args.push_back(expr());
        while (accept_sym(","));
        expect_sym("]");
      }
    }
    e.family = family_ref(name, static_cast<int>(e.args.size()));
    return e;
  }

  std::vector<std::string> lhs_vars() {
    std::vector<std::string> vars;
    if (accept_sym("[")) {
      if (!accept_sym("]")) {
        do {
          const Token& v = expect(Tok::Ident, "parameter name");
          if (std::find(vars.begin(), vars.end(), v.text) != vars.end()) fail("duplicate parameter '" + v.text + "'", v);
          if (rs_.params.count(v.text)) fail("parameter '" + v.text + "' shadows a global param", v);
          vars.push_back(v.text);
        } while (accept_sym(","));
        expect_sym("]");
      }
    }
    return vars;
  }

  int declare(const Token& name, int arity, bool weight) {
    auto id = rs_.family_id(name.text);
    if (!id) {
      rs_.families.push_back({name.text, arity, weight, name.line});
      return static_cast<int>(rs_.families.size()) - 1;
    }
    Family& f = rs_.families[static_cast<std::size_t>(*id)];
    if (f.arity >= 0 && f.arity != arity)
      fail("family '" + name.text + "' declared with arity " + std::to_string(arity) + ", earlier " + std::to_string(f.arity), name);
    if (f.arity >= 0 && f.weight != weight) fail("family '" + name.text + "' is both a weight and a rule family", name);
    f.arity = arity;
    f.weight = weight;
    if (f.line == 0) f.line = name.line;
    return *id;
  }

  std::vector<Condition> guard() {
    std::vector<Condition> out;
    do {
      Affine left = expr();
      bool any = false;
      while (peek().kind == Tok::Sym &&
             (peek().text == "<=" || peek().text == "<" || peek().text == ">=" || peek().text == ">" || peek().text == "==")) {
        const std::string op = next().text;
        Affine right = expr();
        Affine d = left;
        Affine neg = right;
        neg *= -1;
        d += neg;
        const CmpOp cop = op == "<=" ? CmpOp::Le : op == "<" ? CmpOp::Lt : op == ">=" ? CmpOp::Ge : op == ">" ? CmpOp::Gt : CmpOp::Eq;
        out.push_back({d, cop});
        left = right;
        any = true;
      }
      if (!any) fail("expected a comparison in guard", peek());
    } while (accept_sym(","));
    return out;
  }

  void weight() {
    const Token& name = expect(Tok::Ident, "weight family name");
    WeightFamily w;
    w.line = name.line;
    w.vars = lhs_vars();
    scope_ = w.vars;
    w.family = declare(name, static_cast<int>(w.vars.size()), true);
    expect_sym("=");
    const Token& series = expect(Tok::Ident, "series name");
    if (std::find(series_ids().begin(), series_ids().end(), series.text) == series_ids().end())
      fail("unknown series '" + series.text + "'", series);
    w.series = series.text;
    expect_sym("(");
    if (!accept_sym(")")) {
      w.arg = expr();
      expect_sym(")");
    }
    if (series_needs_param(w.series) && !w.arg) fail("series '" + w.series + "' needs an argument", series);
    if (accept_sym(";")) {
      const Token& g = expect(Tok::Ident, "'guard'");
      if (g.text != "guard") fail("expected 'guard'", g);
      expect_sym(":");
      w.guard = guard();
    }
    w.source = src_;
    rs_.weights.push_back(std::move(w));
  }

  void rule() {
    const Token& name = expect(Tok::Ident, "family name");
    RuleTemplate t;
    t.line = name.line;
    t.vars = lhs_vars();
    scope_ = t.vars;
    t.family = declare(name, static_cast<int>(t.vars.size()), false);
    expect_sym("->");
    if (peek().kind != Tok::End && !(peek().kind == Tok::Sym && peek().text == ";")) {
      do t.items.push_back(item());
      while (accept_sym(","));
    }
    if (accept_sym(";")) {
      const Token& g = expect(Tok::Ident, "'guard'");
      if (g.text != "guard") fail("expected 'guard'", g);
      expect_sym(":");
      const Token& start = peek();
      scope_.resize(t.vars.size());
      t.guard = guard();
      t.guard_text = slice(start, peek());
    }
    t.slots = static_cast<int>(scope_slots_);
    t.source = src_;
    rs_.templates.push_back(std::move(t));
  }

  RuleItem item() {
    const Token& start = peek();
    RuleItem it;
    const std::size_t base = scope_.size();
    if (start.kind == Tok::Ident && (start.text == "repeat" || start.text == "range") && peek(1).text == "(") {
      next();
      next();
      if (start.text == "repeat") {
        it.type = RuleItem::Type::Repeat;
        it.count = expr();
        expect_sym(":");
        it.label = label_expr();
      } else {
        it.type = RuleItem::Type::Range;
        const Token& idx = expect(Tok::Ident, "range index");
        if (slot_of(idx.text) >= 0 || rs_.params.count(idx.text)) fail("range index '" + idx.text + "' shadows another name", idx);
        expect_sym("=");
        const Affine first = expr();
        Affine second;
        if (accept_sym("..")) {
          second = expr();
          it.lo = first;
          it.hi = second;
        } else if (peek().kind == Tok::Ident && peek().text == "downto") {
          next();
          second = expr();
          it.down = true;
          it.hi = first;
          it.lo = second;
        } else {
          fail("expected '..' or 'downto' in range", peek());
        }
        expect_sym(":");
        scope_.push_back(idx.text);
        it.slot = static_cast<int>(scope_.size()) - 1;
        it.label = label_expr();
        scope_.resize(base);
      }
      expect_sym(")");
    } else {
      it.label = label_expr();
    }
    scope_slots_ = std::max(scope_slots_, base + (it.slot >= 0 ? 1 : 0));
    scope_slots_ = std::max(scope_slots_, scope_.size());
    it.text = slice(start, peek());
    return it;
  }

  std::string src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ParamRuleSet& rs_;
  std::vector<FamilyRef>& refs_;
  std::vector<std::string> scope_;
  std::size_t scope_slots_ = 0;
  bool root_seen_ = false;
};

inline long guard_extent(const std::vector<Condition>& g) {
  long k = 0;
  for (const Condition& c : g) k = std::max(k, std::abs(c.expr.c));
  return k;
}

// Searches a box of parameter values for a point satisfying both guards.
inline std::optional<std::vector<long>> overlap_witness(const RuleTemplate& a, const RuleTemplate& b) {
  const std::size_t arity = a.vars.size();
  const long k = 3 + std::max(guard_extent(a.guard), guard_extent(b.guard));
  std::vector<long> env(arity, -k);
  auto holds = [&](const RuleTemplate& t) {
    std::vector<long> full = env;
    full.resize(static_cast<std::size_t>(std::max<int>(t.slots, static_cast<int>(arity))), 0);
    return std::all_of(t.guard.begin(), t.guard.end(), [&](const Condition& c) { return c.holds(full); });
  };
  while (true) {
    if (holds(a) && holds(b)) return env;
    std::size_t i = 0;
    while (i < arity && env[i] == k) env[i++] = -k;
    if (i == arity) return std::nullopt;
    ++env[i];
  }
}

}  // namespace dsl

/// Parses a rule document. `overrides` replaces `param` defaults.
inline ParamRuleSet parse_rules(const std::string& doc, const std::map<std::string, long>& overrides = {}) {
  ParamRuleSet rs;
  rs.params = overrides;
  std::vector<dsl::FamilyRef> refs;
  std::istringstream in(doc);
  std::string line;
  int no = 0;
  bool root = false;
  while (std::getline(in, line)) {
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    dsl::LineParser p(line, no, rs, refs);
    p.parse();
    root = root || p.root_seen();
  }
  if (!root) throw ParseError("missing 'root:' line", no + 1, 1);
  for (const dsl::FamilyRef& r : refs) {
    const Family& f = rs.families[static_cast<std::size_t>(*rs.family_id(r.name))];
    if (f.arity < 0) throw ParseError("unknown family '" + r.name + "' (no rule or weight declares it)", r.line, r.column);
    if (f.arity != r.arity)
      throw ParseError("family '" + r.name + "' takes " + std::to_string(f.arity) + " parameters, got " + std::to_string(r.arity), r.line,
                       r.column);
  }
  for (std::size_t i = 0; i < rs.templates.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const RuleTemplate& a = rs.templates[j];
      const RuleTemplate& b = rs.templates[i];
      if (a.family != b.family) continue;
      if (auto w = dsl::overlap_witness(a, b)) {
        ParamLabel l{a.family, *w};
        throw ParseError("guard overlaps the rule on line " + std::to_string(a.line) + " (both match " + rs.label_str(l) + ")", b.line, 1);
      }
    }
  return rs;
}

inline ParamRuleSet load_rules_file(const std::string& path, const std::map<std::string, long>& overrides = {}) {
  std::ifstream f(path);
  if (!f) throw InvalidInput("cannot open rule file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_rules(ss.str(), overrides);
}

inline std::string ParamRuleSet::to_text() const {
  std::string out = "kind: " + kind_name(kind) + "\n";
  for (const auto& [k, v] : params) out += "param " + k + " = " + std::to_string(v) + "\n";
  out += "root: " + label_str(root) + "\n";
  for (const WeightFamily& w : weights) out += w.source + "\n";
  for (const RuleTemplate& t : templates) out += t.source + "\n";
  return out;
}

inline nlohmann::ordered_json ParamRuleSet::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = kind_name(kind);
  j["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : params) j["params"][k] = v;
  j["root"] = label_str(root);
  j["weights"] = nlohmann::ordered_json::array();
  for (const WeightFamily& w : weights) {
    nlohmann::ordered_json e;
    e["family"] = families[static_cast<std::size_t>(w.family)].name;
    e["vars"] = w.vars;
    e["series"] = w.series;
    j["weights"].push_back(e);
  }
  j["templates"] = nlohmann::ordered_json::array();
  for (const RuleTemplate& t : templates) {
    nlohmann::ordered_json e;
    e["family"] = families[static_cast<std::size_t>(t.family)].name;
    e["vars"] = t.vars;
    std::vector<std::string> kids;
    for (const RuleItem& it : t.items) kids.push_back(it.text);
    e["children"] = kids;
    e["guard"] = t.guard_text;
    j["templates"].push_back(e);
  }
  return j;
}

namespace detail {

inline void check_param_bound(const ParamRuleSet& rs, const ParamLabel& l, int level) {
  for (long p : l.params)
    if (std::abs(p) > level + 2)
      throw InvariantViolation("label " + rs.label_str(l) + " at level " + std::to_string(level) + " has a parameter beyond level+2");
}

}  // namespace detail

/// Number of nodes at tree levels 0..N of the instantiated tree.
inline std::vector<BigInt> level_counts(const ParamRuleSet& rs, int n_max) {
  if (n_max < 0) throw InvalidInput("negative level");
  std::vector<BigInt> out(static_cast<std::size_t>(n_max) + 1, 0);
  std::map<ParamLabel, std::vector<ParamLabel>> cache;
  std::map<ParamLabel, BigInt> cur{{rs.root, 1}};
  for (int n = 0; n <= n_max; ++n) {
    std::map<ParamLabel, BigInt> next;
    for (const auto& [label, c] : cur) {
      detail::check_param_bound(rs, label, n);
      if (rs.is_weight(label)) {
        const std::vector<BigInt> w = rs.weight_counts(label, n_max - n);
        for (int k = 0; n + k <= n_max; ++k) out[static_cast<std::size_t>(n + k)] += c * w[static_cast<std::size_t>(k)];
        continue;
      }
      out[static_cast<std::size_t>(n)] += c;
      if (n == n_max) continue;
      auto it = cache.find(label);
      if (it == cache.end()) it = cache.emplace(label, rs.expand(label)).first;
      for (const ParamLabel& k : it->second) next[k] += c;
    }
    cur = std::move(next);
  }
  return out;
}

/// Converts tree-level counts into |I_n| / |P_n| indexing for the kind.
inline std::vector<BigInt> counts_by_size(Kind kind, const std::vector<BigInt>& tree_levels) {
  if (kind == Kind::Inversion) return tree_levels;
  std::vector<BigInt> out{1};
  out.insert(out.end(), tree_levels.begin(), tree_levels.end());
  return out;
}

struct ValidationReport {
  bool consistent = true;
  int depth = 0;
  std::optional<int> divergence_level;
  std::string detail;
  std::vector<BigInt> rule_counts;
  std::vector<BigInt> tree_counts;
};

/// Walks the instantiated tree and T(B) side by side for `depth` levels,
/// comparing per-level totals and the branching at every node.
inline ValidationReport validate_against_tree(const ParamRuleSet& rs, const PatternSet& b, int depth,
                                              std::uint64_t budget = kDefaultNodeBudget) {
  ValidationReport rep;
  rep.depth = depth;
  if (rs.kind != b.kind.kind) throw InvalidInput("rule file kind differs from the pattern set kind");
  rep.rule_counts = level_counts(rs, depth);
  rep.tree_counts = tree_level_counts(b, depth, budget);
  for (int n = 0; n <= depth; ++n) {
    if (rep.rule_counts[static_cast<std::size_t>(n)] != rep.tree_counts[static_cast<std::size_t>(n)]) {
      rep.divergence_level = n;
      rep.detail = "level " + std::to_string(n) + ": rules give " + rep.rule_counts[static_cast<std::size_t>(n)].str() + ", tree has " +
                   rep.tree_counts[static_cast<std::size_t>(n)].str();
      break;
    }
  }
  std::vector<std::pair<Word, ParamLabel>> frontier{{root_node(b).word, rs.root}};
  NodeBudget nb(budget);
  for (int level = 0; level < depth && !frontier.empty(); ++level) {
    if (rep.divergence_level && *rep.divergence_level <= level + 1) break;
    std::vector<std::pair<Word, ParamLabel>> next;
    for (auto& [w, label] : frontier) {
      if (rs.is_weight(label)) {
        const std::vector<BigInt> want = rs.weight_counts(label, depth - level);
        const std::vector<BigInt> have = subtree_level_counts(w, b, depth - level, budget);
        for (int k = 1; k <= depth - level; ++k) {
          if (want[static_cast<std::size_t>(k)] != have[static_cast<std::size_t>(k)]) {
            if (!rep.divergence_level || level + k < *rep.divergence_level) {
              rep.divergence_level = level + k;
              rep.detail = "weight node " + rs.label_str(label) + " at " + format_word(w) + " disagrees " + std::to_string(k) + " levels below";
            }
            break;
          }
        }
        continue;
      }
      const std::vector<Word> kids = children(w, b);
      const std::vector<ParamLabel> labels = rs.expand(label);
      nb.charge(kids.size());
      if (kids.size() != labels.size()) {
        if (!rep.divergence_level || level + 1 < *rep.divergence_level) {
          rep.divergence_level = level + 1;
          rep.detail = "node " + format_word(w) + " labelled " + rs.label_str(label) + " has " + std::to_string(kids.size()) +
                       " children, rules give " + std::to_string(labels.size());
        }
        continue;
      }
      for (std::size_t i = 0; i < kids.size(); ++i) next.emplace_back(kids[i], labels[i]);
    }
    frontier = std::move(next);
  }
  rep.consistent = !rep.divergence_level.has_value();
  return rep;
}

}  // namespace invseq
