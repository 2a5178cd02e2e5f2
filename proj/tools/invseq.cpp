// invseq command-line front end.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "invseq/catalog.hpp"
#include "invseq/closure.hpp"
#include "invseq/discover.hpp"
#include "invseq/errors.hpp"
#include "invseq/gentree.hpp"
#include "invseq/isocheck.hpp"
#include "invseq/oracle.hpp"
#include "invseq/ruledsl.hpp"
#include "invseq/series.hpp"
#include "invseq/verify.hpp"

using namespace invseq;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;
constexpr int kResource = 3;

struct Common {
  std::string format = "text";
  unsigned threads = default_threads();
  bool timing = false;
  std::uint64_t budget = kDefaultNodeBudget;
  bool csv() const { return format == "csv"; }
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "csv"}));
  app->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  app->add_flag("--timing", c.timing, "Print elapsed time to stderr");
  app->add_option("--budget", c.budget, "Node budget for brute-force work");
}

void print_list(const std::string& label, const std::vector<BigInt>& v, std::size_t first, const Common& c) {
  if (c.csv()) {
    std::cout << "n," << label << "\n";
    for (std::size_t i = 0; i < v.size(); ++i) std::cout << first + i << "," << v[i] << "\n";
    return;
  }
  for (std::size_t i = 0; i < v.size(); ++i) std::cout << (i ? " " : "") << v[i];
  std::cout << "\n";
}

std::optional<long> parse_param(const std::string& s) {
  if (s.empty()) return std::nullopt;
  const auto eq = s.find('=');
  const std::string v = eq == std::string::npos ? s : s.substr(eq + 1);
  try {
    return std::stol(v);
  } catch (const std::exception&) {
    throw InvalidInput("bad parameter '" + s + "'");
  }
}

class Timer {
 public:
  explicit Timer(bool on) : on_(on), t0_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    if (on_) std::cerr << "time: " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count() << " s\n";
  }

 private:
  bool on_;
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pattern-avoiding inversion sequences and restricted growth sequences"};
  app.require_subcommand(1);
  Common common;
  int exit_code = kOk;

  std::string patterns, kind = "inv", word;
  auto add_set = [&](CLI::App* sub) {
    sub->add_option("-p,--patterns", patterns, "Comma-separated patterns, e.g. 000,021")->required();
    sub->add_option("-k,--kind", kind, "inv or rgs")->check(CLI::IsMember({"inv", "rgs"}));
  };
  auto pattern_set = [&] { return make_pattern_set(patterns, parse_kind(kind)); };

  // check
  auto* check = app.add_subcommand("check", "Test a word for validity and containment");
  add_set(check);
  check->add_option("word", word, "Word, digits or comma separated")->required();
  check->callback([&] {
    const PatternSet b = pattern_set();
    const Word w = parse_word(word);
    std::cout << "word " << format_word(w) << " valid=" << (is_valid(w, b.kind) ? "yes" : "no") << "\n";
    for (const Pattern& p : b.raw) std::cout << "  " << p.str() << ": " << (contains(w, p) ? "contains" : "avoids") << "\n";
    std::cout << (avoids_all(w, b.avoid()) ? "avoids " : "contains ") << b.describe() << "\n";
  });

  // closure
  auto* closure = app.add_subcommand("closure", "Show the closure of a pattern set");
  add_set(closure);
  closure->callback([&] {
    const PatternSet b = pattern_set();
    auto join = [](const std::vector<Pattern>& ps) {
      std::string s;
      for (const Pattern& p : ps) s += (s.empty() ? "" : ",") + p.str();
      return s;
    };
    if (common.csv()) {
      std::cout << "field,value\nraw," << '"' << join(b.raw) << "\"\nextensions,\"" << join(b.extensions) << "\"\nclosure,\""
                << join(b.closure) << "\"\nhorizon," << b.horizon_t << "\n";
      return;
    }
    std::cout << "raw:        " << join(b.raw) << "\n"
              << "extensions: " << join(b.extensions) << "\n"
              << "closure:    " << join(b.closure) << "\n"
              << "horizon t:  " << b.horizon_t << "\n";
  });

  // count
  int n = 10;
  std::string method = "dfs";
  auto* count = app.add_subcommand("count", "Count avoiders for n = 0..N");
  add_set(count);
  add_common(count, common);
  count->add_option("-n,--max", n, "Largest n")->check(CLI::NonNegativeNumber);
  count->add_option("--method", method)->check(CLI::IsMember({"dfs", "filter"}));
  count->callback([&] {
    Timer timer(common.timing);
    OracleOptions opt;
    opt.threads = common.threads;
    opt.budget = common.budget;
    opt.method = method == "dfs" ? CountMethod::Dfs : CountMethod::Filter;
    const CountReport r = count_avoiders(pattern_set(), n, opt);
    print_list("count", r.counts, 0, common);
    if (r.truncated) {
      std::cerr << "node budget reached; stopped at n=" << r.counts.size() - 1 << "\n";
      exit_code = kResource;
    }
  });

  // subtree
  int depth = 4;
  std::string prefix;
  auto* subtree = app.add_subcommand("subtree", "Level counts of the subtree below a node");
  add_set(subtree);
  add_common(subtree, common);
  subtree->add_option("--prefix", prefix, "Root word of the subtree")->required();
  subtree->add_option("-d,--depth", depth)->check(CLI::NonNegativeNumber);
  subtree->callback([&] {
    Timer timer(common.timing);
    print_list("nodes", subtree_level_counts(parse_word(prefix), pattern_set(), depth, common.budget), 0, common);
  });

  // extensions
  int cap = 1, maxlen = 6;
  auto* ext = app.add_subcommand("extensions", "Count words over {0..cap} that keep a prefix avoiding");
  add_set(ext);
  add_common(ext, common);
  ext->add_option("--prefix", prefix)->required();
  ext->add_option("--cap", cap)->check(CLI::NonNegativeNumber);
  ext->add_option("--maxlen", maxlen)->check(CLI::NonNegativeNumber);
  ext->callback([&] {
    Timer timer(common.timing);
    const Word w = parse_word(prefix);
    print_list("words", capped_extension_counts(w, cap, pattern_set(), maxlen, common.budget), 0, common);
  });

  // discover
  std::optional<int> shape_depth;
  std::string out_fmt = "summary";
  auto* disc = app.add_subcommand("discover", "Discover equivalence classes and succession rules");
  add_set(disc);
  add_common(disc, common);
  disc->add_option("-d,--depth", depth, "Maximum discovery depth")->check(CLI::PositiveNumber);
  disc->add_option("--shape-depth", shape_depth, "Shape depth used to compare subtrees (default 2t)");
  disc->add_option("--emit", out_fmt, "summary, json or dsl")->check(CLI::IsMember({"summary", "json", "dsl"}));
  disc->callback([&] {
    Timer timer(common.timing);
    const PatternSet b = pattern_set();
    const Discovery d = discover(b, depth, shape_depth);
    if (out_fmt == "json") {
      std::cout << export_rules(d);
    } else if (out_fmt == "dsl") {
      std::cout << export_rules_dsl(d, b.kind.kind);
    } else {
      std::cout << "status: " << status_name(d.rules.status) << " after depth " << depth << " (shape depth " << d.shape_depth << ")\n";
      std::cout << "classes: " << d.table.classes.size() << "\n";
      for (const ClassInfo& c : d.table.classes) {
        std::cout << "  c" << c.id << " = " << format_word(c.rep);
        auto it = d.rules.rules.find(c.id);
        if (it != d.rules.rules.end()) {
          std::cout << "  ->";
          for (int k : it->second) std::cout << " c" << k;
        }
        std::cout << "\n";
      }
    }
  });

  // rules
  auto* rules = app.add_subcommand("rules", "Parametric succession rules");
  rules->require_subcommand(1);
  std::string rules_file, cls, param;
  auto load = [&] {
    if (!cls.empty()) {
      const CatalogEntry& e = catalog_entry(cls);
      return entry_rules(e, parse_param(param));
    }
    if (rules_file.empty()) throw InvalidInput("give a rule file or --class");
    std::map<std::string, long> ov;
    if (!param.empty()) {
      const auto eq = param.find('=');
      if (eq == std::string::npos) throw InvalidInput("--param expects name=value");
      ov[param.substr(0, eq)] = *parse_param(param);
    }
    return load_rules_file(rules_file, ov);
  };
  auto add_rules_src = [&](CLI::App* sub) {
    sub->add_option("file", rules_file, "Rule file");
    sub->add_option("--class", cls, "Catalog class instead of a file");
    sub->add_option("--param", param, "Parameter override, name=value");
  };
  auto* rcount = rules->add_subcommand("count", "Level counts from the rules");
  add_rules_src(rcount);
  add_common(rcount, common);
  rcount->add_option("-n,--max", n, "Largest tree level")->check(CLI::NonNegativeNumber);
  rcount->callback([&] {
    Timer timer(common.timing);
    print_list("nodes", level_counts(load(), n), 0, common);
  });
  auto* rvalid = rules->add_subcommand("validate", "Replay the rules against the avoidance tree");
  add_rules_src(rvalid);
  add_common(rvalid, common);
  rvalid->add_option("-p,--patterns", patterns, "Pattern set (defaults to the catalog class)");
  rvalid->add_option("-d,--depth", depth)->check(CLI::NonNegativeNumber);
  rvalid->callback([&] {
    Timer timer(common.timing);
    const ParamRuleSet rs = load();
    PatternSet b;
    if (!patterns.empty()) {
      b = make_pattern_set(patterns, SeqKind{rs.kind, 0});
    } else if (!cls.empty()) {
      b = entry_pattern_set(catalog_entry(cls), parse_param(param));
    } else {
      throw InvalidInput("give --patterns");
    }
    const ValidationReport v = validate_against_tree(rs, b, depth, common.budget);
    if (v.consistent) {
      std::cout << "consistent to depth " << depth << "\n";
    } else {
      std::cout << "divergence at level " << *v.divergence_level << ": " << v.detail << "\n";
      exit_code = kMismatch;
    }
  });
  auto* rexport = rules->add_subcommand("export", "Print the parsed rules as JSON or text");
  add_rules_src(rexport);
  std::string rex_fmt = "json";
  rexport->add_option("--as", rex_fmt)->check(CLI::IsMember({"json", "text"}));
  rexport->callback([&] {
    const ParamRuleSet rs = load();
    std::cout << (rex_fmt == "json" ? rs.to_json().dump(2) + "\n" : rs.to_text());
  });

  // series
  std::string series_id;
  bool as_counts = false;
  auto* ser = app.add_subcommand("series", "Expand a catalog generating function");
  add_common(ser, common);
  ser->add_option("id", series_id, "Series name")->required();
  ser->add_option("-n,--max", n, "Number of terms")->check(CLI::NonNegativeNumber);
  ser->add_option("--param", param, "m for the lemma series, l for rgs_ell1");
  ser->add_flag("--as-counts", as_counts, "Shift so that entry n is the count for size n");
  ser->callback([&] {
    FormulaId id{series_id, std::nullopt};
    if (auto p = parse_param(param)) id.param = static_cast<int>(*p);
    if (as_counts) {
      print_list("count", series_counts(id, n), 0, common);
    } else {
      const Series s = catalog_series(id, n);
      print_list("coeff", s.integer_coeffs(0, n), 0, common);
    }
  });

  // wilf
  std::string left, right;
  auto* wilf = app.add_subcommand("wilf", "Compare avoider counts of two pattern sets");
  add_common(wilf, common);
  wilf->add_option("left", left)->required();
  wilf->add_option("right", right)->required();
  wilf->add_option("-k,--kind", kind)->check(CLI::IsMember({"inv", "rgs"}));
  wilf->add_option("-n,--max", n)->check(CLI::NonNegativeNumber);
  wilf->callback([&] {
    Timer timer(common.timing);
    OracleOptions opt;
    opt.threads = common.threads;
    opt.budget = common.budget;
    const WilfResult r = wilf_check(make_pattern_set(left, parse_kind(kind)), make_pattern_set(right, parse_kind(kind)), n, opt);
    if (common.csv()) {
      std::cout << "n," << left << "," << right << "\n";
      for (std::size_t i = 0; i < r.left.size(); ++i) std::cout << i << "," << r.left[i] << "," << r.right[i] << "\n";
    } else {
      print_list(left, r.left, 0, common);
      print_list(right, r.right, 0, common);
    }
    if (r.equal) {
      std::cout << "equal for n <= " << n << "\n";
    } else {
      std::cout << "differ first at n=" << *r.first_divergence << "\n";
      exit_code = kMismatch;
    }
  });

  // verify
  std::vector<std::string> engines;
  auto* ver = app.add_subcommand("verify", "Cross-check a catalog class across counting engines");
  add_common(ver, common);
  ver->add_option("class", cls, "Catalog class")->required();
  ver->add_option("-n,--max", n)->check(CLI::NonNegativeNumber);
  ver->add_option("--engines", engines, "oracle, rules, series, formula, published")->delimiter(',');
  ver->add_option("--param", param, "l for rgs_ell1");
  ver->callback([&] {
    Timer timer(common.timing);
    VerifyPlan plan;
    plan.cls = cls;
    plan.n = n;
    plan.param = parse_param(param);
    plan.threads = common.threads;
    plan.budget = common.budget;
    for (const std::string& e : engines) plan.engines.push_back(parse_engine(e));
    const VerifyResult r = verify(plan);
    std::cout << render_table(r, common.csv());
    if (!r.agree) exit_code = kMismatch;
  });

  // catalog listing
  auto* list = app.add_subcommand("classes", "List the catalog classes");
  list->callback([&] {
    for (const CatalogEntry& e : catalog()) {
      std::cout << e.name << "  " << kind_name(e.kind) << "  " << (e.param ? "12..l1 (l=" + std::to_string(e.param_default) + ")" : e.patterns);
      for (Engine g : available_engines(e)) std::cout << "  " << engine_name(g);
      std::cout << "\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceLimit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  }
  return exit_code;
}
