#pragma once

// Registry of the enumerated classes: pattern sets, rule files, generating
// functions, closed formulas and published term lists.

#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "invseq/bigint.hpp"
#include "invseq/closure.hpp"
#include "invseq/errors.hpp"
#include "invseq/ruledsl.hpp"

#ifndef INVSEQ_CATALOG_DIR
#define INVSEQ_CATALOG_DIR "catalog"
#endif

namespace invseq {

struct CatalogEntry {
  std::string name;
  std::string patterns;  // for rgs_ell1 the pattern depends on l
  Kind kind = Kind::Inversion;
  std::vector<std::string> equivalent;  // Wilf-equivalent sets counted by the same rules
  std::optional<std::string> series;
  int series_from = 0;  // first n the generating function covers
  std::optional<std::string> formula;
  std::optional<std::string> param;  // name of the rule-file parameter
  long param_default = 0;
  std::vector<std::string> published;  // printed terms for n = 0, 1, ...
};

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> c;
    auto inv = [&](std::string name, std::string pats) -> CatalogEntry& {
      c.push_back({});
      c.back().name = std::move(name);
      c.back().patterns = std::move(pats);
      return c.back();
    };
    inv("th100", "100").published = {"1", "2", "6", "23", "106", "565", "3399", "22678", "165646", "1311334", "11161529", "101478038",
                                     "980157177", "10011461983", "107712637346", "1216525155129", "14380174353934", "177440071258827",
                                     "2280166654498540", "30450785320307436", "421820687108853017", "6050801956624661417",
                                     "89738550379292147192", "1374073440225390131037", "21694040050913295537753"};
    {
      CatalogEntry& e = inv("th201", "201");
      e.equivalent = {"210"};
      e.published = {"1", "2", "6", "24", "118", "674", "4306", "29990", "223668", "1763468", "14558588", "124938648",
                     "1108243002", "10115202962", "94652608690", "905339525594", "8829466579404", "87618933380020",
                     "883153699606024", "9028070631668540", "93478132393544988", "979246950529815364", "10368459385853924212",
                     "110866577818487410864"};
    }
    {
      CatalogEntry& e = inv("t000_021", "000,021");
      e.series = "thAA2";
      e.formula = "thAA2";
    }
    {
      CatalogEntry& e = inv("t100_021", "100,021");
      e.series = "thCC3";
      e.formula = "thCC3";
    }
    {
      CatalogEntry& e = inv("t110_021", "110,021");
      e.series = "thCC3";
      e.formula = "thCC3";
    }
    {
      CatalogEntry& e = inv("t102_021", "102,021");
      e.series = "thDD1";
      e.formula = "thDD1";
    }
    {
      CatalogEntry& e = inv("t100_012", "100,012");
      e.series = "thBB2";
      e.formula = "thBB2";
    }
    {
      CatalogEntry& e = inv("t011_201", "011,201");
      e.equivalent = {"011,210"};
      e.published = {"1",      "2",       "5",       "15",       "51",        "189",       "746",        "3091",        "13311",       "59146",
                     "269701", "1256820", "5966001", "28773252", "140695923", "696332678", "3483193924", "17589239130", "89575160517", "459648885327"};
    }
    inv("t120_210", "120,210").published = {"1",        "2",         "6",          "23",         "102",         "499",          "2625",
                                            "14601",    "84847",     "510614",     "3161964",    "20050770",    "129718404",    "853689031",
                                            "5701759424", "38574689104", "263936457042", "1824032887177", "12718193293888", "89386742081688"};
    {
      CatalogEntry& e = inv("fib000_001", "000,001");
      e.series = "fib000_001";
      e.formula = "fib000_001";
    }
    inv("ex000_001_012", "000,001,012").series = "ex21";
    auto rgs = [&](std::string name, std::string pats) -> CatalogEntry& {
      CatalogEntry& e = inv(std::move(name), std::move(pats));
      e.kind = Kind::RestrictedGrowth;
      return e;
    };
    rgs("rgs1122", "1122").published = {"1", "1", "2", "5", "14", "42", "133", "441", "1523", "5456", "20209", "77186", "303296"};
    rgs("rgs1212", "1212");
    rgs("rgs12313_12323", "12313,12323").series = "rgs_12313_12323";
    rgs("rgs_triple", "12313,12323,12333").series = "rgs_triple";
    {
      CatalogEntry& e = rgs("rgs_ell1", "");
      e.series = "rgs_ell1";
      e.series_from = 1;
      e.param = "l";
      e.param_default = 4;
    }
    return c;
  }();
  return entries;
}

inline const CatalogEntry& catalog_entry(const std::string& name) {
  for (const CatalogEntry& e : catalog())
    if (e.name == name) return e;
  throw InvalidInput("unknown catalog class '" + name + "'");
}

inline std::string catalog_dir() {
  if (const char* env = std::getenv("INVSEQ_CATALOG")) return env;
  return INVSEQ_CATALOG_DIR;
}

/// Resolved parameter value (l for rgs_ell1), if the class has one.
inline std::optional<long> entry_param(const CatalogEntry& e, std::optional<long> given = std::nullopt) {
  if (!e.param) {
    if (given) throw InvalidInput("class '" + e.name + "' takes no parameter");
    return std::nullopt;
  }
  const long v = given.value_or(e.param_default);
  if (e.name == "rgs_ell1" && (v < 2 || v > 20)) throw InvalidInput("l must lie in 2..20");
  return v;
}

inline std::string entry_patterns(const CatalogEntry& e, std::optional<long> param = std::nullopt) {
  if (e.name != "rgs_ell1") return e.patterns;
  const long l = *entry_param(e, param);
  std::string p;
  for (long i = 1; i <= l; ++i) p += std::to_string(i);
  return p + "1";
}

inline PatternSet entry_pattern_set(const CatalogEntry& e, std::optional<long> param = std::nullopt) {
  return make_pattern_set(entry_patterns(e, param), SeqKind{e.kind, 0});
}

inline ParamRuleSet entry_rules(const CatalogEntry& e, std::optional<long> param = std::nullopt) {
  std::map<std::string, long> ov;
  if (auto p = entry_param(e, param)) ov[*e.param] = *p;
  return load_rules_file(catalog_dir() + "/" + e.name + ".rules", ov);
}

inline std::vector<BigInt> entry_published(const CatalogEntry& e) {
  std::vector<BigInt> out;
  for (const std::string& s : e.published) out.emplace_back(s);
  return out;
}

}  // namespace invseq
