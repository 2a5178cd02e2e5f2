#pragma once

#include <string>
#include <vector>

// Every pattern set that has a tree in the catalog, Wilf partners included.
struct CatalogSet {
  std::string patterns;
  bool rgs;
};

inline const std::vector<CatalogSet>& catalog_sets() {
  static const std::vector<CatalogSet> sets{
      {"100", false},         {"201", false},           {"210", false},
      {"000,021", false},     {"100,021", false},       {"110,021", false},
      {"102,021", false},     {"100,012", false},       {"011,201", false},
      {"011,210", false},     {"120,210", false},       {"000,001", false},
      {"000,001,012", false}, {"1122", true},           {"1212", true},
      {"12313,12323", true},  {"12313,12323,12333", true}, {"121", true},
      {"1231", true},         {"12341", true},
  };
  return sets;
}
