#include <gtest/gtest.h>

#include <algorithm>

#include "invseq/closure.hpp"

#include "fixtures.hpp"
#include "naive.hpp"

using namespace invseq;

namespace {

std::vector<std::string> strs(const std::vector<Pattern>& ps) {
  std::vector<std::string> out;
  for (const Pattern& p : ps) out.push_back(p.str());
  std::sort(out.begin(), out.end());
  return out;
}

using V = std::vector<std::string>;

}  // namespace

TEST(LTau, Examples) {
  EXPECT_EQ(strs(l_tau(Pattern::parse("021"))), (V{"0021", "0121"}));
  EXPECT_EQ(strs(l_tau(Pattern::parse("001"))), (V{"001"}));
  EXPECT_EQ(strs(l_tau(Pattern::parse("000"))), (V{"000"}));
  EXPECT_EQ(strs(l_tau(Pattern::parse("100"))), (V{"0100"}));
}

TEST(LTau, ElementsAreInversionSequencesContainingTau) {
  for (const char* t : {"021", "100", "201", "210", "120", "102", "110", "1012", "0312"}) {
    const Pattern p = Pattern::parse(t);
    for (const Pattern& q : l_tau(p)) {
      EXPECT_TRUE(is_valid(q.word(), SeqKind::inversion())) << q.str();
      EXPECT_TRUE(contains(q.word(), p)) << q.str();
    }
  }
}

// The literal construction misses avoiders such as 00211 for 100, which the
// completed closure covers.
TEST(LTau, LiteralSetIsNotEnoughFor100) {
  const Word w = parse_word("00211");
  EXPECT_TRUE(contains(w, Pattern::parse("100")));
  EXPECT_FALSE(contains(w, Pattern::parse("0100")));
  const PatternSet b = make_pattern_set("100", SeqKind::inversion());
  EXPECT_FALSE(avoids_all(w, b.closure));
}

TEST(PatternSetBuild, Examples) {
  const PatternSet b = make_pattern_set("021,001", SeqKind::inversion());
  EXPECT_EQ(strs(b.closure), (V{"001", "0021", "0121"}));
  EXPECT_EQ(b.horizon_t, 4);
  const PatternSet r = make_pattern_set("1122", SeqKind::rgs());
  EXPECT_EQ(strs(r.closure), (V{"1122"}));
  EXPECT_EQ(r.horizon_t, 4);
  EXPECT_EQ(make_pattern_set("100", SeqKind::inversion()).horizon_t, 5);
  EXPECT_EQ(make_pattern_set("201", SeqKind::inversion()).horizon_t, 7);
}

TEST(PatternSetBuild, Errors) {
  EXPECT_THROW(make_pattern_set("0", SeqKind::inversion()), InvalidInput);
  EXPECT_THROW(make_pattern_set("", SeqKind::inversion()), InvalidInput);
  EXPECT_THROW(make_pattern_set("02", SeqKind::inversion()), InvalidInput);
  EXPECT_THROW(make_pattern_set("1312", SeqKind::rgs()), InvalidInput);
}

TEST(PatternSetBuild, DuplicatesCollapse) {
  const PatternSet b = make_pattern_set("021,021,000", SeqKind::inversion());
  EXPECT_EQ(b.raw.size(), 2U);
}

// Avoiding B and avoiding its closure select the same inversion sequences.
TEST(ClosureEquivalence, ExhaustiveToN7) {
  for (const CatalogSet& s : catalog_sets()) {
    const PatternSet b = make_pattern_set(s.patterns, s.rgs ? SeqKind::rgs() : SeqKind::inversion());
    for (int n = 0; n <= 7; ++n)
      for (const naive::Seq& w : naive::all_words(s.rgs, static_cast<std::size_t>(s.rgs ? n : n + 1))) {
        const Word ww(w.begin(), w.end());
        ASSERT_EQ(avoids_all(ww, b.raw), avoids_all(ww, b.closure)) << s.patterns << " " << format_word(ww);
      }
  }
}

TEST(ClosureEquivalence, EveryClosureElementContainsARawPattern) {
  for (const CatalogSet& s : catalog_sets()) {
    const PatternSet b = make_pattern_set(s.patterns, s.rgs ? SeqKind::rgs() : SeqKind::inversion());
    for (const Pattern& q : b.closure) EXPECT_FALSE(avoids_all(q.word(), b.raw)) << q.str();
    EXPECT_EQ(b.horizon_t, static_cast<int>(std::max_element(b.closure.begin(), b.closure.end(), [](const Pattern& a, const Pattern& c) {
                                              return a.size() < c.size();
                                            })->size()));
  }
}
