#include <gtest/gtest.h>

#include "invseq/oracle.hpp"

#include "fixtures.hpp"
#include "naive.hpp"

using namespace invseq;

namespace {

std::vector<BigInt> big(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

PatternSet inv(const char* p) { return make_pattern_set(p, SeqKind::inversion()); }

}  // namespace

TEST(Count, KnownSequences) {
  EXPECT_EQ(count_avoiders(inv("021"), 6).counts, big({1, 2, 6, 22, 90, 394, 1806}));
  EXPECT_EQ(count_avoiders(inv("001"), 6).counts, big({1, 2, 4, 8, 16, 32, 64}));
  EXPECT_EQ(count_avoiders(inv("011,201"), 8).counts, big({1, 2, 5, 15, 51, 189, 746, 3091, 13311}));
  EXPECT_EQ(count_avoiders(make_pattern_set("1122", SeqKind::rgs()), 6).counts, big({1, 1, 2, 5, 14, 42, 133}));
}

TEST(Count, FrozenValuesMatchNaive) {
  for (int n = 0; n <= 5; ++n) {
    EXPECT_EQ(naive::count("021", false, n), (std::vector<std::uint64_t>{1, 2, 6, 22, 90, 394})[static_cast<std::size_t>(n)]);
    EXPECT_EQ(naive::count("001", false, n), std::uint64_t{1} << n);
  }
}

TEST(Count, DfsAndFilterAgreeOnCatalog) {
  for (const CatalogSet& s : catalog_sets()) {
    const PatternSet b = make_pattern_set(s.patterns, s.rgs ? SeqKind::rgs() : SeqKind::inversion());
    OracleOptions f;
    f.method = CountMethod::Filter;
    const int n = s.rgs ? 7 : 6;
    EXPECT_EQ(count_avoiders(b, n).counts, count_avoiders(b, n, f).counts) << s.patterns;
  }
}

TEST(Count, ParallelMatchesSerial) {
  for (const char* p : {"100", "120,210", "000,021"}) {
    OracleOptions par;
    par.threads = 4;
    EXPECT_EQ(count_avoiders(inv(p), 8).counts, count_avoiders(inv(p), 8, par).counts) << p;
  }
}

TEST(Count, BudgetTruncates) {
  OracleOptions opt;
  opt.budget = 20000;
  const CountReport r = count_avoiders(inv("100"), 10, opt);
  EXPECT_TRUE(r.truncated);
  EXPECT_LT(r.counts.size(), 11U);
  const auto known = big({1, 2, 6, 23, 106, 565, 3399, 22678, 165646, 1311334, 11161529});
  for (std::size_t i = 0; i < r.counts.size(); ++i) EXPECT_EQ(r.counts[i], known[i]);
}

TEST(Count, Errors) {
  OracleOptions f;
  f.method = CountMethod::Filter;
  EXPECT_THROW(count_avoiders(inv("100"), 8, f), InvalidInput);
  EXPECT_THROW(count_avoiders(inv("100"), -1), InvalidInput);
}

TEST(Extensions, Examples) {
  const PatternSet b = inv("100,012");
  EXPECT_EQ(capped_extension_counts(parse_word("0020"), 1, b, 3), big({1, 1, 0, 0}));
  EXPECT_EQ(capped_extension_counts(parse_word("0020"), 2, b, 4), big({1, 2, 2, 2, 2}));
  EXPECT_THROW(capped_extension_counts(parse_word("0100"), 1, b, 3), InvalidInput);
}

TEST(Extensions, UnrestrictedAlphabet) {
  // a pattern too long to fit leaves every word allowed
  const PatternSet b = inv("000000000000");
  EXPECT_EQ(capped_extension_counts(parse_word("0"), 2, b, 4), big({1, 3, 9, 27, 81}));
}

TEST(Wilf, Pairs) {
  EXPECT_TRUE(wilf_check(inv("201"), inv("210"), 9).equal);
  EXPECT_TRUE(wilf_check(inv("011,201"), inv("011,210"), 9).equal);
  const WilfResult r = wilf_check(inv("100"), inv("201"), 3);
  EXPECT_FALSE(r.equal);
  EXPECT_EQ(r.first_divergence, 3);
  EXPECT_THROW(wilf_check(inv("100"), make_pattern_set("1122", SeqKind::rgs()), 3), InvalidInput);
}
