#include <gtest/gtest.h>

#include <random>

#include "invseq/oracle.hpp"
#include "invseq/series.hpp"

#include "naive.hpp"

using namespace invseq;

namespace {

std::vector<BigInt> big(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

Series poly(std::initializer_list<long> c, int order) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return Series::polynomial(v, order);
}

Series random_series(std::mt19937& rng, int order, bool unit_constant) {
  std::vector<Rational> v;
  for (int k = 0; k < order; ++k) v.emplace_back(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 4));
  if (unit_constant) v[0] = 1;
  if (v[0] == 0) v[0] = 3;
  return Series::polynomial(v, order);
}

}  // namespace

TEST(Arithmetic, Basics) {
  const Series a = poly({1, 2, 3}, 6);
  const Series b = poly({0, 1}, 6);
  EXPECT_EQ((a * b).coeff(3), Rational(3));
  EXPECT_EQ((a + b).coeff(1), Rational(3));
  EXPECT_EQ((a - a).is_zero(), true);
  EXPECT_EQ((b * b).valuation(), 2);
  EXPECT_THROW(a.coeff(6), InvalidInput);
}

TEST(Arithmetic, LaurentDivision) {
  const Series x = Series::x(8);
  const Series q = poly({0, 0, 1, 1}, 8) / (x * x);
  EXPECT_EQ(q.valuation(), 0);
  EXPECT_EQ(q.coeff(0), Rational(1));
  EXPECT_EQ(q.coeff(1), Rational(1));
  const Series inv = Series::constant(1, 6) / x;
  EXPECT_EQ(inv.valuation(), -1);
  EXPECT_THROW(Series::constant(1, 5) / Series::zero(5), InvalidInput);
}

TEST(Sqrt, Examples) {
  const Series s = sqrt(poly({1, -4}, 6));
  EXPECT_EQ(s.integer_coeffs(0, 5), (std::vector<BigInt>{1, -2, -2, -4, -10, -28}));
  EXPECT_EQ(s * s, poly({1, -4}, 6));
  EXPECT_EQ(sqrt(poly({1, 1}, 10) * poly({1, -3}, 10)), sqrt(poly({1, -2, -3}, 10)));
  EXPECT_THROW(sqrt(poly({0, 1}, 5)), InvalidInput);
  EXPECT_THROW(sqrt(poly({2, 1}, 5)), InvalidInput);
  EXPECT_EQ(sqrt(poly({0, 0, 4, 4, 1}, 8)), poly({0, 2, 1}, 8).truncate(7));
}

TEST(Properties, RandomizedDivisionAndSqrt) {
  std::mt19937 rng(2024);
  for (int it = 0; it < 60; ++it) {
    const int order = 4 + static_cast<int>(rng() % 10);
    const Series a = random_series(rng, order, false);
    const Series b = random_series(rng, order, false);
    const Series one = Series::constant(1, order);
    ASSERT_EQ(a * (one / a), one);
    ASSERT_EQ((b / a) * a, b);
    const Series u = random_series(rng, order, true);
    ASSERT_EQ(sqrt(u) * sqrt(u), u);
    ASSERT_EQ(sqrt(u * u), u);
    ASSERT_EQ(pow(u, 3) / u, u * u);
    ASSERT_EQ(pow(u, -2) * u * u, one);
  }
}

TEST(Catalog, PrintedExpansions) {
  EXPECT_EQ(catalog_series({"thAA2", std::nullopt}, 10).integer_coeffs(0, 10), big({0, 1, 2, 5, 14, 39, 111, 317, 911, 2627, 7600}));
  EXPECT_EQ(catalog_series({"thBB2", std::nullopt}, 10).integer_coeffs(0, 10), big({0, 1, 2, 5, 12, 27, 56, 110, 207, 378, 675}));
  EXPECT_EQ(catalog_series({"rgs_12313_12323", std::nullopt}, 5).integer_coeffs(0, 5), big({1, 1, 2, 5, 15, 50}));
  EXPECT_EQ(catalog_series({"ex21", std::nullopt}, 5).integer_coeffs(0, 5), big({0, 1, 2, 2, 1, 0}));
  EXPECT_THROW(catalog_series({"lemma41", std::nullopt}, 5), InvalidInput);
  EXPECT_THROW(catalog_series({"nosuch", std::nullopt}, 5), InvalidInput);
}

TEST(Catalog, SmallCountsAgreeWithNaive) {
  for (int n = 0; n <= 5; ++n) {
    EXPECT_EQ(series_counts({"rgs_12313_12323", std::nullopt}, 5)[static_cast<std::size_t>(n)], naive::count("12313,12323", true, n));
    EXPECT_EQ(series_counts({"thCC3", std::nullopt}, 5)[static_cast<std::size_t>(n)], naive::count("100,021", false, n));
  }
}

TEST(Formulas, Helpers) {
  std::vector<BigInt> f;
  for (int n = 0; n <= 6; ++n) f.push_back(fib(n));
  EXPECT_EQ(f, big({0, 1, 1, 2, 3, 5, 8}));
  std::vector<BigInt> t;
  for (int n = 0; n <= 4; ++n) t.push_back(trinomial(n));
  EXPECT_EQ(t, big({1, 1, 3, 7, 19}));
  EXPECT_EQ(binomial(6, 2), BigInt(15));
}

TEST(Formulas, TermsAndOffsets) {
  EXPECT_EQ(formula_terms("thCC3", 4).values, big({1, 2, 6, 21, 78}));
  const auto counts = series_counts({"thCC3", std::nullopt}, 8);
  EXPECT_EQ(detect_offset(formula_terms("thCC3", 9), counts), 0);
  for (const char* id : {"thAA2", "thDD1", "thBB2"}) {
    const auto c = series_counts({id, std::nullopt}, 10);
    EXPECT_EQ(detect_offset(formula_terms(id, 11), c), 1) << id;
  }
  EXPECT_FALSE(detect_offset(formula_terms("thCC3", 9), big({5, 5, 5, 5, 5})).has_value());
}

TEST(Formulas, ThCC3MatchesSeries) {
  const auto f = formula_terms("thCC3", 12);
  EXPECT_EQ(f.values, series_counts({"thCC3", std::nullopt}, 12));
}

// Lemma series against brute-force capped extensions, small range; the full
// m = 1..5 sweep runs in acceptance.
TEST(Lemmas, CappedExtensionsSmall) {
  const PatternSet b = make_pattern_set("100,012", SeqKind::inversion());
  for (int m = 1; m <= 3; ++m) {
    Word zm(static_cast<std::size_t>(m), 0);
    zm.push_back(static_cast<Letter>(m));
    Word zm0 = zm;
    zm0.push_back(0);
    const int L = 6;
    auto coeffs = [&](const char* id) { return catalog_series({id, m}, L + 1).integer_coeffs(1, L + 1); };
    EXPECT_EQ(capped_extension_counts(zm0, m - 1, b, L), coeffs("lemma41")) << m;
    EXPECT_EQ(capped_extension_counts(zm0, m, b, L), coeffs("lemma42")) << m;
    EXPECT_EQ(capped_extension_counts(zm, m - 1, b, L), coeffs("lemma43")) << m;
    EXPECT_EQ(capped_extension_counts(zm, m, b, L), coeffs("lemma44")) << m;
  }
}
