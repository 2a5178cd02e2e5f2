#pragma once

// Truncated Laurent series with exact rational coefficients, and the catalog
// of closed-form generating functions and counting formulas.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "invseq/bigint.hpp"
#include "invseq/errors.hpp"

namespace invseq {

/// Σ c_k x^k for start <= k < order; everything from x^order on is unknown.
class Series {
 public:
  Series() = default;

  static Series zero(int order) {
    Series s;
    s.start_ = order;
    s.order_ = order;
    return s;
  }

  static Series monomial(const Rational& c, int k, int order) {
    Series s = zero(order);
    if (k < order && c != 0) {
      s.start_ = k;
      s.c_.push_back(c);
    }
    return s;
  }

  static Series constant(const Rational& c, int order) { return monomial(c, 0, order); }
  static Series x(int order) { return monomial(1, 1, order); }

  /// Polynomial with coefficients of x^0, x^1, ...
  static Series polynomial(const std::vector<Rational>& coeffs, int order) {
    Series s = zero(order);
    s.start_ = 0;
    for (int k = 0; k < order && k < static_cast<int>(coeffs.size()); ++k) s.c_.push_back(coeffs[k]);
    s.normalize();
    return s;
  }

  /// Lowest exponent with a nonzero coefficient; order() for a series that
  /// is zero to its known precision.
  int valuation() const { return start_; }
  int order() const { return order_; }
  bool is_zero() const { return c_.empty(); }

  Rational coeff(int k) const {
    if (k >= order_) throw InvalidInput("coefficient of x^" + std::to_string(k) + " beyond truncation order " + std::to_string(order_));
    if (k < start_ || k >= start_ + static_cast<int>(c_.size())) return 0;
    return c_[k - start_];
  }

  /// Integer coefficients of x^from .. x^to; throws on non-integers.
  std::vector<BigInt> integer_coeffs(int from, int to) const {
    std::vector<BigInt> out;
    for (int k = from; k <= to; ++k) {
      const Rational c = coeff(k);
      if (denominator(c) != 1) throw InvariantViolation("non-integral coefficient at x^" + std::to_string(k));
      out.push_back(numerator(c));
    }
    return out;
  }

  Series truncate(int order) const {
    Series s = *this;
    s.order_ = std::min(order_, order);
    if (s.start_ >= s.order_) return zero(s.order_);
    s.c_.resize(std::min<std::size_t>(c_.size(), static_cast<std::size_t>(s.order_ - s.start_)));
    s.normalize();
    return s;
  }

  Series operator-() const {
    Series s = *this;
    for (Rational& c : s.c_) c = -c;
    return s;
  }

  friend Series operator+(const Series& a, const Series& b) {
    const int order = std::min(a.order_, b.order_);
    Series s = zero(order);
    const int lo = std::min(a.start_, b.start_);
    if (lo >= order) return s;
    s.start_ = lo;
    for (int k = lo; k < order; ++k) s.c_.push_back(a.raw(k) + b.raw(k));
    s.normalize();
    return s;
  }

  friend Series operator-(const Series& a, const Series& b) { return a + (-b); }

  friend Series operator*(const Series& a, const Series& b) {
    const int order = std::min(a.order_ + b.start_, b.order_ + a.start_);
    const int lo = a.start_ + b.start_;
    Series s = zero(order);
    if (a.is_zero() || b.is_zero() || lo >= order) return s;
    s.start_ = lo;
    s.c_.assign(static_cast<std::size_t>(order - lo), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size() && static_cast<int>(i + j) < order - lo; ++j)
        s.c_[i + j] += a.c_[i] * b.c_[j];
    }
    s.normalize();
    return s;
  }

  friend Series operator*(const Rational& r, const Series& a) {
    if (r == 0) return zero(a.order_);
    Series s = a;
    for (Rational& c : s.c_) c *= r;
    return s;
  }

  friend Series operator/(const Series& a, const Series& b) {
    if (b.is_zero()) throw InvalidInput("series division by a series with no nonzero leading coefficient");
    const int vb = b.start_;
    const int rel = std::min(a.order_ - a.start_, b.order_ - vb);
    const int start = a.start_ - vb;
    if (a.is_zero()) return zero(a.order_ - vb);
    Series q = zero(start + rel);
    q.start_ = start;
    q.c_.assign(static_cast<std::size_t>(rel), Rational(0));
    const Rational& b0 = b.c_[0];
    for (int k = 0; k < rel; ++k) {
      Rational acc = a.rel(k);
      for (int i = 1; i <= k; ++i) acc -= b.rel(i) * q.c_[k - i];
      q.c_[k] = acc / b0;
    }
    q.normalize();
    return q;
  }

  friend Series operator/(const Series& a, const Rational& r) {
    if (r == 0) throw InvalidInput("series division by zero");
    return (Rational(1) / r) * a;
  }

  /// x^k · a
  Series shift(int k) const {
    Series s = *this;
    s.start_ += k;
    s.order_ += k;
    return s;
  }

  friend bool operator==(const Series& a, const Series& b) {
    if (a.order_ != b.order_) return false;
    for (int k = std::min(a.start_, b.start_); k < a.order_; ++k)
      if (a.raw(k) != b.raw(k)) return false;
    return true;
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!out.empty()) out += " + ";
      out += "(" + c_[i].str() + ")x^" + std::to_string(start_ + static_cast<int>(i));
    }
    return (out.empty() ? "0" : out) + " + O(x^" + std::to_string(order_) + ")";
  }

  friend Series sqrt(const Series& a);

 private:
  Rational raw(int k) const {
    if (k < start_ || k >= start_ + static_cast<int>(c_.size())) return 0;
    return c_[k - start_];
  }
  Rational rel(int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : Rational(0); }

  void normalize() {
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead == c_.size()) {
      c_.clear();
      start_ = order_;
      return;
    }
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    start_ += static_cast<int>(lead);
  }

  int start_ = 0;
  int order_ = 0;
  std::vector<Rational> c_;
};

namespace detail {

inline std::optional<BigInt> exact_isqrt(const BigInt& n) {
  if (n < 0) return std::nullopt;
  BigInt r = boost::multiprecision::sqrt(n);
  if (r * r != n) return std::nullopt;
  return r;
}

}  // namespace detail

inline Series sqrt(const Series& a) {
  if (a.is_zero()) throw InvalidInput("sqrt of a series with no known nonzero term");
  if (a.start_ % 2 != 0) throw InvalidInput("sqrt needs an even valuation");
  const Rational& lead = a.c_[0];
  auto num = detail::exact_isqrt(numerator(lead));
  auto den = detail::exact_isqrt(denominator(lead));
  if (!num || !den) throw InvalidInput("sqrt needs a perfect-square leading coefficient, got " + lead.str());
  const int rel = a.order_ - a.start_;
  Series s = Series::zero(a.start_ / 2 + rel);
  s.start_ = a.start_ / 2;
  s.c_.assign(static_cast<std::size_t>(rel), Rational(0));
  s.c_[0] = Rational(*num, *den);
  const Rational twice = 2 * s.c_[0];
  for (int k = 1; k < rel; ++k) {
    Rational acc = a.rel(k);
    for (int i = 1; i < k; ++i) acc -= s.c_[i] * s.c_[k - i];
    s.c_[k] = acc / twice;
  }
  return s;
}

inline Series pow(const Series& a, int n) {
  if (n == 0) return Series::constant(1, a.order() - a.valuation());
  if (n < 0) {
    const Series d = pow(a, -n);
    return Series::constant(1, d.order() - d.valuation()) / d;
  }
  Series result = a;
  for (int i = 1; i < n; ++i) result = result * a;
  return result;
}

// ---------------------------------------------------------------------------
// Catalog

struct FormulaId {
  std::string name;
  std::optional<int> param;
};

inline const std::vector<std::string>& series_ids() {
  static const std::vector<std::string> ids{"thAA2",   "thCC3",   "thDD1",   "thBB2",           "lemma41",
                                            "lemma42", "lemma43", "lemma44", "rgs_12313_12323", "rgs_triple",
                                            "rgs_ell1", "fib000_001", "ex21"};
  return ids;
}

inline bool series_needs_param(const std::string& name) {
  return name.rfind("lemma", 0) == 0 || name == "rgs_ell1";
}

namespace detail {

inline Series poly(std::initializer_list<long> c, int order) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return Series::polynomial(v, order);
}

}  // namespace detail

/// The named expression evaluated exactly through x^n.
inline Series catalog_series(const FormulaId& id, int n) {
  using detail::poly;
  if (n < 0) throw InvalidInput("series length must be non-negative");
  const bool known = std::find(series_ids().begin(), series_ids().end(), id.name) != series_ids().end();
  if (!known) throw InvalidInput("unknown formula id '" + id.name + "'");
  if (series_needs_param(id.name) && !id.param) throw InvalidInput("formula '" + id.name + "' needs a parameter");
  const int p = id.param.value_or(0);
  // Enough extra precision for the 1/x^2 factors.
  const int w = n + 4;
  const Series x = Series::x(w);
  const Series one = Series::constant(1, w);
  Series r;
  if (id.name == "thAA2") {
    const Series rad = sqrt(poly({1, 1}, w) * poly({1, -3}, w));
    const Series x2 = 2 * x * x;
    r = poly({1, -3, 1, 3}, w) / (x2 * rad) - pow(poly({1, -1}, w), 2) / x2;
  } else if (id.name == "thCC3") {
    const Series x2 = 2 * x * x;
    r = pow(poly({1, -3}, w), 2) / (x2 * sqrt(poly({1, -4}, w))) - poly({1, -3}, w) * poly({1, -1}, w) / x2;
  } else if (id.name == "thDD1") {
    r = (one - sqrt(poly({1, -4}, w))) / (2 * x * poly({1, -1}, w)) +
        poly({1, -2, 2}, w) * poly({-1, 3, -2, 1}, w) / (pow(poly({1, -1}, w), 4) * poly({1, -2}, w));
  } else if (id.name == "thBB2") {
    r = x * poly({1, -3, 3, 1, -3, -1, 1}, w) / (pow(poly({1, -1}, w), 3) * pow(poly({1, -1, -1}, w), 2));
  } else if (id.name == "lemma41" || id.name == "lemma42" || id.name == "lemma43" || id.name == "lemma44") {
    if (p < 1) throw InvalidInput("lemma parameter m must be >= 1");
    const Series onex = poly({1, 1}, w);
    if (id.name == "lemma41") {
      r = x * pow(onex, p - 1);
    } else if (id.name == "lemma42") {
      r = x * pow(onex, p - 1) / poly({1, -1}, w);
    } else if (id.name == "lemma43") {
      r = (Rational(p + 1) * pow(x, 3) - x * poly({-1, -2, 1}, w)) * pow(onex, p - 2);
    } else {
      r = x * (Rational(p - 1) * x * x * poly({1, -1}, w) + x + one) * pow(onex, p - 2) / pow(poly({1, -1}, w), 2);
    }
  } else if (id.name == "rgs_12313_12323") {
    const Series om = poly({1, -1}, w);
    r = one / om + x / (2 * om) * (one / sqrt(poly({1, -4}, w)) - one);
  } else if (id.name == "rgs_triple") {
    r = one + x * (poly({3, -9}, w) + sqrt(poly({1, -2, -3}, w))) / (2 * poly({2, -7}, w) * poly({1, -1}, w));
  } else if (id.name == "rgs_ell1") {
    if (p < 2) throw InvalidInput("rgs_ell1 needs l >= 2");
    Series den = one;
    for (int j = 1; j <= p; ++j) den = den * poly({1, -j}, w);
    r = pow(x, p - 1) * poly({1, -(p - 1)}, w) / den;
    Series partial = one;
    for (int i = 1; i <= p - 2; ++i) {
      partial = partial * poly({1, -i}, w);
      r = r + pow(x, i) / partial;
    }
  } else if (id.name == "fib000_001") {
    r = x * poly({1, 1}, w) / poly({1, -1, -1}, w);
  } else if (id.name == "ex21") {
    r = poly({0, 1, 2, 2, 1}, w);
  }
  if (!r.is_zero() && r.valuation() < 0)
    throw InvariantViolation("formula '" + id.name + "' left a term x^" + std::to_string(r.valuation()));
  if (r.order() < n + 1) throw InvariantViolation("formula '" + id.name + "' lost precision");
  return r.truncate(n + 1);
}

/// Power of x holding |I_n| (inversion, x^{n+1}) or |P_n| (RGS, x^n).
inline int count_power_shift(const std::string& name) { return name.rfind("rgs", 0) == 0 ? 0 : 1; }

/// Counts n = 0..N read off a generating function.
inline std::vector<BigInt> series_counts(const FormulaId& id, int n_max) {
  const int s = count_power_shift(id.name);
  return catalog_series(id, n_max + s).integer_coeffs(s, n_max + s);
}

// ---------------------------------------------------------------------------
// Closed-form counting formulas

inline BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline BigInt fib(long n) {
  BigInt a = 0, b = 1;
  for (long i = 0; i < n; ++i) {
    BigInt t = a + b;
    a = b;
    b = t;
  }
  return a;
}

/// Σ_k (-1)^{n-k} C(n,k) C(2k,k), the central trinomial coefficients.
inline BigInt trinomial(long n) {
  BigInt s = 0;
  for (long k = 0; k <= n; ++k) {
    const BigInt t = binomial(n, k) * binomial(2 * k, k);
    s += (n - k) % 2 == 0 ? t : BigInt(-t);
  }
  return s;
}

struct FormulaTerms {
  int start = 0;  // index of values[0]
  std::vector<BigInt> values;

  std::optional<BigInt> at(int n) const {
    if (n < start || n >= start + static_cast<int>(values.size())) return std::nullopt;
    return values[static_cast<std::size_t>(n - start)];
  }
};

inline const std::vector<std::string>& formula_ids() {
  static const std::vector<std::string> ids{"thAA2", "thCC3", "thDD1", "thBB2", "fib000_001"};
  return ids;
}

namespace detail {

inline BigInt exact(const Rational& r, const std::string& name, long n) {
  if (denominator(r) != 1)
    throw InvariantViolation("formula '" + name + "' is not integral at n=" + std::to_string(n) + ": " + r.str());
  return numerator(r);
}

}  // namespace detail

/// The closed formula evaluated for n = start..n_max exactly as printed
/// (no index shift applied).
inline FormulaTerms formula_terms(const std::string& name, int n_max) {
  if (n_max < 0) throw InvalidInput("formula length must be non-negative");
  FormulaTerms out;
  if (name == "thAA2") {
    out.start = 1;
    for (long n = 1; n <= n_max; ++n) {
      const BigInt v = 3 * trinomial(n - 1) + trinomial(n) - 3 * trinomial(n + 1) + trinomial(n + 2);
      out.values.push_back(detail::exact(Rational(v, 2), name, n));
    }
  } else if (name == "thCC3") {
    for (long n = 0; n <= n_max; ++n) {
      const Rational v = Rational(n * n + n + 6, 2 * (n + 3) * (n + 2)) * Rational(binomial(2 * n + 2, n + 1));
      out.values.push_back(detail::exact(v, name, n));
    }
  } else if (name == "thDD1") {
    for (long n = 0; n <= n_max; ++n) {
      Rational v = 0;
      for (long k = 0; k <= n; ++k) v += Rational(binomial(2 * k, k), k + 1);
      v += -1 - Rational(n * n * n, 6) - Rational(11 * n, 6) + Rational(BigInt(1) << n);
      out.values.push_back(detail::exact(v, name, n));
    }
  } else if (name == "thBB2") {
    for (long n = 0; n <= n_max; ++n) {
      const Rational v = Rational((n + 7) * fib(n) + 15 * fib(n + 1) + n * fib(n + 2), 5) - 1 - Rational(binomial(n + 2, 2));
      out.values.push_back(detail::exact(v, name, n));
    }
  } else if (name == "fib000_001") {
    for (long n = 0; n <= n_max; ++n) out.values.push_back(fib(n + 2));
  } else {
    throw InvalidInput("unknown formula '" + name + "'");
  }
  return out;
}

/// The shift s in {0, 1} with formula(n + s) = counts[n] wherever both are
/// defined; nullopt when neither or both fit.
inline std::optional<int> detect_offset(const FormulaTerms& f, const std::vector<BigInt>& counts, int min_overlap = 3) {
  std::vector<int> fits;
  for (int s : {0, 1}) {
    int overlap = 0;
    bool ok = true;
    for (int n = 0; n < static_cast<int>(counts.size()) && ok; ++n) {
      auto v = f.at(n + s);
      if (!v) continue;
      ++overlap;
      ok = *v == counts[static_cast<std::size_t>(n)];
    }
    if (ok && overlap >= min_overlap) fits.push_back(s);
  }
  if (fits.size() != 1) return std::nullopt;
  return fits.front();
}

}  // namespace invseq
