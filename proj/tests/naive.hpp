#pragma once

// Reference implementations used only by the tests. They share no code with
// the library: words are plain vectors, containment tries every index subset.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace naive {

using Seq = std::vector<int>;

inline Seq digits(const std::string& s) {
  Seq out;
  for (char c : s) out.push_back(c - '0');
  return out;
}

inline std::vector<Seq> split(const std::string& csv) {
  std::vector<Seq> out;
  std::string cur;
  for (char c : csv + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(digits(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

inline bool same_order(const Seq& w, const std::vector<int>& idx, const Seq& p) {
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b) {
      const int x = w[static_cast<std::size_t>(idx[a])], y = w[static_cast<std::size_t>(idx[b])];
      if ((p[a] < p[b]) != (x < y) || (p[a] == p[b]) != (x == y)) return false;
    }
  return true;
}

inline bool contains(const Seq& w, const Seq& p) {
  if (p.size() > w.size()) return false;
  std::vector<int> idx(p.size());
  std::function<bool(std::size_t, int)> rec = [&](std::size_t k, int from) {
    if (k == p.size()) return same_order(w, idx, p);
    for (int i = from; i <= static_cast<int>(w.size() - (p.size() - k)); ++i) {
      idx[k] = i;
      if (rec(k + 1, i + 1)) return true;
    }
    return false;
  };
  return rec(0, 0);
}

inline bool avoids(const Seq& w, const std::vector<Seq>& ps) {
  for (const Seq& p : ps)
    if (contains(w, p)) return false;
  return true;
}

/// All inversion sequences (0 <= e_i <= i) or RGS (starting at 1) of a length.
inline std::vector<Seq> all_words(bool rgs, std::size_t len) {
  std::vector<Seq> out;
  Seq w;
  std::function<void(int)> rec = [&](int mx) {
    if (w.size() == len) {
      out.push_back(w);
      return;
    }
    const int lo = rgs ? 1 : 0;
    const int hi = rgs ? (w.empty() ? 1 : mx + 1) : static_cast<int>(w.size());
    for (int x = lo; x <= hi; ++x) {
      w.push_back(x);
      rec(std::max(mx, x));
      w.pop_back();
    }
  };
  rec(0);
  return out;
}

/// |I_n(B)| (word length n+1) or |P_n(B)| (word length n).
inline std::uint64_t count(const std::string& patterns, bool rgs, int n) {
  const std::vector<Seq> ps = split(patterns);
  std::uint64_t c = 0;
  for (const Seq& w : all_words(rgs, static_cast<std::size_t>(rgs ? n : n + 1)))
    if (avoids(w, ps)) ++c;
  return c;
}

}  // namespace naive
