#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace invseq {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::vector<BigInt> to_big(const std::vector<unsigned long long>& v) {
  return {v.begin(), v.end()};
}

/// Parses a comma separated list of decimal integers.
inline std::vector<BigInt> parse_terms(const std::string& text) {
  std::vector<BigInt> out;
  std::string tok;
  auto flush = [&] {
    std::string t;
    for (char c : tok)
      if (c != ' ' && c != '\n' && c != '\t') t += c;
    if (!t.empty()) out.emplace_back(t);
    tok.clear();
  };
  for (char c : text) {
    if (c == ',')
      flush();
    else
      tok += c;
  }
  flush();
  return out;
}

}  // namespace invseq
