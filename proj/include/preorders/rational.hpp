#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "errors.hpp"

namespace preorders {

// Exact rational arithmetic. cpp_rational keeps values reduced with a
// positive denominator, which is exactly the canonical form the library
// relies on for equality and deterministic serialization.
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat make_rat(long long num, long long den = 1) {
  if (den == 0) fail(errc::bad_argument, "rational with zero denominator");
  return Rat(BigInt(num), BigInt(den));
}

inline std::string rat_to_string(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

// Accepts "p", "p/q" with optional leading sign on p.
inline Rat parse_rat(const std::string& text) {
  auto bad = [&] { fail(errc::bad_argument, "cannot parse rational '" + text + "'"); };
  if (text.empty()) bad();
  std::string num = text, den = "1";
  if (auto slash = text.find('/'); slash != std::string::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  auto is_int = [](const std::string& s, bool sign_ok) {
    if (s.empty()) return false;
    std::size_t i = (sign_ok && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (!is_int(num, true) || !is_int(den, false)) bad();
  BigInt d(den);
  if (d == 0) bad();
  return Rat(BigInt(num), d);
}

}  // namespace preorders
