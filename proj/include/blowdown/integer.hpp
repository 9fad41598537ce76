#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace blowdown {

/// Exact integer of unbounded magnitude used for every coordinate, determinant and residue.
using Integer = boost::multiprecision::cpp_int;

/// Least non-negative residue of a modulo m (m > 0).
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

inline Integer abs_value(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd(Integer a, Integer b) {
  a = abs_value(a);
  b = abs_value(b);
  while (b != 0) {
    Integer t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs_value(a / gcd(a, b) * b);
}

/// Parses an optionally signed decimal literal; throws std::invalid_argument otherwise.
Integer parse_integer(std::string_view text);

inline std::string to_string(const Integer& v) { return v.str(); }

}  // namespace blowdown
