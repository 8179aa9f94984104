#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ample {

// All measure / LP arithmetic is exact. cpp_rational keeps the build
// header-only (no GMP link dependency).
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline std::string numerator_str(const Rational& q) {
  return boost::multiprecision::numerator(q).str();
}

inline std::string denominator_str(const Rational& q) {
  return boost::multiprecision::denominator(q).str();
}

inline std::string rational_str(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) return numerator_str(q);
  return numerator_str(q) + "/" + denominator_str(q);
}

inline Rational parse_rational(const std::string& num, const std::string& den) {
  return Rational(Integer(num), Integer(den));
}

} // namespace ample
