#pragma once

// Arbitrary-precision integer and rational scalars usable inside Eigen
// dense types. Expression templates are disabled so that Eigen sees plain
// value types.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>

namespace binatoms {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using BigRational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

inline BigInt numerator_of(const BigRational& q) {
  return boost::multiprecision::numerator(q);
}
inline BigInt denominator_of(const BigRational& q) {
  return boost::multiprecision::denominator(q);
}

inline bool is_integral(const BigRational& q) {
  return denominator_of(q) == 1;
}

inline std::string to_string(const BigInt& x) { return x.str(); }
inline std::string to_string(const BigRational& q) { return q.str(); }

}  // namespace binatoms
