#pragma once

// Arbitrary-precision integers and rationals.  Every count, character sum and
// Frobenius eigenvalue in this library is exact; nothing here ever touches
// floating point.

#include <boost/multiprecision/cpp_int.hpp>

namespace lmnc {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// q^e for machine-sized base and exponent, widened before the loop so large
// Weil terms (p^{nk/2} and friends) never overflow.
inline BigInt big_pow(BigInt base, unsigned long exp) {
  BigInt out = 1;
  while (exp > 0) {
    if (exp & 1u) out *= base;
    base *= base;
    exp >>= 1u;
  }
  return out;
}

}  // namespace lmnc
