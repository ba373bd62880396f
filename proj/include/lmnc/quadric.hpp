#pragma once

// Point counts of smooth projective quadrics  a_1 x_1^2 + ... + a_n x_n^2 = 0
// in P^{n-1} over F_q, two ways:
//
//   * honest enumeration of affine solutions, folded down to projective
//     space by (N_affine - 1)/(q - 1);
//   * the closed form  sum_{i=0}^{n-2} q^i  plus, for even n, a middle term
//     (+/-) q^{n/2-1} whose sign is the discriminant character
//     chi((-1)^{n/2} a_1 ... a_n).
//
// The enumeration never consults the classification, so equality of the two
// counts is a real cross-check and not a tautology.

#include <cstdint>
#include <string>
#include <vector>

#include "lmnc/bigint.hpp"
#include "lmnc/errors.hpp"
#include "lmnc/ffield.hpp"

namespace lmnc {

enum class QuadricClass { split, nonsplit };

inline const char* to_string(QuadricClass c) {
  return c == QuadricClass::split ? "split" : "nonsplit";
}

namespace detail {

// Reduce integer coefficients into F_q and insist that each is a unit, so
// the quadric is smooth.
inline std::vector<FieldElem> reduce_unit_coeffs(
    const FieldDesc& F, const std::vector<int64_t>& coeffs) {
  require(coeffs.size() >= 2, ErrorCode::bad_argument,
          "a quadric needs at least two variables");
  std::vector<FieldElem> a;
  a.reserve(coeffs.size());
  for (size_t i = 0; i < coeffs.size(); ++i) {
    FieldElem e = F.from_int(coeffs[i]);
    require(!F.is_zero(e), ErrorCode::not_a_unit,
            "diagonal coefficient #" + std::to_string(i) + " = " +
                std::to_string(coeffs[i]) + " vanishes mod p; form is singular");
    a.push_back(e);
  }
  return a;
}

}  // namespace detail

// Discriminant classification, defined for an even number of variables:
// split exactly when (-1)^{n/2} a_1 ... a_n is a square in F_q.
inline QuadricClass classify_diagonal_form(const FieldDesc& F,
                                           const std::vector<int64_t>& coeffs) {
  const auto a = detail::reduce_unit_coeffs(F, coeffs);
  const int n = static_cast<int>(a.size());
  require(n % 2 == 0, ErrorCode::bad_argument,
          "splitness of a diagonal quadric needs an even number of variables");
  FieldElem d = (n / 2) % 2 == 1 ? F.neg(F.one()) : F.one();
  for (const FieldElem& ai : a) d = F.mul(d, ai);
  return F.quad_char(d) == 1 ? QuadricClass::split : QuadricClass::nonsplit;
}

// Number of projective points by enumeration of affine solutions.  The last
// coordinate is resolved through a q-entry lookup of how many x satisfy
// a_n x^2 = t, so the walk is over q^{n-1} prefixes.
inline BigInt count_projective_points_bruteforce(
    const FieldDesc& F, const std::vector<int64_t>& coeffs) {
  const auto a = detail::reduce_unit_coeffs(F, coeffs);
  const int n = static_cast<int>(a.size());
  require(big_pow(F.q, n) <= 100000000, ErrorCode::too_large,
          "enumeration limited to q^n <= 10^8");

  // solcount[t] = #{x in F_q : a_n x^2 = -t}, so a prefix with partial sum t
  // extends to exactly solcount[t] affine solutions.
  std::vector<int64_t> solcount(F.q, 0);
  for (int64_t xi = 0; xi < F.q; ++xi) {
    FieldElem x = F.elem_at(xi);
    FieldElem t = F.neg(F.mul(a[n - 1], F.sq(x)));
    ++solcount[F.index_of(t)];
  }

  std::vector<std::vector<FieldElem>> contrib(n - 1,
                                              std::vector<FieldElem>(F.q));
  for (int i = 0; i < n - 1; ++i)
    for (int64_t xi = 0; xi < F.q; ++xi)
      contrib[i][xi] = F.mul(a[i], F.sq(F.elem_at(xi)));

  // Odometer over the prefix coordinates with cached partial sums, so one
  // step costs O(1) field additions amortized.
  std::vector<int64_t> digit(n - 1, 0);
  std::vector<FieldElem> partial(n, F.zero());
  for (int i = 0; i < n - 1; ++i)
    partial[i + 1] = F.add(partial[i], contrib[i][0]);

  BigInt affine = 0;
  while (true) {
    affine += solcount[F.index_of(partial[n - 1])];
    int i = n - 2;
    while (i >= 0 && digit[i] + 1 == F.q) digit[i--] = 0;
    if (i < 0) break;
    ++digit[i];
    for (int j = i; j < n - 1; ++j)
      partial[j + 1] = F.add(partial[j], contrib[j][digit[j]]);
  }

  require((affine - 1) % (F.q - 1) == 0, ErrorCode::divisibility_violation,
          "affine count " + affine.str() + " is not 1 mod q - 1");
  return (affine - 1) / (F.q - 1);
}

// Number of projective points by the closed formula.
inline BigInt count_points_weil(const FieldDesc& F,
                                const std::vector<int64_t>& coeffs) {
  const auto a = detail::reduce_unit_coeffs(F, coeffs);
  const int n = static_cast<int>(a.size());
  BigInt total = 0;
  for (int i = 0; i <= n - 2; ++i) total += big_pow(F.q, i);
  if (n % 2 == 0) {
    const int eps =
        classify_diagonal_form(F, coeffs) == QuadricClass::split ? 1 : -1;
    total += eps * big_pow(F.q, n / 2 - 1);
  }
  return total;
}

}  // namespace lmnc
