#pragma once

// Character-sum machinery: additive convolution powers of the quadratic
// character and the even-moment sums j_m built from them,
//
//   c_k(t) = sum over u_1 + ... + u_k = t of chi(u_1) ... chi(u_k),
//   j_m    = c_{2m}(0) / (q - 1),
//
// together with an independent verification of the recursion
// j_m = chi(-1) * q * j_{m-1} through the two exchange-of-summation
// identities it rests on.  Everything is computed by explicit summation in
// exact integer arithmetic; the closed form chi(-1)^m q^{m-1} lives in a
// separate function so the two can be played against each other.

#include <cstdint>
#include <string>
#include <vector>

#include "lmnc/bigint.hpp"
#include "lmnc/errors.hpp"
#include "lmnc/ffield.hpp"

namespace lmnc {

// A function F_q -> Z stored densely by element index.
struct SignedCountVector {
  int64_t q = 0;
  std::vector<BigInt> value;  // value[i] at the element with index i

  const BigInt& at_index(int64_t i) const { return value.at(i); }
};

namespace detail {

inline void check_charsum_scale(const FieldDesc& F, int k) {
  require(F.q <= 1024, ErrorCode::too_large,
          "convolution powers limited to q <= 1024 (got q = " +
              std::to_string(F.q) + ")");
  require(k <= 8, ErrorCode::too_large,
          "convolution powers limited to k <= 8 (got k = " +
              std::to_string(k) + ")");
}

}  // namespace detail

// c_k as a dense vector; k - 1 additive convolutions, O(k q^2) in total.
inline SignedCountVector char_convolution_power(const FieldDesc& F, int k) {
  require(k >= 1, ErrorCode::bad_argument, "convolution power needs k >= 1");
  detail::check_charsum_scale(F, k);
  const FieldTables T = build_tables(F);
  const int64_t q = F.q;

  SignedCountVector c1{q, std::vector<BigInt>(q)};
  for (int64_t i = 0; i < q; ++i) c1.value[i] = T.chi[i];

  SignedCountVector out = c1;
  for (int step = 2; step <= k; ++step) {
    SignedCountVector next{q, std::vector<BigInt>(q)};
    for (int64_t u = 0; u < q; ++u) {
      if (out.value[u] == 0) continue;
      for (int64_t v = 1; v < q; ++v)  // chi(0) = 0, so v = 0 contributes nothing
        next.value[T.add(u, v)] += out.value[u] * T.chi[v];
    }
    out = std::move(next);
  }
  return out;
}

// j_m by explicit summation: the 2m-fold convolution evaluated at zero,
// divided by q - 1.  The division is checked to be exact.
inline BigInt jacobi_sum_bruteforce(const FieldDesc& F, int m) {
  require(m >= 1, ErrorCode::bad_argument, "moment index m must be >= 1");
  require(m <= 4, ErrorCode::too_large,
          "explicit moment sums limited to m <= 4 (got m = " +
              std::to_string(m) + ")");
  const SignedCountVector c = char_convolution_power(F, 2 * m);
  const BigInt numerator = c.value[0];
  require(numerator % (F.q - 1) == 0, ErrorCode::divisibility_violation,
          "c_{2m}(0) = " + numerator.str() + " is not divisible by q - 1 = " +
              std::to_string(F.q - 1));
  return numerator / (F.q - 1);
}

// The closed form chi(-1)^m q^(m-1), valid for every m >= 1.
inline BigInt jacobi_sum_closed(const FieldDesc& F, int m) {
  require(m >= 1, ErrorCode::bad_argument, "moment index m must be >= 1");
  const int sign = F.quad_char(F.neg(F.one())) == 1 ? 1 : (m % 2 == 0 ? 1 : -1);
  return sign * big_pow(F.q, static_cast<unsigned long>(m - 1));
}

// Intermediate values and verdicts for one level of the recursion.
struct RecursionCheck {
  int m = 0;
  BigInt j_m;             // explicit value at level m
  BigInt j_prev;          // explicit value at level m - 1
  BigInt c_odd_at_one;    // c_{2m-1}(1)
  BigInt inner_sum;       // sum over w outside {0,1} of c_{2m-2}(w) chi(1-w)
  bool star_holds = false;       // j_m == chi(-1) * c_{2m-1}(1)
  bool inner_holds = false;      // inner_sum == j_{m-1}
  bool recursion_holds = false;  // j_m == chi(-1) * q * j_{m-1}
  bool closed_form_holds = false;  // both levels match chi(-1)^m q^(m-1)

  bool all() const {
    return star_holds && inner_holds && recursion_holds && closed_form_holds;
  }
};

// Recompute level m from level m - 1 along the two summation identities:
//
//   (a) collapsing the last variable of c_{2m}(0) by homogeneity gives
//       j_m = chi(-1) * c_{2m-1}(1);
//   (b) expanding c_{2m-1}(1) over its last variable splits off the w = 0
//       term (q - 1) * j_{m-1}, and the remaining sum over w outside {0,1}
//       must itself equal j_{m-1};
//   (c) together these force j_m = chi(-1) * q * j_{m-1}.
//
// All quantities are evaluated independently by explicit summation; the
// returned flags report which identities actually held.
inline RecursionCheck verify_recursion(const FieldDesc& F, int m) {
  require(m >= 2, ErrorCode::bad_argument,
          "recursion check needs m >= 2 so that level m - 1 exists");
  require(m <= 4, ErrorCode::too_large,
          "recursion check limited to m <= 4 (got m = " + std::to_string(m) +
              ")");
  detail::check_charsum_scale(F, 2 * m);
  const FieldTables T = build_tables(F);
  const int chi_m1 = T.chi[T.neg(1)];  // chi(-1); index 1 is the unit

  RecursionCheck R;
  R.m = m;
  R.j_m = jacobi_sum_bruteforce(F, m);
  R.j_prev = jacobi_sum_bruteforce(F, m - 1);

  const SignedCountVector c_odd = char_convolution_power(F, 2 * m - 1);
  R.c_odd_at_one = c_odd.value[1];

  const SignedCountVector c_even = char_convolution_power(F, 2 * m - 2);
  R.inner_sum = 0;
  for (int64_t w = 0; w < F.q; ++w) {
    if (w == 0 || w == 1) continue;
    R.inner_sum += c_even.value[w] * T.chi[T.sub(1, static_cast<int32_t>(w))];
  }

  R.star_holds = (R.j_m == chi_m1 * R.c_odd_at_one);
  R.inner_holds = (R.inner_sum == R.j_prev);
  R.recursion_holds = (R.j_m == chi_m1 * F.q * R.j_prev);
  R.closed_form_holds = (R.j_m == jacobi_sum_closed(F, m)) &&
                        (R.j_prev == jacobi_sum_closed(F, m - 1));
  return R;
}

}  // namespace lmnc
