#include "lmnc/charsum.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace lmnc;

namespace {

// Independent oracle: evaluate j_m literally as a sum over (2m-1)-tuples of
// units with the last coordinate forced by the vanishing-sum constraint.
// Exponential in m, so only used for tiny cases.
BigInt jacobi_literal(const FieldDesc& F, int m) {
  const int slots = 2 * m - 1;
  std::vector<FieldElem> unit;
  for (int64_t i = 1; i < F.q; ++i) unit.push_back(F.elem_at(i));

  BigInt total = 0;
  std::vector<size_t> pick(slots, 0);
  while (true) {
    FieldElem s = F.zero();
    int prod = 1;
    for (int j = 0; j < slots; ++j) {
      s = F.add(s, unit[pick[j]]);
      prod *= F.quad_char(unit[pick[j]]);
    }
    FieldElem last = F.neg(s);
    if (!F.is_zero(last)) total += prod * F.quad_char(last);

    int j = slots - 1;
    while (j >= 0 && pick[j] + 1 == unit.size()) pick[j--] = 0;
    if (j < 0) break;
    ++pick[j];
  }
  REQUIRE(total % (F.q - 1) == 0);
  return total / (F.q - 1);
}

}  // namespace

TEST_CASE("first convolution power is the character itself", "[charsum]") {
  for (auto [p, k] : {std::pair{3, 1}, {5, 1}, {3, 2}}) {
    FieldDesc F = make_field(p, k);
    SignedCountVector c1 = char_convolution_power(F, 1);
    for (int64_t i = 0; i < F.q; ++i)
      CHECK(c1.value[i] == F.quad_char(F.elem_at(i)));
  }
}

TEST_CASE("second convolution power at zero and away from zero", "[charsum]") {
  // c_2(0) = chi(-1)(q-1) by pairing u with -u; c_2(t) = -chi(-1) for t != 0.
  for (auto [p, k] :
       {std::pair{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}, {3, 3}}) {
    FieldDesc F = make_field(p, k);
    const int chi_m1 = F.quad_char(F.neg(F.one()));
    SignedCountVector c2 = char_convolution_power(F, 2);
    CHECK(c2.value[0] == chi_m1 * (F.q - 1));
    for (int64_t t = 1; t < F.q; ++t) CHECK(c2.value[t] == -chi_m1);
  }
  // Pinned small instances.
  FieldDesc F3 = make_field(3, 1);
  CHECK(char_convolution_power(F3, 2).value ==
        std::vector<BigInt>{-2, 1, 1});
  CHECK(char_convolution_power(make_field(5, 1), 2).value[0] == 4);
}

TEST_CASE("odd convolution powers vanish at zero", "[charsum]") {
  // Rescaling all summands by a non-square flips the sign when k is odd.
  for (auto [p, k] : {std::pair{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
    FieldDesc F = make_field(p, k);
    for (int j : {1, 3, 5, 7})
      CHECK(char_convolution_power(F, j).value[0] == 0);
  }
}

TEST_CASE("convolution powers are homogeneous of weight chi^k", "[charsum]") {
  FieldDesc F = make_field(3, 2);
  for (int k = 1; k <= 5; ++k) {
    SignedCountVector c = char_convolution_power(F, k);
    for (int64_t li = 1; li < F.q; ++li) {
      FieldElem lambda = F.elem_at(li);
      const int scale = F.quad_char(lambda);  // chi(lambda)^k collapses mod 2
      const int factor = (k % 2 == 0) ? 1 : scale;
      for (int64_t t = 0; t < F.q; ++t) {
        FieldElem lt = F.mul(lambda, F.elem_at(t));
        REQUIRE(c.value[F.index_of(lt)] == factor * c.value[t]);
      }
    }
  }
}

TEST_CASE("convolution powers have zero total mass", "[charsum]") {
  FieldDesc F = make_field(5, 1);
  for (int k = 1; k <= 6; ++k) {
    BigInt total = 0;
    for (const BigInt& v : char_convolution_power(F, k).value) total += v;
    CHECK(total == 0);  // (sum of chi)^k
  }
}

TEST_CASE("explicit moment sums match the closed form", "[charsum]") {
  for (auto [p, k] : {std::pair{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}}) {
    FieldDesc F = make_field(p, k);
    for (int m = 1; m <= 3; ++m)
      CHECK(jacobi_sum_bruteforce(F, m) == jacobi_sum_closed(F, m));
  }
  CHECK(jacobi_sum_bruteforce(make_field(3, 1), 4) ==
        jacobi_sum_closed(make_field(3, 1), 4));
}

TEST_CASE("explicit moment sums match the literal tuple sum", "[charsum]") {
  for (auto [p, k] : {std::pair{3, 1}, {5, 1}}) {
    FieldDesc F = make_field(p, k);
    for (int m = 1; m <= 2; ++m)
      CHECK(jacobi_sum_bruteforce(F, m) == jacobi_literal(F, m));
  }
  FieldDesc F9 = make_field(3, 2);
  CHECK(jacobi_sum_bruteforce(F9, 2) == jacobi_literal(F9, 2));
}

TEST_CASE("pinned moment values", "[charsum]") {
  // j_1 = chi(-1); j_2 = q; j_3 = chi(-1) q^2.
  CHECK(jacobi_sum_bruteforce(make_field(3, 1), 1) == -1);
  CHECK(jacobi_sum_bruteforce(make_field(5, 1), 1) == 1);
  CHECK(jacobi_sum_bruteforce(make_field(3, 2), 1) == 1);
  CHECK(jacobi_sum_bruteforce(make_field(3, 1), 2) == 3);
  CHECK(jacobi_sum_bruteforce(make_field(3, 2), 2) == 9);
  CHECK(jacobi_sum_bruteforce(make_field(3, 1), 3) == -9);
  CHECK(jacobi_sum_bruteforce(make_field(7, 1), 3) == -49);
}

TEST_CASE("recursion verification holds level by level", "[charsum]") {
  for (auto [p, k] : {std::pair{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}}) {
    FieldDesc F = make_field(p, k);
    for (int m = 2; m <= 3; ++m) {
      RecursionCheck R = verify_recursion(F, m);
      INFO("q = " << F.q << ", m = " << m);
      CHECK(R.star_holds);
      CHECK(R.inner_holds);
      CHECK(R.recursion_holds);
      CHECK(R.closed_form_holds);
      CHECK(R.all());
    }
  }
}

TEST_CASE("recursion intermediates for the smallest field", "[charsum]") {
  RecursionCheck R = verify_recursion(make_field(3, 1), 2);
  CHECK(R.j_m == 3);
  CHECK(R.j_prev == -1);
  CHECK(R.c_odd_at_one == -3);  // c_3(1) over F_3
  CHECK(R.inner_sum == -1);     // single term w = 2: c_2(2) chi(-1)
}

TEST_CASE("scale and domain guards", "[charsum]") {
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::invariant_violation;
  };
  CHECK(code([] { char_convolution_power(make_field(3, 1), 0); }) ==
        ErrorCode::bad_argument);
  CHECK(code([] { char_convolution_power(make_field(11, 3), 2); }) ==
        ErrorCode::too_large);  // q = 1331
  CHECK(code([] { jacobi_sum_bruteforce(make_field(3, 1), 5); }) ==
        ErrorCode::too_large);
  CHECK(code([] { jacobi_sum_bruteforce(make_field(3, 1), 0); }) ==
        ErrorCode::bad_argument);
  CHECK(code([] { verify_recursion(make_field(3, 1), 1); }) ==
        ErrorCode::bad_argument);
  // The closed form has no scale guard.
  CHECK(jacobi_sum_closed(make_field(11, 3), 6) == big_pow(1331, 5));
}
