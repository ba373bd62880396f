#include "lmnc/ffield.hpp"

#include <random>

#include <catch2/catch_amalgamated.hpp>

using namespace lmnc;

TEST_CASE("canonical moduli are the lexicographically least irreducibles",
          "[ffield]") {
  // Scan order is (c_0, c_1, ...), constant term most significant.
  CHECK(make_field(3, 2).modulus == std::vector<int64_t>{1, 0, 1});   // x^2+1
  CHECK(make_field(5, 2).modulus == std::vector<int64_t>{1, 1, 1});   // x^2+x+1
  CHECK(make_field(7, 2).modulus == std::vector<int64_t>{1, 0, 1});   // x^2+1
  CHECK(make_field(3, 3).modulus == std::vector<int64_t>{1, 0, 2, 1});
  CHECK(make_field(3, 1).modulus == std::vector<int64_t>{0, 1});      // x
}

TEST_CASE("constructor rejects bad characteristic and degree", "[ffield]") {
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::bad_argument;
  };
  CHECK(code([] { make_field(2, 1); }) == ErrorCode::even_characteristic);
  CHECK(code([] { make_field(9, 1); }) == ErrorCode::not_prime);
  CHECK(code([] { make_field(1, 2); }) == ErrorCode::not_prime);
  CHECK(code([] { make_field(-3, 1); }) == ErrorCode::not_prime);
  CHECK(code([] { make_field(3, 0); }) == ErrorCode::degenerate_degree);
  CHECK(code([] { make_field(3, -2); }) == ErrorCode::degenerate_degree);
  CHECK(category_of(ErrorCode::not_prime) == ErrorCategory::invalid_input);
  CHECK(category_of(ErrorCode::too_large) == ErrorCategory::scale_guard);
}

TEST_CASE("element indexing is a bijection with [0, q)", "[ffield]") {
  for (auto [p, k] : {std::pair{3, 4}, {5, 2}, {7, 1}}) {
    FieldDesc F = make_field(p, k);
    for (int64_t i = 0; i < F.q; ++i)
      CHECK(F.index_of(F.elem_at(i)) == i);
    CHECK(F.index_of(F.zero()) == 0);
    CHECK(F.index_of(F.one()) == 1);
  }
}

TEST_CASE("ring axioms hold on random triples", "[ffield]") {
  std::mt19937_64 rng(20260823);
  for (auto [p, k] : {std::pair{3, 1}, {3, 2}, {3, 4}, {5, 2}, {7, 2}, {11, 1}}) {
    FieldDesc F = make_field(p, k);
    std::uniform_int_distribution<int64_t> pick(0, F.q - 1);
    for (int trial = 0; trial < 500; ++trial) {
      FieldElem a = F.elem_at(pick(rng));
      FieldElem b = F.elem_at(pick(rng));
      FieldElem c = F.elem_at(pick(rng));
      REQUIRE(F.add(a, b) == F.add(b, a));
      REQUIRE(F.mul(a, b) == F.mul(b, a));
      REQUIRE(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
      REQUIRE(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
      REQUIRE(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      REQUIRE(F.add(a, F.neg(a)) == F.zero());
      REQUIRE(F.mul(a, F.one()) == a);
      if (!F.is_zero(a)) REQUIRE(F.mul(a, F.inv(a)) == F.one());
    }
  }
}

TEST_CASE("multiplicative group has order q-1", "[ffield]") {
  FieldDesc F = make_field(3, 3);
  for (int64_t i = 1; i < F.q; ++i)
    CHECK(F.pow(F.elem_at(i), F.q - 1) == F.one());
}

TEST_CASE("quadratic character: values, multiplicativity, orthogonality",
          "[ffield]") {
  for (auto [p, k] : {std::pair{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}, {3, 3}, {7, 2}}) {
    FieldDesc F = make_field(p, k);
    CHECK(F.quad_char(F.zero()) == 0);
    CHECK(F.quad_char(F.one()) == 1);

    int64_t plus = 0, minus = 0;
    BigInt total = 0;
    for (int64_t i = 0; i < F.q; ++i) {
      int chi = F.quad_char(F.elem_at(i));
      total += chi;
      if (chi == 1) ++plus;
      if (chi == -1) ++minus;
    }
    CHECK(total == 0);                  // sum over the field vanishes
    CHECK(plus == (F.q - 1) / 2);       // squares and non-squares split evenly
    CHECK(minus == (F.q - 1) / 2);

    // chi(-1) is +1 exactly when q = 1 mod 4.
    CHECK(F.quad_char(F.neg(F.one())) == (F.q % 4 == 1 ? 1 : -1));

    if (F.q <= 49) {
      for (int64_t i = 0; i < F.q; ++i)
        for (int64_t j = 0; j < F.q; ++j) {
          FieldElem a = F.elem_at(i), b = F.elem_at(j);
          REQUIRE(F.quad_char(F.mul(a, b)) == F.quad_char(a) * F.quad_char(b));
        }
    }
  }
}

TEST_CASE("quadratic character on F_9 distinguishes orders 4 and 8",
          "[ffield]") {
  FieldDesc F = make_field(3, 2);
  FieldElem x = F.gen();
  CHECK(F.mul(x, x) == F.neg(F.one()));        // modulus is x^2 + 1
  CHECK(F.quad_char(x) == 1);                  // x has order 4, hence a square
  CHECK(F.quad_char(F.add(x, F.one())) == -1); // x+1 generates the units
}

TEST_CASE("legendre symbol matches the prime-field character", "[ffield]") {
  for (int64_t p : {3, 5, 7, 11, 13}) {
    FieldDesc F = make_field(p, 1);
    for (int64_t a = 0; a < p; ++a)
      CHECK(legendre_symbol(a, p) == F.quad_char(F.from_int(a)));
  }
  CHECK(legendre_symbol(-1, 5) == 1);
  CHECK(legendre_symbol(-1, 7) == -1);
  CHECK(legendre_symbol(14, 7) == 0);
}

TEST_CASE("norm-unit test reduces to residuosity mod p", "[ffield]") {
  CHECK(is_norm_unit(1, 3));
  CHECK_FALSE(is_norm_unit(2, 3));
  CHECK(is_norm_unit(4, 5));
  CHECK_FALSE(is_norm_unit(3, 5));
  CHECK(is_norm_unit(2, 7));       // 2 = 3^2 mod 7
  CHECK_FALSE(is_norm_unit(3, 7));
  CHECK(is_norm_unit(-1, 5));      // -1 = 4 mod 5, a square
  CHECK_FALSE(is_norm_unit(-1, 7));
  CHECK(is_norm_unit(12, 11));     // reduction mod p happens first

  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::bad_argument;
  };
  CHECK(code([] { is_norm_unit(6, 3); }) == ErrorCode::not_a_unit);
  CHECK(code([] { is_norm_unit(1, 2); }) == ErrorCode::even_characteristic);
  CHECK(code([] { is_norm_unit(1, 15); }) == ErrorCode::not_prime);
}

TEST_CASE("least non-residue", "[ffield]") {
  CHECK(least_nonresidue(3) == 2);
  CHECK(least_nonresidue(5) == 2);
  CHECK(least_nonresidue(7) == 3);
  CHECK(least_nonresidue(23) == 5);
}

TEST_CASE("irreducibility test rejects products of coprime-degree factors",
          "[ffield]") {
  // (x^2+1)(x^3+2x^2+1) over F_3 has no roots and no factor of degree
  // dividing 5 properly, so only the x^(p^k) = x condition can expose it.
  detail::Poly composite = {1, 0, 0, 1, 2, 1};
  CHECK_FALSE(detail::poly_is_irreducible(composite, 3));
  CHECK(detail::poly_is_irreducible({1, 0, 1}, 3));
  CHECK(detail::poly_is_irreducible({1, 0, 2, 1}, 3));
  CHECK_FALSE(detail::poly_is_irreducible({0, 0, 1}, 3));  // x^2
  CHECK_FALSE(detail::poly_is_irreducible({2, 0, 1}, 3));  // x^2+2 = (x+1)(x+2)
}

TEST_CASE("extension embeds its prime field", "[ffield]") {
  FieldDesc F9 = make_field(3, 2);
  CHECK(F9.from_int(3) == F9.zero());
  CHECK(F9.from_int(-1) == F9.neg(F9.one()));
  CHECK(F9.from_int(5) == F9.from_int(2));
  // Frobenius fixes the prime field pointwise.
  for (int64_t v = 0; v < 3; ++v)
    CHECK(F9.pow(F9.from_int(v), 3) == F9.from_int(v));
}
