#pragma once

// Diagonal hermitian lattice data over the ramified quadratic extension of
// Q_p and their discriminant invariants.
//
// A datum is a diagonal matrix of p-adic units.  Its class (split or
// non-split) is decided by whether the discriminant
// (-1)^{n(n-1)/2} det  is a norm, which for odd p means: a square mod p.
// The sign epsilon attached to the middle nearby-cycle eigenvalue is derived
// from the class: it exists only for even n, equals +1 when n = 2, and
// follows the split/non-split dichotomy for even n >= 4.
//
// Reducing the diagonal mod p yields the residual quadric; for even n its
// projective classification must agree with the hermitian one, and the
// library actively cross-checks that.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lmnc/bigint.hpp"
#include "lmnc/errors.hpp"
#include "lmnc/ffield.hpp"
#include "lmnc/quadric.hpp"

namespace lmnc {

enum class HermitianClass { split, nonsplit };

inline const char* to_string(HermitianClass c) {
  return c == HermitianClass::split ? "split" : "nonsplit";
}

struct HermitianDatum {
  int64_t p = 0;                // odd prime, ramified below the extension
  std::vector<int64_t> diag;    // diagonal entries, units at p

  int n() const { return static_cast<int>(diag.size()); }
};

inline HermitianDatum make_hermitian(int64_t p, std::vector<int64_t> diag) {
  require(p != 2, ErrorCode::even_characteristic,
          "characteristic 2 is outside the scope of this library");
  require(detail::is_prime(p), ErrorCode::not_prime,
          "p = " + std::to_string(p) + " is not prime");
  require(diag.size() >= 2, ErrorCode::bad_argument,
          "hermitian datum needs dimension n >= 2");
  for (size_t i = 0; i < diag.size(); ++i)
    require(diag[i] % p != 0, ErrorCode::not_a_unit,
            "diagonal entry #" + std::to_string(i) + " = " +
                std::to_string(diag[i]) + " is not a unit at p");
  return HermitianDatum{p, std::move(diag)};
}

// (-1)^{n(n-1)/2} times the product of the diagonal, as an exact integer.
inline BigInt hermitian_discriminant(const HermitianDatum& d) {
  BigInt disc = (d.n() * (d.n() - 1) / 2) % 2 == 1 ? -1 : 1;
  for (int64_t c : d.diag) disc *= c;
  return disc;
}

inline HermitianClass classify_hermitian(const HermitianDatum& d) {
  const BigInt disc = hermitian_discriminant(d);
  const int64_t r = static_cast<int64_t>(disc % d.p);  // sign handled below
  return is_norm_unit(r, d.p) ? HermitianClass::split
                              : HermitianClass::nonsplit;
}

// The Frobenius sign on the middle nearby-cycle eigenvalue: absent for odd
// n, forced to +1 for n = 2, and the split/non-split sign for even n >= 4.
inline std::optional<int> epsilon_of(const HermitianDatum& d) {
  if (d.n() % 2 == 1) return std::nullopt;
  if (d.n() == 2) return 1;
  return classify_hermitian(d) == HermitianClass::split ? 1 : -1;
}

// Canonical representative of each class:
//   even n = 2m, split:      (1,...,1, -1,...,-1)        m ones, m minus ones
//   even n = 2m, non-split:  (1,...,1, -1,...,-1, -delta) with m ones
//   odd n:                   (1,...,1), last entry bumped to delta if needed
// where delta is the least non-residue mod p.
inline HermitianDatum canonical_hermitian(int64_t p, int n,
                                          HermitianClass want) {
  require(n >= 2, ErrorCode::bad_argument,
          "hermitian datum needs dimension n >= 2");
  std::vector<int64_t> diag(n, 1);
  if (n % 2 == 0) {
    for (int i = n / 2; i < n; ++i) diag[i] = -1;
    if (want == HermitianClass::nonsplit)
      diag[n - 1] = -least_nonresidue(p);
  }
  HermitianDatum d = make_hermitian(p, std::move(diag));
  if (n % 2 == 1 && classify_hermitian(d) != want)
    d.diag[n - 1] = least_nonresidue(p);
  require(classify_hermitian(d) == want, ErrorCode::epsilon_mismatch,
          "canonical datum failed to classify as requested");
  return d;
}

// The residual quadric: same diagonal, read over the degree-k residue
// extension.  For even n the projective classification over the prime field
// must reproduce the hermitian classification; a disagreement would mean the
// two discriminant conventions drifted apart, and is flagged loudly.
struct ResidualQuadric {
  FieldDesc F;
  std::vector<int64_t> coeffs;
  std::optional<QuadricClass> quadric_class;  // defined for even n
};

inline ResidualQuadric residual_quadric(const HermitianDatum& d, int k = 1) {
  ResidualQuadric R;
  R.F = make_field(d.p, k);
  R.coeffs = d.diag;
  if (d.n() % 2 == 0) {
    const FieldDesc Fp = make_field(d.p, 1);
    const QuadricClass over_prime = classify_diagonal_form(Fp, d.diag);
    const HermitianClass h = classify_hermitian(d);
    require((over_prime == QuadricClass::split) ==
                (h == HermitianClass::split),
            ErrorCode::classification_mismatch,
            "residual quadric class disagrees with hermitian class");
    R.quadric_class = classify_diagonal_form(R.F, d.diag);
  }
  return R;
}

}  // namespace lmnc
