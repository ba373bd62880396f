#pragma once

// Exact arithmetic in F_q, q = p^k with p an odd prime.
//
// Elements are coefficient vectors (constant term first) of residues modulo a
// canonical irreducible monic polynomial: the lexicographically least one of
// degree k, coefficients compared from the constant term upward.  That choice
// pins down one concrete model of F_q so element indices, table dumps and
// test fixtures are reproducible across runs.
//
// On top of the ring operations sit the two multiplicative gadgets everything
// else consumes: the quadratic character chi (values in {-1, 0, +1}) and the
// norm test for units of a ramified quadratic extension, which for odd p is
// just quadratic residuosity of the residue.

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "lmnc/bigint.hpp"
#include "lmnc/errors.hpp"

namespace lmnc {

namespace detail {

// --- machine modular arithmetic (p always fits comfortably in int64) -------

inline int64_t mod_reduce(int64_t a, int64_t p) {
  int64_t r = a % p;
  return r < 0 ? r + p : r;
}

inline int64_t mul_mod(int64_t a, int64_t b, int64_t p) {
  return static_cast<int64_t>(static_cast<__int128>(a) * b % p);
}

inline int64_t pow_mod(int64_t base, int64_t exp, int64_t p) {
  int64_t out = 1 % p;
  base = mod_reduce(base, p);
  while (exp > 0) {
    if (exp & 1) out = mul_mod(out, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1;
  }
  return out;
}

inline int64_t inv_mod(int64_t a, int64_t p) {
  // p prime, a not divisible by p.
  return pow_mod(a, p - 2, p);
}

inline bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// --- dense polynomials over F_p, constant term first -----------------------

using Poly = std::vector<int64_t>;

inline int poly_deg(const Poly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != 0) return i;
  return -1;
}

inline void poly_trim(Poly& a) { a.resize(poly_deg(a) + 1); }

// Remainder of a modulo f (f nonzero, not necessarily monic).
inline Poly poly_mod(Poly a, const Poly& f, int64_t p) {
  const int df = poly_deg(f);
  const int64_t lead_inv = inv_mod(f[df], p);
  for (int i = poly_deg(a); i >= df; --i) {
    if (a[i] == 0) continue;
    const int64_t scale = mul_mod(a[i], lead_inv, p);
    for (int j = 0; j <= df; ++j)
      a[i - df + j] = mod_reduce(a[i - df + j] - mul_mod(scale, f[j], p), p);
  }
  poly_trim(a);
  return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      out[i + j] = mod_reduce(out[i + j] + mul_mod(a[i], b[j], p), p);
  }
  return poly_mod(std::move(out), f, p);
}

inline Poly poly_powmod(Poly base, int64_t exp, const Poly& f, int64_t p) {
  Poly out = {1 % p};
  base = poly_mod(std::move(base), f, p);
  while (exp > 0) {
    if (exp & 1) out = poly_mulmod(out, base, f, p);
    base = poly_mulmod(base, base, f, p);
    exp >>= 1;
  }
  return out;
}

inline Poly poly_gcd(Poly a, Poly b, int64_t p) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const int64_t s = inv_mod(a.back(), p);
    for (auto& c : a) c = mul_mod(c, s, p);
  }
  return a;
}

// Degree-k monic f over F_p is irreducible iff x^(p^k) = x mod f and, for
// every proper divisor d of k, gcd(x^(p^d) - x, f) is constant.  The first
// condition rules out factor degree patterns that avoid every proper divisor
// (e.g. an irreducible quadratic times an irreducible cubic when k = 5); the
// divisor scan rules out repeated or small factors.
inline bool poly_is_irreducible(const Poly& f, int64_t p) {
  const int k = poly_deg(f);
  if (k <= 0) return false;
  if (k == 1) return true;
  // Frobenius chain: frob[d] = x^(p^d) mod f.
  std::vector<Poly> frob(k + 1);
  frob[0] = {0, 1};
  for (int d = 1; d <= k; ++d)
    frob[d] = poly_powmod(frob[d - 1], p, f, p);
  Poly x = poly_mod(Poly{0, 1}, f, p);
  if (frob[k] != x) return false;
  for (int d = 1; d < k; ++d) {
    if (k % d != 0) continue;
    Poly h = frob[d];
    h.resize(std::max<size_t>(h.size(), 2), 0);
    h[1] = mod_reduce(h[1] - 1, p);
    if (poly_deg(poly_gcd(h, f, p)) > 0) return false;
  }
  return true;
}

}  // namespace detail

// Quadratic residue symbol on F_p (Legendre symbol), values -1, 0, +1.
inline int legendre_symbol(int64_t a, int64_t p) {
  a = detail::mod_reduce(a, p);
  if (a == 0) return 0;
  return detail::pow_mod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// Smallest positive non-residue modulo an odd prime; used to build canonical
// non-split diagonal forms.
inline int64_t least_nonresidue(int64_t p) {
  for (int64_t d = 2; d < p; ++d)
    if (legendre_symbol(d, p) == -1) return d;
  throw Error(ErrorCode::invariant_violation,
              "no quadratic non-residue found mod " + std::to_string(p));
}

struct FieldElem {
  // Coefficients of the residue class, constant term first, length k,
  // each in [0, p).
  std::vector<int64_t> c;

  bool operator==(const FieldElem&) const = default;
};

// One concrete model of F_q together with its arithmetic.
struct FieldDesc {
  int64_t p = 0;                    // characteristic, odd prime
  int k = 0;                        // extension degree over F_p
  int64_t q = 0;                    // p^k
  std::vector<int64_t> modulus;     // monic irreducible, length k+1, constant first

  // -- element constructors -------------------------------------------------

  FieldElem zero() const { return FieldElem{std::vector<int64_t>(k, 0)}; }

  FieldElem one() const {
    FieldElem e = zero();
    e.c[0] = 1 % p;
    return e;
  }

  // Image of an integer under Z -> F_p -> F_q.
  FieldElem from_int(int64_t v) const {
    FieldElem e = zero();
    e.c[0] = detail::mod_reduce(v, p);
    return e;
  }

  // The residue class of x; a generator of F_q over F_p when k >= 2.
  FieldElem gen() const {
    require(k >= 2, ErrorCode::bad_argument,
            "prime field has no polynomial generator");
    FieldElem e = zero();
    e.c[1] = 1;
    return e;
  }

  // -- indexing: bijection with [0, q) via base-p digits --------------------

  int64_t index_of(const FieldElem& a) const {
    int64_t idx = 0;
    for (int i = k - 1; i >= 0; --i) idx = idx * p + a.c[i];
    return idx;
  }

  FieldElem elem_at(int64_t idx) const {
    require(0 <= idx && idx < q, ErrorCode::bad_argument,
            "element index out of range");
    FieldElem e = zero();
    for (int i = 0; i < k; ++i) {
      e.c[i] = idx % p;
      idx /= p;
    }
    return e;
  }

  // -- ring operations ------------------------------------------------------

  bool is_zero(const FieldElem& a) const {
    for (int64_t ci : a.c)
      if (ci != 0) return false;
    return true;
  }

  FieldElem add(const FieldElem& a, const FieldElem& b) const {
    FieldElem out = zero();
    for (int i = 0; i < k; ++i) {
      int64_t s = a.c[i] + b.c[i];
      out.c[i] = s >= p ? s - p : s;
    }
    return out;
  }

  FieldElem neg(const FieldElem& a) const {
    FieldElem out = zero();
    for (int i = 0; i < k; ++i) out.c[i] = a.c[i] == 0 ? 0 : p - a.c[i];
    return out;
  }

  FieldElem sub(const FieldElem& a, const FieldElem& b) const {
    return add(a, neg(b));
  }

  FieldElem mul(const FieldElem& a, const FieldElem& b) const {
    detail::Poly prod(2 * k - 1, 0);
    for (int i = 0; i < k; ++i) {
      if (a.c[i] == 0) continue;
      for (int j = 0; j < k; ++j)
        prod[i + j] =
            detail::mod_reduce(prod[i + j] + detail::mul_mod(a.c[i], b.c[j], p), p);
    }
    detail::Poly r = detail::poly_mod(std::move(prod), modulus, p);
    FieldElem out = zero();
    for (size_t i = 0; i < r.size(); ++i) out.c[i] = r[i];
    return out;
  }

  FieldElem sq(const FieldElem& a) const { return mul(a, a); }

  FieldElem pow(FieldElem base, int64_t exp) const {
    require(exp >= 0, ErrorCode::bad_argument, "negative exponent");
    FieldElem out = one();
    while (exp > 0) {
      if (exp & 1) out = mul(out, base);
      base = mul(base, base);
      exp >>= 1;
    }
    return out;
  }

  FieldElem inv(const FieldElem& a) const {
    require(!is_zero(a), ErrorCode::not_a_unit, "inverse of zero");
    return pow(a, q - 2);
  }

  // -- quadratic character --------------------------------------------------

  // chi(0) = 0, chi(square unit) = +1, chi(non-square unit) = -1.
  int quad_char(const FieldElem& a) const {
    if (is_zero(a)) return 0;
    FieldElem e = pow(a, (q - 1) / 2);
    if (e == one()) return 1;
    if (e == neg(one())) return -1;
    throw Error(ErrorCode::invariant_violation,
                "x^((q-1)/2) landed outside {+1,-1}");
  }

  // chi composed with the integer embedding.
  int quad_char_int(int64_t v) const { return quad_char(from_int(v)); }

  std::string to_string(const FieldElem& a) const {
    if (k == 1) return std::to_string(a.c[0]);
    std::string s = "[";
    for (int i = 0; i < k; ++i) {
      if (i) s += ",";
      s += std::to_string(a.c[i]);
    }
    return s + "]";
  }
};

// Construct the canonical model of F_{p^k}.  Rejects even or composite
// characteristic and non-positive degree; refuses q that cannot be indexed by
// int64.
inline FieldDesc make_field(int64_t p, int k) {
  require(p != 2, ErrorCode::even_characteristic,
          "characteristic 2 is outside the scope of this library");
  require(detail::is_prime(p), ErrorCode::not_prime,
          "p = " + std::to_string(p) + " is not prime");
  require(k >= 1, ErrorCode::degenerate_degree,
          "extension degree must be positive");
  BigInt qb = big_pow(p, static_cast<unsigned long>(k));
  require(qb <= BigInt(int64_t(1) << 62), ErrorCode::too_large,
          "q = p^k does not fit the element index type");

  FieldDesc F;
  F.p = p;
  F.k = k;
  F.q = static_cast<int64_t>(qb);
  if (k == 1) {
    F.modulus = {0, 1};  // the polynomial x: residues are constants
    return F;
  }
  // Scan monic degree-k polynomials in lexicographic order of
  // (c_0, c_1, ..., c_{k-1}) and keep the first irreducible one.
  std::vector<int64_t> low(k, 0);
  while (true) {
    detail::Poly f(low.begin(), low.end());
    f.push_back(1);
    if (detail::poly_is_irreducible(f, p)) {
      F.modulus = f;
      return F;
    }
    int i = k - 1;  // last coordinate varies fastest
    while (i >= 0 && low[i] == p - 1) low[i--] = 0;
    require(i >= 0, ErrorCode::invariant_violation,
            "no irreducible polynomial found");  // cannot happen
    ++low[i];
  }
}

// Dense operation tables over element indices, for the inner loops of
// convolution and subspace enumeration where per-element polynomial
// arithmetic would dominate.  Memory is O(q^2), so construction is gated.
struct FieldTables {
  int64_t p = 0;
  int64_t q = 0;
  std::vector<int32_t> add_t, mul_t;   // flat q*q, row-major
  std::vector<int32_t> neg_t, inv_t;   // inv_t[0] = -1 sentinel
  std::vector<int8_t> chi;             // quadratic character by index

  int32_t add(int32_t a, int32_t b) const { return add_t[a * q + b]; }
  int32_t mul(int32_t a, int32_t b) const { return mul_t[a * q + b]; }
  int32_t sub(int32_t a, int32_t b) const { return add_t[a * q + neg_t[b]]; }
  int32_t neg(int32_t a) const { return neg_t[a]; }
  int32_t inv(int32_t a) const {
    require(a != 0, ErrorCode::not_a_unit, "inverse of zero");
    return inv_t[a];
  }
};

inline FieldTables build_tables(const FieldDesc& F) {
  require(F.q <= 1024, ErrorCode::too_large,
          "operation tables limited to q <= 1024 (got q = " +
              std::to_string(F.q) + ")");
  FieldTables T;
  T.p = F.p;
  T.q = F.q;
  std::vector<FieldElem> elems;
  elems.reserve(F.q);
  for (int64_t i = 0; i < F.q; ++i) elems.push_back(F.elem_at(i));
  T.add_t.resize(F.q * F.q);
  T.mul_t.resize(F.q * F.q);
  T.neg_t.resize(F.q);
  T.inv_t.assign(F.q, -1);
  T.chi.resize(F.q);
  for (int64_t a = 0; a < F.q; ++a) {
    T.neg_t[a] = static_cast<int32_t>(F.index_of(F.neg(elems[a])));
    if (a != 0) T.inv_t[a] = static_cast<int32_t>(F.index_of(F.inv(elems[a])));
    T.chi[a] = static_cast<int8_t>(F.quad_char(elems[a]));
    for (int64_t b = 0; b < F.q; ++b) {
      T.add_t[a * F.q + b] =
          static_cast<int32_t>(F.index_of(F.add(elems[a], elems[b])));
      T.mul_t[a * F.q + b] =
          static_cast<int32_t>(F.index_of(F.mul(elems[a], elems[b])));
    }
  }
  return T;
}

// Whether a unit delta of the p-adic integers (given by any integer
// representative coprime to p) is a norm from the ramified quadratic
// extension obtained by adjoining a square root of a uniformizer.  For odd p
// this holds exactly when the residue of delta is a square mod p.
inline bool is_norm_unit(int64_t delta, int64_t p) {
  require(p != 2, ErrorCode::even_characteristic,
          "characteristic 2 is outside the scope of this library");
  require(detail::is_prime(p), ErrorCode::not_prime,
          "p = " + std::to_string(p) + " is not prime");
  const int64_t r = detail::mod_reduce(delta, p);
  require(r != 0, ErrorCode::not_a_unit,
          "delta = " + std::to_string(delta) + " is not a unit at p = " +
              std::to_string(p));
  return legendre_symbol(r, p) == 1;
}

}  // namespace lmnc
