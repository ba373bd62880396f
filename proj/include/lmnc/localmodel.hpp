#pragma once

// Moduli enumeration on the special fiber attached to a Hermitian datum.
//
// The ambient space is Lambda = F_q^{2n} with coordinates ordered as
// (x_1..x_n | y_1..y_n).  It carries a square-zero nilpotent operator J of
// rank n (canonically x_i -> y_i, y_i -> 0) and a nondegenerate alternating
// form Psi (canonically [[0, -2C], [2C, 0]] with C = diag(c_i) built from
// the datum's diagonal).  The induced pairing {u, v} = Psi(Ju, v) is
// symmetric and restricts to a nondegenerate symmetric form on im J, whose
// projectivised zero locus is the residual quadric.
//
// Points of the fiber are the n-dimensional subspaces F with
//   (i)   Psi(F, F) = 0,
//   (ii)  J F <= F,
//   (iii) rank(J|_F) <= 1.
// The resolved space consists of pairs (F, F0) with F0 <= F a line such
// that J F <= F0 and J F0 = 0.  All routines work with any ambient that
// passes validate_ambient, not just the canonical one, so results can be
// cross-checked under a change of basis.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "lmnc/bigint.hpp"
#include "lmnc/errors.hpp"
#include "lmnc/ffield.hpp"
#include "lmnc/hermitian.hpp"
#include "lmnc/linalg.hpp"

namespace lmnc {

inline BigInt projective_space_count(int64_t q, int n) {
  // |P^{n-1}(F_q)| = (q^n - 1)/(q - 1)
  return (big_pow(BigInt(q), static_cast<unsigned long>(n)) - 1) / (q - 1);
}

inline BigInt lagrangian_count(int64_t q, int n) {
  // number of Lagrangian n-subspaces of a 2n-dim symplectic space,
  // prod_{i=1}^{n} (q^i + 1) * q^{n(n-1)/2} would count all of them; we use
  // the product part alone as a conservative work estimate for the
  // pattern-pruned search below.
  BigInt out = 1;
  for (int i = 1; i <= n; ++i) out *= big_pow(BigInt(q), i) + 1;
  return out;
}

struct SpecialFiberAmbient {
  FieldDesc F;
  FieldTables T;
  HermitianDatum datum;
  int n = 0;
  Mat J;    // 2n x 2n, square-zero, rank n
  Mat Psi;  // 2n x 2n, alternating, nondegenerate
};

// psi(u, v) = u^T Psi v
inline int32_t psi_value(const SpecialFiberAmbient& A, const Vec& u,
                         const Vec& v) {
  return dot(A.T, vec_mat(A.T, u, A.Psi), v);
}

// Canonical RREF basis of im J.
inline Mat image_of_J_basis(const SpecialFiberAmbient& A) {
  return rref(A.T, transpose(A.J));  // columns of J span the image
}

// Quadratic value {v, v} = psi(w, v) for w = Jv, evaluated on w in im J via
// any preimage; well defined because psi(im J, ker J) = 0.
inline int32_t quadric_value_on_image(const SpecialFiberAmbient& A,
                                      const Vec& w) {
  auto v = solve_linear(A.T, A.J, w);
  require(v.has_value(), ErrorCode::invariant_violation,
          "vector is not in the image of J");
  return psi_value(A, w, *v);
}

inline void validate_ambient(const SpecialFiberAmbient& A) {
  const size_t m = 2 * static_cast<size_t>(A.n);
  require(A.J.size() == m && A.Psi.size() == m, ErrorCode::bad_argument,
          "ambient matrices must be 2n x 2n");
  for (const auto& r : A.J)
    require(r.size() == m, ErrorCode::bad_argument, "J is not square");
  for (const auto& r : A.Psi)
    require(r.size() == m, ErrorCode::bad_argument, "Psi is not square");

  // (1) J^2 = 0 and rank J = n
  Mat J2 = mat_mul(A.T, A.J, A.J);
  for (const auto& r : J2)
    require(is_zero_vec(r), ErrorCode::invariant_violation,
            "J squared is nonzero");
  require(rank_of(A.T, A.J) == A.n, ErrorCode::invariant_violation,
          "J does not have rank n");

  // (2) Psi alternating and nondegenerate
  for (size_t i = 0; i < m; ++i) {
    require(A.Psi[i][i] == 0, ErrorCode::invariant_violation,
            "Psi has a nonzero diagonal entry");
    for (size_t j = 0; j < m; ++j)
      require(A.Psi[i][j] == A.T.neg(A.Psi[j][i]),
              ErrorCode::invariant_violation, "Psi is not antisymmetric");
  }
  require(rank_of(A.T, A.Psi) == 2 * A.n, ErrorCode::invariant_violation,
          "Psi is degenerate");

  // (3) {u, v} = Psi(Ju, v) symmetric, i.e. J^T Psi is symmetric
  Mat S = mat_mul(A.T, transpose(A.J), A.Psi);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j)
      require(S[i][j] == S[j][i], ErrorCode::invariant_violation,
              "Psi(Ju, v) is not symmetric");

  // (4) the induced symmetric form on im J is nondegenerate
  Mat img = image_of_J_basis(A);
  Mat gram(img.size(), Vec(img.size(), 0));
  std::vector<Vec> pre;
  for (const auto& w : img) {
    auto v = solve_linear(A.T, A.J, w);
    require(v.has_value(), ErrorCode::invariant_violation,
            "inconsistent image basis");
    pre.push_back(*v);
  }
  for (size_t i = 0; i < img.size(); ++i)
    for (size_t j = 0; j < img.size(); ++j)
      gram[i][j] = psi_value(A, img[i], pre[j]);
  require(rank_of(A.T, gram) == A.n, ErrorCode::invariant_violation,
          "induced form on im J is degenerate");
}

inline SpecialFiberAmbient make_ambient_raw(const FieldDesc& F,
                                            const HermitianDatum& d, Mat J,
                                            Mat Psi) {
  require(F.p == d.p, ErrorCode::bad_argument,
          "field characteristic does not match the datum");
  SpecialFiberAmbient A{F, build_tables(F), d, d.n(), std::move(J),
                        std::move(Psi)};
  validate_ambient(A);
  return A;
}

inline SpecialFiberAmbient build_ambient(const HermitianDatum& d,
                                         const FieldDesc& F) {
  const int n = d.n();
  const size_t m = 2 * static_cast<size_t>(n);
  Mat J(m, Vec(m, 0)), Psi(m, Vec(m, 0));
  FieldTables T = build_tables(F);
  const int32_t two = F.index_of(F.from_int(2));
  for (int i = 0; i < n; ++i) {
    J[n + i][i] = 1;  // x_i -> y_i
    const int32_t ci = F.index_of(F.from_int(d.diag[i]));
    const int32_t tc = T.mul(two, ci);
    Psi[i][n + i] = T.neg(tc);  // psi(x_i, y_i) = -2 c_i
    Psi[n + i][i] = tc;
  }
  SpecialFiberAmbient A{F, std::move(T), d, n, std::move(J), std::move(Psi)};
  validate_ambient(A);
  return A;
}

struct SubspaceBasis {
  Mat rows;  // canonical RREF, zero rows dropped
  int dim() const { return static_cast<int>(rows.size()); }
  auto operator<=>(const SubspaceBasis&) const = default;
};

struct BlowupPair {
  SubspaceBasis big;   // the n-dimensional member
  SubspaceBasis line;  // the marked line inside it
  auto operator<=>(const BlowupPair&) const = default;
};

// Independent re-check of the three fiber conditions, used both as a
// post-hoc audit inside the enumerator and directly by tests.
inline bool verify_fiber_subspace(const SpecialFiberAmbient& A,
                                  const SubspaceBasis& S) {
  if (S.dim() != A.n) return false;
  if (rref(A.T, S.rows) != S.rows) return false;
  for (int i = 0; i < A.n; ++i)
    for (int j = i; j < A.n; ++j)
      if (psi_value(A, S.rows[i], S.rows[j]) != 0) return false;
  Mat images;
  for (const auto& r : S.rows) {
    Vec img = mat_vec(A.T, A.J, r);
    if (!in_span(A.T, S.rows, img)) return false;
    images.push_back(std::move(img));
  }
  return rank_of(A.T, images) <= 1;
}

inline bool verify_blowup_pair(const SpecialFiberAmbient& A,
                               const BlowupPair& P) {
  if (P.line.dim() != 1 || is_zero_vec(P.line.rows[0])) return false;
  if (!verify_fiber_subspace(A, P.big)) return false;
  if (!in_span(A.T, P.big.rows, P.line.rows[0])) return false;
  if (!is_zero_vec(mat_vec(A.T, A.J, P.line.rows[0]))) return false;
  for (const auto& r : P.big.rows)
    if (!in_span(A.T, P.line.rows, mat_vec(A.T, A.J, r))) return false;
  return true;
}

namespace detail {

inline void check_enumeration_scale(const SpecialFiberAmbient& A) {
  require(A.F.k <= 2, ErrorCode::too_large,
          "fiber enumeration supports ground and quadratic extensions only");
  const int max_n = A.F.p == 3 ? 4 : 3;
  require(A.n <= max_n, ErrorCode::too_large,
          "fiber enumeration rank guard exceeded");
  require(lagrangian_count(A.F.q, A.n) <= BigInt(100000000),
          ErrorCode::too_large, "fiber enumeration work estimate too large");
}

// Is u a scalar multiple of the nonzero vector w?
inline bool is_multiple_of(const FieldTables& T, const Vec& u, const Vec& w) {
  size_t lead = 0;
  while (lead < w.size() && w[lead] == 0) ++lead;
  const int32_t lambda = T.mul(u[lead], T.inv(w[lead]));
  for (size_t c = 0; c < w.size(); ++c)
    if (u[c] != T.mul(lambda, w[c])) return false;
  return true;
}

// Depth-first search over one RREF pivot pattern.  Rows are produced
// directly in canonical reduced form: row a has 1 at pattern[a], zeros at
// the other pivot columns and at columns left of its pivot, and free
// entries elsewhere.  Isotropy against earlier rows and the rank bound on
// J-images prune each row as soon as it is complete; the span condition
// J F <= F needs the full basis and is checked at the leaves.
struct PatternSearch {
  const SpecialFiberAmbient& A;
  std::vector<int> pattern;
  std::vector<std::vector<int>> free_cols;  // per row
  Mat rows;        // current partial basis
  Mat psi_rows;    // psi_rows[a] = rows[a]^T Psi, for fast isotropy tests
  Mat j_images;    // j_images[a] = J rows[a]
  std::vector<SubspaceBasis>& out;

  PatternSearch(const SpecialFiberAmbient& amb, std::vector<int> pat,
                std::vector<SubspaceBasis>& sink)
      : A(amb), pattern(std::move(pat)), out(sink) {
    const size_t m = 2 * static_cast<size_t>(A.n);
    free_cols.resize(A.n);
    for (int a = 0; a < A.n; ++a)
      for (int c = pattern[a] + 1; c < static_cast<int>(m); ++c)
        if (std::find(pattern.begin(), pattern.end(), c) == pattern.end())
          free_cols[a].push_back(c);
    rows.assign(A.n, Vec(m, 0));
  }

  // The rank-1 representative among j_images[0..a], or nullptr.
  const Vec* rank_rep(int a) const {
    for (int b = 0; b <= a; ++b)
      if (!is_zero_vec(j_images[b])) return &j_images[b];
    return nullptr;
  }

  bool row_admissible(int a) {
    Vec img = mat_vec(A.T, A.J, rows[a]);
    if (!is_zero_vec(img)) {
      if (const Vec* rep = rank_rep(a - 1); rep != nullptr)
        if (!is_multiple_of(A.T, img, *rep)) return false;
    }
    for (int b = 0; b < a; ++b)
      if (dot(A.T, psi_rows[b], rows[a]) != 0) return false;
    j_images.push_back(std::move(img));
    psi_rows.push_back(vec_mat(A.T, rows[a], A.Psi));
    return true;
  }

  void leaf() {
    for (const auto& img : j_images)
      if (!in_span(A.T, rows, img)) return;
    SubspaceBasis S{rows};
    require(verify_fiber_subspace(A, S), ErrorCode::invariant_violation,
            "enumerator produced a basis that fails re-verification");
    out.push_back(std::move(S));
  }

  void descend(int a) {
    if (a == A.n) {
      leaf();
      return;
    }
    const auto& fc = free_cols[a];
    Vec& row = rows[a];
    std::fill(row.begin(), row.end(), 0);
    row[pattern[a]] = 1;
    std::vector<int32_t> digits(fc.size(), 0);
    const int32_t q = static_cast<int32_t>(A.F.q);
    while (true) {
      if (row_admissible(a)) {
        descend(a + 1);
        j_images.pop_back();
        psi_rows.pop_back();
      }
      bool advanced = false;
      for (size_t d = fc.size(); d-- > 0;) {
        if (++digits[d] < q) {
          row[fc[d]] = digits[d];
          advanced = true;
          break;
        }
        digits[d] = 0;
        row[fc[d]] = 0;
      }
      if (!advanced) break;
    }
  }
};

inline std::vector<std::vector<int>> pivot_patterns(int n) {
  // all increasing n-subsets of {0, ..., 2n-1}, lexicographic
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n);
  for (int i = 0; i < n; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = n - 1;
    while (i >= 0 && cur[i] == 2 * n - n + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < n; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

}  // namespace detail

inline std::vector<SubspaceBasis> enumerate_special_fiber(
    const SpecialFiberAmbient& A, int jobs = 1) {
  require(jobs >= 1, ErrorCode::bad_argument, "jobs must be at least 1");
  detail::check_enumeration_scale(A);
  auto patterns = detail::pivot_patterns(A.n);
  std::vector<std::vector<SubspaceBasis>> slots(patterns.size());
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (size_t i = next.fetch_add(1); i < patterns.size();
         i = next.fetch_add(1)) {
      detail::PatternSearch search(A, patterns[i], slots[i]);
      search.descend(0);
    }
  };
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  std::vector<SubspaceBasis> out;
  for (auto& s : slots)
    for (auto& b : s) out.push_back(std::move(b));
  std::sort(out.begin(), out.end());
  return out;
}

// Points where J restricts to zero, i.e. F <= ker J.
inline std::vector<SubspaceBasis> find_singular_locus(
    const std::vector<SubspaceBasis>& points, const SpecialFiberAmbient& A) {
  std::vector<SubspaceBasis> out;
  for (const auto& S : points) {
    bool all_zero = true;
    for (const auto& r : S.rows)
      if (!is_zero_vec(mat_vec(A.T, A.J, r))) {
        all_zero = false;
        break;
      }
    if (all_zero) out.push_back(S);
  }
  return out;
}

// Every (F, F0) with F in the fiber, F0 <= F a line, J F <= F0, J F0 = 0.
// Each line of each F is tested directly against both conditions.
inline std::vector<BlowupPair> enumerate_blowup(const SpecialFiberAmbient& A,
                                                int jobs = 1) {
  auto fiber = enumerate_special_fiber(A, jobs);
  const int32_t q = static_cast<int32_t>(A.F.q);
  std::vector<BlowupPair> out;
  for (const auto& S : fiber) {
    // projective representatives: leading coefficient 1
    for (int lead = 0; lead < A.n; ++lead) {
      Vec coeff(A.n, 0);
      coeff[lead] = 1;
      const int tail = A.n - 1 - lead;
      std::vector<int32_t> digits(tail, 0);
      while (true) {
        for (int i = 0; i < tail; ++i) coeff[lead + 1 + i] = digits[i];
        Vec gen = vec_mat(A.T, coeff, S.rows);
        bool ok = is_zero_vec(mat_vec(A.T, A.J, gen));
        if (ok) {
          Mat line{gen};
          for (const auto& r : S.rows)
            if (!in_span(A.T, line, mat_vec(A.T, A.J, r))) {
              ok = false;
              break;
            }
          if (ok) {
            BlowupPair P{S, SubspaceBasis{std::move(line)}};
            require(verify_blowup_pair(A, P), ErrorCode::invariant_violation,
                    "resolved-space enumerator failed re-verification");
            out.push_back(std::move(P));
          }
        }
        int d = tail;
        bool done = true;
        while (d > 0) {
          --d;
          if (++digits[d] < q) {
            done = false;
            break;
          }
          digits[d] = 0;
        }
        if (tail == 0 || done) break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct StrataCounts {
  BigInt exceptional = 0;    // pairs with F equal to im J
  BigInt bundle = 0;         // pairs whose marked line is isotropic
  BigInt intersection = 0;   // both of the above
  BigInt off_strata = 0;     // neither; expected to be empty
  BigInt total = 0;
};

inline StrataCounts stratify_blowup(const std::vector<BlowupPair>& pairs,
                                    const SpecialFiberAmbient& A) {
  const Mat img = image_of_J_basis(A);
  StrataCounts c;
  for (const auto& P : pairs) {
    const bool over_singular = P.big.rows == img;
    // every marked line lies in ker J = im J, so the quadric value applies
    const bool isotropic =
        quadric_value_on_image(A, P.line.rows[0]) == 0;
    if (over_singular) c.exceptional += 1;
    if (isotropic) c.bundle += 1;
    if (over_singular && isotropic) c.intersection += 1;
    if (!over_singular && !isotropic) c.off_strata += 1;
    c.total += 1;
  }
  return c;
}

}  // namespace lmnc
