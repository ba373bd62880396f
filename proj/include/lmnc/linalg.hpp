#pragma once

// Small dense linear algebra over F_q, with vectors and matrices holding
// element indices into a FieldTables.  Everything is exact; sizes here are
// tiny (ambient dimension 2n <= 8), so clarity wins over cleverness.

#include <cstdint>
#include <optional>
#include <vector>

#include "lmnc/errors.hpp"
#include "lmnc/ffield.hpp"

namespace lmnc {

using Vec = std::vector<int32_t>;   // element indices
using Mat = std::vector<Vec>;       // list of rows

inline bool is_zero_vec(const Vec& v) {
  for (int32_t x : v)
    if (x != 0) return false;
  return true;
}

inline int32_t dot(const FieldTables& T, const Vec& a, const Vec& b) {
  int32_t s = 0;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s = T.add(s, T.mul(a[i], b[i]));
  return s;
}

inline Vec mat_vec(const FieldTables& T, const Mat& M, const Vec& v) {
  Vec out(M.size(), 0);
  for (size_t r = 0; r < M.size(); ++r) out[r] = dot(T, M[r], v);
  return out;
}

// v as a row vector times M.
inline Vec vec_mat(const FieldTables& T, const Vec& v, const Mat& M) {
  Vec out(M.empty() ? 0 : M[0].size(), 0);
  for (size_t r = 0; r < M.size(); ++r) {
    if (v[r] == 0) continue;
    for (size_t c = 0; c < out.size(); ++c)
      if (M[r][c] != 0) out[c] = T.add(out[c], T.mul(v[r], M[r][c]));
  }
  return out;
}

inline Mat mat_mul(const FieldTables& T, const Mat& A, const Mat& B) {
  Mat out(A.size());
  for (size_t r = 0; r < A.size(); ++r) out[r] = vec_mat(T, A[r], B);
  return out;
}

inline Mat transpose(const Mat& M) {
  if (M.empty()) return {};
  Mat out(M[0].size(), Vec(M.size(), 0));
  for (size_t r = 0; r < M.size(); ++r)
    for (size_t c = 0; c < M[r].size(); ++c) out[c][r] = M[r][c];
  return out;
}

inline Mat identity_mat(size_t m) {
  Mat out(m, Vec(m, 0));
  for (size_t i = 0; i < m; ++i) out[i][i] = 1;
  return out;
}

inline void scale_row(const FieldTables& T, Vec& row, int32_t s) {
  for (auto& x : row) x = T.mul(x, s);
}

// row -= s * other
inline void axpy_row(const FieldTables& T, Vec& row, int32_t s,
                     const Vec& other) {
  if (s == 0) return;
  for (size_t c = 0; c < row.size(); ++c)
    if (other[c] != 0) row[c] = T.sub(row[c], T.mul(s, other[c]));
}

// Reduced row echelon form with zero rows dropped: the canonical
// representative of the row space.
inline Mat rref(const FieldTables& T, Mat M) {
  size_t row = 0;
  const size_t cols = M.empty() ? 0 : M[0].size();
  for (size_t col = 0; col < cols && row < M.size(); ++col) {
    size_t pivot = row;
    while (pivot < M.size() && M[pivot][col] == 0) ++pivot;
    if (pivot == M.size()) continue;
    std::swap(M[row], M[pivot]);
    scale_row(T, M[row], T.inv(M[row][col]));
    for (size_t r = 0; r < M.size(); ++r)
      if (r != row) axpy_row(T, M[r], M[r][col], M[row]);
    ++row;
  }
  M.resize(row);
  return M;
}

inline int rank_of(const FieldTables& T, const Mat& M) {
  return static_cast<int>(rref(T, M).size());
}

// Remainder of v after elimination against rows already in RREF.
inline Vec reduce_row(const FieldTables& T, const Mat& rref_rows, Vec v) {
  for (const Vec& r : rref_rows) {
    size_t piv = 0;
    while (piv < r.size() && r[piv] == 0) ++piv;
    if (piv < r.size() && v[piv] != 0) axpy_row(T, v, v[piv], r);
  }
  return v;
}

inline bool in_span(const FieldTables& T, const Mat& rref_rows, const Vec& v) {
  return is_zero_vec(reduce_row(T, rref_rows, v));
}

// Solve A x = b; empty optional when inconsistent.
inline std::optional<Vec> solve_linear(const FieldTables& T, const Mat& A,
                                       const Vec& b) {
  const size_t rows = A.size();
  const size_t cols = rows == 0 ? 0 : A[0].size();
  Mat aug(rows, Vec(cols + 1, 0));
  for (size_t r = 0; r < rows; ++r) {
    std::copy(A[r].begin(), A[r].end(), aug[r].begin());
    aug[r][cols] = b[r];
  }
  aug = rref(T, aug);
  Vec x(cols, 0);
  for (const Vec& r : aug) {
    size_t piv = 0;
    while (piv <= cols && r[piv] == 0) ++piv;
    if (piv == cols) return std::nullopt;  // 0 = nonzero
    // Free variables stay 0, so the pivot value is just the RHS entry.
    x[piv] = r[cols];
  }
  return x;
}

inline std::optional<Mat> inverse(const FieldTables& T, const Mat& A) {
  const size_t m = A.size();
  Mat aug(m, Vec(2 * m, 0));
  for (size_t r = 0; r < m; ++r) {
    std::copy(A[r].begin(), A[r].end(), aug[r].begin());
    aug[r][m + r] = 1;
  }
  aug = rref(T, aug);
  if (aug.size() < m) return std::nullopt;
  for (size_t r = 0; r < m; ++r)
    for (size_t c = 0; c < m; ++c)
      if ((aug[r][c] != 0) != (r == c) || (r == c && aug[r][c] != 1))
        return std::nullopt;
  Mat inv(m, Vec(m, 0));
  for (size_t r = 0; r < m; ++r)
    std::copy(aug[r].begin() + m, aug[r].end(), inv[r].begin());
  return inv;
}

}  // namespace lmnc
