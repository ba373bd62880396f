#pragma once

// Weight bookkeeping for the cohomology of the special fiber and the two
// pages of its monodromy-filtration spectral sequence.
//
// All modules here are free over a coefficient ring in which p and 2 are
// invertible.  A class is a named generator together with its Frobenius
// eigenvalue, recorded as sign * p^exponent; the k-power Frobenius then
// acts by sign^k * p^(exponent k).  Differentials are integer matrices in
// the chosen bases, and every elimination step below checks that its
// pivots are (up to sign) powers of two, so rank and kernel computations
// remain valid over Z/l^r for every odd prime l.
//
// Spaces involved, for a rank-n datum with residual quadric Q in P^{n-1}:
//   - the exceptional component, isomorphic to P^{n-1};
//   - the quadric Q itself, of dimension n-2;
//   - the bundle component, a P^1-bundle over Q.
// The first page has three columns  a = -1, 0, +1  and rows b:
//   H^{b-2}(Q)(-1) --phi--> H^b(P^{n-1}) (+) H^b(Q) --psi--> H^b(Q)
// with phi(x) = (-g(x), r g(x')) forced by psi . phi = 0, where g is the
// Gysin map and r the restriction; concretely, cup product with the cycle
// class of the degree-2 hypersurface Q sends h^j to 2 h^{j+1}, and kills
// the primitive middle class.

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lmnc/bigint.hpp"
#include "lmnc/errors.hpp"
#include "lmnc/hermitian.hpp"
#include "lmnc/localmodel.hpp"

namespace lmnc {

struct FrobWeight {
  int sign = 1;       // +1 or -1
  long exponent = 0;  // Frobenius eigenvalue is sign * p^exponent
  int twist = 0;      // number of Tate twists applied (display only)
  auto operator<=>(const FrobWeight&) const = default;
};

inline FrobWeight tate_twist(FrobWeight w) {
  w.exponent += 1;
  w.twist += 1;
  return w;
}

// Eigenvalue of the k-power Frobenius.
inline BigInt frob_power_eigenvalue(const FrobWeight& w, int64_t p, int k) {
  require(k >= 1, ErrorCode::bad_argument, "Frobenius power must be positive");
  BigInt v = big_pow(BigInt(p), static_cast<unsigned long>(w.exponent * k));
  return (w.sign < 0 && k % 2 == 1) ? -v : v;
}

struct WeightedClass {
  std::string label;
  FrobWeight weight;
  auto operator<=>(const WeightedClass&) const = default;
};

inline std::string class_display(const WeightedClass& c) {
  std::ostringstream os;
  os << c.label;
  if (c.weight.twist > 0) os << "(-" << c.weight.twist << ")";
  os << "[" << (c.weight.sign < 0 ? "-" : "") << "p^" << c.weight.exponent
     << "]";
  return os.str();
}

// degree -> basis of that cohomology group
using DegreeTable = std::map<int, std::vector<WeightedClass>>;

inline DegreeTable cohomology_projective_space(int dim) {
  require(dim >= 0, ErrorCode::bad_argument,
          "projective space dimension must be nonnegative");
  DegreeTable t;
  for (int j = 0; j <= dim; ++j)
    t[2 * j] = {WeightedClass{"h^" + std::to_string(j), {1, j, 0}}};
  return t;
}

// Smooth quadric of dimension n-2 inside P^{n-1}.  For even n the middle
// group picks up a rank-one primitive part with eigenvalue eps * p^{(n-2)/2};
// for odd n there is no primitive part and eps must be passed as 0.
inline DegreeTable cohomology_quadric(int n, int eps) {
  require(n >= 3, ErrorCode::bad_argument,
          "quadric cohomology needs dimension at least 1");
  if (n % 2 == 0)
    require(eps == 1 || eps == -1, ErrorCode::epsilon_mismatch,
            "even rank requires a sign attached to the datum");
  else
    require(eps == 0, ErrorCode::epsilon_mismatch,
            "odd rank carries no sign; pass 0");
  const int d = n - 2;
  DegreeTable t;
  for (int j = 0; 2 * j <= 2 * d; ++j)
    t[2 * j] = {WeightedClass{"h^" + std::to_string(j), {1, j, 0}}};
  if (d % 2 == 0)
    t[d].push_back(WeightedClass{"prim", {eps, d / 2, 0}});
  return t;
}

// H^*(total space) of a P^1-bundle: H^b(base) (+) H^{b-2}(base)(-1), the
// second summand marked by the relative hyperplane class z.
inline DegreeTable cohomology_p1_bundle(const DegreeTable& base) {
  DegreeTable t = base;
  for (const auto& [deg, classes] : base)
    for (const auto& c : classes)
      t[deg + 2].push_back(WeightedClass{"z*" + c.label, tate_twist(c.weight)});
  return t;
}

inline BigInt alternating_trace(const DegreeTable& t, int64_t p, int k) {
  BigInt out = 0;
  for (const auto& [deg, classes] : t)
    for (const auto& c : classes) {
      BigInt v = frob_power_eigenvalue(c.weight, p, k);
      out += (deg % 2 == 0) ? v : -v;
    }
  return out;
}

// ---------------------------------------------------------------------------
// First page, in both published shapes.

// Component shape: middle column lists both components separately.
struct ComponentPage {
  int64_t p = 0;
  int n = 0, eps = 0;
  // (a, b) -> basis; missing key means the entry is zero
  std::map<std::pair<int, int>, std::vector<WeightedClass>> cells;
};

// Restricted shape: middle column is H^b(P^{n-1}) (+) H^b(Q), with the
// explicit integer differentials of each row.
struct PageRow {
  int b = 0;
  std::vector<WeightedClass> left, middle, right;  // a = -1, 0, +1
  std::vector<std::vector<long>> d_left;  // |middle| x |left|
  std::vector<std::vector<long>> d_mid;   // |right| x |middle|
};

struct FirstPage {
  int64_t p = 0;
  int n = 0, eps = 0;
  std::vector<PageRow> rows;  // indexed by b = 0 .. 2(n-1)
};

namespace detail {

inline std::vector<WeightedClass> prefixed(const std::string& prefix,
                                           const DegreeTable& t, int deg,
                                           int twists = 0) {
  std::vector<WeightedClass> out;
  auto it = t.find(deg);
  if (it == t.end()) return out;
  for (auto c : it->second) {
    for (int i = 0; i < twists; ++i) c.weight = tate_twist(c.weight);
    c.label = prefix + c.label;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace detail

inline void check_rank_and_sign(int n, int eps) {
  require(n >= 3, ErrorCode::bad_argument,
          "the page construction needs rank at least 3");
  if (n % 2 == 0)
    require(eps == 1 || eps == -1, ErrorCode::epsilon_mismatch,
            "even rank requires a sign attached to the datum");
  else
    require(eps == 0, ErrorCode::epsilon_mismatch,
            "odd rank carries no sign; pass 0");
}

inline ComponentPage build_first_page_components(int n, int eps, int64_t p) {
  check_rank_and_sign(n, eps);
  ComponentPage page{p, n, eps, {}};
  const DegreeTable P = cohomology_projective_space(n - 1);
  const DegreeTable Q = cohomology_quadric(n, eps);
  const DegreeTable B = cohomology_p1_bundle(Q);
  for (int b = 0; b <= 2 * (n - 1); ++b) {
    auto left = detail::prefixed("Q:", Q, b - 2, 1);
    auto mid = detail::prefixed("Z1:", P, b);
    for (auto& c : detail::prefixed("Z2:", B, b)) mid.push_back(c);
    auto right = detail::prefixed("Q:", Q, b);
    if (!left.empty()) page.cells[{-1, b}] = std::move(left);
    if (!mid.empty()) page.cells[{0, b}] = std::move(mid);
    if (!right.empty()) page.cells[{1, b}] = std::move(right);
  }
  return page;
}

inline FirstPage build_first_page_restricted(int n, int eps, int64_t p) {
  check_rank_and_sign(n, eps);
  FirstPage page{p, n, eps, {}};
  const DegreeTable P = cohomology_projective_space(n - 1);
  const DegreeTable Q = cohomology_quadric(n, eps);
  for (int b = 0; b <= 2 * (n - 1); ++b) {
    PageRow row;
    row.b = b;
    row.left = detail::prefixed("Q:", Q, b - 2, 1);
    row.middle = detail::prefixed("Z1:", P, b);
    for (auto& c : detail::prefixed("Q:", Q, b)) row.middle.push_back(c);
    row.right = detail::prefixed("Q:", Q, b);

    // phi(x) = (-gysin(x), restrict . gysin(x')): cup with the cycle class
    // of a degree-2 hypersurface doubles and raises h-powers; the
    // primitive class is killed by the Gysin map.
    row.d_left.assign(row.middle.size(),
                      std::vector<long>(row.left.size(), 0));
    for (size_t j = 0; j < row.left.size(); ++j) {
      const std::string& src = row.left[j].label;
      if (src == "Q:prim") continue;
      for (size_t i = 0; i < row.middle.size(); ++i) {
        const std::string& dst = row.middle[i].label;
        const std::string power = src.substr(4);  // strip "Q:h^"
        const std::string up = std::to_string(std::stoi(power) + 1);
        if (dst == "Z1:h^" + up || dst == "Q:h^" + up) row.d_left[i][j] = -2;
      }
    }

    // psi(x, y) = -restrict(x) + y
    row.d_mid.assign(row.right.size(),
                     std::vector<long>(row.middle.size(), 0));
    for (size_t j = 0; j < row.middle.size(); ++j) {
      const std::string& src = row.middle[j].label;
      for (size_t i = 0; i < row.right.size(); ++i) {
        const std::string& dst = row.right[i].label;
        if (src == "Z1:" + dst.substr(2)) row.d_mid[i][j] = -1;
        if (src == dst) row.d_mid[i][j] = 1;
      }
    }
    page.rows.push_back(std::move(row));
  }
  return page;
}

// ---------------------------------------------------------------------------
// Exact elimination valid over Z/l^r for every odd l.

namespace detail {

inline bool is_pm_power_of_two(const BigRat& x) {
  if (x == 0) return false;
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  if (num < 0) num = -num;
  return (num & (num - 1)) == 0 && (den & (den - 1)) == 0;
}

struct Elimination {
  int rank = 0;
  // kernel basis as rational rows (denominators are powers of two)
  std::vector<std::vector<BigRat>> kernel;
};

// Row-reduce M (rows x cols) over the rationals, insisting that every
// pivot is +-2^t so the reduction transports to Z/l^r for odd l.
inline Elimination eliminate(const std::vector<std::vector<long>>& M,
                             size_t cols) {
  std::vector<std::vector<BigRat>> R;
  for (const auto& row : M) {
    std::vector<BigRat> r(cols);
    for (size_t c = 0; c < cols; ++c) r[c] = row[c];
    R.push_back(std::move(r));
  }
  std::vector<long> pivot_col;
  size_t row = 0;
  for (size_t col = 0; col < cols && row < R.size(); ++col) {
    size_t pr = row;
    while (pr < R.size() && R[pr][col] == 0) ++pr;
    if (pr == R.size()) continue;
    std::swap(R[row], R[pr]);
    require(is_pm_power_of_two(R[row][col]), ErrorCode::invariant_violation,
            "elimination pivot is not a power of two up to sign");
    const BigRat inv = BigRat(1) / R[row][col];
    for (auto& x : R[row]) x *= inv;
    for (size_t r2 = 0; r2 < R.size(); ++r2) {
      if (r2 == row || R[r2][col] == 0) continue;
      const BigRat f = R[r2][col];
      for (size_t c = 0; c < cols; ++c) R[r2][c] -= f * R[row][c];
    }
    pivot_col.push_back(static_cast<long>(col));
    ++row;
  }
  Elimination out;
  out.rank = static_cast<int>(row);
  std::vector<bool> is_pivot(cols, false);
  for (long c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
  for (size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<BigRat> v(cols, BigRat(0));
    v[free] = 1;
    for (size_t r2 = 0; r2 < row; ++r2)
      v[static_cast<size_t>(pivot_col[r2])] = -R[r2][free];
    out.kernel.push_back(std::move(v));
  }
  return out;
}

// The twist counter is cosmetic; only the eigenvalue data must match.
inline std::pair<int, long> eigen_key(const FrobWeight& w) {
  return {w.sign, w.exponent};
}

inline void check_equivariance(const std::vector<std::vector<long>>& M,
                               const std::vector<WeightedClass>& rows,
                               const std::vector<WeightedClass>& cols) {
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j)
      if (M[i][j] != 0)
        require(eigen_key(rows[i].weight) == eigen_key(cols[j].weight),
                ErrorCode::page_mismatch,
                "differential does not preserve Frobenius eigenvalues");
}

// Express a kernel vector as a labelled combination; require it to be
// weight-pure, and normalise the leading coefficient to 1.
inline WeightedClass combination_class(
    const std::vector<BigRat>& v, const std::vector<WeightedClass>& basis) {
  std::optional<FrobWeight> w;
  size_t lead = basis.size();
  for (size_t j = 0; j < basis.size(); ++j) {
    if (v[j] == 0) continue;
    if (lead == basis.size()) lead = j;
    if (!w)
      w = basis[j].weight;
    else
      require(eigen_key(*w) == eigen_key(basis[j].weight),
              ErrorCode::page_mismatch,
              "surviving class mixes distinct Frobenius eigenvalues");
  }
  require(w.has_value(), ErrorCode::page_mismatch,
          "empty kernel vector reported as a class");
  std::ostringstream os;
  const BigRat scale = BigRat(1) / v[lead];
  bool first = true;
  for (size_t j = 0; j < basis.size(); ++j) {
    if (v[j] == 0) continue;
    const BigRat c = v[j] * scale;
    if (!first) os << (c > 0 ? " + " : " - ");
    if (first && c < 0) os << "-";
    const BigRat mag = c > 0 ? c : -c;
    if (mag != 1) os << mag << "*";
    os << basis[j].label;
    first = false;
  }
  return WeightedClass{os.str(), *w};
}

}  // namespace detail

struct SecondPage {
  int64_t p = 0;
  int n = 0, eps = 0;
  std::map<std::pair<int, int>, std::vector<WeightedClass>> cells;
};

// Runs the row-by-row homology of the restricted first page and checks the
// outcome against the closed form: a single untwisted class at (0, 0), a
// rank-one class of eigenvalue eps * p^{n/2} at (-1, n) for even n, and
// nothing else.  The page then degenerates for degree reasons.
inline SecondPage compute_second_page(const FirstPage& page) {
  const int n = page.n;
  SecondPage out{page.p, n, page.eps, {}};
  for (const auto& row : page.rows) {
    const int b = row.b;
    if (b % 2 == 1) {
      require(row.left.empty() && row.middle.empty() && row.right.empty(),
              ErrorCode::page_mismatch, "odd rows must vanish");
      continue;
    }
    // psi . phi = 0, as integer matrices
    for (size_t i = 0; i < row.right.size(); ++i)
      for (size_t j = 0; j < row.left.size(); ++j) {
        long s = 0;
        for (size_t k = 0; k < row.middle.size(); ++k)
          s += row.d_mid[i][k] * row.d_left[k][j];
        require(s == 0, ErrorCode::page_mismatch,
                "consecutive differentials do not compose to zero");
      }
    detail::check_equivariance(row.d_left, row.middle, row.left);
    detail::check_equivariance(row.d_mid, row.right, row.middle);

    auto phi = detail::eliminate(row.d_left, row.left.size());
    auto psi = detail::eliminate(row.d_mid, row.middle.size());

    // structural facts used by the closed form
    if (!row.left.empty() && b != n)
      require(phi.kernel.empty(), ErrorCode::page_mismatch,
              "Gysin column fails to inject away from the middle row");
    if (!row.right.empty())
      require(psi.rank == static_cast<int>(row.right.size()),
              ErrorCode::page_mismatch,
              "restriction row fails to surject");

    const int dim_left = static_cast<int>(phi.kernel.size());
    const int dim_mid =
        static_cast<int>(psi.kernel.size()) - phi.rank;  // im phi <= ker psi
    const int dim_right = static_cast<int>(row.right.size()) - psi.rank;
    require(dim_mid >= 0, ErrorCode::page_mismatch,
            "rank bookkeeping became negative");

    // Euler characteristics of the row survive taking homology.
    const long e1 = -static_cast<long>(row.left.size()) +
                    static_cast<long>(row.middle.size()) -
                    static_cast<long>(row.right.size());
    require(e1 == -dim_left + dim_mid - dim_right, ErrorCode::page_mismatch,
            "row Euler characteristic not conserved");

    // closed form
    const int want_left = (b == n && n % 2 == 0) ? 1 : 0;
    const int want_mid = (b == 0) ? 1 : 0;
    require(dim_left == want_left, ErrorCode::page_mismatch,
            "unexpected survivor in the Gysin column");
    require(dim_mid == want_mid, ErrorCode::page_mismatch,
            "unexpected survivor in the middle column");
    require(dim_right == 0, ErrorCode::page_mismatch,
            "unexpected survivor in the restriction column");

    if (dim_left == 1) {
      auto cls = detail::combination_class(phi.kernel[0], row.left);
      require(cls.weight == FrobWeight{page.eps, n / 2, 1},
              ErrorCode::page_mismatch,
              "surviving twisted class has the wrong eigenvalue");
      out.cells[{-1, b}] = {std::move(cls)};
    }
    if (dim_mid == 1) {
      auto cls = detail::combination_class(psi.kernel[0], row.middle);
      require(cls.weight == FrobWeight{1, 0, 0}, ErrorCode::page_mismatch,
              "bottom survivor has a nontrivial eigenvalue");
      out.cells[{0, b}] = {std::move(cls)};
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stalks at the singular point and Lefschetz-style consistency.

using StalkTable = std::map<int, std::vector<WeightedClass>>;  // degree -> basis

// Cohomology of the nearby-cycles complex at the singular point, collapsed
// from the degenerate second page via degree = a + b.  For n = 2 the model
// is a semistable curve with a single node and the answer is classical:
// the ordinary sheaf in degree 0 and a one-dimensional Tate twist in
// degree 1 (the sign is +1 in both classes).
inline StalkTable nearby_cycles_stalks(int n, int eps, int64_t p) {
  require(n >= 2, ErrorCode::bad_argument, "rank must be at least 2");
  if (n == 2) {
    require(eps == 1, ErrorCode::epsilon_mismatch,
            "rank-2 data always carry sign +1");
    return StalkTable{{0, {WeightedClass{"1", {1, 0, 0}}}},
                      {1, {WeightedClass{"node", {1, 1, 1}}}}};
  }
  auto E2 = compute_second_page(build_first_page_restricted(n, eps, p));
  StalkTable t;
  for (const auto& [ab, classes] : E2.cells) {
    const int degree = ab.first + ab.second;
    for (const auto& c : classes) t[degree].push_back(c);
  }
  return t;
}

inline BigInt singular_stalk_trace(const StalkTable& t, int64_t p, int k) {
  BigInt out = 0;
  for (const auto& [deg, classes] : t)
    for (const auto& c : classes) {
      BigInt v = frob_power_eigenvalue(c.weight, p, k);
      out += (deg % 2 == 0) ? v : -v;
    }
  return out;
}

// The generic fiber is a projective space; its k-power count.
inline BigInt predicted_generic_count(int n, int64_t p, int k) {
  BigInt out = 0;
  for (int i = 0; i < n; ++i)
    out += big_pow(BigInt(p), static_cast<unsigned long>(i) * k);
  return out;
}

struct LefschetzReport {
  int n = 0, k = 1;
  int64_t p = 0;
  int eps = 0;
  BigInt fiber_points = 0;  // special-fiber count over F_{p^k}
  BigInt observed = 0;      // (fiber_points - 1) + stalk trace
  BigInt expected = 0;      // generic-fiber count
  bool matched = false;
  std::string note;
};

// Counts special-fiber points over F_{p^k}, weighs the singular one by the
// alternating stalk trace, and compares with the generic-fiber count.
inline LefschetzReport lefschetz_consistency(const HermitianDatum& d, int k,
                                             int jobs = 1) {
  const int n = d.n();
  const auto eps_opt = epsilon_of(d);
  const int eps = eps_opt.value_or(0);
  auto F = make_field(d.p, k);
  auto fiber = enumerate_special_fiber(build_ambient(d, F), jobs);

  LefschetzReport r;
  r.n = n;
  r.k = k;
  r.p = d.p;
  r.eps = eps;
  r.fiber_points = BigInt(fiber.size());
  const auto stalks = nearby_cycles_stalks(n, eps, d.p);
  r.observed = r.fiber_points - 1 + singular_stalk_trace(stalks, d.p, k);
  r.expected = predicted_generic_count(n, d.p, k);
  r.matched = r.observed == r.expected;
  if (!r.matched && n == 2 && k % 2 == 1 &&
      classify_hermitian(d) == HermitianClass::nonsplit)
    r.note =
        "known open case: the two curve components are interchanged by "
        "Frobenius, which this count model does not encode at odd powers";
  return r;
}

// ---------------------------------------------------------------------------
// Text rendering in the layout of the published diagrams: rows printed from
// the top degree down, columns a = -1, 0, +1.

namespace detail {

inline std::string cell_text(const std::vector<WeightedClass>& classes) {
  if (classes.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < classes.size(); ++i) {
    if (i) out += " (+) ";
    out += class_display(classes[i]);
  }
  return out;
}

inline std::string render_grid(
    const std::map<std::pair<int, int>, std::vector<WeightedClass>>& cells,
    int b_max, const std::string& title) {
  std::ostringstream os;
  os << title << "\n";
  for (int b = b_max; b >= 0; --b) {
    std::vector<std::string> parts;
    for (int a : {-1, 0, 1}) {
      auto it = cells.find({a, b});
      parts.push_back(it == cells.end() ? "0" : cell_text(it->second));
    }
    os << "b=" << b << ":  " << parts[0] << "  ->  " << parts[1] << "  ->  "
       << parts[2] << "\n";
  }
  return os.str();
}

}  // namespace detail

inline std::string render_component_page(const ComponentPage& page) {
  return detail::render_grid(page.cells, 2 * (page.n - 1),
                             "first page (components)");
}

inline std::string render_first_page(const FirstPage& page) {
  std::map<std::pair<int, int>, std::vector<WeightedClass>> cells;
  for (const auto& row : page.rows) {
    if (!row.left.empty()) cells[{-1, row.b}] = row.left;
    if (!row.middle.empty()) cells[{0, row.b}] = row.middle;
    if (!row.right.empty()) cells[{1, row.b}] = row.right;
  }
  return detail::render_grid(cells, 2 * (page.n - 1),
                             "first page (restricted)");
}

inline std::string render_second_page(const SecondPage& page) {
  return detail::render_grid(page.cells, 2 * (page.n - 1), "second page");
}

inline std::string render_stalks(const StalkTable& t) {
  std::ostringstream os;
  os << "nearby-cycle stalks at the singular point\n";
  for (const auto& [deg, classes] : t)
    os << "R^" << deg << ":  " << detail::cell_text(classes) << "\n";
  return os.str();
}

}  // namespace lmnc
