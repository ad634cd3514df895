#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qpa/scalar.hpp"

// Dense exact matrices and deterministic elimination. Pivoting is always
// "first nonzero entry in column order", so every basis produced downstream
// is reproducible across runs.

namespace qpa {

struct DenseMatrix {
  Field field;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Scalar> a;

  DenseMatrix() = default;
  DenseMatrix(Field f, std::size_t r, std::size_t c)
      : field(f), rows(r), cols(c), a(r * c, f.zero()) {}

  Scalar& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const {
    return a[i * cols + j];
  }

  bool is_zero() const {
    for (const Scalar& x : a)
      if (!x.is_zero()) return false;
    return true;
  }

  friend bool operator==(const DenseMatrix& x, const DenseMatrix& y) {
    if (x.field != y.field || x.rows != y.rows || x.cols != y.cols)
      return false;
    return x.a == y.a;
  }
};

inline void check_same_field(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.field != y.field) throw error("mixed-field matrix operation");
}

inline DenseMatrix identity(Field f, std::size_t n) {
  DenseMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
  return m;
}

inline DenseMatrix transpose(const DenseMatrix& m) {
  DenseMatrix t(m.field, m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

inline DenseMatrix matmul(const DenseMatrix& x, const DenseMatrix& y) {
  check_same_field(x, y);
  if (x.cols != y.rows) throw error("matmul shape mismatch");
  DenseMatrix z(x.field, x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const Scalar& xik = x.at(i, k);
      if (xik.is_zero()) continue;
      for (std::size_t j = 0; j < y.cols; ++j) {
        const Scalar& ykj = y.at(k, j);
        if (!ykj.is_zero()) z.at(i, j) += xik * ykj;
      }
    }
  return z;
}

inline DenseMatrix add(const DenseMatrix& x, const DenseMatrix& y) {
  check_same_field(x, y);
  if (x.rows != y.rows || x.cols != y.cols) throw error("add shape mismatch");
  DenseMatrix z = x;
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
  return z;
}

inline DenseMatrix sub(const DenseMatrix& x, const DenseMatrix& y) {
  check_same_field(x, y);
  if (x.rows != y.rows || x.cols != y.cols) throw error("sub shape mismatch");
  DenseMatrix z = x;
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
  return z;
}

inline DenseMatrix scalar_mul(const Scalar& c, const DenseMatrix& x) {
  DenseMatrix z = x;
  for (Scalar& e : z.a) e *= c;
  return z;
}

inline DenseMatrix hstack(const DenseMatrix& x, const DenseMatrix& y) {
  check_same_field(x, y);
  if (x.rows != y.rows) throw error("hstack row mismatch");
  DenseMatrix z(x.field, x.rows, x.cols + y.cols);
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t j = 0; j < x.cols; ++j) z.at(i, j) = x.at(i, j);
    for (std::size_t j = 0; j < y.cols; ++j) z.at(i, x.cols + j) = y.at(i, j);
  }
  return z;
}

inline DenseMatrix vstack(const DenseMatrix& x, const DenseMatrix& y) {
  check_same_field(x, y);
  if (x.cols != y.cols) throw error("vstack column mismatch");
  DenseMatrix z(x.field, x.rows + y.rows, x.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) z.at(i, j) = x.at(i, j);
  for (std::size_t i = 0; i < y.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) z.at(x.rows + i, j) = y.at(i, j);
  return z;
}

struct RrefResult {
  std::size_t rank = 0;
  DenseMatrix reduced;
  std::vector<std::size_t> pivot_cols;
};

inline RrefResult rref(const DenseMatrix& m) {
  RrefResult res;
  res.reduced = m;
  DenseMatrix& r = res.reduced;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < r.cols && pivot_row < r.rows; ++col) {
    std::size_t sel = pivot_row;
    while (sel < r.rows && r.at(sel, col).is_zero()) ++sel;
    if (sel == r.rows) continue;
    if (sel != pivot_row)
      for (std::size_t j = 0; j < r.cols; ++j)
        std::swap(r.at(sel, j), r.at(pivot_row, j));
    const Scalar inv = r.field.one() / r.at(pivot_row, col);
    for (std::size_t j = col; j < r.cols; ++j) r.at(pivot_row, j) *= inv;
    for (std::size_t i = 0; i < r.rows; ++i) {
      if (i == pivot_row) continue;
      const Scalar f = r.at(i, col);
      if (f.is_zero()) continue;
      for (std::size_t j = col; j < r.cols; ++j)
        r.at(i, j) -= f * r.at(pivot_row, j);
    }
    res.pivot_cols.push_back(col);
    ++pivot_row;
  }
  res.rank = res.pivot_cols.size();
  return res;
}

inline std::size_t rank(const DenseMatrix& m) { return rref(m).rank; }

// Rows of the result form a basis of {x : m x = 0}; row count = cols - rank.
inline DenseMatrix kernel_basis(const DenseMatrix& m) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (std::size_t c : r.pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  DenseMatrix k(m.field, free_cols.size(), m.cols);
  for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
    k.at(fi, free_cols[fi]) = m.field.one();
    for (std::size_t pi = 0; pi < r.pivot_cols.size(); ++pi)
      k.at(fi, r.pivot_cols[pi]) = -r.reduced.at(pi, free_cols[fi]);
  }
  return k;
}

// One exact solution X of m X = rhs, if consistent.
inline std::optional<DenseMatrix> solve(const DenseMatrix& m,
                                        const DenseMatrix& rhs) {
  check_same_field(m, rhs);
  if (m.rows != rhs.rows) throw error("solve shape mismatch");
  RrefResult r = rref(hstack(m, rhs));
  for (std::size_t c : r.pivot_cols)
    if (c >= m.cols) return std::nullopt;
  DenseMatrix x(m.field, m.cols, rhs.cols);
  for (std::size_t pi = 0; pi < r.pivot_cols.size(); ++pi)
    for (std::size_t j = 0; j < rhs.cols; ++j)
      x.at(r.pivot_cols[pi], j) = r.reduced.at(pi, m.cols + j);
  return x;
}

inline std::optional<DenseMatrix> inverse(const DenseMatrix& m) {
  if (m.rows != m.cols) throw error("inverse of non-square matrix");
  std::optional<DenseMatrix> x = solve(m, identity(m.field, m.rows));
  if (!x) return std::nullopt;
  if (rank(m) != m.rows) return std::nullopt;
  return x;
}

// Nonzero rows of the reduced form: a canonical basis of the row space.
inline DenseMatrix row_basis(const DenseMatrix& m) {
  RrefResult r = rref(m);
  DenseMatrix b(m.field, r.rank, m.cols);
  for (std::size_t i = 0; i < r.rank; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) b.at(i, j) = r.reduced.at(i, j);
  return b;
}

inline bool same_rowspace(const DenseMatrix& x, const DenseMatrix& y) {
  check_same_field(x, y);
  if (x.cols != y.cols) return false;
  return row_basis(x) == row_basis(y);
}

inline bool in_rowspace(const DenseMatrix& m, const DenseMatrix& row) {
  check_same_field(m, row);
  if (row.cols != m.cols || row.rows != 1) throw error("in_rowspace expects a single row");
  return rank(vstack(m, row)) == rank(m);
}

// Zassenhaus: row-reduce [A A; B 0]; rows with vanishing left half carry a
// basis of rowspace(A) ∩ rowspace(B) in their right half.
inline DenseMatrix intersect_rowspaces(const DenseMatrix& x,
                                       const DenseMatrix& y) {
  check_same_field(x, y);
  if (x.cols != y.cols) throw error("intersect_rowspaces column mismatch");
  const std::size_t n = x.cols;
  DenseMatrix big(x.field, x.rows + y.rows, 2 * n);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      big.at(i, j) = x.at(i, j);
      big.at(i, n + j) = x.at(i, j);
    }
  for (std::size_t i = 0; i < y.rows; ++i)
    for (std::size_t j = 0; j < n; ++j) big.at(x.rows + i, j) = y.at(i, j);
  RrefResult r = rref(big);
  std::vector<std::size_t> hit_rows;
  for (std::size_t i = 0; i < big.rows; ++i) {
    bool left_zero = true, right_zero = true;
    for (std::size_t j = 0; j < n && left_zero; ++j)
      if (!r.reduced.at(i, j).is_zero()) left_zero = false;
    if (!left_zero) continue;
    for (std::size_t j = 0; j < n && right_zero; ++j)
      if (!r.reduced.at(i, n + j).is_zero()) right_zero = false;
    if (!right_zero) hit_rows.push_back(i);
  }
  DenseMatrix out(x.field, hit_rows.size(), n);
  for (std::size_t k = 0; k < hit_rows.size(); ++k)
    for (std::size_t j = 0; j < n; ++j)
      out.at(k, j) = r.reduced.at(hit_rows[k], n + j);
  return out;
}

}  // namespace qpa
