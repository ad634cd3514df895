#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qpa/matrix.hpp"
#include "qpa/scalar.hpp"

// Exact polynomials in one variable t, square matrices of them, and truncated
// power-series matrices. Coefficients are rationals regardless of the algebra
// field: everything here counts dimensions.

namespace qpa {

struct Poly {
  std::vector<bigrat> c;  // c[i] = coefficient of t^i; no trailing zeros

  Poly() = default;
  explicit Poly(std::vector<bigrat> coeffs) : c(std::move(coeffs)) { trim(); }

  static Poly constant(const bigrat& v) { return Poly({v}); }
  static Poly t() { return Poly({bigrat(0), bigrat(1)}); }
  static Poly monomial(const bigrat& v, std::size_t d) {
    std::vector<bigrat> cs(d + 1, bigrat(0));
    cs[d] = v;
    return Poly(std::move(cs));
  }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bigrat coeff(std::size_t i) const { return i < c.size() ? c[i] : bigrat(0); }

  friend Poly operator+(const Poly& x, const Poly& y) {
    std::vector<bigrat> r(std::max(x.c.size(), y.c.size()), bigrat(0));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = x.coeff(i) + y.coeff(i);
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& x, const Poly& y) {
    std::vector<bigrat> r(std::max(x.c.size(), y.c.size()), bigrat(0));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = x.coeff(i) - y.coeff(i);
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& x, const Poly& y) {
    if (x.is_zero() || y.is_zero()) return Poly();
    std::vector<bigrat> r(x.c.size() + y.c.size() - 1, bigrat(0));
    for (std::size_t i = 0; i < x.c.size(); ++i) {
      if (x.c[i] == 0) continue;
      for (std::size_t j = 0; j < y.c.size(); ++j) r[i + j] += x.c[i] * y.c[j];
    }
    return Poly(std::move(r));
  }
  Poly operator-() const {
    Poly r = *this;
    for (bigrat& v : r.c) v = -v;
    return r;
  }
  friend bool operator==(const Poly& x, const Poly& y) { return x.c == y.c; }
  friend bool operator!=(const Poly& x, const Poly& y) { return !(x == y); }

  Poly pow(std::size_t e) const {
    Poly r = constant(1);
    for (std::size_t i = 0; i < e; ++i) r = r * (*this);
    return r;
  }

  // t -> -t
  Poly at_neg_t() const {
    Poly r = *this;
    for (std::size_t i = 1; i < r.c.size(); i += 2) r.c[i] = -r.c[i];
    return r;
  }

  bigrat eval(const bigrat& x) const {
    bigrat acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      bigrat v = c[i];
      if (s.empty()) {
        if (v < 0) {
          s += "-";
          v = -v;
        }
      } else {
        s += (v < 0) ? " - " : " + ";
        if (v < 0) v = -v;
      }
      const bool unit = (v == 1) && i > 0;
      if (!unit) {
        s += boost::multiprecision::numerator(v).str();
        if (boost::multiprecision::denominator(v) != 1)
          s += "/" + boost::multiprecision::denominator(v).str();
      }
      if (i == 1)
        s += "t";
      else if (i > 1)
        s += "t^" + std::to_string(i);
    }
    return s;
  }
};

struct PolyMatrix {
  std::size_t n = 0;
  std::vector<std::string> labels;
  std::vector<Poly> e;  // row-major

  PolyMatrix() = default;
  PolyMatrix(std::size_t size, std::vector<std::string> row_labels)
      : n(size), labels(std::move(row_labels)), e(size * size) {}

  Poly& at(std::size_t i, std::size_t j) { return e[i * n + j]; }
  const Poly& at(std::size_t i, std::size_t j) const { return e[i * n + j]; }

  PolyMatrix at_neg_t() const {
    PolyMatrix r = *this;
    for (Poly& p : r.e) p = p.at_neg_t();
    return r;
  }

  friend bool operator==(const PolyMatrix& x, const PolyMatrix& y) {
    return x.n == y.n && x.e == y.e;
  }
};

// Cofactor expansion along the first row; fine at this problem's sizes.
inline Poly det(const PolyMatrix& pm) {
  if (pm.n == 0) return Poly::constant(1);
  if (pm.n == 1) return pm.at(0, 0);
  Poly acc;
  for (std::size_t j = 0; j < pm.n; ++j) {
    if (pm.at(0, j).is_zero()) continue;
    PolyMatrix minor(pm.n - 1, {});
    for (std::size_t i = 1; i < pm.n; ++i) {
      std::size_t jj = 0;
      for (std::size_t k = 0; k < pm.n; ++k) {
        if (k == j) continue;
        minor.at(i - 1, jj++) = pm.at(i, k);
      }
    }
    Poly term = pm.at(0, j) * det(minor);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

struct SeriesMatrix {
  std::size_t n = 0;
  int order = -1;  // coefficients 0..order are stored
  std::vector<std::string> labels;
  std::vector<DenseMatrix> coeff;  // coeff[d] over the rationals

  bigrat entry_coeff(std::size_t i, std::size_t j, int d) const {
    if (d < 0 || d > order) throw error("series coefficient out of range");
    return coeff[d].at(i, j).value();
  }

  SeriesMatrix truncated(int new_order) const {
    if (new_order > order) throw error("cannot extend a truncated series");
    SeriesMatrix s = *this;
    s.order = new_order;
    s.coeff.resize(new_order + 1);
    return s;
  }
};

inline SeriesMatrix poly_to_series(const PolyMatrix& pm, int order) {
  SeriesMatrix s;
  s.n = pm.n;
  s.order = order;
  s.labels = pm.labels;
  Field q = Field::rationals();
  for (int d = 0; d <= order; ++d) {
    DenseMatrix m(q, pm.n, pm.n);
    for (std::size_t i = 0; i < pm.n; ++i)
      for (std::size_t j = 0; j < pm.n; ++j)
        m.at(i, j) = q.from_rational(pm.at(i, j).coeff(d));
    s.coeff.push_back(std::move(m));
  }
  return s;
}

inline SeriesMatrix series_matmul(const SeriesMatrix& x, const SeriesMatrix& y) {
  if (x.n != y.n) throw error("series matmul shape mismatch");
  SeriesMatrix z;
  z.n = x.n;
  z.order = std::min(x.order, y.order);
  z.labels = x.labels;
  Field q = Field::rationals();
  for (int d = 0; d <= z.order; ++d) {
    DenseMatrix m(q, x.n, x.n);
    for (int j = 0; j <= d; ++j) m = add(m, matmul(x.coeff[j], y.coeff[d - j]));
    z.coeff.push_back(std::move(m));
  }
  return z;
}

inline SeriesMatrix series_transpose(const SeriesMatrix& x) {
  SeriesMatrix z = x;
  for (DenseMatrix& m : z.coeff) m = transpose(m);
  return z;
}

// mm(-t)^{-T} as a power series to the given order: with A(t) = mm(-t),
// B_0 = A_0^{-1} and B_d = -A_0^{-1} (A_1 B_{d-1} + ... + A_d B_0),
// transposed coefficientwise at the end.
inline SeriesMatrix koszul_dual_series(const PolyMatrix& pm, int order) {
  PolyMatrix a = pm.at_neg_t();
  int adeg = 0;
  for (const Poly& p : a.e) adeg = std::max(adeg, std::max(p.degree(), 0));
  SeriesMatrix as = poly_to_series(a, std::max(adeg, order));
  std::optional<DenseMatrix> a0inv = inverse(as.coeff[0]);
  if (!a0inv) throw error("constant term of the Hilbert matrix is singular");

  SeriesMatrix b;
  b.n = pm.n;
  b.order = order;
  b.labels = pm.labels;
  Field q = Field::rationals();
  b.coeff.push_back(*a0inv);
  for (int d = 1; d <= order; ++d) {
    DenseMatrix acc(q, pm.n, pm.n);
    for (int j = 1; j <= std::min(d, adeg); ++j)
      acc = add(acc, matmul(as.coeff[j], b.coeff[d - j]));
    b.coeff.push_back(scalar_mul(q.from_int(-1), matmul(*a0inv, acc)));
  }
  return series_transpose(b);
}

struct SeriesMismatch {
  std::size_t i = 0, j = 0;
  int d = 0;
  bigrat expected, computed;
};

struct ClosedFormReport {
  bool match = true;
  std::optional<SeriesMismatch> first_mismatch;
};

// Entrywise comparison against expected(i, j, d) up to the truncation order.
inline ClosedFormReport compare_closed_form(
    const SeriesMatrix& sm,
    const std::function<bigrat(std::size_t, std::size_t, int)>& expected) {
  ClosedFormReport rep;
  for (int d = 0; d <= sm.order && rep.match; ++d)
    for (std::size_t i = 0; i < sm.n && rep.match; ++i)
      for (std::size_t j = 0; j < sm.n; ++j) {
        bigrat want = expected(i, j, d);
        bigrat got = sm.entry_coeff(i, j, d);
        if (want != got) {
          rep.match = false;
          rep.first_mismatch = SeriesMismatch{i, j, d, want, got};
          break;
        }
      }
  return rep;
}

}  // namespace qpa
