#include "geqnewton/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "geqnewton/errors.hpp"

namespace geqnewton {

DenseMatrix::DenseMatrix(std::size_t r, std::size_t c, std::vector<double> e)
    : rows(r), cols(c), entries(std::move(e)) {
  if (entries.size() != rows * cols) {
    throw DimensionError("DenseMatrix: entry count does not match rows*cols");
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool DenseMatrix::finite() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](double v) { return std::isfinite(v); });
}

double inf_norm(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double inf_norm(const DenseMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols; ++j) s += std::abs(a(i, j));
    m = std::max(m, s);
  }
  return m;
}

Vec operator+(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionError("vector add: size mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionError("vector sub: size mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec operator*(const DenseMatrix& a, const Vec& x) {
  if (a.cols != x.size()) throw DimensionError("matvec: size mismatch");
  Vec r(a.rows, 0.0);
  for (std::size_t i = 0; i < a.rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols; ++j) s += a(i, j) * x[j];
    r[i] = s;
  }
  return r;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols != b.rows) throw DimensionError("matmul: size mismatch");
  DenseMatrix r(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) r(i, j) += aik * b(k, j);
    }
  }
  return r;
}

LuFactorization::LuFactorization(const DenseMatrix& a) : n_(a.rows), lu_(a), perm_(a.rows) {
  if (a.rows != a.cols) throw DimensionError("LU: matrix must be square");
  const double pivot_floor = 1e-13 * inf_norm(a);
  for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;

  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n_; ++i) {
      const double v = std::abs(lu_(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best < pivot_floor || best == 0.0) {
      throw SingularMatrixError("LU: pivot below threshold at column " + std::to_string(k));
    }
    if (p != k) {
      for (std::size_t j = 0; j < n_; ++j) std::swap(lu_(k, j), lu_(p, j));
      std::swap(perm_[k], perm_[p]);
    }
    const double inv_piv = 1.0 / lu_(k, k);
    for (std::size_t i = k + 1; i < n_; ++i) {
      const double l = lu_(i, k) * inv_piv;
      lu_(i, k) = l;
      for (std::size_t j = k + 1; j < n_; ++j) lu_(i, j) -= l * lu_(k, j);
    }
  }
}

Vec LuFactorization::solve(const Vec& rhs) const {
  if (rhs.size() != n_) throw DimensionError("LU solve: rhs size mismatch");
  Vec x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = rhs[perm_[i]];
  // forward: L y = P rhs
  for (std::size_t i = 1; i < n_; ++i) {
    double s = x[i];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
    x[i] = s;
  }
  // backward: U x = y
  for (std::size_t ii = n_; ii-- > 0;) {
    double s = x[ii];
    for (std::size_t j = ii + 1; j < n_; ++j) s -= lu_(ii, j) * x[j];
    x[ii] = s / lu_(ii, ii);
  }
  return x;
}

DenseMatrix LuFactorization::inverse() const {
  DenseMatrix inv(n_, n_);
  Vec e(n_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    e[j] = 1.0;
    Vec col = solve(e);
    e[j] = 0.0;
    for (std::size_t i = 0; i < n_; ++i) inv(i, j) = col[i];
  }
  return inv;
}

Vec lu_solve(const DenseMatrix& a, const Vec& rhs) {
  return LuFactorization(a).solve(rhs);
}

}  // namespace geqnewton
