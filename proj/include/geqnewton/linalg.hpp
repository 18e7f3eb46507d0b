#ifndef GEQNEWTON_LINALG_HPP
#define GEQNEWTON_LINALG_HPP

#include <cstddef>
#include <vector>

namespace geqnewton {

using Vec = std::vector<double>;

// Row-major dense matrix. Desk-scale only; everything is O(n^3) direct.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> entries;  // rows*cols, row-major

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, 0.0) {}
  DenseMatrix(std::size_t r, std::size_t c, std::vector<double> e);

  double& operator()(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

  static DenseMatrix identity(std::size_t n);
  bool finite() const;
};

double inf_norm(const Vec& v);
// Induced infinity norm (max absolute row sum).
double inf_norm(const DenseMatrix& a);

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const DenseMatrix& a, const Vec& x);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);

// LU factorization with partial pivoting, kept so one factorization can
// serve several right-hand sides.
class LuFactorization {
 public:
  // Throws SingularMatrixError when a pivot falls below 1e-13 * ||A||_inf.
  explicit LuFactorization(const DenseMatrix& a);

  Vec solve(const Vec& rhs) const;
  DenseMatrix inverse() const;
  std::size_t dim() const { return n_; }

 private:
  std::size_t n_;
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
};

// One-shot solve of A x = rhs, partial pivoting.
// Throws SingularMatrixError on pivot breakdown.
Vec lu_solve(const DenseMatrix& a, const Vec& rhs);

}  // namespace geqnewton

#endif  // GEQNEWTON_LINALG_HPP
