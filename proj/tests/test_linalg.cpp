#include <doctest.h>

#include <cmath>
#include <random>

#include "geqnewton/errors.hpp"
#include "geqnewton/linalg.hpp"

using namespace geqnewton;

TEST_CASE("lu_solve identity") {
  const Vec x = lu_solve(DenseMatrix::identity(2), {4.0, 5.0});
  CHECK(x[0] == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("lu_solve diagonal") {
  DenseMatrix a(2, 2, {2.0, 0.0, 0.0, 4.0});
  const Vec x = lu_solve(a, {2.0, 8.0});
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("lu_solve rank-deficient matrix throws") {
  DenseMatrix a(2, 2, {1.0, 1.0, 1.0, 1.0});
  CHECK_THROWS_AS(lu_solve(a, {1.0, 2.0}), SingularMatrixError);
}

TEST_CASE("lu residual on seeded well-conditioned systems") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> dims(1, 8);
  std::size_t tested = 0;
  while (tested < 1000) {
    const std::size_t n = dims(rng);
    DenseMatrix a(n, n);
    for (double& e : a.entries) e = uni(rng);
    // diagonal dominance keeps the condition estimate small
    for (std::size_t i = 0; i < n; ++i) a(i, i) += n + 1.0;
    Vec rhs(n);
    for (double& e : rhs) e = uni(rng);

    LuFactorization lu(a);
    const DenseMatrix inv = lu.inverse();
    if (inf_norm(a) * inf_norm(inv) >= 1e6) continue;  // condition guard
    const Vec x = lu.solve(rhs);
    CHECK(inf_norm(a * x - rhs) <= 1e-10 * (1.0 + inf_norm(rhs)));
    ++tested;
  }
}

TEST_CASE("inverse reproduces identity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  DenseMatrix a(4, 4);
  for (double& e : a.entries) e = uni(rng);
  for (std::size_t i = 0; i < 4; ++i) a(i, i) += 5.0;
  const DenseMatrix inv = LuFactorization(a).inverse();
  const DenseMatrix prod = a * inv;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(prod(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
}

TEST_CASE("dimension mismatches throw") {
  CHECK_THROWS_AS(DenseMatrix(2, 2, {1.0, 2.0, 3.0}), DimensionError);
  CHECK_THROWS_AS(lu_solve(DenseMatrix::identity(2), {1.0}), DimensionError);
  CHECK_THROWS_AS(DenseMatrix::identity(2) * Vec{1.0}, DimensionError);
}
