#include <doctest.h>

#include <cmath>
#include <random>

#include "geqnewton/errors.hpp"
#include "geqnewton/geqn.hpp"

using namespace geqnewton;

namespace {

GEProblem sqrt2_problem() {
  GEProblem p;
  p.map = make_poly1d({-2.0, 0.0, 1.0});  // x^2 - 2
  p.box = Box::all_free(1);
  p.x0 = {1.5};
  p.lambda = 1.0 / 3.0;
  p.lipK = 2.0 / 3.0;
  return p;
}

}  // namespace

TEST_CASE("project_box clamps componentwise") {
  CHECK(project_box(Box::nonneg(2), {-1.0, 2.0}) == Vec{0.0, 2.0});
  CHECK(project_box(Box::all_free(2), {3.0, -7.0}) == Vec{3.0, -7.0});
  CHECK(project_box(Box({-1.0}, {1.0}), {0.5}) == Vec{0.5});
  CHECK_THROWS_AS(project_box(Box::nonneg(2), {1.0}), DimensionError);
}

TEST_CASE("projection idempotence") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(-10.0, 10.0);
  const Box box({0.0, -1.0, -std::numeric_limits<double>::infinity()},
                {std::numeric_limits<double>::infinity(), 1.0, 2.0});
  for (int i = 0; i < 200; ++i) {
    const Vec v{uni(rng), uni(rng), uni(rng)};
    const Vec once = project_box(box, v);
    CHECK(project_box(box, once) == once);
  }
}

TEST_CASE("natural residual: all-free box reduces to ||f||_inf") {
  GEProblem p = sqrt2_problem();
  CHECK(natural_residual(p, {1.5}) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(natural_residual(p, {std::sqrt(2.0)}) <= 1e-12);
}

TEST_CASE("natural residual: boundary solutions of box problems") {
  GEProblem p;
  p.map = make_poly1d({-2.0, 1.0});  // x - 2
  p.box = Box::nonneg(1);
  p.x0 = {0.0};
  CHECK(natural_residual(p, {2.0}) <= 1e-14);

  p.map = make_poly1d({1.0, 1.0});  // x + 1, f(0) = 1 > 0 at the bound
  CHECK(natural_residual(p, {0.0}) <= 1e-14);
  CHECK(natural_residual(p, {1.0}) > 0.5);
}

TEST_CASE("linearization error") {
  SUBCASE("affine map is exact") {
    const SmoothMap m = make_poly1d({3.0, 2.0});
    CHECK(inf_norm(linearization_error(m, {1.0}, {5.0})) <= 1e-14);
  }
  SUBCASE("quadratic map") {
    const SmoothMap m = make_poly1d({-2.0, 0.0, 1.0});
    const Vec e = linearization_error(m, {1.0}, {1.5});
    CHECK(e[0] == doctest::Approx(0.25).epsilon(1e-13));
  }
  SUBCASE("x equals y") {
    const SmoothMap m = make_poly1d({-2.0, 0.0, 1.0});
    CHECK(inf_norm(linearization_error(m, {1.2}, {1.2})) == 0.0);
  }
}

TEST_CASE("majorant condition verifier, tight and slack") {
  GEProblem p = sqrt2_problem();
  const MajorantFunction tight =
      MajorantFunction::lipschitz(2.0 / 3.0, 1.0 / 12.0, 1.0 / 3.0);
  const auto pass = verify_majorant_condition(p, tight, 2048, 7);
  CHECK(pass.samples == 2048);
  CHECK(pass.passed == 2048);
  CHECK(pass.worstMargin >= -1e-12);

  // affine f: left-hand side is identically zero
  GEProblem affine = p;
  affine.map = make_poly1d({1.0, 2.0});
  const auto trivial = verify_majorant_condition(affine, tight, 256, 7);
  CHECK(trivial.passed == 256);

  // K far below lambda * L: violations must be reported
  const MajorantFunction slack = MajorantFunction::lipschitz(0.1, 1.0 / 12.0, 1.0 / 3.0);
  const auto fail = verify_majorant_condition(p, slack, 2048, 7);
  CHECK(fail.passed < fail.samples);
  CHECK(fail.worstMargin < 0.0);
}

TEST_CASE("verifier is deterministic in the seed") {
  GEProblem p = sqrt2_problem();
  const MajorantFunction psi = MajorantFunction::lipschitz(2.0 / 3.0, 1.0 / 12.0, 1.0 / 3.0);
  const auto a = verify_majorant_condition(p, psi, 512, 42);
  const auto b = verify_majorant_condition(p, psi, 512, 42);
  CHECK(a.worstMargin == b.worstMargin);
  CHECK(a.passed == b.passed);
}

TEST_CASE("regularity modulus for the all-free box") {
  CHECK(regularity_modulus_smooth(DenseMatrix(1, 1, {3.0})) == doctest::Approx(1.0 / 3.0));
  CHECK(regularity_modulus_smooth(DenseMatrix::identity(2)) == doctest::Approx(1.0));
  CHECK(regularity_modulus_smooth(DenseMatrix(2, 2, {2.0, 0.0, 0.0, 4.0})) ==
        doctest::Approx(0.5));
  CHECK_THROWS_AS(regularity_modulus_smooth(DenseMatrix(2, 2, {1.0, 1.0, 1.0, 1.0})),
                  RegularityError);
}

TEST_CASE("builtin family Jacobians pass finite differences") {
  const SmoothMap poly = make_poly1d({1.0, -3.0, 0.5, 2.0});
  CHECK(validate_jacobian(poly, {0.7}, 100, 11) <= 1e-5);

  const SmoothMap ncp = make_ncp_poly({{-4.0, 0.0, 1.0}, {1.0, 2.0, 0.0, 0.5}});
  CHECK(validate_jacobian(ncp, {1.0, 2.0}, 100, 12) <= 1e-5);

  const SmoothMap kkt = make_qp_kkt(DenseMatrix(2, 2, {2.0, 0.5, 0.5, 2.0}), {-1.0, -2.0},
                                    DenseMatrix(1, 2, {1.0, 1.0}), {1.0});
  CHECK(validate_jacobian(kkt, {0.0, 0.0, 0.0}, 100, 13) <= 1e-5);
}

TEST_CASE("linearization-error lemma on the sqrt2 family") {
  // lambda ||E_f(x,y)|| <= e_psi(t,v) ||y-x||^2/(v-t)^2 <= psi''(v)(v-t)^2 / 2
  const GEProblem p = sqrt2_problem();
  const MajorantFunction psi =
      MajorantFunction::lipschitz(2.0 / 3.0, 1.0 / 12.0, 1.0 / 3.0);
  auto e_psi = [&](double t, double u) {
    return psi.psi(u) - (psi.psi(t) + psi.dpsi(t) * (u - t));
  };
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double radius = psi.domainR();
  for (int s = 0; s < 2000; ++s) {
    const double t = uni(rng) * 0.9 * radius;
    const double v = t + uni(rng) * (0.95 * radius - t) + 1e-6;
    const double dx = (2.0 * uni(rng) - 1.0) * t;
    const double dy = (2.0 * uni(rng) - 1.0) * (v - t);
    const Vec x{p.x0[0] + dx};
    const Vec y{x[0] + dy};
    const double lhs = p.lambda * inf_norm(linearization_error(p.map, x, y));
    const double step2 = (y[0] - x[0]) * (y[0] - x[0]);
    const double mid = e_psi(t, v) * step2 / ((v - t) * (v - t));
    const double rhs = 0.5 * psi.ddpsi(v) * (v - t) * (v - t);
    CHECK(lhs <= mid + 1e-12);
    CHECK(mid <= rhs + 1e-12);
  }
}

TEST_CASE("analytic second-derivative bound for a scalar analytic family") {
  // f(x) = 1/(1+x) around x0 = 0 with lambda = 1: |f^(n)(0)/n!| = 1, so
  // gamma = 1. The bound |f''(x)| <= 2 gamma/(1-gamma|x-x0|)^3 must hold on
  // B(x0, 1/gamma).
  const double gamma = 1.0;
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> uni(-0.9, 0.9);
  for (int i = 0; i < 500; ++i) {
    const double x = uni(rng);
    const double f2 = 2.0 / std::pow(1.0 + x, 3.0);
    const double bound = 2.0 * gamma / std::pow(1.0 - gamma * std::abs(x), 3.0);
    CHECK(std::abs(f2) <= bound + 1e-12);
  }
}

TEST_CASE("family constructors reject malformed input") {
  CHECK_THROWS_AS(make_poly1d({}), ParameterError);
  CHECK_THROWS_AS(make_ncp_poly({{1.0}, {}}), ParameterError);
  CHECK_THROWS_AS(make_qp_kkt(DenseMatrix(2, 2), {0.0}, DenseMatrix(1, 2), {0.0}),
                  DimensionError);
}
