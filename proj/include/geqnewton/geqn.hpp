#ifndef GEQNEWTON_GEQN_HPP
#define GEQNEWTON_GEQN_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "geqnewton/box.hpp"
#include "geqnewton/linalg.hpp"
#include "geqnewton/majorant.hpp"

namespace geqnewton {

// Smooth square map f with analytic Jacobian. Square systems only.
struct SmoothMap {
  std::size_t dim = 0;
  std::function<Vec(const Vec&)> evalF;
  std::function<DenseMatrix(const Vec&)> evalJ;
  std::string provenance;  // builtin family name or "external"
};

// The generalized equation 0 in f(x) + N_B(x) together with the data a
// Kantorovich certificate needs.
struct GEProblem {
  SmoothMap map;
  Box box;
  Vec x0;
  double lambda = 1.0;                // regularity modulus, user-supplied for box F
  std::optional<double> lipK;         // K of the Lipschitz preset
  std::optional<double> smaleGamma;   // gamma of the Smale preset
  std::optional<double> bOverride;    // override for b = ||x1 - x0||
};

// ||x - proj_B(x - f(x))||_inf; zero exactly at solutions.
double natural_residual(const GEProblem& problem, const Vec& x);

// E_f(x, y) = f(y) - [f(x) + f'(x)(y - x)].
Vec linearization_error(const SmoothMap& map, const Vec& x, const Vec& y);

struct MajorantConditionReport {
  std::size_t samples = 0;
  std::size_t passed = 0;
  // min over samples of rhs - lhs; negative means a violation was found.
  double worstMargin = 0.0;
  bool allPassed() const { return passed == samples; }
};

// Samples pairs (x, y) with ||y-x|| + ||x-x0|| < R around x0 and checks
// lambda * ||f'(y) - f'(x)|| <= psi'(||y-x|| + ||x-x0||) - psi'(||x-x0||)
// in the operator infinity norm.
MajorantConditionReport verify_majorant_condition(const GEProblem& problem,
                                                  const MajorantFunction& psi,
                                                  std::size_t samples, std::uint64_t seed);

// ||J0^{-1}||_inf via the explicit inverse. Only meaningful for F == 0.
// Throws RegularityError when J0 is singular.
double regularity_modulus_smooth(const DenseMatrix& j0);

// Central finite-difference check of evalJ against evalF at `points` random
// points near x_ref. Returns the worst relative deviation observed.
double validate_jacobian(const SmoothMap& map, const Vec& x_ref, std::size_t points,
                         std::uint64_t seed);

// Builtin problem families (see the problem-file schema in the README).
// poly1d: scalar polynomial, coefficients in ascending order.
SmoothMap make_poly1d(const std::vector<double>& coeffs);
// ncp_poly: f_i(x) is a polynomial in x_i alone; one coefficient row per
// component, paired with the nonnegative orthant.
SmoothMap make_ncp_poly(const std::vector<std::vector<double>>& coeffs);
// qp_kkt: KKT system of min (1/2) x'Qx + c'x  s.t.  Ax <= b, variables
// (x, mu), map (Qx + c + A'mu, b - Ax), box = free^n x [0,inf)^m.
SmoothMap make_qp_kkt(const DenseMatrix& q, const Vec& c, const DenseMatrix& a, const Vec& b);

}  // namespace geqnewton

#endif  // GEQNEWTON_GEQN_HPP
