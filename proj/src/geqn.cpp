#include "geqnewton/geqn.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "geqnewton/errors.hpp"

namespace geqnewton {

Vec project_box(const Box& box, const Vec& v) {
  if (v.size() != box.dim()) throw DimensionError("project_box: dimension mismatch");
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    r[i] = std::clamp(v[i], box.lower[i], box.upper[i]);
  }
  return r;
}

double natural_residual(const GEProblem& problem, const Vec& x) {
  const Vec fx = problem.map.evalF(x);
  const Vec projected = project_box(problem.box, x - fx);
  return inf_norm(x - projected);
}

Vec linearization_error(const SmoothMap& map, const Vec& x, const Vec& y) {
  const Vec step = y - x;
  return map.evalF(y) - (map.evalF(x) + map.evalJ(x) * step);
}

namespace {

// Random direction with unit infinity norm.
Vec random_direction(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Vec d(n);
  double norm = 0.0;
  do {
    for (std::size_t i = 0; i < n; ++i) d[i] = uni(rng);
    norm = inf_norm(d);
  } while (norm == 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] /= norm;
  return d;
}

DenseMatrix matrix_diff(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix d(a.rows, a.cols);
  for (std::size_t i = 0; i < d.entries.size(); ++i) d.entries[i] = a.entries[i] - b.entries[i];
  return d;
}

}  // namespace

MajorantConditionReport verify_majorant_condition(const GEProblem& problem,
                                                  const MajorantFunction& psi,
                                                  std::size_t samples, std::uint64_t seed) {
  MajorantConditionReport report;
  report.samples = samples;
  report.worstMargin = std::numeric_limits<double>::infinity();
  const std::size_t n = problem.map.dim;
  const double radius = 0.95 * psi.domainR();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  for (std::size_t s = 0; s < samples; ++s) {
    const double a = uni(rng) * radius;
    const double step = uni(rng) * (radius - a);
    const Vec x = problem.x0 + [&] {
      Vec d = random_direction(n, rng);
      for (double& v : d) v *= a;
      return d;
    }();
    const Vec y = x + [&] {
      Vec d = random_direction(n, rng);
      for (double& v : d) v *= step;
      return d;
    }();
    const double dist_x = inf_norm(x - problem.x0);
    const double dist_xy = inf_norm(y - x);
    const double lhs =
        problem.lambda * inf_norm(matrix_diff(problem.map.evalJ(y), problem.map.evalJ(x)));
    const double rhs = psi.dpsi(dist_xy + dist_x) - psi.dpsi(dist_x);
    const double margin = rhs - lhs;
    if (margin >= -1e-12 * std::max(1.0, std::abs(rhs))) ++report.passed;
    report.worstMargin = std::min(report.worstMargin, margin);
  }
  return report;
}

double regularity_modulus_smooth(const DenseMatrix& j0) {
  if (j0.rows != j0.cols) throw DimensionError("regularity_modulus_smooth: J0 must be square");
  try {
    return inf_norm(LuFactorization(j0).inverse());
  } catch (const SingularMatrixError&) {
    throw RegularityError("J0 is singular: strong regularity fails for F == 0");
  }
}

double validate_jacobian(const SmoothMap& map, const Vec& x_ref, std::size_t points,
                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-0.5, 0.5);
  const std::size_t n = map.dim;
  double worst = 0.0;
  for (std::size_t p = 0; p < points; ++p) {
    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = x_ref[i] + uni(rng);
    const DenseMatrix j = map.evalJ(x);
    const double scale = std::max(1.0, inf_norm(j));
    for (std::size_t col = 0; col < n; ++col) {
      const double h = 1e-6 * std::max(1.0, std::abs(x[col]));
      Vec xp = x, xm = x;
      xp[col] += h;
      xm[col] -= h;
      const Vec fp = map.evalF(xp);
      const Vec fm = map.evalF(xm);
      for (std::size_t row = 0; row < n; ++row) {
        const double fd = (fp[row] - fm[row]) / (2.0 * h);
        worst = std::max(worst, std::abs(j(row, col) - fd) / scale);
      }
    }
  }
  return worst;
}

SmoothMap make_poly1d(const std::vector<double>& coeffs) {
  if (coeffs.empty()) throw ParameterError("poly1d: empty coefficient list");
  SmoothMap m;
  m.dim = 1;
  m.provenance = "poly1d";
  m.evalF = [coeffs](const Vec& x) {
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * x[0] + coeffs[k];
    return Vec{v};
  };
  m.evalJ = [coeffs](const Vec& x) {
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 1;) v = v * x[0] + coeffs[k] * static_cast<double>(k);
    DenseMatrix j(1, 1);
    j(0, 0) = v;
    return j;
  };
  return m;
}

SmoothMap make_ncp_poly(const std::vector<std::vector<double>>& coeffs) {
  if (coeffs.empty()) throw ParameterError("ncp_poly: empty coefficient list");
  for (const auto& row : coeffs) {
    if (row.empty()) throw ParameterError("ncp_poly: empty coefficient row");
  }
  SmoothMap m;
  m.dim = coeffs.size();
  m.provenance = "ncp_poly";
  m.evalF = [coeffs](const Vec& x) {
    Vec f(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      double v = 0.0;
      for (std::size_t k = coeffs[i].size(); k-- > 0;) v = v * x[i] + coeffs[i][k];
      f[i] = v;
    }
    return f;
  };
  m.evalJ = [coeffs](const Vec& x) {
    DenseMatrix j(coeffs.size(), coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      double v = 0.0;
      for (std::size_t k = coeffs[i].size(); k-- > 1;)
        v = v * x[i] + coeffs[i][k] * static_cast<double>(k);
      j(i, i) = v;
    }
    return j;
  };
  return m;
}

SmoothMap make_qp_kkt(const DenseMatrix& q, const Vec& c, const DenseMatrix& a, const Vec& b) {
  const std::size_t n = q.rows;
  const std::size_t mcon = a.rows;
  if (q.cols != n || c.size() != n) throw DimensionError("qp_kkt: Q/c dimensions inconsistent");
  if (mcon > 0 && a.cols != n) throw DimensionError("qp_kkt: A column count must match Q");
  if (b.size() != mcon) throw DimensionError("qp_kkt: b length must match A rows");

  // Jacobian is constant: [[Q, A'], [-A, 0]].
  DenseMatrix jac(n + mcon, n + mcon);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) jac(i, j) = q(i, j);
  for (std::size_t i = 0; i < mcon; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      jac(j, n + i) = a(i, j);
      jac(n + i, j) = -a(i, j);
    }

  SmoothMap m;
  m.dim = n + mcon;
  m.provenance = "qp_kkt";
  m.evalF = [q, c, a, b, n, mcon](const Vec& xm) {
    Vec f(n + mcon, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double v = c[i];
      for (std::size_t j = 0; j < n; ++j) v += q(i, j) * xm[j];
      for (std::size_t k = 0; k < mcon; ++k) v += a(k, i) * xm[n + k];
      f[i] = v;
    }
    for (std::size_t k = 0; k < mcon; ++k) {
      double v = b[k];
      for (std::size_t j = 0; j < n; ++j) v -= a(k, j) * xm[j];
      f[n + k] = v;
    }
    return f;
  };
  m.evalJ = [jac](const Vec&) { return jac; };
  return m;
}

}  // namespace geqnewton
