#include "geqnewton/avi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "geqnewton/errors.hpp"

namespace geqnewton {

double affine_residual(const DenseMatrix& j, const Vec& c, const Box& box, const Vec& y) {
  const Vec g = c + j * y;
  const Vec projected = project_box(box, y - g);
  return inf_norm(y - projected);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

DenseMatrix submatrix(const DenseMatrix& a, const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& cols) {
  DenseMatrix s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = a(rows[i], cols[j]);
  return s;
}

Vec subvector(const Vec& v, const std::vector<std::size_t>& idx) {
  Vec s(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) s[i] = v[idx[i]];
  return s;
}

}  // namespace

AviSolution solve_affine_ge(const DenseMatrix& j, const Vec& c, const Box& box,
                            std::size_t max_pivots) {
  const std::size_t n = box.dim();
  if (j.rows != n || j.cols != n || c.size() != n) {
    throw DimensionError("solve_affine_ge: J/c/box dimensions inconsistent");
  }

  std::vector<std::size_t> free_idx, bnd_idx;
  for (std::size_t i = 0; i < n; ++i) {
    (box.is_free(i) ? free_idx : bnd_idx).push_back(i);
  }

  AviSolution sol;
  sol.y.assign(n, 0.0);

  // F == 0: plain linear solve.
  if (bnd_idx.empty()) {
    try {
      Vec rhs(n);
      for (std::size_t i = 0; i < n; ++i) rhs[i] = -c[i];
      sol.y = lu_solve(j, rhs);
      sol.status = AviStatus::Solved;
    } catch (const SingularMatrixError& e) {
      sol.status = AviStatus::Singular;
      sol.detail = e.what();
    }
    return sol;
  }

  // Eliminate free coordinates: y_f = -Jff^{-1} (c_f + Jfb y_b), leaving the
  // reduced problem 0 in ctil + Mtil y_b + N(y_b) on the bounded block.
  DenseMatrix mtil = submatrix(j, bnd_idx, bnd_idx);
  Vec ctil = subvector(c, bnd_idx);
  DenseMatrix jfb;
  Vec cf;
  std::unique_ptr<LuFactorization> jff_lu;
  if (!free_idx.empty()) {
    try {
      jff_lu = std::make_unique<LuFactorization>(submatrix(j, free_idx, free_idx));
    } catch (const SingularMatrixError&) {
      sol.status = AviStatus::Singular;
      sol.detail = "free-free block of J is singular";
      return sol;
    }
    jfb = submatrix(j, free_idx, bnd_idx);
    cf = subvector(c, free_idx);
    const DenseMatrix jbf = submatrix(j, bnd_idx, free_idx);

    // Mtil -= Jbf Jff^{-1} Jfb, column by column; ctil -= Jbf Jff^{-1} c_f.
    const Vec yf_c = jff_lu->solve(cf);
    const Vec correction = jbf * yf_c;
    for (std::size_t i = 0; i < bnd_idx.size(); ++i) ctil[i] -= correction[i];
    for (std::size_t col = 0; col < bnd_idx.size(); ++col) {
      Vec e(bnd_idx.size(), 0.0);
      e[col] = 1.0;
      const Vec jcol = jfb * e;
      const Vec solved = jff_lu->solve(jcol);
      const Vec mcol = jbf * solved;
      for (std::size_t i = 0; i < bnd_idx.size(); ++i) mtil(i, col) -= mcol[i];
    }
  }

  // Per-coordinate change of variables y = d + S z with z >= 0; two-sided
  // bounds take the lower shift plus one extra variable and the coupling
  // rows of the doubling transformation.
  const std::size_t nb = bnd_idx.size();
  std::vector<double> sign(nb), shift(nb);
  std::vector<std::size_t> two_sided;  // positions inside bnd_idx
  for (std::size_t i = 0; i < nb; ++i) {
    const double lo = box.lower[bnd_idx[i]];
    const double up = box.upper[bnd_idx[i]];
    if (lo > -kInf && up < kInf) {
      sign[i] = 1.0;
      shift[i] = lo;
      two_sided.push_back(i);
    } else if (lo > -kInf) {
      sign[i] = 1.0;
      shift[i] = lo;
    } else {
      sign[i] = -1.0;
      shift[i] = up;
    }
  }

  const std::size_t nt = two_sided.size();
  const std::size_t m = nb + nt;
  DenseMatrix lcp_m(m, m);
  Vec lcp_q(m, 0.0);
  for (std::size_t i = 0; i < nb; ++i) {
    double qi = ctil[i];
    for (std::size_t jj = 0; jj < nb; ++jj) {
      qi += mtil(i, jj) * shift[jj];
      lcp_m(i, jj) = sign[i] * mtil(i, jj) * sign[jj];
    }
    lcp_q[i] = sign[i] * qi;
  }
  for (std::size_t t = 0; t < nt; ++t) {
    const std::size_t i = two_sided[t];
    lcp_m(i, nb + t) = 1.0;   // w_i = g_i + zeta_t
    lcp_m(nb + t, i) = -1.0;  // w2_t = (u_i - l_i) - z_i
    lcp_q[nb + t] = box.upper[bnd_idx[i]] - box.lower[bnd_idx[i]];
  }

  AviSolution inner = lemke(LCPInstance(std::move(lcp_m), std::move(lcp_q)), max_pivots);
  sol.status = inner.status;
  sol.pivots = inner.pivots;
  sol.complementarityResidual = inner.complementarityResidual;
  if (inner.status != AviStatus::Solved) {
    sol.detail = "reduced LCP: " + to_string(inner.status) +
                 (inner.detail.empty() ? "" : " (" + inner.detail + ")");
    return sol;
  }

  Vec yb(nb);
  for (std::size_t i = 0; i < nb; ++i) yb[i] = shift[i] + sign[i] * inner.y[i];
  for (std::size_t i = 0; i < nb; ++i) sol.y[bnd_idx[i]] = yb[i];
  if (!free_idx.empty()) {
    const Vec rhs_correction = jfb * yb;
    Vec rhs(free_idx.size());
    for (std::size_t i = 0; i < free_idx.size(); ++i) rhs[i] = -(cf[i] + rhs_correction[i]);
    const Vec yf = jff_lu->solve(rhs);
    for (std::size_t i = 0; i < free_idx.size(); ++i) sol.y[free_idx[i]] = yf[i];
  }

  if (affine_residual(j, c, box, sol.y) > 1e-8) {
    sol.status = AviStatus::Singular;
    sol.detail = "back-substituted solution fails the natural-map residual check";
  }
  return sol;
}

}  // namespace geqnewton
