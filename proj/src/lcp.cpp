#include "geqnewton/lcp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geqnewton/errors.hpp"

namespace geqnewton {

LCPInstance::LCPInstance(DenseMatrix mat, Vec rhs) : m(std::move(mat)), q(std::move(rhs)) {
  if (m.rows != m.cols || m.rows != q.size()) {
    throw DimensionError("LCPInstance: M must be square with matching q");
  }
}

std::string to_string(AviStatus s) {
  switch (s) {
    case AviStatus::Solved: return "Solved";
    case AviStatus::RayTermination: return "RayTermination";
    case AviStatus::Singular: return "Singular";
    case AviStatus::MaxPivots: return "MaxPivots";
  }
  return "?";
}

namespace {

// Fill w = Mz + q and the worst componentwise min(z_i, w_i).
double complementarity_residual(const LCPInstance& lcp, const Vec& z) {
  const Vec w = lcp.m * z + lcp.q;
  double worst = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    worst = std::max(worst, std::abs(std::min(z[i], w[i])));
  }
  return worst;
}

double feasibility_residual(const LCPInstance& lcp, const Vec& z) {
  const Vec w = lcp.m * z + lcp.q;
  double worst = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    worst = std::max({worst, -z[i], -w[i]});
  }
  return std::max(worst, 0.0);
}

// Lexicographic comparison of candidate pivot rows. Row vectors are
// (rhs, B^{-1} row) scaled by the pivot entry; the w-columns of the tableau
// carry B^{-1}.
struct LexRow {
  double ratio;
  const double* wcols;
  double pivot;
};

bool lex_less(const LexRow& a, const LexRow& b, std::size_t n) {
  if (a.ratio != b.ratio) return a.ratio < b.ratio;
  for (std::size_t j = 0; j < n; ++j) {
    const double va = a.wcols[j] / a.pivot;
    const double vb = b.wcols[j] / b.pivot;
    if (va != vb) return va < vb;
  }
  return false;
}

}  // namespace

AviSolution lemke(const LCPInstance& lcp, std::size_t max_pivots) {
  const std::size_t n = lcp.dim();
  AviSolution sol;
  sol.y.assign(n, 0.0);
  if (max_pivots == 0) max_pivots = 50 * std::max<std::size_t>(n, 1);

  // Trivial case: q >= 0 means z = 0 is complementary.
  if (std::all_of(lcp.q.begin(), lcp.q.end(), [](double v) { return v >= 0.0; })) {
    sol.status = AviStatus::Solved;
    sol.complementarityResidual = complementarity_residual(lcp, sol.y);
    return sol;
  }

  // Tableau rows: [w (=B^{-1}) | z | z0 | rhs], equations A*vars = rhs with
  // vars = (w, z, z0). Basic columns stay at identity under Gauss-Jordan.
  const std::size_t ncols = 2 * n + 2;
  const std::size_t z0_col = 2 * n;
  const std::size_t rhs_col = 2 * n + 1;
  std::vector<std::vector<double>> tab(n, std::vector<double>(ncols, 0.0));
  std::vector<std::size_t> basis(n);
  for (std::size_t i = 0; i < n; ++i) {
    tab[i][i] = 1.0;
    for (std::size_t j = 0; j < n; ++j) tab[i][n + j] = -lcp.m(i, j);
    tab[i][z0_col] = -1.0;
    tab[i][rhs_col] = lcp.q[i];
    basis[i] = i;  // w_i
  }
  const double pivot_floor = 1e-12 * (1.0 + inf_norm(lcp.m));

  auto do_pivot = [&](std::size_t row, std::size_t col) {
    const double piv = tab[row][col];
    for (std::size_t j = 0; j < ncols; ++j) tab[row][j] /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row) continue;
      const double factor = tab[i][col];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < ncols; ++j) tab[i][j] -= factor * tab[row][j];
    }
  };

  // Initial pivot: z0 enters; leaving row is the lexicographic minimizer of
  // (q_i, B^{-1} row), which drives all rhs entries nonnegative.
  std::size_t row = 0;
  {
    LexRow best{tab[0][rhs_col], tab[0].data(), 1.0};
    for (std::size_t i = 1; i < n; ++i) {
      LexRow cand{tab[i][rhs_col], tab[i].data(), 1.0};
      if (lex_less(cand, best, n)) {
        best = cand;
        row = i;
      }
    }
  }
  std::size_t leaving = basis[row];
  basis[row] = z0_col;
  do_pivot(row, z0_col);
  sol.pivots = 1;

  while (sol.pivots < max_pivots) {
    // Complementary rule: the complement of the variable that just left.
    const std::size_t entering = leaving < n ? n + leaving : leaving - n;

    // Lexicographic minimum ratio test over rows with a positive entry.
    bool found = false;
    std::size_t pivot_row = 0;
    LexRow best{0.0, nullptr, 1.0};
    for (std::size_t i = 0; i < n; ++i) {
      const double d = tab[i][entering];
      if (d <= pivot_floor) continue;
      LexRow cand{tab[i][rhs_col] / d, tab[i].data(), d};
      if (!found || lex_less(cand, best, n)) {
        best = cand;
        pivot_row = i;
        found = true;
      }
    }
    if (!found) {
      // Check whether a sub-threshold positive entry was the only candidate.
      for (std::size_t i = 0; i < n; ++i) {
        if (tab[i][entering] > 0.0) {
          sol.status = AviStatus::Singular;
          sol.detail = "degenerate pivot column (entries below threshold)";
          return sol;
        }
      }
      sol.status = AviStatus::RayTermination;
      sol.detail = "unbounded ray while pivoting in variable " + std::to_string(entering);
      return sol;
    }

    leaving = basis[pivot_row];
    basis[pivot_row] = entering;
    do_pivot(pivot_row, entering);
    ++sol.pivots;

    if (leaving == z0_col) {
      for (std::size_t i = 0; i < n; ++i) {
        if (basis[i] >= n && basis[i] < 2 * n) {
          sol.y[basis[i] - n] = std::max(tab[i][rhs_col], 0.0);
        }
      }
      sol.complementarityResidual = complementarity_residual(lcp, sol.y);
      if (sol.complementarityResidual <= 1e-9 && feasibility_residual(lcp, sol.y) <= 1e-9) {
        sol.status = AviStatus::Solved;
      } else {
        sol.status = AviStatus::Singular;
        sol.detail = "pivoting finished but residual checks failed";
      }
      return sol;
    }
  }

  sol.status = AviStatus::MaxPivots;
  sol.detail = "pivot budget " + std::to_string(max_pivots) + " exhausted";
  return sol;
}

std::vector<Vec> lcp_enumerate(const LCPInstance& lcp) {
  const std::size_t n = lcp.dim();
  if (n > 20) throw ParameterError("lcp_enumerate: dimension guard n <= 20 violated");

  std::vector<Vec> solutions;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) active.push_back(i);
    }
    Vec z(n, 0.0);
    if (!active.empty()) {
      DenseMatrix sub(active.size(), active.size());
      Vec rhs(active.size());
      for (std::size_t i = 0; i < active.size(); ++i) {
        rhs[i] = -lcp.q[active[i]];
        for (std::size_t j = 0; j < active.size(); ++j) sub(i, j) = lcp.m(active[i], active[j]);
      }
      try {
        const Vec za = lu_solve(sub, rhs);
        for (std::size_t i = 0; i < active.size(); ++i) z[active[i]] = za[i];
      } catch (const SingularMatrixError&) {
        continue;
      }
    }
    if (feasibility_residual(lcp, z) > 1e-9) continue;
    if (complementarity_residual(lcp, z) > 1e-9) continue;
    for (double& v : z) v = std::max(v, 0.0);

    const bool duplicate = std::any_of(solutions.begin(), solutions.end(), [&](const Vec& s) {
      return inf_norm(s - z) <= 1e-8;
    });
    if (!duplicate) solutions.push_back(z);
  }
  return solutions;
}

}  // namespace geqnewton
