#include "geqnewton/driver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "geqnewton/errors.hpp"

namespace geqnewton {

std::string to_string(SolveOutcome o) {
  switch (o) {
    case SolveOutcome::Converged: return "Converged";
    case SolveOutcome::MaxIter: return "MaxIter";
    case SolveOutcome::SubproblemFailure: return "SubproblemFailure";
  }
  return "?";
}

AviSolution josephy_newton_step(const GEProblem& problem, const Vec& x, std::size_t max_pivots) {
  const DenseMatrix jac = problem.map.evalJ(x);
  // 0 in f(x_k) + f'(x_k)(y - x_k) + N_B(y), rewritten as c + J y + N_B(y)
  // with c = f(x_k) - f'(x_k) x_k.
  const Vec c = problem.map.evalF(x) - jac * x;
  return solve_affine_ge(jac, c, problem.box, max_pivots);
}

IterationHistory josephy_newton(const GEProblem& problem, const SolverOptions& opts) {
  if (problem.x0.size() != problem.map.dim || problem.box.dim() != problem.map.dim) {
    throw DimensionError("josephy_newton: problem dimensions inconsistent");
  }
  IterationHistory history;
  Vec x = problem.x0;
  history.iterates.push_back(x);

  if (natural_residual(problem, x) <= opts.tolResidual) {
    history.outcome = SolveOutcome::Converged;
    return history;
  }

  history.outcome = SolveOutcome::MaxIter;
  for (std::size_t k = 0; k < opts.maxIter; ++k) {
    AviSolution sub = josephy_newton_step(problem, x, opts.subMaxPivots);
    if (sub.status != AviStatus::Solved) {
      std::ostringstream os;
      os << "subproblem " << to_string(sub.status) << " at iteration " << k
         << (sub.detail.empty() ? "" : ": " + sub.detail);
      history.failureDetail = os.str();
      history.subStats.push_back(std::move(sub));
      history.outcome = SolveOutcome::SubproblemFailure;
      return history;
    }
    const Vec xn = sub.y;
    const double step = inf_norm(xn - x);
    const double res = natural_residual(problem, xn);
    history.iterates.push_back(xn);
    history.steps.push_back(step);
    history.residuals.push_back(res);
    history.distToX1.push_back(inf_norm(xn - history.iterates[1]));
    history.subStats.push_back(std::move(sub));
    x = xn;
    if (res <= opts.tolResidual || step <= opts.tolStep) {
      history.outcome = SolveOutcome::Converged;
      return history;
    }
  }
  return history;
}

Certificate certify(const IterationHistory& history, const GEProblem& problem,
                    const MajorantFunction& psi) {
  if (history.iterates.size() < 2) {
    throw InsufficientDataError("certify: history needs at least two iterates");
  }

  Certificate cert;
  cert.conditionReport = check_conditions(psi);
  if (!cert.conditionReport.certifiable()) {
    const auto& r = cert.conditionReport;
    std::string which = !r.h1 ? "h1: " + r.h1Text : !r.h2 ? "h2: " + r.h2Text : "h3: " + r.h3Text;
    throw NoCertificateError("certificate hypothesis violated, " + which);
  }

  cert.tStar = smallest_root(psi);
  cert.uniquenessRadius = cert.tStar;
  cert.rates = rate_constants(psi);
  cert.b = inf_norm(history.iterates[1] - history.iterates[0]);
  cert.initialConditionOk = cert.b <= psi.psi(0.0) + 1e-12 * std::max(1.0, psi.psi(0.0));

  // Scalar trace aligned index-by-index with the recorded iterates; if the
  // scalar iteration hits t* early (up to rounding) the last value repeats.
  cert.scalarTrace = scalar_sequence(psi, history.iterates.size() - 1, 0.0);
  std::vector<double> t = cert.scalarTrace.t;
  while (t.size() < history.iterates.size()) t.push_back(t.back());

  const Vec& x_hat = history.iterates.back();
  bool steps_ok = true;
  for (std::size_t k = 0; k < history.steps.size(); ++k) {
    const bool ok = history.steps[k] <= (t[k + 1] - t[k]) + 1e-9;
    cert.stepBoundOk.push_back(ok);
    steps_ok = steps_ok && ok;
  }
  cert.terminalBoundOk = true;
  for (std::size_t k = 0; k < history.iterates.size(); ++k) {
    const double envelope = cert.tStar - t[k];
    cert.errorEnvelope.push_back(envelope);
    const double slack = envelope - inf_norm(x_hat - history.iterates[k]);
    cert.terminalSlack.push_back(slack);
    if (slack < -1e-9) cert.terminalBoundOk = false;
  }

  cert.assumptions.push_back(
      "r_x0, r_0, r_x1 (strong-regularity radii) assumed to admit the run; not computable");
  cert.assumptions.push_back("side conditions t* <= r_x0 and psi''(t*) psi(0)^2 / (2 lambda) < r_0 "
                             "declared, not verified");
  if (!problem.box.all_free_box()) {
    std::ostringstream os;
    os << "strong regularity of the partial linearization over the box assumed with modulus "
          "lambda = "
       << problem.lambda << " (user-supplied)";
    cert.assumptions.push_back(os.str());
  }
  cert.assumptions.push_back("terminal bounds use the final iterate as proxy for x*");

  cert.certified = cert.initialConditionOk && steps_ok && cert.terminalBoundOk;
  return cert;
}

OrderEstimate estimate_order(const IterationHistory& history) {
  const std::size_t m = history.iterates.size();
  if (m < 4) throw InsufficientDataError("estimate_order: need at least 4 iterates");

  const Vec& x_final = history.iterates.back();
  const double floor_err =
      100.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, inf_norm(x_final));
  std::vector<double> errors(m - 1);
  for (std::size_t k = 0; k + 1 < m; ++k) errors[k] = inf_norm(history.iterates[k] - x_final);

  // Last triple with all errors positive above the noise floor and strictly
  // decreasing.
  for (std::size_t k = errors.size(); k-- > 2;) {
    const double e0 = errors[k - 2], e1 = errors[k - 1], e2 = errors[k];
    if (e2 > floor_err && e1 > e2 && e0 > e1) {
      OrderEstimate est;
      est.order = std::log(e2 / e1) / std::log(e1 / e0);
      if (est.order >= 1.5) est.quadConstant = e2 / (e1 * e1);
      return est;
    }
  }
  throw InsufficientDataError("estimate_order: no usable strictly decreasing error triple");
}

}  // namespace geqnewton
