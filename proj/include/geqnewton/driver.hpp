#ifndef GEQNEWTON_DRIVER_HPP
#define GEQNEWTON_DRIVER_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "geqnewton/avi.hpp"
#include "geqnewton/geqn.hpp"
#include "geqnewton/majorant.hpp"

namespace geqnewton {

struct SolverOptions {
  double tolResidual = 1e-10;
  double tolStep = 1e-12;
  std::size_t maxIter = 50;
  std::size_t subMaxPivots = 0;  // 0 = per-subproblem default
};

enum class SolveOutcome { Converged, MaxIter, SubproblemFailure };

std::string to_string(SolveOutcome o);

// Record of one Josephy-Newton run. steps/residuals/subStats are one entry
// shorter than iterates: entry k describes the move x_k -> x_{k+1}.
struct IterationHistory {
  std::vector<Vec> iterates;
  std::vector<double> steps;         // ||x_{k+1} - x_k||_inf
  std::vector<double> residuals;     // natural residual at x_{k+1}
  std::vector<AviSolution> subStats;
  std::vector<double> distToX1;      // ||x_{k+1} - x_1||_inf, for inspection
  SolveOutcome outcome = SolveOutcome::MaxIter;
  std::string failureDetail;
};

// A-posteriori Kantorovich certificate: the scalar majorant trace confronted
// with the recorded iterates. Bounds involving the unknown solution use the
// final iterate as proxy.
struct Certificate {
  double tStar = 0.0;
  ScalarTrace scalarTrace;
  double b = 0.0;  // ||x_1 - x_0||_inf
  HConditionsReport conditionReport;
  bool initialConditionOk = false;        // ||x_1 - x_0|| <= psi(0)
  std::vector<bool> stepBoundOk;          // ||x_{k+1}-x_k|| <= t_{k+1}-t_k
  std::vector<double> errorEnvelope;      // t* - t_k
  std::vector<double> terminalSlack;      // (t* - t_k) - ||xhat* - x_k||
  bool terminalBoundOk = false;           // proxy bound holds for every k
  double uniquenessRadius = 0.0;          // = t*
  RateConstants rates;
  std::vector<std::string> assumptions;   // declared, not verified
  bool certified = false;
};

AviSolution josephy_newton_step(const GEProblem& problem, const Vec& x,
                                std::size_t max_pivots = 0);

IterationHistory josephy_newton(const GEProblem& problem, const SolverOptions& opts = {});

// Throws NoCertificateError when psi fails h1-h3 (or the preset existence
// inequality); a violated initial condition only marks the certificate
// failed.
Certificate certify(const IterationHistory& history, const GEProblem& problem,
                    const MajorantFunction& psi);

struct OrderEstimate {
  double order = 0.0;
  std::optional<double> quadConstant;  // e_{k+1}/e_k^2 when order >= 1.5
};

// Empirical convergence order from the last usable error triple,
// e_k = ||x_k - x_final||_inf. Throws InsufficientDataError.
OrderEstimate estimate_order(const IterationHistory& history);

}  // namespace geqnewton

#endif  // GEQNEWTON_DRIVER_HPP
