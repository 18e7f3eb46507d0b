#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "geqnewton/driver.hpp"
#include "geqnewton/errors.hpp"
#include "geqnewton/problem_io.hpp"

namespace {

using namespace geqnewton;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitNoCertificate = 2;

void print_iteration_table(const IterationHistory& history) {
  std::printf("%4s  %22s  %22s  %7s\n", "k", "||step||_inf", "residual", "pivots");
  for (std::size_t k = 0; k < history.steps.size(); ++k) {
    std::printf("%4zu  %22.15e  %22.15e  %7zu\n", k + 1, history.steps[k], history.residuals[k],
                history.subStats[k].pivots);
  }
  std::printf("outcome: %s\n", to_string(history.outcome).c_str());
  if (!history.failureDetail.empty()) std::printf("detail: %s\n", history.failureDetail.c_str());
}

int run_solve(const std::string& file, const std::string& out_dir, const SolverOptions& opts) {
  const ParsedProblem parsed = parse_problem(file);
  const IterationHistory history = josephy_newton(parsed.problem, opts);
  print_iteration_table(history);
  std::filesystem::create_directories(out_dir);
  atomic_write((std::filesystem::path(out_dir) / "history.csv").string(),
               history_to_csv(history));
  return history.outcome == SolveOutcome::Converged ? kExitOk : kExitFailure;
}

int run_certify(const std::string& file, const std::string& out_dir, const SolverOptions& opts,
                std::uint64_t seed, std::size_t samples) {
  const ParsedProblem parsed = parse_problem(file);
  const IterationHistory history = josephy_newton(parsed.problem, opts);
  print_iteration_table(history);
  std::filesystem::create_directories(out_dir);
  atomic_write((std::filesystem::path(out_dir) / "history.csv").string(),
               history_to_csv(history));
  if (history.outcome != SolveOutcome::Converged) return kExitFailure;

  const MajorantConditionReport mc =
      verify_majorant_condition(parsed.problem, parsed.psi, samples, seed);
  std::printf("majorant condition: %zu/%zu samples pass, worst margin %.3e\n", mc.passed,
              mc.samples, mc.worstMargin);

  Certificate cert;
  try {
    cert = certify(history, parsed.problem, parsed.psi);
  } catch (const NoCertificateError& e) {
    std::fprintf(stderr, "no certificate: %s\n", e.what());
    return kExitNoCertificate;
  }
  nlohmann::json report = certificate_to_json(cert);
  report["majorant_condition"] = {
      {"samples", mc.samples}, {"passed", mc.passed}, {"worst_margin", mc.worstMargin}};
  atomic_write((std::filesystem::path(out_dir) / "certificate.json").string(),
               report.dump(2) + "\n");

  std::printf("t* = %.15g, b = %.15g, certified: %s\n", cert.tStar, cert.b,
              cert.certified ? "yes" : "no");
  return cert.certified && mc.allPassed() ? kExitOk : kExitNoCertificate;
}

int run_scalar(const std::string& kind, double k_const, double gamma, double b, double lambda) {
  MajorantFunction psi = kind == "lipschitz" ? MajorantFunction::lipschitz(k_const, b, lambda)
                                             : MajorantFunction::smale(gamma, b, lambda);
  const HConditionsReport report = check_conditions(psi);
  std::printf("h1: %s (%s)\n", report.h1 ? "ok" : "FAIL", report.h1Text.c_str());
  std::printf("h2: %s (%s)\n", report.h2 ? "ok" : "FAIL", report.h2Text.c_str());
  std::printf("h3: %s (%s)\n", report.h3 ? "ok" : "FAIL", report.h3Text.c_str());
  std::printf("h4: %s (%s)\n", report.h4 ? "ok" : "FAIL", report.h4Text.c_str());
  std::printf("existence condition: %s (%s)\n", report.kantorovichOk ? "ok" : "violated",
              report.kantorovichText.c_str());
  if (!report.certifiable()) {
    std::fprintf(stderr, "no certificate: %s violated\n", report.kantorovichText.c_str());
    return kExitNoCertificate;
  }
  const double t_star = smallest_root(psi);
  const ScalarTrace trace = scalar_sequence(psi, 64, 1e-15 * std::max(1.0, b));
  const RateConstants rates = rate_constants(psi);
  std::printf("t* = %.17g\n", t_star);
  std::printf("trace (%zu entries, converged: %s):\n", trace.t.size(),
              trace.converged ? "yes" : "no");
  for (std::size_t i = 0; i < trace.t.size(); ++i) {
    std::printf("  t_%zu = %.17g  psi = %.3e\n", i, trace.t[i], trace.residuals[i]);
  }
  std::printf("linear rate: %.3g\n", rates.linear);
  if (rates.quadratic) {
    std::printf("quadratic rate constant: %.17g\n", *rates.quadratic);
  } else {
    std::printf("quadratic rate constant: n/a (h4 fails)\n");
  }
  return kExitOk;
}

int run_lcp(const std::string& file, std::size_t max_pivots) {
  const LCPInstance lcp = parse_lcp(file);
  const AviSolution sol = lemke(lcp, max_pivots);
  std::printf("status: %s (%zu pivots)\n", to_string(sol.status).c_str(), sol.pivots);
  if (sol.status == AviStatus::Solved) {
    const Vec w = lcp.m * sol.y + lcp.q;
    std::printf("z =");
    for (double v : sol.y) std::printf(" %.17g", v);
    std::printf("\nw =");
    for (double v : w) std::printf(" %.17g", v);
    std::printf("\ncomplementarity residual: %.3e\n", sol.complementarityResidual);
    return kExitOk;
  }
  if (!sol.detail.empty()) std::fprintf(stderr, "%s\n", sol.detail.c_str());
  return kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Josephy-Newton solver for generalized equations with Kantorovich certificates"};
  app.require_subcommand(1);

  std::string file, out_dir = ".";
  SolverOptions opts;
  std::uint64_t seed = 12345;
  std::size_t samples = 2048;
  std::size_t max_pivots = 0;
  std::string kind;
  double k_const = 0.0, gamma = 0.0, b = 0.0, lambda = 1.0;

  CLI::App* solve = app.add_subcommand("solve", "run the Josephy-Newton iteration");
  solve->add_option("problem", file, "problem JSON file")->required();
  solve->add_option("--out", out_dir, "output directory");
  solve->add_option("--tol-res", opts.tolResidual, "residual tolerance");
  solve->add_option("--tol-step", opts.tolStep, "step-size tolerance");
  solve->add_option("--max-iter", opts.maxIter, "iteration cap");

  CLI::App* cert = app.add_subcommand("certify", "solve and emit a Kantorovich certificate");
  cert->add_option("problem", file, "problem JSON file")->required();
  cert->add_option("--out", out_dir, "output directory");
  cert->add_option("--seed", seed, "sampling seed for the majorant-condition verifier");
  cert->add_option("--samples", samples, "sample count for the verifier");
  cert->add_option("--tol-res", opts.tolResidual, "residual tolerance");
  cert->add_option("--tol-step", opts.tolStep, "step-size tolerance");
  cert->add_option("--max-iter", opts.maxIter, "iteration cap");

  CLI::App* scalar = app.add_subcommand("scalar", "majorant-only analysis");
  scalar->add_option("--kind", kind, "lipschitz or smale")
      ->required()
      ->check(CLI::IsMember({"lipschitz", "smale"}));
  scalar->add_option("--K", k_const, "curvature constant (lipschitz)");
  scalar->add_option("--gamma", gamma, "analytic constant (smale)");
  scalar->add_option("--b", b, "initial-step bound")->required();
  scalar->add_option("--lambda", lambda, "regularity modulus");

  CLI::App* lcp_cmd = app.add_subcommand("lcp", "solve one LCP by complementary pivoting");
  lcp_cmd->add_option("file", file, "LCP JSON file (fields M, q)")->required();
  lcp_cmd->add_option("--max-pivots", max_pivots, "pivot cap (default 50*n)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve(file, out_dir, opts);
    if (cert->parsed()) return run_certify(file, out_dir, opts, seed, samples);
    if (scalar->parsed()) {
      if (kind == "lipschitz" && !(k_const > 0.0)) {
        std::fprintf(stderr, "scalar --kind lipschitz requires --K > 0\n");
        return kExitFailure;
      }
      if (kind == "smale" && !(gamma > 0.0)) {
        std::fprintf(stderr, "scalar --kind smale requires --gamma > 0\n");
        return kExitFailure;
      }
      return run_scalar(kind, k_const, gamma, b, lambda);
    }
    if (lcp_cmd->parsed()) return run_lcp(file, max_pivots);
  } catch (const NoCertificateError& e) {
    std::fprintf(stderr, "no certificate: %s\n", e.what());
    return kExitNoCertificate;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
  return kExitFailure;
}
