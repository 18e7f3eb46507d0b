#ifndef GEQNEWTON_PROBLEM_IO_HPP
#define GEQNEWTON_PROBLEM_IO_HPP

#include <string>

#include "geqnewton/driver.hpp"
#include "geqnewton/geqn.hpp"
#include "geqnewton/lcp.hpp"
#include "geqnewton/majorant.hpp"

#include <nlohmann/json_fwd.hpp>

namespace geqnewton {

constexpr int kSchemaVersion = 1;

struct ParsedProblem {
  GEProblem problem;
  MajorantFunction psi;
  std::string family;
};

// Reads a problem file (JSON, see README for the schema). When the majorant
// block omits b, one subproblem solve fixes b = ||x_1 - x_0||_inf.
// Throws ParseError with field diagnostics.
ParsedProblem parse_problem(const std::string& path);

LCPInstance parse_lcp(const std::string& path);

// Semantic view of a parsed problem for round-trip checks.
nlohmann::json problem_to_json(const ParsedProblem& parsed);

nlohmann::json certificate_to_json(const Certificate& cert);

std::string history_to_csv(const IterationHistory& history);

// Write-to-temp then rename.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace geqnewton

#endif  // GEQNEWTON_PROBLEM_IO_HPP
