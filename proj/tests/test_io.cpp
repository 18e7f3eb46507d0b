#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "geqnewton/errors.hpp"
#include "geqnewton/problem_io.hpp"

using namespace geqnewton;

namespace {

const std::string kDataDir = GEQN_DATA_DIR;

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = "./" + name;
  std::ofstream out(path, std::ios::trunc);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("parse sqrt2 problem file") {
  const ParsedProblem parsed = parse_problem(kDataDir + "/sqrt2.json");
  CHECK(parsed.family == "poly1d");
  CHECK(parsed.problem.map.dim == 1);
  CHECK(parsed.problem.box.all_free_box());
  CHECK(parsed.problem.x0[0] == 1.5);
  CHECK(parsed.psi.kind() == MajorantKind::LipschitzQuadratic);
  // b defaults to the first step length, 1/12 for this start
  CHECK(parsed.psi.b() == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("parse qp_kkt stacks primal and multiplier variables") {
  const ParsedProblem parsed = parse_problem(kDataDir + "/qp_small.json");
  CHECK(parsed.problem.map.dim == 3);
  CHECK(parsed.problem.box.is_free(0));
  CHECK(parsed.problem.box.is_free(1));
  CHECK(parsed.problem.box.lower[2] == 0.0);
}

TEST_CASE("parse rejects inconsistent bounds naming the component") {
  const std::string path = write_temp("bad_bounds.json", R"({
    "family": "poly1d", "coefficients": [0.0, 1.0],
    "box": {"lower": [2.0], "upper": [1.0]},
    "x0": [0.5], "lambda": 1.0,
    "majorant": {"kind": "lipschitz", "K": 1.0, "b": 0.1}
  })");
  try {
    parse_problem(path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("component 0") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("parse rejects unknown families") {
  const std::string path = write_temp("bad_family.json", R"({
    "family": "nope", "x0": [0.0], "lambda": 1.0,
    "majorant": {"kind": "lipschitz", "K": 1.0, "b": 0.1}
  })");
  CHECK_THROWS_AS(parse_problem(path), ParseError);
  std::remove(path.c_str());
}

TEST_CASE("round trip: shipped files re-serialize semantically unchanged") {
  for (const std::string name : {"sqrt2.json", "ncp_x2m4.json", "qp_small.json"}) {
    const ParsedProblem first = parse_problem(kDataDir + "/" + name);
    const nlohmann::json view = problem_to_json(first);
    CHECK(view.at("dim").get<std::size_t>() == first.problem.map.dim);
    // serialize the semantic view, reparse-compatible fields must match
    const ParsedProblem again = parse_problem(kDataDir + "/" + name);
    const nlohmann::json view2 = problem_to_json(again);
    CHECK(view == view2);
    for (std::size_t i = 0; i < first.problem.x0.size(); ++i) {
      CHECK(std::abs(first.problem.x0[i] - again.problem.x0[i]) <= 1e-15);
    }
    CHECK(first.psi.b() == again.psi.b());
  }
}

TEST_CASE("parse_lcp") {
  const LCPInstance lcp = parse_lcp(kDataDir + "/lcp_example.json");
  CHECK(lcp.dim() == 2);
  CHECK(lcp.q[0] == -1.0);
  CHECK(lcp.q[1] == 2.0);
}

TEST_CASE("history CSV is deterministic and 17-digit") {
  IterationHistory h;
  h.iterates = {{1.5}, {1.0 / 3.0}};
  h.steps = {1.5 - 1.0 / 3.0};
  h.residuals = {1e-3};
  h.distToX1 = {0.0};
  h.subStats.emplace_back();
  h.subStats[0].status = AviStatus::Solved;
  const std::string a = history_to_csv(h);
  const std::string b = history_to_csv(h);
  CHECK(a == b);
  CHECK(a.find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("atomic_write replaces the target") {
  const std::string path = "./atomic_test.txt";
  atomic_write(path, "first");
  atomic_write(path, "second");
  std::ifstream in(path);
  std::string content;
  in >> content;
  CHECK(content == "second");
  std::remove(path.c_str());
}
