#include "geqnewton/problem_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "geqnewton/errors.hpp"

namespace geqnewton {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
  throw ParseError("problem file: field '" + field + "': " + msg);
}

double parse_bound(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    fail(field, "bound string must be 'inf' or '-inf', got '" + s + "'");
  }
  fail(field, "bound must be a number or an 'inf'/'-inf' string");
}

json bound_to_json(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return v;
}

Vec parse_vector(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of numbers");
  Vec v;
  for (const auto& e : j) {
    if (!e.is_number()) fail(field, "expected numeric entries");
    v.push_back(e.get<double>());
  }
  return v;
}

DenseMatrix parse_matrix(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    fail(field, "expected an array of equally sized rows");
  }
  const std::size_t rows = j.size();
  const std::size_t cols = j.front().size();
  DenseMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) fail(field, "ragged rows");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number()) fail(field, "expected numeric entries");
      m(i, k) = j[i][k].get<double>();
    }
  }
  return m;
}

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("'") + path + "': " + e.what());
  }
  return j;
}

Box parse_box(const json& j, std::size_t dim) {
  if (!j.contains("lower") || !j.contains("upper")) fail("box", "needs 'lower' and 'upper'");
  const json& lo = j.at("lower");
  const json& up = j.at("upper");
  if (!lo.is_array() || !up.is_array() || lo.size() != dim || up.size() != dim) {
    fail("box", "bound arrays must have length " + std::to_string(dim));
  }
  Vec lower(dim), upper(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    lower[i] = parse_bound(lo[i], "box.lower[" + std::to_string(i) + "]");
    upper[i] = parse_bound(up[i], "box.upper[" + std::to_string(i) + "]");
    if (!(lower[i] <= upper[i])) {
      fail("box", "lower > upper at component " + std::to_string(i));
    }
  }
  return Box(std::move(lower), std::move(upper));
}

}  // namespace

ParsedProblem parse_problem(const std::string& path) {
  const json j = load_file(path);
  if (!j.contains("family")) fail("family", "missing");
  const std::string family = j.at("family").get<std::string>();

  SmoothMap map;
  Box default_box;
  if (family == "poly1d") {
    map = make_poly1d(parse_vector(j.at("coefficients"), "coefficients"));
    default_box = Box::all_free(1);
  } else if (family == "ncp_poly") {
    const json& rows = j.at("coefficients");
    if (!rows.is_array()) fail("coefficients", "expected array of coefficient rows");
    std::vector<std::vector<double>> coeffs;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      coeffs.push_back(parse_vector(rows[i], "coefficients[" + std::to_string(i) + "]"));
    }
    map = make_ncp_poly(coeffs);
    default_box = Box::nonneg(map.dim);
  } else if (family == "qp_kkt") {
    const DenseMatrix q = parse_matrix(j.at("Q"), "Q");
    const Vec c = parse_vector(j.at("c"), "c");
    const DenseMatrix a = parse_matrix(j.at("A"), "A");
    const Vec b = parse_vector(j.at("b"), "b");
    map = make_qp_kkt(q, c, a, b);
    // variables (x, mu): x free, multipliers nonnegative
    const double inf = kInf;
    Vec lower(map.dim, -inf), upper(map.dim, inf);
    for (std::size_t i = q.rows; i < map.dim; ++i) lower[i] = 0.0;
    default_box = Box(std::move(lower), std::move(upper));
  } else {
    fail("family", "unknown family '" + family + "'");
  }

  ParsedProblem parsed{GEProblem{}, MajorantFunction::lipschitz(1.0, 1.0, 1.0), family};
  parsed.problem.map = map;
  parsed.problem.box = j.contains("box") ? parse_box(j.at("box"), map.dim) : default_box;
  parsed.problem.x0 = parse_vector(j.at("x0"), "x0");
  if (parsed.problem.x0.size() != map.dim) {
    fail("x0", "length " + std::to_string(parsed.problem.x0.size()) + ", expected " +
                   std::to_string(map.dim));
  }
  if (!j.contains("lambda")) fail("lambda", "missing");
  parsed.problem.lambda = j.at("lambda").get<double>();
  if (!(parsed.problem.lambda > 0.0)) fail("lambda", "must be positive");

  if (!j.contains("majorant")) fail("majorant", "missing");
  const json& mj = j.at("majorant");
  const std::string kind = mj.at("kind").get<std::string>();

  double b_value;
  if (mj.contains("b")) {
    b_value = mj.at("b").get<double>();
    parsed.problem.bOverride = b_value;
  } else {
    // b defaults to the first step length ||x_1 - x_0||_inf.
    const AviSolution first = josephy_newton_step(parsed.problem, parsed.problem.x0);
    if (first.status != AviStatus::Solved) {
      fail("majorant.b", "omitted and the defaulting subproblem solve failed (" +
                             to_string(first.status) + ")");
    }
    b_value = inf_norm(first.y - parsed.problem.x0);
    if (b_value <= 0.0) fail("majorant.b", "omitted and the first step has zero length");
  }

  if (kind == "lipschitz") {
    const double k = mj.at("K").get<double>();
    parsed.problem.lipK = k;
    parsed.psi = MajorantFunction::lipschitz(k, b_value, parsed.problem.lambda);
  } else if (kind == "smale") {
    const double g = mj.at("gamma").get<double>();
    parsed.problem.smaleGamma = g;
    parsed.psi = MajorantFunction::smale(g, b_value, parsed.problem.lambda);
  } else {
    fail("majorant.kind", "must be 'lipschitz' or 'smale'");
  }
  return parsed;
}

LCPInstance parse_lcp(const std::string& path) {
  const json j = load_file(path);
  const DenseMatrix m = parse_matrix(j.at("M"), "M");
  const Vec q = parse_vector(j.at("q"), "q");
  if (m.rows != m.cols || m.rows != q.size()) fail("M/q", "dimensions inconsistent");
  return LCPInstance(m, q);
}

json problem_to_json(const ParsedProblem& parsed) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["family"] = parsed.family;
  j["dim"] = parsed.problem.map.dim;
  j["x0"] = parsed.problem.x0;
  j["lambda"] = parsed.problem.lambda;
  json lo = json::array(), up = json::array();
  for (std::size_t i = 0; i < parsed.problem.box.dim(); ++i) {
    lo.push_back(bound_to_json(parsed.problem.box.lower[i]));
    up.push_back(bound_to_json(parsed.problem.box.upper[i]));
  }
  j["box"] = {{"lower", lo}, {"upper", up}};
  json mj;
  mj["kind"] = parsed.psi.kind() == MajorantKind::LipschitzQuadratic ? "lipschitz" : "smale";
  if (parsed.psi.kind() == MajorantKind::LipschitzQuadratic) mj["K"] = parsed.psi.curvatureK();
  if (parsed.psi.kind() == MajorantKind::SmaleAnalytic) mj["gamma"] = parsed.psi.gamma();
  mj["b"] = parsed.psi.b();
  j["majorant"] = mj;
  return j;
}

json certificate_to_json(const Certificate& cert) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["certified"] = cert.certified;
  j["t_star"] = cert.tStar;
  j["uniqueness_radius"] = cert.uniquenessRadius;
  j["b"] = cert.b;
  j["initial_condition_ok"] = cert.initialConditionOk;
  j["terminal_bound_ok"] = cert.terminalBoundOk;
  j["scalar_trace"] = cert.scalarTrace.t;
  j["error_envelope"] = cert.errorEnvelope;
  j["terminal_slack"] = cert.terminalSlack;
  j["step_bound_ok"] = cert.stepBoundOk;
  j["rate_linear"] = cert.rates.linear;
  if (cert.rates.quadratic) j["rate_quadratic"] = *cert.rates.quadratic;
  json cond;
  cond["h1"] = cert.conditionReport.h1;
  cond["h2"] = cert.conditionReport.h2;
  cond["h3"] = cert.conditionReport.h3;
  cond["h4"] = cert.conditionReport.h4;
  cond["kantorovich_ok"] = cert.conditionReport.kantorovichOk;
  cond["detail"] = {cert.conditionReport.h1Text, cert.conditionReport.h2Text,
                    cert.conditionReport.h3Text, cert.conditionReport.h4Text};
  j["conditions"] = cond;
  j["assumptions"] = cert.assumptions;
  return j;
}

std::string history_to_csv(const IterationHistory& history) {
  std::ostringstream os;
  const std::size_t n = history.iterates.empty() ? 0 : history.iterates.front().size();
  os << "k,step_inf,residual,pivots,sub_status,dist_to_x1";
  for (std::size_t i = 0; i < n; ++i) os << ",x" << i;
  os << "\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  for (std::size_t k = 0; k < history.iterates.size(); ++k) {
    os << k;
    if (k >= 1 && k - 1 < history.steps.size()) {
      os << "," << num(history.steps[k - 1]) << "," << num(history.residuals[k - 1]) << ","
         << history.subStats[k - 1].pivots << "," << to_string(history.subStats[k - 1].status)
         << "," << num(history.distToX1[k - 1]);
    } else {
      os << ",,,,,";
    }
    for (double v : history.iterates[k]) os << "," << num(v);
    os << "\n";
  }
  return os.str();
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace geqnewton
