#include "geqnewton/majorant.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "geqnewton/errors.hpp"

namespace geqnewton {

namespace {

constexpr double kRootTolFactor = 1e-14;   // |psi(t)| <= 1e-14 * max(1, b)
constexpr double kDiscriminantSlack = 1e-12;  // boundary cases bK = 1/2 etc.

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << "majorant parameter " << name << " must be positive, got " << v;
    throw ParameterError(os.str());
  }
}

}  // namespace

MajorantFunction MajorantFunction::lipschitz(double curvature_k, double b, double lambda) {
  require_positive(curvature_k, "K");
  require_positive(b, "b");
  require_positive(lambda, "lambda");
  MajorantFunction m;
  m.kind_ = MajorantKind::LipschitzQuadratic;
  m.k_ = curvature_k;
  m.b_ = b;
  m.lambda_ = lambda;
  m.domain_r_ = 1.0 / curvature_k;
  return m;
}

MajorantFunction MajorantFunction::smale(double gamma, double b, double lambda) {
  require_positive(gamma, "gamma");
  require_positive(b, "b");
  require_positive(lambda, "lambda");
  MajorantFunction m;
  m.kind_ = MajorantKind::SmaleAnalytic;
  m.gamma_ = gamma;
  m.b_ = b;
  m.lambda_ = lambda;
  m.domain_r_ = 1.0 / gamma;
  return m;
}

MajorantFunction MajorantFunction::custom(ScalarFn psi, ScalarFn dpsi, ScalarFn ddpsi,
                                          double domain_r, double lambda) {
  require_positive(domain_r, "domainR");
  require_positive(lambda, "lambda");
  if (!psi || !dpsi || !ddpsi) throw ParameterError("custom majorant: missing evaluator");
  const double p0 = psi(0.0);
  const double dp0 = dpsi(0.0);
  if (!(p0 > 0.0)) throw ParameterError("custom majorant: psi(0) > 0 required (h1)");
  if (std::abs(dp0 + 1.0) > 1e-12) {
    throw ParameterError("custom majorant: psi'(0) = -1 required (h1)");
  }
  MajorantFunction m;
  m.kind_ = MajorantKind::Custom;
  m.b_ = p0;
  m.lambda_ = lambda;
  m.domain_r_ = domain_r;
  m.psi_ = std::move(psi);
  m.dpsi_ = std::move(dpsi);
  m.ddpsi_ = std::move(ddpsi);
  return m;
}

double MajorantFunction::psi(double t) const {
  switch (kind_) {
    case MajorantKind::LipschitzQuadratic:
      return 0.5 * k_ * t * t - t + b_;
    case MajorantKind::SmaleAnalytic:
      return t / (1.0 - gamma_ * t) - 2.0 * t + b_;
    case MajorantKind::Custom:
      return psi_(t);
  }
  return 0.0;
}

double MajorantFunction::dpsi(double t) const {
  switch (kind_) {
    case MajorantKind::LipschitzQuadratic:
      return k_ * t - 1.0;
    case MajorantKind::SmaleAnalytic: {
      const double u = 1.0 - gamma_ * t;
      return 1.0 / (u * u) - 2.0;
    }
    case MajorantKind::Custom:
      return dpsi_(t);
  }
  return 0.0;
}

double MajorantFunction::ddpsi(double t) const {
  switch (kind_) {
    case MajorantKind::LipschitzQuadratic:
      return k_;
    case MajorantKind::SmaleAnalytic: {
      const double u = 1.0 - gamma_ * t;
      return 2.0 * gamma_ / (u * u * u);
    }
    case MajorantKind::Custom:
      return ddpsi_(t);
  }
  return 0.0;
}

namespace {

// Bisection on [lo, hi] with psi(lo) > 0 >= psi(hi).
double bisect_root(const MajorantFunction& m, double lo, double hi, double tol) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double v = m.psi(mid);
    if (std::abs(v) <= tol || hi - lo <= 1e-16 * std::max(1.0, hi)) return mid;
    if (v > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Scan [start, R) for the first sign change and bisect. Used for Custom psi
// and as a fallback when the scalar Newton iteration stalls.
double scan_and_bisect(const MajorantFunction& m, double start, double tol) {
  const double hi = m.domainR() * (1.0 - 1e-12);
  const int grid = 4096;
  double prev_t = start;
  double prev_v = m.psi(start);
  if (prev_v <= tol) return start;
  for (int i = 1; i <= grid; ++i) {
    const double t = start + (hi - start) * static_cast<double>(i) / grid;
    const double v = m.psi(t);
    if (v <= 0.0) return bisect_root(m, prev_t, t, tol);
    prev_t = t;
    prev_v = v;
  }
  (void)prev_v;
  throw NoCertificateError("h3 violated: psi has no root in [0, R)");
}

double custom_root(const MajorantFunction& m, double tol) {
  double t = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double v = m.psi(t);
    if (std::abs(v) <= tol) return t;
    const double dp = m.dpsi(t);
    if (dp >= 0.0) return scan_and_bisect(m, t, tol);
    const double tn = t - v / dp;
    if (!(tn > t) || tn >= m.domainR()) return scan_and_bisect(m, t, tol);
    t = tn;
  }
  if (std::abs(m.psi(t)) <= tol) return t;
  return scan_and_bisect(m, t, tol);
}

struct PresetDiscriminant {
  double value = 0.0;  // clamped at 0 within slack of the boundary
  bool exists = false;
  bool interior = false;  // strictly inside the existence region (h4)
  std::string condition;
};

PresetDiscriminant preset_discriminant(const MajorantFunction& m) {
  PresetDiscriminant d;
  if (m.kind() == MajorantKind::LipschitzQuadratic) {
    const double bk = m.b() * m.curvatureK();
    double disc = 1.0 - 2.0 * bk;
    std::ostringstream os;
    os << "bK <= 1/2 (bK = " << bk << ")";
    d.condition = os.str();
    if (disc < 0.0 && disc > -kDiscriminantSlack) disc = 0.0;
    d.value = disc;
    d.exists = disc >= 0.0;
    d.interior = disc > kDiscriminantSlack;
  } else {
    const double bg = m.b() * m.gamma();
    double disc = (bg + 1.0) * (bg + 1.0) - 8.0 * bg;
    std::ostringstream os;
    os << "b*gamma <= 3 - 2*sqrt(2) (b*gamma = " << bg << ")";
    d.condition = os.str();
    const double slack = kDiscriminantSlack * std::max(1.0, (bg + 1.0) * (bg + 1.0));
    if (disc < 0.0 && disc > -slack) disc = 0.0;
    d.value = disc;
    d.exists = disc >= 0.0;
    d.interior = disc > slack;
  }
  return d;
}

}  // namespace

double smallest_root(const MajorantFunction& m) {
  const double tol = kRootTolFactor * std::max(1.0, m.b());
  switch (m.kind()) {
    case MajorantKind::LipschitzQuadratic: {
      const PresetDiscriminant d = preset_discriminant(m);
      if (!d.exists) throw NoCertificateError("no root in [0, R): " + d.condition + " violated");
      // t* = (1 - sqrt(1-2bK))/K, written cancellation-free.
      return 2.0 * m.b() / (1.0 + std::sqrt(d.value));
    }
    case MajorantKind::SmaleAnalytic: {
      const PresetDiscriminant d = preset_discriminant(m);
      if (!d.exists) throw NoCertificateError("no root in [0, R): " + d.condition + " violated");
      const double bg = m.b() * m.gamma();
      // t* = (bg + 1 - sqrt(disc))/(4 gamma) = 2b/(bg + 1 + sqrt(disc)).
      return 2.0 * m.b() / (bg + 1.0 + std::sqrt(d.value));
    }
    case MajorantKind::Custom:
      return custom_root(m, tol);
  }
  throw NoCertificateError("unreachable majorant kind");
}

double newton_map(const MajorantFunction& m, double t) {
  const double t_star = smallest_root(m);
  if (t < 0.0 || t >= t_star) {
    std::ostringstream os;
    os << "newton_map: t = " << t << " outside [0, t*) with t* = " << t_star;
    throw DomainError(os.str());
  }
  const double dp = m.dpsi(t);
  if (dp >= 0.0) throw DomainError("newton_map: psi'(t) >= 0");
  return t - m.psi(t) / dp;
}

ScalarTrace scalar_sequence(const MajorantFunction& m, std::size_t max_iter, double tol) {
  ScalarTrace trace;
  trace.tStar = smallest_root(m);
  double t = 0.0;
  trace.t.push_back(t);
  trace.residuals.push_back(m.psi(t));
  for (std::size_t k = 0; k < max_iter; ++k) {
    if (trace.tStar - t <= tol) break;
    const double dp = m.dpsi(t);
    if (dp >= 0.0) break;
    double tn = t - m.psi(t) / dp;
    // the analytic sequence stays strictly below t*; crossing it is rounding
    if (tn > trace.tStar) tn = trace.tStar;
    if (!(tn > t)) break;
    t = tn;
    trace.t.push_back(t);
    trace.residuals.push_back(m.psi(t));
    if (t == trace.tStar) break;
  }
  trace.converged = (trace.tStar - t <= tol);
  return trace;
}

RateConstants rate_constants(const MajorantFunction& m) {
  RateConstants rc;
  const double t_star = smallest_root(m);
  bool h4 = false;
  if (m.kind() == MajorantKind::Custom) {
    h4 = m.dpsi(t_star) < -1e-12;
  } else {
    h4 = preset_discriminant(m).interior;
  }
  if (h4) {
    rc.quadratic = m.ddpsi(t_star) / (-2.0 * m.dpsi(t_star));
  }
  return rc;
}

HConditionsReport check_conditions(const MajorantFunction& m) {
  HConditionsReport r;
  if (m.kind() != MajorantKind::Custom) {
    r.h1 = true;
    r.h1Text = "psi(0) = b > 0 and psi'(0) = -1 by construction";
    r.h2 = true;
    r.h2Text = m.kind() == MajorantKind::LipschitzQuadratic
                   ? "psi'' = K > 0 constant; psi' affine"
                   : "psi'' = 2*gamma/(1-gamma*t)^3 > 0 and increasing";
    const PresetDiscriminant d = preset_discriminant(m);
    r.kantorovichOk = d.exists;
    r.kantorovichText = d.condition;
    r.h3 = d.exists;
    r.h3Text = d.exists ? "existence inequality holds" : d.condition + " violated";
    r.h4 = d.interior;
    r.h4Text = d.interior ? "psi'(t*) < 0 (strict inequality)"
                          : "psi'(t*) = 0 (boundary case, double root)";
    if (r.h3) r.tStar = smallest_root(m);
    return r;
  }

  // Custom kind: h1 checked at construction, h2 sampled, h3/h4 numeric.
  r.h1 = true;
  r.h1Text = "psi(0) > 0 and psi'(0) = -1 verified at construction (tol 1e-12)";
  const int grid = 1024;
  const double hi = 0.999 * m.domainR();
  bool positive = true;
  bool nondecreasing = true;
  double prev = m.ddpsi(0.0);
  for (int i = 0; i < grid; ++i) {
    const double t = hi * static_cast<double>(i) / (grid - 1);
    const double v = m.ddpsi(t);
    if (!(v > 0.0)) positive = false;
    if (v < prev - 1e-12 * std::max(1.0, std::abs(prev))) nondecreasing = false;
    prev = v;
  }
  r.h2 = positive && nondecreasing;
  r.h2Text = std::string(r.h2 ? "psi'' > 0 and nondecreasing" : "psi'' check failed") +
             " (sampled, 1024-point grid)";
  try {
    const double t_star = smallest_root(m);
    r.h3 = true;
    r.h3Text = "root found numerically";
    r.tStar = t_star;
    r.h4 = m.dpsi(t_star) < -1e-12;
    r.h4Text = r.h4 ? "psi'(t*) < 0" : "psi'(t*) ~ 0 at computed root";
  } catch (const NoCertificateError& e) {
    r.h3 = false;
    r.h3Text = e.what();
    r.h4 = false;
    r.h4Text = "h3 failed";
  }
  r.kantorovichOk = r.h3;
  r.kantorovichText = "custom kind: existence established by root finding";
  return r;
}

}  // namespace geqnewton
