#ifndef GEQNEWTON_MAJORANT_HPP
#define GEQNEWTON_MAJORANT_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace geqnewton {

enum class MajorantKind { LipschitzQuadratic, SmaleAnalytic, Custom };

// Scalar majorant function psi on [0, R) together with its first two
// derivatives. Immutable after construction; all queries are pure.
//
// LipschitzQuadratic:  psi(t) = (K/2) t^2 - t + b        on [0, 1/K)
// SmaleAnalytic:       psi(t) = t/(1 - g t) - 2 t + b    on [0, 1/g)
//
// Both satisfy psi(0) = b > 0 and psi'(0) = -1 by construction.
class MajorantFunction {
 public:
  using ScalarFn = std::function<double(double)>;

  static MajorantFunction lipschitz(double curvature_k, double b, double lambda);
  static MajorantFunction smale(double gamma, double b, double lambda);
  // Custom psi from evaluators; psi(0) > 0 and |psi'(0) + 1| <= 1e-12 are
  // required on entry.
  static MajorantFunction custom(ScalarFn psi, ScalarFn dpsi, ScalarFn ddpsi,
                                 double domain_r, double lambda);

  double psi(double t) const;
  double dpsi(double t) const;
  double ddpsi(double t) const;

  MajorantKind kind() const { return kind_; }
  double curvatureK() const { return k_; }
  double gamma() const { return gamma_; }
  double b() const { return b_; }
  double lambda() const { return lambda_; }
  double domainR() const { return domain_r_; }

 private:
  MajorantFunction() = default;

  MajorantKind kind_ = MajorantKind::Custom;
  double k_ = 0.0;
  double gamma_ = 0.0;
  double b_ = 0.0;
  double lambda_ = 1.0;
  double domain_r_ = 0.0;
  ScalarFn psi_, dpsi_, ddpsi_;  // Custom only
};

// Trace of the scalar Newton sequence t_0 = 0, t_{k+1} = n_psi(t_k).
struct ScalarTrace {
  std::vector<double> t;          // strictly increasing, below tStar
  double tStar = 0.0;
  bool converged = false;
  std::vector<double> residuals;  // psi(t_k)
};

struct HConditionsReport {
  bool h1 = false, h2 = false, h3 = false, h4 = false;
  std::string h1Text, h2Text, h3Text, h4Text;
  bool kantorovichOk = false;
  std::string kantorovichText;
  std::optional<double> tStar;  // set when h3 holds

  bool certifiable() const { return h1 && h2 && h3; }
};

struct RateConstants {
  double linear = 0.5;
  std::optional<double> quadratic;  // psi''(t*) / (-2 psi'(t*)) under h4
};

// Smallest root t* of psi on [0, R). Presets use the closed forms; Custom
// runs the monotone scalar Newton sequence from 0 with a bisection fallback.
// Throws NoCertificateError when no root exists (existence condition
// violated), naming the offending inequality.
double smallest_root(const MajorantFunction& psi);

// n_psi(t) = t - psi(t)/psi'(t) for t in [0, t*). Throws DomainError outside.
double newton_map(const MajorantFunction& psi, double t);

ScalarTrace scalar_sequence(const MajorantFunction& psi, std::size_t max_iter, double tol);

RateConstants rate_constants(const MajorantFunction& psi);

HConditionsReport check_conditions(const MajorantFunction& psi);

}  // namespace geqnewton

#endif  // GEQNEWTON_MAJORANT_HPP
