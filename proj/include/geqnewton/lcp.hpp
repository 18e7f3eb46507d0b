#ifndef GEQNEWTON_LCP_HPP
#define GEQNEWTON_LCP_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "geqnewton/linalg.hpp"

namespace geqnewton {

// LCP(M, q): find z >= 0 with w = Mz + q >= 0 and z'w = 0.
struct LCPInstance {
  DenseMatrix m;
  Vec q;

  LCPInstance() = default;
  LCPInstance(DenseMatrix mat, Vec rhs);
  std::size_t dim() const { return q.size(); }
};

enum class AviStatus { Solved, RayTermination, Singular, MaxPivots };

std::string to_string(AviStatus s);

struct AviSolution {
  Vec y;
  AviStatus status = AviStatus::Singular;
  std::size_t pivots = 0;
  double complementarityResidual = 0.0;
  std::string detail;
};

// Complementary pivoting with the all-ones covering vector and lexicographic
// tie-breaking. maxPivots == 0 selects the default 50*n.
AviSolution lemke(const LCPInstance& lcp, std::size_t max_pivots = 0);

// Independent oracle: try all 2^n complementary index sets, solve the induced
// linear system, keep the feasible ones (residual <= 1e-9), deduplicate at
// 1e-8. Guarded to n <= 20.
std::vector<Vec> lcp_enumerate(const LCPInstance& lcp);

}  // namespace geqnewton

#endif  // GEQNEWTON_LCP_HPP
