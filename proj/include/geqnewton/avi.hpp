#ifndef GEQNEWTON_AVI_HPP
#define GEQNEWTON_AVI_HPP

#include "geqnewton/box.hpp"
#include "geqnewton/lcp.hpp"
#include "geqnewton/linalg.hpp"

namespace geqnewton {

// Solves the affine generalized equation 0 in c + J y + N_B(y) for y.
//
// All-free box: one LU solve. Mixed boxes: free coordinates are eliminated
// by a Schur complement (the free-free block must be nonsingular), the
// remaining bounded coordinates are transformed to a standard LCP (shift for
// finite lower bounds, sign flip for finite upper bounds, the doubling
// transformation for two-sided bounds) and handed to lemke.
//
// max_pivots == 0 selects the default 50 * (LCP dimension).
AviSolution solve_affine_ge(const DenseMatrix& j, const Vec& c, const Box& box,
                            std::size_t max_pivots = 0);

// Natural-map residual of the affine problem at y:
// ||y - proj_B(y - (c + Jy))||_inf.
double affine_residual(const DenseMatrix& j, const Vec& c, const Box& box, const Vec& y);

}  // namespace geqnewton

#endif  // GEQNEWTON_AVI_HPP
