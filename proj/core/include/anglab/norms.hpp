#pragma once

#include <utility>
#include <vector>

#include "anglab/ext_real.hpp"
#include "anglab/grids.hpp"

namespace anglab {

/// Weighted mixed radial-angular norm
///   ( int_0^inf ||f(rho .)||_{Lptilde(S^{n-1})}^p rho^{alpha p + n - 1} drho )^{1/p},
/// with sup conventions at p = inf (weight rho^alpha) and max over sphere
/// nodes at ptilde = inf. The surface measure is unnormalized, so a radial
/// profile g picks up the constant |S^{n-1}|^{1/ptilde - 1/p} relative to the
/// classical weighted L^p norm of g on R^n. Vector fields are measured
/// through their pointwise Euclidean magnitude.
///
/// Rejects alpha*p + n - 1 <= -1 (weight not locally integrable; the
/// continuum norm is infinite for generic f).
double mixed_norm(const GridField& f, double alpha, const ExtReal& p, const ExtReal& ptilde);

/// Same, with the radial integral restricted to nodes with rho < rho_cut
/// (space-time parabola restrictions).
double mixed_norm_restricted(const GridField& f, double alpha, const ExtReal& p,
                             const ExtReal& ptilde, double rho_cut);

/// || |x|^alpha u ||_{L^s_T Lp Lptilde}: trapezoidal quadrature of
/// mixed_norm^s over the trajectory times; sup over samples at s = inf.
double spacetime_norm(const std::vector<std::pair<double, GridField>>& trajectory, double alpha,
                      const ExtReal& s, const ExtReal& p, const ExtReal& ptilde);

}  // namespace anglab
