#pragma once

#include <utility>
#include <vector>

#include "anglab/admissibility.hpp"
#include "anglab/grids.hpp"

namespace anglab {

/// Riesz potential T_gamma f(x) = int f(y) |x-y|^{-gamma} dy, 0 < gamma < n,
/// by direct quadrature convolution. Shells within two local spacings of the
/// output radius are punctured and re-added through the analytic angular
/// shell integral against a locally constant f (first-order correction).
GridField riesz_potential(const GridField& f, double gamma);
GridField riesz_potential(const GridField& f, double gamma, const RadialGrid& out_r,
                          const SphereGrid& out_s);

enum class BracketKind { Gamma, Mu };

/// Nonhomogeneous potential S_gamma f = int f(y) <x-y>^{-gamma} dy. Shares
/// the quadrature path of riesz_potential (same correction rule, bracket
/// shell integrals), so |S_gamma f| <= T_gamma |f| holds nodewise.
GridField smooth_potential(const GridField& f, double exponent,
                           BracketKind kind = BracketKind::Gamma);

/// e^{t Delta} f by Gaussian-kernel quadrature convolution; t = 0 is the
/// identity.
GridField heat_evolve(const GridField& f, double t);

/// First spatial derivative of the heat evolution, via the kernel gradient
/// along the given axis.
GridField heat_evolve_derivative(const GridField& f, double t, int axis);

/// Log-log least-squares fit of a norm-vs-time series.
struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // max abs log deviation, never hidden
  double t_min = 0.0;
  double t_max = 0.0;
};

/// Requires >= 4 points, positive values, strictly increasing times.
DecayFit fit_decay(const std::vector<std::pair<double, double>>& series);

struct DecayVerification {
  DecayCheck admissibility;
  double predicted = 0.0;  // exponent of the c / t^e bound
  DecayFit fit;
  std::vector<std::pair<double, double>> series;  // (t, measured norm)
  bool bound_consistent = false;  // fitted slope <= -predicted + 0.05
  bool saturates = false;         // |slope + predicted| <= 0.05
  bool pass = false;
};

/// Evolves u0 under the heat flow (eta = 0) or its first derivative
/// (eta = 1), measures the beta-weighted output norms over the given times,
/// fits, and compares against the predicted exponent. Refuses tuples whose
/// hypothesis system fails.
DecayVerification verify_decay(const IndexTuple& t, int eta, const GridField& u0,
                               const std::vector<double>& times,
                               DecayKind kind = DecayKind::PointwiseHeat,
                               bool expect_saturation = false);

struct LocalizedDecayResult {
  double lambda_gap = 0.0;  // Lambda_alpha - Lambda_beta < 0
  std::vector<double> radii;
  std::vector<double> constants;  // sup_t t^pred * norm restricted to |x| < R sqrt(t)
  double fitted_slope = 0.0;      // d log c / d log R; the law predicts -lambda_gap
};

/// Measures the parabola-restricted constants of the localized decay
/// estimate across the given R values.
LocalizedDecayResult localized_decay_constants(const IndexTuple& t, int eta, const GridField& u0,
                                               const std::vector<double>& times,
                                               const std::vector<double>& radii);

}  // namespace anglab
