#pragma once

#include <string>
#include <utility>
#include <vector>

#include "anglab/admissibility.hpp"
#include "anglab/grids.hpp"
#include "anglab/spectral.hpp"

namespace anglab {

/// Test-function families for inequality-ratio experiments. Spikes carry
/// C^2 smooth cutoffs (hard truncation pollutes derivative norms).
struct TestFamily {
  enum class Kind { Gaussian, PowerLogSpike, AngularCap, Dilated };
  Kind kind = Kind::Gaussian;
  double spike_exponent = 0.0;  // rho^e log(1/rho), PowerLogSpike
  double delta = 0.01;          // inner truncation scale
  double kappa = 3.141592653589793;  // cap aperture, AngularCap
  double lambda = 1.0;          // dilation factor, Dilated
  Kind base_kind = Kind::Gaussian;  // what Dilated dilates
};

/// Samples the family member; the cap axis is e_z (e_x for n = 2).
GridField make_test_field(const TestFamily& fam, const RadialGrid& r, const SphereGrid& s);

/// Analytic radial derivative of the radial families (Gaussian and spike),
/// for grid-path first-derivative norms without FD noise.
GridField make_test_field_radial_derivative(const TestFamily& fam, const RadialGrid& r,
                                            const SphereGrid& s);

struct RatioReport {
  double ratio = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  IndexTuple tuple;
  std::vector<std::pair<std::string, double>> family_params;
};

/// lhs = || |x|^{-beta} T_gamma f ||_{Lq Lqtilde}, rhs = || |x|^alpha f ||_{Lp Lptilde}.
RatioReport ratio_stein_weiss(const GridField& f, const IndexTuple& t);

/// Interpolation ratio || |x|^{-gamma} u || / (|| |x|^{-alpha} |D|^sigma u ||^a
/// || |x|^{-beta} u ||^{1-a}). Grid path: sigma = 1 on radial fields via the
/// supplied analytic radial derivative.
RatioReport ratio_ckn(const GridField& u, const GridField& du, const IndexTuple& t);
/// Spectral path: |D|^sigma applied as a Fourier multiplier, norms measured
/// from the box center on the given product grid.
RatioReport ratio_ckn(const SpectralField& u, const IndexTuple& t, const RadialGrid& r,
                      const SphereGrid& s);

/// Pointwise Strauss-type ratio: max over nodes of |x|^{n/p - sigma} |u|
/// against || |D|^sigma u ||_{Lp Lptilde}. Refuses tuples outside the window
/// (n-1)/ptilde + 1/p < sigma < n/p.
RatioReport strauss_ratio(const SpectralField& u, double sigma, const ExtReal& p,
                          const ExtReal& ptilde, const RadialGrid& r, const SphereGrid& s);

enum class RatioKind { SteinWeiss, Ckn };

struct SharpnessRow {
  IndexTuple tuple;
  double sup_ratio = 0.0;
  std::vector<double> deltas;
  std::vector<double> ratios;
};

/// For each tuple on the path, the supremum of ratios over the declared
/// finite truncation ladder (never an unbounded search). Expected shape:
/// bounded on admissible tuples, growing without bound past the boundary.
std::vector<SharpnessRow> sharpness_scan(const std::vector<IndexTuple>& path,
                                         const TestFamily& fam,
                                         const std::vector<double>& delta_ladder,
                                         RatioKind kind, const RadialGrid& r,
                                         const SphereGrid& s);

}  // namespace anglab
