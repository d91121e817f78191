#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "anglab/admissibility.hpp"
#include "anglab/spectral.hpp"

namespace anglab {

using Trajectory = std::vector<std::pair<double, SpectralField>>;

/// Weighted monitoring norm of the integral-equation machinery: weights
/// |x|^alpha measured from the box center, outer L^p in radius, inner
/// L^ptilde on spheres. alpha = 0, p = ptilde short-circuits to the plain
/// box Lebesgue norm. Weighted tuples resample onto the given product grid.
struct MonitorNorm {
  double alpha = 0.0;
  ExtReal p = ExtReal(2);
  ExtReal ptilde = ExtReal(2);
  ExtReal s = ExtReal::infinity();  // time exponent for trajectory norms
  int radial_points = 96;
  int sphere_level = 7;
};

double monitor_field_norm(const SpectralField& u, const MonitorNorm& m);
double monitor_trajectory_norm(const Trajectory& traj, const MonitorNorm& m);

/// e^{t Delta} P div integrated against a tensor trajectory: per-mode
/// integrating factor with linear interpolation of the nonlinearity between
/// samples, so the (t-s) endpoint concentration is handled analytically.
SpectralField duhamel_step(const std::vector<std::pair<double, SpectralTensor>>& F, double t);

struct PicardOptions {
  int max_iter = 12;
  double diff_floor = 1e-14;       // stop when diffs fall below floor * ||u1||
  double stagnation_tol = 5e-3;    // stop when successive ratios stabilize
  bool keep_iterate_trajectories = false;
};

struct PicardTrace {
  std::vector<double> times;
  Trajectory final_iterate;
  std::vector<Trajectory> iterates;  // kept only on request (memory)
  std::vector<double> diff_norms;    // ||u_k - u_{k-1}|| in the monitor norm
  std::vector<double> contraction_ratios;
  int iterations = 0;
  bool converged = false;
};

/// Picard scheme for the integral formulation: u_1 = e^{t Delta} u0,
/// u_{k+1} = e^{t Delta} u0 + int_0^t e^{(t-s) Delta} P div (u_k (x) u_k) ds.
/// u0 must be divergence-free and mean-zero; weighted monitors additionally
/// require the datum supported within L/4 of the box center (min-image
/// weights would otherwise be periodization-biased) -- violations refuse
/// with a diagnostic.
PicardTrace picard_iterate(const SpectralField& u0, double T, int steps, int max_iter,
                           const MonitorNorm& monitor, const PicardOptions& opts = {});

struct MonitorSeries {
  std::vector<double> times;
  std::vector<double> norms;
  RegularityClass classification;
};

/// Per-time monitor norms of the converged iterate plus the regularity
/// classification of the monitoring tuple (alpha, p, ptilde, s must satisfy
/// the parabolic scaling).
MonitorSeries monitor_norms(const PicardTrace& trace, const ExtReal& alpha, const ExtReal& p,
                            const ExtReal& ptilde, const ExtReal& s, const MonitorNorm& m);

struct CalderonSplit {
  double theta = 0.0;      // from 1/ptilde = (1-theta)/2 + theta/4
  double s = 0.0;          // amplitude threshold theta/(1-theta)
  SpectralField v0;        // projected large-amplitude part
  SpectralField w0;        // projected small-amplitude part
  double a_theta = 0.0;    // (theta/(1-theta))^((1-theta)/(2-theta)), C = 1
  double b_theta = 0.0;    // (theta/(1-theta))^(-theta/(2-theta)), C = 1
  // Measured constants of the two split-norm bounds (lhs / (coef * rhs^pow)).
  double measured_c_w = 0.0;
  double measured_c_v = 0.0;
  double u0_norm = 0.0;    // || |x|^{-1/2} u0 ||_{L2 Lptilde}
  double w0_norm = 0.0;    // || |x|^{-1/2} w0 ||_{L2 L4}
  double v0_norm = 0.0;    // || |x|^{-1/2} v0 ||_{L2}
};

/// Amplitude-threshold decomposition u0 = v0 + w0 (both Leray-projected,
/// the heat-limit step realized as projection) with the split-norm bound
/// constants measured against the normalized A_theta / B_theta shapes.
/// Requires ptilde in (2, 4) and n = 3.
CalderonSplit calderon_split(const SpectralField& u0, double ptilde,
                             const MonitorNorm& norm_params = {});

/// Taylor-Green-type divergence-free periodic datum with amplitude A.
SpectralField taylor_green(int N, double L, double amplitude);

/// Compactly supported divergence-free vortex (curl of a Gaussian-envelope
/// potential), support radius ~ 3*width around the box center.
SpectralField localized_vortex(int N, double L, double amplitude, double width);

}  // namespace anglab
