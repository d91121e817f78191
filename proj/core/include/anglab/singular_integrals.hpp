#pragma once

#include <string>
#include <utility>

namespace anglab {

/// I_nu(x) = int_{S^{n-1}} |x - y|^{-nu} dS(y), radial in x. Divergent cases
/// (|x| = 1 with nu >= n-1) return +inf, never throw, so scans can raster
/// across the divergence locus.
double eval_I(double nu, double r, int n, double tol = 1e-9);

/// n = 3 closed form:
///   (2 pi / (r (2 - nu))) ((r+1)^{2-nu} - |r-1|^{2-nu})   for nu != 2,
///   (2 pi / r) log((r+1)/|r-1|)                           for nu = 2,
/// with the limits I = 4 pi at r = 0 and +inf at r = 1, nu >= 2.
double closed_form_I_n3(double nu, double r);

/// J_nu(x, rho) = int_{S^{n-1}} <x - rho theta>^{-nu} dS(theta); bounded by
/// |S^{n-1}| since the kernel never exceeds 1.
double eval_J(double nu, double r, double rho, int n, double tol = 1e-9);

/// n = 3 closed form for J (same substitution, Japanese-bracket kernel).
double closed_form_J_n3(double nu, double r, double rho);

enum class Regime { Far, NearOrigin, ShellSub, ShellLog, ShellSuper, MixedJ };

const char* to_string(Regime r);

/// Envelope formula value (constants omitted) and regime label for I_nu:
/// far (<x>^{-nu}, |x| >= 2), near-origin (1, |x| <= 1/2), and the shell
/// band (1/2, 2) split by nu vs n-1: 1, |log||x|-1|| + 1, ||x|-1|^{n-1-nu}.
struct RegimeEnvelope {
  Regime regime = Regime::Far;
  double value = 0.0;
  std::string formula_id;
};

RegimeEnvelope envelope_I(double nu, double r, int n);

/// Envelope for J_nu: <x>^{-nu} when rho <= 1 or |x| >= 2 rho; <rho>^{-nu}
/// when |x| <= 1 or rho >= 2|x|; otherwise the mixed band split by nu vs n-1
/// (log case uses <rho>^{-nu} log(2<rho>/<|x|-rho>), brackets throughout).
RegimeEnvelope envelope_J(double nu, double r, double rho, int n);

struct RatioBracket {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

/// Measured two-sided bracket of eval/envelope over a log-spaced sample of
/// the regime's parameter band. Both ends finite and positive when the
/// regime is valid for (nu, n).
RatioBracket envelope_ratio_scan(double nu, int n, Regime regime, int samples);

}  // namespace anglab
