#include "anglab/singular_integrals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "anglab/grids.hpp"
#include "anglab/index_core.hpp"

namespace anglab {

namespace {

constexpr double kPi = std::numbers::pi;
const double kInf = std::numeric_limits<double>::infinity();

double sphere_area(int n) { return n == 2 ? 2.0 * kPi : 4.0 * kPi; }
// |S^{n-2}| as the polar-angle prefactor: S^0 has counting measure 2.
double polar_prefactor(int n) { return n == 2 ? 2.0 : 2.0 * kPi; }

double bracket(double x) { return std::sqrt(1.0 + x * x); }

/// Integrates g over [0, pi] with geometric panel grading toward theta = 0,
/// where both kernels peak. theta_scale sets the innermost resolved scale.
template <class G>
double polar_quadrature(const G& g, double theta_scale, int n_panels) {
  static thread_local std::vector<double> gx, gw;
  if (gx.empty()) gauss_legendre(16, gx, gw);

  double tmin = std::clamp(theta_scale, 1e-14, kPi / 2);
  std::vector<double> edges;
  edges.push_back(0.0);
  edges.push_back(tmin);
  double ratio = std::pow(kPi / tmin, 1.0 / n_panels);
  double e = tmin;
  for (int k = 1; k < n_panels; ++k) {
    e *= ratio;
    edges.push_back(e);
  }
  edges.push_back(kPi);

  double total = 0.0;
  for (size_t k = 0; k + 1 < edges.size(); ++k) {
    double mid = 0.5 * (edges[k] + edges[k + 1]);
    double half = 0.5 * (edges[k + 1] - edges[k]);
    double acc = 0.0;
    for (size_t j = 0; j < gx.size(); ++j) acc += gw[j] * g(mid + half * gx[j]);
    total += half * acc;
  }
  return total;
}

template <class G>
double refine_polar(const G& g, double theta_scale, double tol) {
  double prev = polar_quadrature(g, theta_scale, 32);
  for (int n_panels : {48, 72, 108}) {
    double cur = polar_quadrature(g, theta_scale, n_panels);
    if (std::abs(cur - prev) <= tol * std::max(std::abs(cur), 1e-300)) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace

double eval_I(double nu, double r, int n, double tol) {
  if (!(nu > 0.0)) throw std::domain_error("eval_I: nu > 0 required");
  if (r < 0.0) throw std::domain_error("eval_I: r >= 0 required");
  if (n != 2 && n != 3) throw std::domain_error("eval_I: n in {2,3}");
  if (r == 0.0) return sphere_area(n);
  if (r == 1.0 && nu >= n - 1) return kInf;

  // sigma^2 = (r-1)^2 + 2r(1-cos th): the peak at th = 0 has width ~ |r-1|/sqrt(r).
  double scale = std::abs(r - 1.0) / std::sqrt(std::max(r, 0.25));
  auto g = [&](double th) {
    double s2 = (r - 1.0) * (r - 1.0) + 2.0 * r * (1.0 - std::cos(th));
    double k = std::pow(s2, -0.5 * nu);
    return n == 3 ? k * std::sin(th) : k;
  };
  return polar_prefactor(n) * refine_polar(g, scale, tol);
}

double closed_form_I_n3(double nu, double r) {
  if (!(nu > 0.0)) throw std::domain_error("closed_form_I_n3: nu > 0 required");
  if (r < 0.0) throw std::domain_error("closed_form_I_n3: r >= 0 required");
  if (r == 0.0) return 4.0 * kPi;
  double d = std::abs(r - 1.0);
  if (std::abs(nu - 2.0) < 1e-9) {
    if (d == 0.0) return kInf;
    return (2.0 * kPi / r) * std::log((r + 1.0) / d);
  }
  double e = 2.0 - nu;
  if (d == 0.0 && e < 0.0) return kInf;
  return (2.0 * kPi / (r * e)) * (std::pow(r + 1.0, e) - std::pow(d, e));
}

double eval_J(double nu, double r, double rho, int n, double tol) {
  if (!(nu > 0.0)) throw std::domain_error("eval_J: nu > 0 required");
  if (r < 0.0 || rho < 0.0) throw std::domain_error("eval_J: r, rho >= 0 required");
  if (n != 2 && n != 3) throw std::domain_error("eval_J: n in {2,3}");
  double base = 1.0 + r * r + rho * rho;
  if (r == 0.0 || rho == 0.0) return sphere_area(n) * std::pow(base, -0.5 * nu);

  double scale = std::sqrt((1.0 + (r - rho) * (r - rho)) / (r * rho));
  auto g = [&](double th) {
    double s2 = base - 2.0 * r * rho * std::cos(th);
    double k = std::pow(s2, -0.5 * nu);
    return n == 3 ? k * std::sin(th) : k;
  };
  return polar_prefactor(n) * refine_polar(g, scale, tol);
}

double closed_form_J_n3(double nu, double r, double rho) {
  if (!(nu > 0.0)) throw std::domain_error("closed_form_J_n3: nu > 0 required");
  if (r < 0.0 || rho < 0.0) throw std::domain_error("closed_form_J_n3: r, rho >= 0");
  if (r == 0.0 || rho == 0.0)
    return 4.0 * kPi * std::pow(1.0 + r * r + rho * rho, -0.5 * nu);
  double um = 1.0 + (r - rho) * (r - rho);
  double up = 1.0 + (r + rho) * (r + rho);
  if (std::abs(nu - 2.0) < 1e-9) return (kPi / (r * rho)) * std::log(up / um);
  double e = 1.0 - 0.5 * nu;
  return (kPi / (r * rho * e)) * (std::pow(up, e) - std::pow(um, e));
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Far: return "far";
    case Regime::NearOrigin: return "near_origin";
    case Regime::ShellSub: return "shell_sub";
    case Regime::ShellLog: return "shell_log";
    case Regime::ShellSuper: return "shell_super";
    case Regime::MixedJ: return "mixed_J";
  }
  return "?";
}

RegimeEnvelope envelope_I(double nu, double r, int n) {
  if (!(nu > 0.0)) throw std::domain_error("envelope_I: nu > 0 required");
  RegimeEnvelope e;
  if (r >= 2.0) {
    e.regime = Regime::Far;
    e.value = std::pow(bracket(r), -nu);
    e.formula_id = "<x>^-nu";
    return e;
  }
  if (r <= 0.5) {
    e.regime = Regime::NearOrigin;
    e.value = 1.0;
    e.formula_id = "1";
    return e;
  }
  double d = std::abs(r - 1.0);
  if (nu < n - 1 - 1e-12) {
    e.regime = Regime::ShellSub;
    e.value = 1.0;
    e.formula_id = "1";
  } else if (nu > n - 1 + 1e-12) {
    e.regime = Regime::ShellSuper;
    e.value = std::pow(d, n - 1 - nu);  // +inf at the divergence locus
    e.formula_id = "||x|-1|^(n-1-nu)";
  } else {
    e.regime = Regime::ShellLog;
    e.value = d == 0.0 ? kInf : std::abs(std::log(d)) + 1.0;
    e.formula_id = "|log||x|-1|| + 1";
  }
  return e;
}

RegimeEnvelope envelope_J(double nu, double r, double rho, int n) {
  if (!(nu > 0.0)) throw std::domain_error("envelope_J: nu > 0 required");
  RegimeEnvelope e;
  if (rho <= 1.0 || r >= 2.0 * rho) {
    e.regime = Regime::Far;
    e.value = std::pow(bracket(r), -nu);
    e.formula_id = "<x>^-nu";
    return e;
  }
  if (r <= 1.0 || rho >= 2.0 * r) {
    e.regime = Regime::NearOrigin;
    e.value = std::pow(bracket(rho), -nu);
    e.formula_id = "<rho>^-nu";
    return e;
  }
  e.regime = Regime::MixedJ;
  double gap = bracket(std::abs(r - rho));
  if (nu < n - 1 - 1e-12) {
    e.value = std::pow(bracket(rho), -nu);
    e.formula_id = "<rho>^-nu";
  } else if (nu > n - 1 + 1e-12) {
    e.value = std::pow(bracket(rho), 1.0 - n) * std::pow(gap, n - 1 - nu);
    e.formula_id = "<rho>^(1-n) <|x|-rho>^(n-1-nu)";
  } else {
    e.value = std::pow(bracket(rho), -nu) * std::log(2.0 * bracket(rho) / gap);
    e.formula_id = "<rho>^-nu log(2<rho>/<|x|-rho>)";
  }
  return e;
}

namespace {

std::vector<double> log_space(double lo, double hi, int k) {
  std::vector<double> v;
  if (k <= 1) {
    v.push_back(lo);
    return v;
  }
  double ratio = std::pow(hi / lo, 1.0 / (k - 1));
  double x = lo;
  for (int i = 0; i < k; ++i) {
    v.push_back(x);
    x *= ratio;
  }
  return v;
}

}  // namespace

RatioBracket envelope_ratio_scan(double nu, int n, Regime regime, int samples) {
  if (samples < 2) throw config_error("envelope_ratio_scan: samples >= 2");
  const double nm1 = n - 1;
  auto want_shell = [&](Regime rg) {
    if (rg == Regime::ShellSub && !(nu < nm1 - 1e-12))
      throw config_error("envelope_ratio_scan: shell_sub needs nu < n-1");
    if (rg == Regime::ShellLog && std::abs(nu - nm1) > 1e-12)
      throw config_error("envelope_ratio_scan: shell_log needs nu = n-1");
    if (rg == Regime::ShellSuper && !(nu > nm1 + 1e-12))
      throw config_error("envelope_ratio_scan: shell_super needs nu > n-1");
  };

  RatioBracket out{kInf, 0.0};
  auto absorb = [&](double val, double env) {
    if (!(env > 0.0) || !std::isfinite(env) || !std::isfinite(val)) return;
    double ratio = val / env;
    out.min_ratio = std::min(out.min_ratio, ratio);
    out.max_ratio = std::max(out.max_ratio, ratio);
  };

  const double tol = 1e-8;
  switch (regime) {
    case Regime::Far:
      for (double r : log_space(2.0, 100.0, samples))
        absorb(eval_I(nu, r, n, tol), envelope_I(nu, r, n).value);
      break;
    case Regime::NearOrigin:
      for (double r : log_space(1e-3, 0.5, samples))
        absorb(eval_I(nu, r, n, tol), envelope_I(nu, r, n).value);
      break;
    case Regime::ShellSub:
    case Regime::ShellLog:
    case Regime::ShellSuper: {
      want_shell(regime);
      for (double d : log_space(1e-6, 0.49, samples))
        for (double sgn : {-1.0, 1.0})
          absorb(eval_I(nu, 1.0 + sgn * d, n, tol), envelope_I(nu, 1.0 + sgn * d, n).value);
      break;
    }
    case Regime::MixedJ: {
      for (double r : log_space(1.2, 30.0, samples))
        for (double frac : {0.55, 0.75, 1.0, 1.4, 1.9}) {
          double rho = frac * r;
          if (envelope_J(nu, r, rho, n).regime != Regime::MixedJ) continue;
          absorb(eval_J(nu, r, rho, n, tol), envelope_J(nu, r, rho, n).value);
        }
      break;
    }
  }
  if (!(out.max_ratio > 0.0)) throw config_error("envelope_ratio_scan: no points in regime band");
  return out;
}

}  // namespace anglab
