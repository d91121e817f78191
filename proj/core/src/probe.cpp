#include "anglab/probe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "anglab/kernels.hpp"
#include "anglab/norms.hpp"

namespace anglab {

namespace {

// C^2 smoothstep: 0 for u <= 0, 1 for u >= 1.
double smoothstep(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

double rise(double x, double a, double b) { return smoothstep((x - a) / (b - a)); }
double fall(double x, double a, double b) { return 1.0 - smoothstep((x - a) / (b - a)); }

struct RadialProfile {
  std::function<double(double)> value;
  std::function<double(double)> derivative;  // numeric central difference
};

RadialProfile profile_for(const TestFamily& fam) {
  TestFamily::Kind kind = fam.kind == TestFamily::Kind::Dilated ? fam.base_kind : fam.kind;
  double lam = fam.kind == TestFamily::Kind::Dilated ? fam.lambda : 1.0;
  std::function<double(double)> base;
  switch (kind) {
    case TestFamily::Kind::Gaussian:
      base = [](double rho) { return std::exp(-rho * rho); };
      break;
    case TestFamily::Kind::PowerLogSpike: {
      double e = fam.spike_exponent, d = fam.delta;
      base = [e, d](double rho) {
        if (rho <= d / 2 || rho >= 0.95) return 0.0;
        return std::pow(rho, e) * std::log(1.0 / rho) * rise(rho, d / 2, d) *
               fall(rho, 0.6, 0.95);
      };
      break;
    }
    default:
      throw config_error("radial profile: family is not radial");
  }
  RadialProfile p;
  p.value = [base, lam](double rho) { return base(rho / lam); };
  p.derivative = [base, lam](double rho) {
    double h = 1e-6 * std::max(rho, 1e-3);
    return (base((rho + h) / lam) - base((rho - h) / lam)) / (2.0 * h);
  };
  return p;
}

}  // namespace

GridField make_test_field(const TestFamily& fam, const RadialGrid& r, const SphereGrid& s) {
  if (fam.kind == TestFamily::Kind::AngularCap) {
    double kappa = fam.kappa;
    return sample_field(r, s, [&, kappa](double rho, const Vec3& w) {
      double bump = std::exp(-(rho - 1.0) * (rho - 1.0) / 0.125);
      if (kappa >= 3.14159) return bump;
      double axis = s.dimension == 3 ? w.z : w.x;
      double angle = std::acos(std::clamp(axis, -1.0, 1.0));
      return bump * fall(angle, 0.8 * kappa, kappa);
    });
  }
  RadialProfile p = profile_for(fam);
  return sample_field(r, s, [&](double rho, const Vec3&) { return p.value(rho); });
}

GridField make_test_field_radial_derivative(const TestFamily& fam, const RadialGrid& r,
                                            const SphereGrid& s) {
  RadialProfile p = profile_for(fam);
  return sample_field(r, s, [&](double rho, const Vec3&) { return p.derivative(rho); });
}

RatioReport ratio_stein_weiss(const GridField& f, const IndexTuple& t) {
  auto req = [&](const std::optional<ExtReal>& v, const char* nm) -> const ExtReal& {
    if (!v) throw config_error(std::string("ratio_stein_weiss: missing field ") + nm);
    return *v;
  };
  double gamma = req(t.gamma, "gamma").value();
  double alpha = req(t.alpha, "alpha").value();
  double beta = req(t.beta, "beta").value();
  GridField Tf = riesz_potential(f, gamma);
  RatioReport rep;
  rep.tuple = t;
  rep.lhs = mixed_norm(Tf, -beta, req(t.q, "q"), req(t.qtilde, "qtilde"));
  rep.rhs = mixed_norm(f, alpha, req(t.p, "p"), req(t.ptilde, "ptilde"));
  if (!(rep.rhs > 0.0)) throw config_error("ratio_stein_weiss: zero right-hand norm");
  rep.ratio = rep.lhs / rep.rhs;
  return rep;
}

namespace {

RatioReport ckn_ratio_from_fields(const GridField& u, const GridField& du, const IndexTuple& t) {
  auto req = [&](const std::optional<ExtReal>& v, const char* nm) -> const ExtReal& {
    if (!v) throw config_error(std::string("ratio_ckn: missing field ") + nm);
    return *v;
  };
  double a = req(t.a, "a").value();
  double gamma = req(t.gamma, "gamma").value();
  double alpha = req(t.alpha, "alpha").value();
  RatioReport rep;
  rep.tuple = t;
  rep.lhs = mixed_norm(u, -gamma, req(t.r, "r"), req(t.rtilde, "rtilde"));
  double rhs1 = mixed_norm(du, -alpha, req(t.p, "p"), req(t.ptilde, "ptilde"));
  // a = 1 drops the interpolation partner entirely (rhs2^0 = 1).
  double rhs2 = a < 1.0 ? mixed_norm(u, -req(t.beta, "beta").value(), req(t.q, "q"),
                                     req(t.qtilde, "qtilde"))
                        : 1.0;
  rep.rhs = std::pow(rhs1, a) * (a < 1.0 ? std::pow(rhs2, 1.0 - a) : 1.0);
  if (!(rep.rhs > 0.0)) throw config_error("ratio_ckn: zero right-hand norm");
  rep.ratio = rep.lhs / rep.rhs;
  return rep;
}

}  // namespace

RatioReport ratio_ckn(const GridField& u, const GridField& du, const IndexTuple& t) {
  if (t.sigma && std::abs(t.sigma->value() - 1.0) > 1e-12)
    throw config_error("ratio_ckn (grid path): only sigma = 1 is supported; use the spectral path");
  return ckn_ratio_from_fields(u, du, t);
}

RatioReport ratio_ckn(const SpectralField& u, const IndexTuple& t, const RadialGrid& r,
                      const SphereGrid& s) {
  if (!t.sigma) throw config_error("ratio_ckn: missing field sigma");
  SpectralField du = u;
  du.fractional_derivative(t.sigma->value());
  return ckn_ratio_from_fields(u.sample_to_grid(r, s), du.sample_to_grid(r, s), t);
}

RatioReport strauss_ratio(const SpectralField& u, double sigma, const ExtReal& p,
                          const ExtReal& ptilde, const RadialGrid& r, const SphereGrid& s) {
  IndexTuple t;
  t.n = 3;
  t.p = p;
  t.ptilde = ptilde;
  t.sigma = ExtReal(sigma);
  Verdict window = check_sobolev_embedding(t, SobolevMode::Strauss);
  if (window.overall == Overall::Fail)
    throw config_error("strauss_ratio: (p, ptilde, sigma) outside the pointwise window");

  SpectralField du = u;
  du.fractional_derivative(sigma);
  GridField ug = u.sample_to_grid(r, s);
  GridField dug = du.sample_to_grid(r, s);

  double expnt = 3.0 / p.value() - sigma;
  double lhs = 0.0;
  for (size_t i = 0; i < ug.n_radial(); ++i) {
    double w = std::pow(r.nodes[i], expnt);
    for (size_t j = 0; j < ug.n_sphere(); ++j) lhs = std::max(lhs, w * ug.magnitude(i, j));
  }
  RatioReport rep;
  rep.tuple = t;
  rep.lhs = lhs;
  rep.rhs = mixed_norm(dug, 0.0, p, ptilde);
  if (!(rep.rhs > 0.0)) throw config_error("strauss_ratio: zero derivative norm");
  rep.ratio = rep.lhs / rep.rhs;
  rep.family_params.emplace_back("sigma", sigma);
  return rep;
}

std::vector<SharpnessRow> sharpness_scan(const std::vector<IndexTuple>& path,
                                         const TestFamily& fam,
                                         const std::vector<double>& delta_ladder,
                                         RatioKind kind, const RadialGrid& r,
                                         const SphereGrid& s) {
  if (path.empty() || delta_ladder.empty())
    throw config_error("sharpness_scan: empty path or ladder");
  std::vector<SharpnessRow> rows;
  for (const auto& t : path) {
    SharpnessRow row;
    row.tuple = t;
    for (double d : delta_ladder) {
      TestFamily f = fam;
      f.delta = d;
      GridField u = make_test_field(f, r, s);
      RatioReport rep;
      if (kind == RatioKind::SteinWeiss) {
        rep = ratio_stein_weiss(u, t);
      } else {
        GridField du = make_test_field_radial_derivative(f, r, s);
        rep = ratio_ckn(u, du, t);
      }
      row.deltas.push_back(d);
      row.ratios.push_back(rep.ratio);
      row.sup_ratio = std::max(row.sup_ratio, rep.ratio);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace anglab
