#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "anglab/kernels.hpp"
#include "anglab/norms.hpp"

using namespace anglab;

namespace {

constexpr double kPi = std::numbers::pi;
const ExtReal inf = ExtReal::infinity();

struct Fixture {
  RadialGrid r = build_radial_grid(1e-3, 12.0, 128, Grading::Composite);
  SphereGrid s = build_sphere_grid(3, 2);
  GridField gauss = sample_field(r, s, [](double rho, const Vec3&) {
    return std::exp(-rho * rho);
  });
};

double coulomb_of_gaussian(double r) {
  if (r < 1e-8) return 2.0 * kPi;
  return std::pow(kPi, 1.5) * std::erf(r) / r;
}

std::vector<double> log_times(double lo, double hi, int k) {
  std::vector<double> v;
  for (int i = 0; i < k; ++i) v.push_back(lo * std::pow(hi / lo, double(i) / (k - 1)));
  return v;
}

}  // namespace

TEST_CASE("riesz potential: coulomb of a gaussian") {
  Fixture fx;
  GridField out = riesz_potential(fx.gauss, 1.0);
  for (size_t i = 0; i < out.n_radial(); ++i) {
    double rho = fx.r.nodes[i];
    if (rho > 3.0) continue;
    double expect = coulomb_of_gaussian(rho);
    CHECK(std::abs(out.at(0, i, 0) - expect) / expect < 1e-3);
  }
  // radial input stays radial
  for (size_t i = 0; i < out.n_radial(); i += 5)
    for (size_t j = 1; j < out.n_sphere(); ++j)
      CHECK(std::abs(out.at(0, i, j) - out.at(0, i, 0)) <=
            1e-8 * std::abs(out.at(0, i, 0)) + 1e-12);
}

TEST_CASE("riesz potential: dilation covariance") {
  Fixture fx;
  double lambda = 2.0, gamma = 1.0;
  GridField base = riesz_potential(fx.gauss, gamma);
  RadialGrid rd = build_radial_grid(fx.r.rho_min * lambda, fx.r.rho_max * lambda, 128,
                                    Grading::Composite);
  GridField dil = sample_field(rd, fx.s, [&](double rho, const Vec3&) {
    return std::exp(-(rho / lambda) * (rho / lambda));
  });
  GridField out = riesz_potential(dil, gamma);
  // T(f(./lam))(lam x) = lam^{n - gamma} (Tf)(x), node for node on the
  // dilated grid.
  double scale = std::pow(lambda, 3.0 - gamma);
  for (size_t i = 0; i < base.n_radial(); i += 7)
    CHECK(out.at(0, i, 0) == doctest::Approx(scale * base.at(0, i, 0)).epsilon(1e-6));
}

TEST_CASE("riesz potential: domain and decay guards") {
  Fixture fx;
  CHECK_THROWS_AS(riesz_potential(fx.gauss, 0.0), std::domain_error);
  CHECK_THROWS_AS(riesz_potential(fx.gauss, 3.0), std::domain_error);
  GridField undecayed = sample_field(fx.r, fx.s, [](double, const Vec3&) { return 1.0; });
  CHECK_THROWS_AS(riesz_potential(undecayed, 1.0), std::domain_error);
}

TEST_CASE("smooth potential: pointwise domination by the riesz potential") {
  RadialGrid r = build_radial_grid(5e-3, 10.0, 96, Grading::Composite);
  SphereGrid s = build_sphere_grid(3, 4);
  GridField f = sample_field(r, s, [](double rho, const Vec3& w) {
    return std::exp(-rho * rho) * (w.z - 0.4);  // sign-changing, non-radial
  });
  GridField absf = f;
  for (auto& v : absf.values) v = std::abs(v);
  for (double gamma : {1.0, 2.25}) {
    GridField Sg = smooth_potential(f, gamma);
    GridField Tg = riesz_potential(absf, gamma);
    for (size_t i = 0; i < f.n_radial(); i += 3)
      for (size_t j = 0; j < f.n_sphere(); ++j)
        CHECK(std::abs(Sg.at(0, i, j)) <= Tg.at(0, i, j) * (1.0 + 1e-9) + 1e-12);
  }
}

TEST_CASE("smooth potential: mollified identity and far field") {
  RadialGrid r = build_radial_grid(1e-3, 16.0, 160, Grading::Composite);
  SphereGrid s = build_sphere_grid(3, 2);

  // Narrow bump of unit mass: output ~ <x>^{-gamma} up to bump-width error.
  double w = 0.05;
  double mass = std::pow(2.0 * kPi * w * w, 1.5);
  GridField bump = sample_field(r, s, [&](double rho, const Vec3&) {
    return std::exp(-rho * rho / (2.0 * w * w)) / mass;
  });
  GridField out = smooth_potential(bump, 1.5);
  for (double probe : {0.5, 1.0, 3.0}) {
    size_t idx = 0;
    while (r.nodes[idx] < probe) ++idx;
    double expect = std::pow(1.0 + r.nodes[idx] * r.nodes[idx], -0.75);
    CHECK(out.at(0, idx, 0) == doctest::Approx(expect).epsilon(5e-3));
  }

  // Smooth ball, far field ~ mass * <r>^{-gamma}.
  GridField ball = sample_field(r, s, [](double rho, const Vec3&) {
    if (rho <= 0.8) return 1.0;
    if (rho >= 1.0) return 0.0;
    double u = (rho - 0.8) / 0.2;
    return 1.0 - u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
  });
  double ball_mass = 0.0;
  for (size_t i = 0; i < r.size(); ++i)
    ball_mass += 4.0 * kPi * r.weights[i] * r.nodes[i] * r.nodes[i] * ball.at(0, i, 0);
  GridField pot = smooth_potential(ball, 2.0);
  for (double probe : {8.0, 12.0}) {
    size_t idx = 0;
    while (r.nodes[idx] < probe) ++idx;
    double rr = r.nodes[idx];
    CHECK(pot.at(0, idx, 0) ==
          doctest::Approx(ball_mass / (1.0 + rr * rr)).epsilon(0.03));
  }
}

TEST_CASE("heat evolution: identity, gaussian closed form, mass, semigroup") {
  Fixture fx;
  GridField id = heat_evolve(fx.gauss, 0.0);
  CHECK(id.values == fx.gauss.values);

  double t = 0.25;
  GridField out = heat_evolve(fx.gauss, t);
  double c = std::pow(1.0 + 4.0 * t, -1.5);
  for (size_t i = 0; i < out.n_radial(); i += 5) {
    double rho = fx.r.nodes[i];
    double expect = c * std::exp(-rho * rho / (1.0 + 4.0 * t));
    CHECK(std::abs(out.at(0, i, 0) - expect) < 1e-8);
  }

  auto mass = [&](const GridField& g) {
    double acc = 0.0;
    for (size_t i = 0; i < g.n_radial(); ++i)
      for (size_t j = 0; j < g.n_sphere(); ++j)
        acc += g.radial.weights[i] * std::pow(g.radial.nodes[i], 2) * g.sphere.weights[j] *
               g.at(0, i, j);
    return acc;
  };
  CHECK(mass(out) == doctest::Approx(mass(fx.gauss)).epsilon(1e-8));

  GridField two_step = heat_evolve(heat_evolve(fx.gauss, 0.2), 0.3);
  GridField one_step = heat_evolve(fx.gauss, 0.5);
  for (size_t i = 0; i < one_step.n_radial(); i += 9)
    CHECK(two_step.at(0, i, 0) == doctest::Approx(one_step.at(0, i, 0)).epsilon(1e-6));
}

TEST_CASE("heat derivative kernel matches the gaussian gradient") {
  RadialGrid r = build_radial_grid(1e-2, 10.0, 96, Grading::Composite);
  SphereGrid s = build_sphere_grid(3, 4);
  GridField u0 = sample_field(r, s, [](double rho, const Vec3&) { return std::exp(-rho * rho); });
  double t = 0.5;
  GridField dx = heat_evolve_derivative(u0, t, 0);
  double a = 1.0 + 4.0 * t;
  for (size_t i = 0; i < r.size(); i += 11)
    for (size_t j = 0; j < s.size(); j += 3) {
      Vec3 x = dx.node(i, j);
      double expect = std::pow(a, -1.5) * std::exp(-dot(x, x) / a) * (-2.0 * x.x / a);
      CHECK(dx.at(0, i, j) == doctest::Approx(expect).epsilon(1e-4).scale(0.1));
    }
}

TEST_CASE("fit_decay") {
  std::vector<std::pair<double, double>> exact;
  for (double t : {1.0, 2.0, 5.0, 10.0, 20.0}) exact.emplace_back(t, std::pow(t, -1.5));
  DecayFit f = fit_decay(exact);
  CHECK(f.slope == doctest::Approx(-1.5).epsilon(1e-13));
  CHECK(f.residual < 1e-12);

  std::vector<std::pair<double, double>> constant;
  for (double t : {1.0, 2.0, 4.0, 8.0}) constant.emplace_back(t, 3.0);
  CHECK(fit_decay(constant).slope == doctest::Approx(0.0));

  std::vector<std::pair<double, double>> asym;
  for (int k = 0; k < 8; ++k) {
    double t = 10.0 * std::pow(100.0, k / 7.0);
    asym.emplace_back(t, std::pow(1.0 + 4.0 * t, -1.5));
  }
  CHECK(std::abs(fit_decay(asym).slope + 1.5) < 0.01);

  CHECK_THROWS_AS(fit_decay({{1.0, 1.0}, {2.0, 0.5}}), config_error);
  CHECK_THROWS_AS(fit_decay({{1.0, 1.0}, {2.0, -0.5}, {3.0, 1.0}, {4.0, 1.0}}), config_error);
}

TEST_CASE("verify_decay: gaussian heat rates") {
  RadialGrid r = build_radial_grid(1e-3, 14.0, 96, Grading::Composite);
  SphereGrid s = build_sphere_grid(3, 2);
  GridField u0 = sample_field(r, s, [](double rho, const Vec3&) { return std::exp(-rho * rho); });

  IndexTuple t;
  t.n = 3;
  t.p = ExtReal(1);
  t.ptilde = inf;
  t.q = inf;
  t.qtilde = inf;
  t.alpha = t.beta = ExtReal(0);
  DecayVerification v =
      verify_decay(t, 0, u0, log_times(10.0, 1000.0, 7), DecayKind::PointwiseHeat, true);
  CHECK(v.predicted == doctest::Approx(1.5));
  CHECK(std::abs(v.fit.slope + 1.5) < 0.05);
  CHECK(v.pass);

  // L2 -> Linf: bound-consistent but not saturated by a gaussian.
  t.p = ExtReal(2);
  t.ptilde = ExtReal(2);
  DecayVerification w =
      verify_decay(t, 0, u0, log_times(10.0, 1000.0, 7), DecayKind::PointwiseHeat, false);
  CHECK(w.predicted == doctest::Approx(0.75));
  CHECK(w.bound_consistent);
  CHECK(w.fit.slope < -1.3);  // the actual gaussian rate is -3/2
  CHECK_FALSE(w.saturates);

  // beta = alpha, q = p: contraction direction, norms nonincreasing in t.
  IndexTuple c;
  c.n = 3;
  c.p = c.q = ExtReal(2);
  c.ptilde = c.qtilde = ExtReal(2);
  c.alpha = c.beta = ExtReal(0);
  DecayVerification cv =
      verify_decay(c, 0, u0, log_times(0.5, 8.0, 5), DecayKind::PointwiseHeat, false);
  CHECK(cv.predicted == doctest::Approx(0.0));
  for (size_t i = 1; i < cv.series.size(); ++i)
    CHECK(cv.series[i].second <= cv.series[i - 1].second * (1.0 + 1e-12));

  IndexTuple bad = c;
  bad.beta = ExtReal(1.0);  // Lambda ordering violated
  CHECK_THROWS_AS(verify_decay(bad, 0, u0, log_times(1.0, 10.0, 4)), config_error);
}

TEST_CASE("localized decay: restricted constants amplify like R^(-Lambda_gap)") {
  // Plateau datum with alpha = -n/q: the parabola restriction stays
  // boundary-dominated at every R, so the restricted constants follow the
  // R^{beta + n/q} = R^{-Lambda_gap} law through the whole window.
  RadialGrid r = build_radial_grid(1e-3, 60.0, 224, Grading::Log);
  SphereGrid s = build_sphere_grid(3, 2);
  GridField u0 = sample_field(r, s, [](double rho, const Vec3&) {
    return std::pow(1.0 + (rho / 5.0) * (rho / 5.0), -0.6);
  });
  IndexTuple t;
  t.n = 3;
  t.p = ExtReal(2);
  t.q = ExtReal(6);
  t.ptilde = ExtReal(2);
  t.qtilde = ExtReal(6);
  t.alpha = rat(-1, 2);
  t.beta = rat(1, 4);
  LocalizedDecayResult res = localized_decay_constants(
      t, 0, u0, {5e-4, 1e-3, 1.6e-3, 2.5e-3}, {1.0, 2.0, 4.0});
  CHECK(res.lambda_gap == doctest::Approx(-0.75));
  for (double c : res.constants) CHECK(c > 0.0);
  CHECK(std::abs(res.fitted_slope - (-res.lambda_gap)) < 0.1 * (-res.lambda_gap));
}
