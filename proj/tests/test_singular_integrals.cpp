#include <doctest.h>

#include <cmath>
#include <numbers>

#include "anglab/grids.hpp"
#include "anglab/index_core.hpp"
#include "anglab/singular_integrals.hpp"

using namespace anglab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("eval_I trivial and closed-form values") {
  CHECK(eval_I(1.7, 0.0, 3) == doctest::Approx(4.0 * kPi));
  CHECK(eval_I(1.0, 3.0, 3, 1e-10) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-8));
  CHECK(eval_I(2.0, 0.5, 3, 1e-10) ==
        doctest::Approx(4.0 * kPi * std::log(3.0)).epsilon(1e-8));
  CHECK(std::isinf(eval_I(2.5, 1.0, 3)));
  CHECK(std::isinf(eval_I(2.0, 1.0, 3)));
}

TEST_CASE("closed_form_I_n3") {
  CHECK(closed_form_I_n3(1.0, 3.0) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-14));
  CHECK(closed_form_I_n3(0.5, 0.0) == doctest::Approx(4.0 * kPi));
  double v = closed_form_I_n3(2.5, 1.1);
  double expect = (2.0 * kPi / (1.1 * (-0.5))) * (std::pow(2.1, -0.5) - std::pow(0.1, -0.5));
  CHECK(v == doctest::Approx(expect).epsilon(1e-14));
  CHECK(v == doctest::Approx(28.2425).epsilon(1e-4));
  CHECK(std::isinf(closed_form_I_n3(2.0, 1.0)));
}

TEST_CASE("oracle equivalence: eval_I against the n=3 closed form") {
  for (double nu : {0.5, 1.0, 1.5, 2.0, 2.5}) {
    for (int k = 0; k < 12; ++k) {
      double r = 0.05 * std::pow(10.0 / 0.05, k / 11.0);
      if (nu >= 2.0 && std::abs(r - 1.0) < 0.01) continue;
      double ref = closed_form_I_n3(nu, r);
      CHECK(eval_I(nu, r, 3, 1e-9) == doctest::Approx(ref).epsilon(1e-6));
    }
  }
}

TEST_CASE("eval_I n=2 against a coarse sphere-quadrature oracle") {
  // Independent check through the generic sphere grid.
  SphereGrid s = build_sphere_grid(2, 400);
  for (double nu : {0.5, 1.5}) {
    for (double r : {0.3, 2.5, 5.0}) {
      double quad = 0.0;
      for (size_t j = 0; j < s.size(); ++j) {
        double dx = r - s.points[j].x, dy = -s.points[j].y;
        quad += s.weights[j] * std::pow(dx * dx + dy * dy, -0.5 * nu);
      }
      CHECK(eval_I(nu, r, 2, 1e-10) == doctest::Approx(quad).epsilon(1e-6));
    }
  }
}

TEST_CASE("rotation invariance through an independent sphere quadrature") {
  SphereGrid s = build_sphere_grid(3, 90);
  double r = 2.7, nu = 1.3;
  for (Vec3 dir : {Vec3{0, 0, 1}, Vec3{1, 0, 0}, Vec3{0.6, 0.48, 0.64}}) {
    double quad = 0.0;
    for (size_t j = 0; j < s.size(); ++j) {
      Vec3 d{r * dir.x - s.points[j].x, r * dir.y - s.points[j].y, r * dir.z - s.points[j].z};
      quad += s.weights[j] * std::pow(dot(d, d), -0.5 * nu);
    }
    CHECK(quad == doctest::Approx(eval_I(nu, r, 3, 1e-12)).epsilon(1e-10));
  }
}

TEST_CASE("envelope_I regimes") {
  RegimeEnvelope far = envelope_I(1.0, 3.0, 3);
  CHECK(far.regime == Regime::Far);
  CHECK(far.value == doctest::Approx(std::pow(10.0, -0.5)).epsilon(1e-14));

  RegimeEnvelope sup = envelope_I(2.5, 1.1, 3);
  CHECK(sup.regime == Regime::ShellSuper);
  CHECK(sup.value == doctest::Approx(std::pow(0.1, -0.5)).epsilon(1e-12));

  RegimeEnvelope near = envelope_I(1.0, 0.3, 3);
  CHECK(near.regime == Regime::NearOrigin);
  CHECK(near.value == 1.0);

  CHECK(envelope_I(2.0, 1.5, 3).regime == Regime::ShellLog);
  CHECK(envelope_I(1.0, 1.5, 3).regime == Regime::ShellSub);

  // Inversion: shell regime labels agree for r and 1/r.
  for (double r : {0.55, 0.7, 0.95})
    for (double nu : {1.0, 2.0, 2.5})
      CHECK(envelope_I(nu, r, 3).regime == envelope_I(nu, 1.0 / r, 3).regime);
}

TEST_CASE("eval_J values and bounds") {
  CHECK(eval_J(1.3, 2.0, 0.0, 3) ==
        doctest::Approx(4.0 * kPi * std::pow(5.0, -0.65)).epsilon(1e-10));
  CHECK(eval_J(2.0, 0.0, 1.0, 3) == doctest::Approx(2.0 * kPi).epsilon(1e-10));

  // kernel <= 1 so J <= |S^{n-1}| exactly.
  for (double nu : {0.5, 2.0, 3.5})
    for (double r : {0.0, 0.7, 3.0})
      for (double rho : {0.0, 1.0, 4.0}) {
        CHECK(eval_J(nu, r, rho, 3, 1e-9) <= 4.0 * kPi * (1.0 + 1e-9));
        CHECK(eval_J(nu, r, rho, 2, 1e-9) <= 2.0 * kPi * (1.0 + 1e-9));
      }

  // far-regime bracket from the spec example.
  double ratio = eval_J(1.0, 5.0, 1.0, 3, 1e-10) / std::pow(26.0, -0.5);
  CHECK(ratio >= 4.0 * kPi / 2.0);
  CHECK(ratio <= 4.0 * kPi * 2.0);
}

TEST_CASE("closed_form_J_n3 matches eval_J") {
  for (double nu : {0.8, 2.0, 3.1})
    for (double r : {0.5, 1.7, 6.0})
      for (double rho : {0.4, 1.7, 3.0})
        CHECK(eval_J(nu, r, rho, 3, 1e-10) ==
              doctest::Approx(closed_form_J_n3(nu, r, rho)).epsilon(1e-8));
}

TEST_CASE("envelope_J regimes") {
  CHECK(envelope_J(1.0, 5.0, 1.0, 3).regime == Regime::Far);
  CHECK(envelope_J(1.0, 0.5, 2.0, 3).regime == Regime::NearOrigin);
  CHECK(envelope_J(1.0, 3.0, 2.5, 3).regime == Regime::MixedJ);
  RegimeEnvelope log = envelope_J(2.0, 3.0, 2.5, 3);
  CHECK(log.formula_id.find("log") != std::string::npos);
}

TEST_CASE("envelope_ratio_scan brackets are finite, positive and modest") {
  struct Case {
    double nu;
    Regime regime;
  };
  for (const Case& c : {Case{1.0, Regime::Far}, Case{1.0, Regime::NearOrigin},
                        Case{1.0, Regime::ShellSub}, Case{2.0, Regime::ShellLog},
                        Case{2.5, Regime::ShellSuper}, Case{1.5, Regime::MixedJ}}) {
    RatioBracket b = envelope_ratio_scan(c.nu, 3, c.regime, 24);
    CHECK(b.min_ratio > 0.0);
    CHECK(std::isfinite(b.max_ratio));
    CHECK(b.max_ratio / b.min_ratio < 50.0);
  }
  CHECK_THROWS_AS(envelope_ratio_scan(1.0, 3, Regime::ShellLog, 8), config_error);
}

TEST_CASE("far-regime ratio tightness for nu=1") {
  RatioBracket b = envelope_ratio_scan(1.0, 3, Regime::Far, 40);
  CHECK(b.max_ratio / b.min_ratio < 2.0);  // closed form: ratio -> 4 pi
}
