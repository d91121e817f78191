#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "anglab/norms.hpp"
#include "anglab/nse_picard.hpp"

using namespace anglab;

namespace {
constexpr double kPi = std::numbers::pi;
const double kTwoPi = 2.0 * kPi;
}  // namespace

TEST_CASE("leray projection annihilates gradients and fixes solenoidal fields") {
  int N = 16;
  double L = kTwoPi;
  // gradient of psi = sin x cos 2y sin z
  SpectralField grad = SpectralField::from_function(N, L, 3, [&](int c, const Vec3& x) {
    switch (c) {
      case 0: return std::cos(x.x) * std::cos(2 * x.y) * std::sin(x.z);
      case 1: return -2.0 * std::sin(x.x) * std::sin(2 * x.y) * std::sin(x.z);
      default: return std::sin(x.x) * std::cos(2 * x.y) * std::cos(x.z);
    }
  });
  double amp0 = grad.max_abs();
  grad.leray_project();
  CHECK(grad.max_abs() < 1e-12 * amp0);

  SpectralField tg = taylor_green(N, L, 1.0);
  CHECK(tg.relative_divergence() < 1e-13);
  SpectralField proj = tg;
  proj.leray_project();
  proj -= tg;
  CHECK(proj.max_abs() < 1e-12);

  // idempotence on a generic field
  SpectralField f = SpectralField::from_function(N, L, 3, [&](int c, const Vec3& x) {
    return std::sin(x.x + c) * std::cos(2 * x.y - c) + 0.3 * std::sin(x.z + 0.5 * c);
  });
  SpectralField once = f;
  once.leray_project();
  SpectralField twice = once;
  twice.leray_project();
  twice -= once;
  CHECK(twice.max_abs() < 1e-13);
  CHECK(once.relative_divergence() < 1e-12);
}

TEST_CASE("fractional derivative: identity, laplacian, composition") {
  int N = 32;
  double L = kTwoPi;
  SpectralField f = SpectralField::from_function(N, L, 1, [&](int, const Vec3& x) {
    return std::sin(2 * x.x) * std::cos(x.y) + std::cos(3 * x.z);
  });

  SpectralField id = f;
  id.fractional_derivative(0.0);
  id -= f;
  CHECK(id.max_abs() < 1e-13);  // mean-zero field

  // sigma = 2 equals -Delta: exact on modes, O(h^2) against the stencil.
  SpectralField lap = f;
  lap.fractional_derivative(2.0);
  auto real = f.to_real(0);
  auto lapr = lap.to_real(0);
  double h = L / N;
  double max_err = 0.0;
  auto wrap = [&](int i) { return ((i % N) + N) % N; };
  auto at = [&](const std::vector<double>& d, int i, int j, int k) {
    return d[(static_cast<size_t>(wrap(i)) * N + wrap(j)) * N + wrap(k)];
  };
  for (int i = 0; i < N; i += 3)
    for (int j = 0; j < N; j += 3)
      for (int k = 0; k < N; k += 3) {
        double stencil = -(at(real, i + 1, j, k) + at(real, i - 1, j, k) +
                           at(real, i, j + 1, k) + at(real, i, j - 1, k) +
                           at(real, i, j, k + 1) + at(real, i, j, k - 1) -
                           6.0 * at(real, i, j, k)) /
                         (h * h);
        max_err = std::max(max_err, std::abs(stencil - at(lapr, i, j, k)));
      }
  CHECK(max_err < 81.0 * h * h);  // second-order stencil defect, modes k <= 3

  SpectralField ab = f;
  ab.fractional_derivative(0.7);
  ab.fractional_derivative(1.1);
  SpectralField once = f;
  once.fractional_derivative(1.8);
  ab -= once;
  CHECK(ab.max_abs() < 1e-12 * once.max_abs() + 1e-12);
}

TEST_CASE("duhamel step: zero input, single-mode closed form, solenoidal output") {
  int N = 16;
  double L = kTwoPi;
  SpectralTensor F;
  F.N = N;
  F.L = L;
  F.coef.assign(6 * F.spectral_size(), {0.0, 0.0});
  std::vector<std::pair<double, SpectralTensor>> traj{{0.0, F}, {0.5, F}, {1.0, F}};
  SpectralField zero = duhamel_step(traj, 1.0);
  CHECK(zero.max_abs() < 1e-15);

  // constant-in-time single tensor mode at xi = (1,0,0), placed in the xy
  // slot so the projected divergence survives:
  // out_y = (1 - e^{-t|xi|^2})/|xi|^2 * (i xi_x) F_yx.
  size_t nzh = N / 2 + 1;
  size_t idx = (static_cast<size_t>(1) * N + 0) * nzh + 0;
  SpectralTensor Fxy = F;
  Fxy.coef[3 * F.spectral_size() + idx] = {0.25, 0.0};
  std::vector<std::pair<double, SpectralTensor>> tr;
  for (double tt : {0.0, 0.25, 0.5, 0.75, 1.0}) tr.emplace_back(tt, Fxy);
  double t = 1.0;
  SpectralField out = duhamel_step(tr, t);
  std::complex<double> expect =
      (1.0 - std::exp(-t)) * std::complex<double>(0.0, 1.0) * 0.25;
  CHECK(std::abs(out.coeff(1, idx) - expect) < 1e-10);
  CHECK(out.relative_divergence() < 1e-12);

  // the xx slot at the same mode is annihilated (divergence along xi).
  SpectralTensor Fxx = F;
  Fxx.coef[0 * F.spectral_size() + idx] = {0.25, 0.0};
  tr.clear();
  for (double tt : {0.0, 0.5, 1.0}) tr.emplace_back(tt, Fxx);
  out = duhamel_step(tr, t);
  CHECK(std::abs(out.coeff(0, idx)) < 1e-14);

  CHECK_THROWS_AS(duhamel_step({}, 1.0), config_error);
}

TEST_CASE("picard: zero datum and heat-flow first iterate") {
  int N = 16;
  double L = kTwoPi;
  MonitorNorm mon;  // alpha = 0, p = ptilde = 2: plain L2
  SpectralField zero(N, L, 3);
  PicardTrace zt = picard_iterate(zero, 0.5, 4, 4, mon);
  for (const auto& [t, u] : zt.final_iterate) CHECK(u.max_abs() < 1e-15);
  for (double d : zt.diff_norms) CHECK(d < 1e-15);

  SpectralField tg = taylor_green(N, L, 0.3);
  PicardTrace ht = picard_iterate(tg, 0.5, 4, 1, mon);
  for (size_t j = 0; j < ht.final_iterate.size(); ++j) {
    SpectralField ref = tg;
    ref.heat_semigroup(ht.times[j]);
    ref -= ht.final_iterate[j].second;
    CHECK(ref.max_abs() < 1e-14);
  }
  // energy sanity: heat-only L2 norms nonincreasing
  for (size_t j = 1; j < ht.final_iterate.size(); ++j)
    CHECK(ht.final_iterate[j].second.l2_norm() <=
          ht.final_iterate[j - 1].second.l2_norm() * (1.0 + 1e-13));
}

TEST_CASE("picard: small taylor-green contracts geometrically, solenoidal iterates") {
  int N = 16;
  double L = kTwoPi;
  MonitorNorm mon;
  PicardOptions opts;
  opts.keep_iterate_trajectories = true;
  SpectralField tg = taylor_green(N, L, 0.05);
  PicardTrace tr = picard_iterate(tg, 1.0, 8, 7, mon, opts);
  REQUIRE(tr.diff_norms.size() >= 3);
  for (double ratio : tr.contraction_ratios) CHECK(ratio <= 0.5);
  for (size_t i = 1; i < tr.diff_norms.size(); ++i)
    CHECK(tr.diff_norms[i] <= 0.5 * tr.diff_norms[i - 1]);
  for (const auto& traj : tr.iterates)
    for (const auto& [t, u] : traj) CHECK(u.relative_divergence() <= 1e-12);
}

TEST_CASE("picard: weighted monitor enforces the support-radius check") {
  // The bump must be resolved (width well above the grid scale) or the
  // projection of the aliased samples sheds mass across the box.
  int N = 32;
  double L = kTwoPi;
  MonitorNorm weighted;
  weighted.alpha = -0.5;
  weighted.p = ExtReal(2);
  weighted.ptilde = ExtReal(4);
  weighted.radial_points = 48;
  weighted.sphere_level = 4;
  SpectralField tg = taylor_green(N, L, 0.05);  // supported on the whole box
  CHECK_THROWS_AS(picard_iterate(tg, 0.5, 4, 3, weighted), config_error);

  SpectralField vortex = localized_vortex(N, L, 0.02, L / 22.0);
  CHECK(vortex.mass_outside(L / 4.0) < 1e-8);
  PicardTrace tr = picard_iterate(vortex, 0.5, 4, 3, weighted);
  CHECK(tr.iterations >= 2);
  for (double d : tr.diff_norms) CHECK(std::isfinite(d));
}

TEST_CASE("monitor norms: unweighted reduction and regularity classification") {
  int N = 32;
  double L = kTwoPi;
  SpectralField vortex = localized_vortex(N, L, 0.1, L / 16.0);
  MonitorNorm mon;
  CHECK(monitor_field_norm(vortex, mon) == doctest::Approx(vortex.l2_norm()).epsilon(1e-10));

  // resampled weighted path agrees with the direct norm for alpha ~ 0 up to
  // interpolation error
  MonitorNorm resampled = mon;
  resampled.alpha = 1e-30;  // forces the product-grid path
  resampled.radial_points = 128;
  resampled.sphere_level = 12;
  CHECK(monitor_field_norm(vortex, resampled) ==
        doctest::Approx(vortex.l2_norm()).epsilon(0.02));

  PicardTrace tr = picard_iterate(vortex, 0.25, 4, 1, mon);
  MonitorNorm weighted;
  weighted.alpha = -0.5;
  weighted.p = ExtReal(2);
  weighted.ptilde = ExtReal(4);
  weighted.radial_points = 64;
  weighted.sphere_level = 6;
  MonitorSeries ms = monitor_norms(tr, rat(-1, 2), ExtReal(2), ExtReal(4),
                                   ExtReal::infinity(), weighted);
  CHECK(ms.norms.size() == ms.times.size());
  for (double v : ms.norms) CHECK(v > 0.0);
  CHECK(ms.classification.value == RegularityClass::Global);
  REQUIRE(!ms.classification.notes.empty());  // ptilde = ptilde_G = 4 boundary
}

TEST_CASE("calderon split: exponents, reconstruction, projections") {
  int N = 32;
  double L = kTwoPi;
  SpectralField u0 = localized_vortex(N, L, 2.0, L / 16.0);
  MonitorNorm params;
  params.radial_points = 64;
  params.sphere_level = 6;
  CalderonSplit cs = calderon_split(u0, 3.0, params);
  CHECK(cs.theta == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(cs.s == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(cs.a_theta == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-12));
  CHECK(cs.b_theta == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-12));

  SpectralField sum = cs.v0;
  sum += cs.w0;
  sum -= u0;
  CHECK(sum.max_abs() < 1e-12 * u0.max_abs());
  CHECK(cs.v0.relative_divergence() < 1e-12);
  CHECK(cs.w0.relative_divergence() < 1e-12);
  CHECK(cs.measured_c_w > 0.0);
  CHECK(cs.measured_c_v > 0.0);

  CHECK_THROWS_AS(calderon_split(u0, 4.5, params), config_error);
}

TEST_CASE("calderon split: A/B coefficient shapes and limits") {
  // A rises from 0 through most of the range, peaks near theta ~ 0.82 above
  // its theta -> 1 limit of 1, then eases back; B mirrors this near 0. The
  // endpoint limits are exactly the stated ones.
  auto A = [](double th) { return std::pow(th / (1 - th), (1 - th) / (2 - th)); };
  auto B = [](double th) { return std::pow(th / (1 - th), -th / (2 - th)); };
  for (double th = 0.2; th < 0.85; th += 0.1) CHECK(A(th) > A(th - 0.1));
  CHECK(A(0.9) < A(0.8));  // past the interior peak
  for (double th = 0.3; th < 0.95; th += 0.1) CHECK(B(th) < B(th - 0.1));
  CHECK(B(0.2) > B(0.1));  // interior bump before the decay
  CHECK(A(1e-6) < 1e-2);      // lim_{theta->0} A = 0
  CHECK(B(1 - 1e-6) < 1e-2);  // lim_{theta->1} B = 0
  CHECK(A(1 - 1e-8) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(B(1e-8) == doctest::Approx(1.0).epsilon(1e-4));

  // The split itself is monotone in theta for a fixed datum: a rising
  // amplitude threshold moves mass from v0 to w0.
  int N = 16;
  double L = kTwoPi;
  SpectralField u0 = localized_vortex(N, L, 1.5, L / 14.0);
  MonitorNorm params;
  params.radial_points = 48;
  params.sphere_level = 4;
  double prev_w = -1.0, prev_v = 1e300;
  for (double pt : {2.2, 2.6, 3.0, 3.4, 3.8}) {
    CalderonSplit cs = calderon_split(u0, pt, params);
    CHECK(cs.w0_norm >= prev_w - 1e-12);
    CHECK(cs.v0_norm <= prev_v + 1e-12);
    prev_w = cs.w0_norm;
    prev_v = cs.v0_norm;
  }
}

TEST_CASE("taylor-green datum is solenoidal and mean-zero") {
  SpectralField tg = taylor_green(16, kTwoPi, 1.0);
  CHECK(tg.relative_divergence() < 1e-13);
  for (int c = 0; c < 3; ++c) CHECK(std::abs(tg.coeff(c, 0)) < 1e-15);
}

TEST_CASE("picard: contraction geometry is invariant under the joint rescaling") {
  // u0 -> lambda u0(lambda x) on the matched box with t -> t / lambda^2
  // maps the scheme onto itself, so contraction ratios agree step by step
  // and the measured amplitude threshold scales linearly.
  int N = 16;
  double L = kTwoPi, lambda = 2.0;
  MonitorNorm mon;
  PicardTrace base = picard_iterate(taylor_green(N, L, 4.0), 1.0, 6, 5, mon);
  PicardTrace scaled =
      picard_iterate(taylor_green(N, L / lambda, 4.0 * lambda), 1.0 / (lambda * lambda), 6, 5,
                     mon);
  REQUIRE(base.contraction_ratios.size() == scaled.contraction_ratios.size());
  for (size_t i = 0; i < base.contraction_ratios.size(); ++i)
    CHECK(base.contraction_ratios[i] ==
          doctest::Approx(scaled.contraction_ratios[i]).epsilon(1e-9));
}
