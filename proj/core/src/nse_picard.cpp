#include "anglab/nse_picard.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "anglab/norms.hpp"

namespace anglab {

namespace {

constexpr double kPi = std::numbers::pi;

bool plain_lebesgue(const MonitorNorm& m) {
  return m.alpha == 0.0 && approx_equal(m.p, m.ptilde, 0.0);
}

}  // namespace

double monitor_field_norm(const SpectralField& u, const MonitorNorm& m) {
  if (plain_lebesgue(m)) return u.box_lebesgue_norm(m.p.value());
  RadialGrid r = build_radial_grid(u.box_length() / (4.0 * u.resolution()),
                                   0.49 * u.box_length(), m.radial_points, Grading::Composite);
  SphereGrid s = build_sphere_grid(3, m.sphere_level);
  GridField g = u.sample_to_grid(r, s);
  return mixed_norm(g, m.alpha, m.p, m.ptilde);
}

double monitor_trajectory_norm(const Trajectory& traj, const MonitorNorm& m) {
  if (traj.empty()) return 0.0;
  if (m.s.is_inf()) {
    double best = 0.0;
    for (const auto& [t, u] : traj) best = std::max(best, monitor_field_norm(u, m));
    return best;
  }
  double sv = m.s.value();
  double acc = 0.0;
  for (size_t k = 0; k + 1 < traj.size(); ++k) {
    double a = std::pow(monitor_field_norm(traj[k].second, m), sv);
    double b = std::pow(monitor_field_norm(traj[k + 1].second, m), sv);
    acc += 0.5 * (a + b) * (traj[k + 1].first - traj[k].first);
  }
  return std::pow(acc, 1.0 / sv);
}

SpectralField duhamel_step(const std::vector<std::pair<double, SpectralTensor>>& F, double t) {
  if (F.empty()) throw config_error("duhamel_step: empty trajectory");
  for (size_t k = 0; k + 1 < F.size(); ++k)
    if (!(F[k].first < F[k + 1].first))
      throw config_error("duhamel_step: times must be increasing");
  if (F.front().first < 0.0 || F.back().first > t + 1e-12)
    throw config_error("duhamel_step: samples must lie in [0, t]");

  // Project the divergence first (commutes with the time integral), then
  // integrate each mode of dI/ds = -|xi|^2 I + G(s) exactly against the
  // piecewise-linear interpolant of G.
  std::vector<SpectralField> G;
  G.reserve(F.size());
  for (const auto& [ts, tensor] : F) G.push_back(leray_div(tensor));

  const SpectralField& probe = G.front();
  SpectralField out(probe.resolution(), probe.box_length(), 3);
  const size_t m = out.spectral_size();

  for (size_t i = 0; i < m; ++i) {
    Vec3 xi = out.wavenumber(i);
    double lam = dot(xi, xi);
    for (int c = 0; c < 3; ++c) {
      std::complex<double> acc{0.0, 0.0};
      // Accumulate segments; between consecutive samples G is linear.
      for (size_t k = 0; k + 1 < G.size(); ++k) {
        double s0 = F[k].first, s1 = F[k + 1].first;
        double h = s1 - s0;
        std::complex<double> g0 = G[k].coeff(c, i), g1 = G[k + 1].coeff(c, i);
        // int_{s0}^{s1} e^{-lam (t - s)} (g0 (1 - u) + g1 u) ds, u = (s-s0)/h
        double z = lam * h;
        double decay_to_t = std::exp(-lam * (t - s1));
        double I0, I1;  // int e^{-lam(s1-s)} ds and int e^{-lam(s1-s)} u ds
        if (z < 1e-6) {
          I0 = h * (1.0 - 0.5 * z + z * z / 6.0);
          I1 = h * (0.5 - z / 6.0 + z * z / 24.0);
        } else {
          I0 = (1.0 - std::exp(-z)) / lam;
          I1 = (1.0 / lam) - I0 / z;
        }
        acc += decay_to_t * (g0 * (I0 - I1) + g1 * I1);
      }
      out.coeff(c, i) = acc;
    }
  }
  return out;
}

PicardTrace picard_iterate(const SpectralField& u0, double T, int steps, int max_iter,
                           const MonitorNorm& monitor, const PicardOptions& opts) {
  if (u0.components() != 3) throw config_error("picard_iterate: datum must have 3 components");
  if (!(T > 0.0) || steps < 2) throw config_error("picard_iterate: need T > 0, steps >= 2");
  if (u0.relative_divergence() > 1e-10)
    throw config_error("picard_iterate: datum not divergence-free");
  if (monitor.alpha != 0.0) {
    double outside = u0.mass_outside(u0.box_length() / 4.0);
    if (outside > 1e-8)
      throw config_error(
          "picard_iterate: weighted monitor needs the datum supported within L/4 of the box "
          "center (relative mass outside = " +
          std::to_string(outside) + "); min-image weights would be periodization-biased");
  }

  PicardTrace trace;
  for (int j = 0; j <= steps; ++j) trace.times.push_back(T * j / steps);

  // First iterate: pure heat flow.
  Trajectory cur;
  cur.reserve(trace.times.size());
  for (double t : trace.times) {
    SpectralField u = u0;
    u.heat_semigroup(t);
    cur.emplace_back(t, std::move(u));
  }
  if (opts.keep_iterate_trajectories) trace.iterates.push_back(cur);

  double u1_norm = monitor_trajectory_norm(cur, monitor);
  trace.iterations = 1;

  for (int it = 2; it <= max_iter; ++it) {
    // Nonlinearity samples of the previous iterate.
    std::vector<std::pair<double, SpectralTensor>> F;
    F.reserve(cur.size());
    for (const auto& [t, u] : cur) F.emplace_back(t, outer_product_dealiased(u));

    Trajectory next;
    next.reserve(cur.size());
    for (size_t j = 0; j < trace.times.size(); ++j) {
      double t = trace.times[j];
      SpectralField u = u0;
      u.heat_semigroup(t);
      if (j > 0) {
        std::vector<std::pair<double, SpectralTensor>> Fj(F.begin(), F.begin() + j + 1);
        u += duhamel_step(Fj, t);
      }
      next.emplace_back(t, std::move(u));
    }

    Trajectory diff;
    diff.reserve(cur.size());
    for (size_t j = 0; j < cur.size(); ++j) {
      SpectralField d = next[j].second;
      d -= cur[j].second;
      diff.emplace_back(trace.times[j], std::move(d));
    }
    double dn = monitor_trajectory_norm(diff, monitor);
    trace.diff_norms.push_back(dn);
    if (trace.diff_norms.size() >= 2) {
      double prev = trace.diff_norms[trace.diff_norms.size() - 2];
      if (prev > 0.0) trace.contraction_ratios.push_back(dn / prev);
    }

    cur = std::move(next);
    if (opts.keep_iterate_trajectories) trace.iterates.push_back(cur);
    trace.iterations = it;

    if (dn <= opts.diff_floor * std::max(u1_norm, 1e-300)) {
      trace.converged = true;
      break;
    }
    if (trace.contraction_ratios.size() >= 2) {
      size_t nr = trace.contraction_ratios.size();
      double r1 = trace.contraction_ratios[nr - 1], r2 = trace.contraction_ratios[nr - 2];
      if (r1 < 1.0 && std::abs(r1 - r2) < opts.stagnation_tol) {
        trace.converged = true;
        break;
      }
      if (r1 > 2.0 && r2 > 2.0) break;  // clearly diverging; stop early
    }
  }
  trace.final_iterate = std::move(cur);
  return trace;
}

MonitorSeries monitor_norms(const PicardTrace& trace, const ExtReal& alpha, const ExtReal& p,
                            const ExtReal& ptilde, const ExtReal& s, const MonitorNorm& m) {
  MonitorSeries out;
  MonitorNorm mm = m;
  mm.alpha = alpha.value();
  mm.p = p;
  mm.ptilde = ptilde;
  mm.s = s;
  for (const auto& [t, u] : trace.final_iterate) {
    out.times.push_back(t);
    out.norms.push_back(monitor_field_norm(u, mm));
  }
  out.classification = classify_regularity(alpha, p, ptilde, s, 3);
  return out;
}

CalderonSplit calderon_split(const SpectralField& u0, double ptilde,
                             const MonitorNorm& norm_params) {
  if (!(ptilde > 2.0) || !(ptilde < 4.0))
    throw config_error("calderon_split: ptilde must lie in (2, 4)");
  if (u0.components() != 3) throw config_error("calderon_split: datum must have 3 components");
  if (u0.relative_divergence() > 1e-10)
    throw config_error("calderon_split: datum not divergence-free");

  CalderonSplit out;
  out.theta = 2.0 - 4.0 / ptilde;  // 1/ptilde = (1-theta)/2 + theta/4
  out.s = out.theta / (1.0 - out.theta);
  double base = out.theta / (1.0 - out.theta);
  out.a_theta = std::pow(base, (1.0 - out.theta) / (2.0 - out.theta));
  out.b_theta = std::pow(base, -out.theta / (2.0 - out.theta));

  // Amplitude threshold split in real space, then projection (the
  // t -> 0 heat limit of e^{t Delta} P).
  const int N = u0.resolution();
  std::vector<std::vector<double>> comps(3);
  for (int c = 0; c < 3; ++c) comps[c] = u0.to_real(c);
  std::vector<double> small(comps[0].size());
  SpectralField w0(N, u0.box_length(), 3);
  for (int c = 0; c < 3; ++c) {
    for (size_t i = 0; i < comps[0].size(); ++i) {
      double mag = std::sqrt(comps[0][i] * comps[0][i] + comps[1][i] * comps[1][i] +
                             comps[2][i] * comps[2][i]);
      small[i] = mag < out.s ? comps[c][i] : 0.0;
    }
    w0.from_real(c, small);
  }
  w0.leray_project();
  // v0 = P u_{0,>s} equals u0 - w0 for solenoidal data; subtracting keeps
  // the reconstruction bit-exact instead of cancelling two O(1) gradients.
  SpectralField v0 = u0;
  v0 -= w0;

  MonitorNorm m = norm_params;
  m.alpha = -0.5;
  m.p = ExtReal(2);
  m.ptilde = ExtReal(ptilde);
  out.u0_norm = monitor_field_norm(u0, m);
  m.ptilde = ExtReal(4);
  out.w0_norm = monitor_field_norm(w0, m);
  m.ptilde = ExtReal(2);
  out.v0_norm = monitor_field_norm(v0, m);

  out.measured_c_w = out.w0_norm / (out.a_theta * std::pow(out.u0_norm, ptilde / 4.0));
  out.measured_c_v = out.v0_norm / (out.b_theta * std::pow(out.u0_norm, ptilde / 2.0));

  out.v0 = std::move(v0);
  out.w0 = std::move(w0);
  return out;
}

SpectralField taylor_green(int N, double L, double amplitude) {
  double k = 2.0 * kPi / L;
  return SpectralField::from_function(N, L, 3, [&](int c, const Vec3& x) {
    switch (c) {
      case 0: return amplitude * std::sin(k * x.x) * std::cos(k * x.y) * std::cos(k * x.z);
      case 1: return -amplitude * std::cos(k * x.x) * std::sin(k * x.y) * std::cos(k * x.z);
      default: return 0.0;
    }
  });
}

SpectralField localized_vortex(int N, double L, double amplitude, double width) {
  // curl of psi = A exp(-r^2 / (2 w^2)) e_z, centered; divergence-free by
  // construction and supported (numerically) within ~3.5 w.
  double c0 = L / 2;
  SpectralField u = SpectralField::from_function(N, L, 3, [&](int c, const Vec3& x) {
    double dx = x.x - c0, dy = x.y - c0, dz = x.z - c0;
    double r2 = dx * dx + dy * dy + dz * dz;
    double psi = amplitude * std::exp(-r2 / (2.0 * width * width));
    switch (c) {
      case 0: return -dy / (width * width) * psi;   // d(psi)/dy with sign from curl
      case 1: return dx / (width * width) * psi;
      default: return 0.0;
    }
  });
  u.leray_project();  // clean up grid-scale divergence
  return u;
}

}  // namespace anglab
