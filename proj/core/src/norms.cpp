#include "anglab/norms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "anglab/index_core.hpp"

namespace anglab {

namespace {

// Inner L^ptilde over the sphere at radial index i; max over nodes at inf.
double sphere_norm(const GridField& f, size_t i, const ExtReal& ptilde) {
  const size_t ns = f.n_sphere();
  if (ptilde.is_inf()) {
    double m = 0.0;
    for (size_t j = 0; j < ns; ++j) m = std::max(m, f.magnitude(i, j));
    return m;
  }
  double pt = ptilde.value();
  std::vector<double> terms(ns);
  for (size_t j = 0; j < ns; ++j)
    terms[j] = f.sphere.weights[j] * std::pow(f.magnitude(i, j), pt);
  return std::pow(pairwise_sum(terms), 1.0 / pt);
}

}  // namespace

double mixed_norm(const GridField& f, double alpha, const ExtReal& p, const ExtReal& ptilde) {
  return mixed_norm_restricted(f, alpha, p, ptilde,
                               std::numeric_limits<double>::infinity());
}

double mixed_norm_restricted(const GridField& f, double alpha, const ExtReal& p,
                             const ExtReal& ptilde, double rho_cut) {
  if (!ptilde.is_inf() && ptilde.value() < 1.0)
    throw std::domain_error("mixed_norm: ptilde < 1");
  const int n = f.sphere.dimension;
  const size_t nr = f.n_radial();

  if (p.is_inf()) {
    double m = 0.0;
    for (size_t i = 0; i < nr; ++i) {
      double rho = f.radial.nodes[i];
      if (!(rho < rho_cut)) continue;
      m = std::max(m, std::pow(rho, alpha) * sphere_norm(f, i, ptilde));
    }
    return m;
  }

  double pv = p.value();
  if (pv < 1.0) throw std::domain_error("mixed_norm: p < 1");
  double wexp = alpha * pv + n - 1;
  if (wexp <= -1.0)
    throw std::domain_error(
        "mixed_norm: radial weight rho^(alpha p + n - 1) not integrable at the origin "
        "(alpha p + n - 1 <= -1); the norm is infinite for generic fields");

  std::vector<double> terms(nr);
  for (size_t i = 0; i < nr; ++i) {
    double rho = f.radial.nodes[i];
    if (!(rho < rho_cut)) {
      terms[i] = 0.0;
      continue;
    }
    double s = sphere_norm(f, i, ptilde);
    terms[i] = f.radial.weights[i] * std::pow(rho, wexp) * std::pow(s, pv);
  }
  return std::pow(pairwise_sum(terms), 1.0 / pv);
}

double spacetime_norm(const std::vector<std::pair<double, GridField>>& trajectory, double alpha,
                      const ExtReal& s, const ExtReal& p, const ExtReal& ptilde) {
  if (trajectory.empty()) throw config_error("spacetime_norm: empty trajectory");
  for (size_t k = 0; k + 1 < trajectory.size(); ++k)
    if (!(trajectory[k].first < trajectory[k + 1].first))
      throw config_error("spacetime_norm: times must be strictly increasing");

  if (s.is_inf()) {
    double m = 0.0;
    for (const auto& [t, f] : trajectory) m = std::max(m, mixed_norm(f, alpha, p, ptilde));
    return m;
  }
  if (trajectory.size() < 2)
    throw config_error("spacetime_norm: finite s needs at least two time samples");
  double sv = s.value();
  if (sv < 1.0) throw std::domain_error("spacetime_norm: s < 1");

  std::vector<double> vals(trajectory.size());
  for (size_t k = 0; k < trajectory.size(); ++k)
    vals[k] = std::pow(mixed_norm(trajectory[k].second, alpha, p, ptilde), sv);
  double integral = 0.0;
  for (size_t k = 0; k + 1 < trajectory.size(); ++k)
    integral += 0.5 * (vals[k] + vals[k + 1]) * (trajectory[k + 1].first - trajectory[k].first);
  return std::pow(integral, 1.0 / sv);
}

}  // namespace anglab
