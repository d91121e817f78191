#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "anglab/grids.hpp"

namespace anglab {

/// Real vector field on a periodic box [0,L)^3, kept as Fourier coefficients
/// in r2c layout (Hermitian symmetry implicit, so the field stays real).
/// Weighted norms are measured from the box center via min-image distances;
/// data for weighted work must be supported well inside the box.
class SpectralField {
public:
  SpectralField() = default;
  SpectralField(int N, double L, int components = 3);

  static SpectralField from_function(
      int N, double L, int components,
      const std::function<double(int, const Vec3&)>& f);  // f(component, x)

  int resolution() const { return N_; }
  double box_length() const { return L_; }
  int components() const { return d_; }
  Vec3 center() const { return {L_ / 2, L_ / 2, L_ / 2}; }
  bool empty() const { return N_ == 0; }

  size_t spectral_size() const;  // per component, r2c layout
  std::complex<double>& coeff(int c, size_t idx) { return coef_[c * spectral_size() + idx]; }
  const std::complex<double>& coeff(int c, size_t idx) const {
    return coef_[c * spectral_size() + idx];
  }

  /// Physical wavenumber of the r2c index (kx, ky, kz half-spectrum).
  Vec3 wavenumber(size_t idx) const;

  std::vector<double> to_real(int c) const;        // one component, N^3 row-major (x fastest)
  void from_real(int c, const std::vector<double>& data);

  /// Fourier multiplier delta_jk - xi_j xi_k / |xi|^2; zero mode untouched.
  void leray_project();
  /// |xi|^sigma multiplier per component; zero mode mapped to 0.
  void fractional_derivative(double sigma);
  /// e^{-t |xi|^2} multiplier.
  void heat_semigroup(double t);
  void scale(double factor);

  /// max_xi |xi . u(xi)| / max_xi |u(xi)| (0 for the zero field).
  double relative_divergence() const;
  double l2_norm() const;  // Parseval, box measure
  double max_abs() const;  // max over real-space nodes of the magnitude

  SpectralField& operator+=(const SpectralField& rhs);
  SpectralField& operator-=(const SpectralField& rhs);
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }

  /// Trilinear periodic interpolation of the magnitude-carrying components
  /// onto a radial x sphere grid centered at the box center.
  GridField sample_to_grid(const RadialGrid& r, const SphereGrid& s) const;

  /// Relative L2 mass outside |x - center| > radius (min-image).
  double mass_outside(double radius) const;

  /// Unweighted box norm (Sum h^3 |u|^p)^{1/p}; p = inf gives max_abs.
  double box_lebesgue_norm(double p) const;

private:
  int N_ = 0;
  double L_ = 0.0;
  int d_ = 0;
  std::vector<std::complex<double>> coef_;
};

/// Symmetric rank-2 tensor field in spectral form (6 components, xx yy zz xy
/// xz yz), the carrier of u (x) u in the Duhamel term.
struct SpectralTensor {
  int N = 0;
  double L = 0.0;
  std::vector<std::complex<double>> coef;  // 6 * spectral_size
  size_t spectral_size() const { return static_cast<size_t>(N) * N * (N / 2 + 1); }
};

/// u (x) u with 2/3-rule dealiasing; inputs in spectral form.
SpectralTensor outer_product_dealiased(const SpectralField& u);

/// Applies e^{t Delta} P div to a tensor: component i gets
/// P_ij (i xi_a) F_ja, then the heat multiplier.
SpectralField heat_oseen_apply(const SpectralTensor& F, double t);

/// P (i xi . F): the divergence of the tensor, Leray-projected (no heat).
SpectralField leray_div(const SpectralTensor& F);

}  // namespace anglab
