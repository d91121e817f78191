#include "anglab/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace anglab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct FftPlans {
  int N = 0;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  std::vector<double> rbuf;
  std::vector<std::complex<double>> cbuf;

  explicit FftPlans(int n) : N(n) {
    rbuf.assign(static_cast<size_t>(N) * N * N, 0.0);
    cbuf.assign(static_cast<size_t>(N) * N * (N / 2 + 1), {0.0, 0.0});
    r2c = fftw_plan_dft_r2c_3d(N, N, N, rbuf.data(),
                               reinterpret_cast<fftw_complex*>(cbuf.data()), FFTW_ESTIMATE);
    c2r = fftw_plan_dft_c2r_3d(N, N, N, reinterpret_cast<fftw_complex*>(cbuf.data()),
                               rbuf.data(), FFTW_ESTIMATE);
  }
  ~FftPlans() {
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
};

// Plans keyed by resolution; a handful of sizes per process.
FftPlans& plans_for(int N) {
  static std::vector<std::unique_ptr<FftPlans>> cache;
  for (auto& p : cache)
    if (p->N == N) return *p;
  cache.push_back(std::make_unique<FftPlans>(N));
  return *cache.back();
}

inline int signed_index(int k, int N) { return k <= N / 2 ? k : k - N; }

}  // namespace

SpectralField::SpectralField(int N, double L, int components) : N_(N), L_(L), d_(components) {
  if (N < 4 || N % 2 != 0) throw std::invalid_argument("SpectralField: N must be even, >= 4");
  if (!(L > 0.0)) throw std::invalid_argument("SpectralField: L > 0");
  coef_.assign(static_cast<size_t>(d_) * spectral_size(), {0.0, 0.0});
}

size_t SpectralField::spectral_size() const {
  return static_cast<size_t>(N_) * N_ * (N_ / 2 + 1);
}

Vec3 SpectralField::wavenumber(size_t idx) const {
  const int nzh = N_ / 2 + 1;
  int kz = static_cast<int>(idx % nzh);
  int ky = static_cast<int>((idx / nzh) % N_);
  int kx = static_cast<int>(idx / (static_cast<size_t>(nzh) * N_));
  double f = kTwoPi / L_;
  return {f * signed_index(kx, N_), f * signed_index(ky, N_), f * kz};
}

SpectralField SpectralField::from_function(int N, double L, int components,
                                           const std::function<double(int, const Vec3&)>& f) {
  SpectralField out(N, L, components);
  std::vector<double> data(static_cast<size_t>(N) * N * N);
  double h = L / N;
  for (int c = 0; c < components; ++c) {
    size_t idx = 0;
    for (int ix = 0; ix < N; ++ix)
      for (int iy = 0; iy < N; ++iy)
        for (int iz = 0; iz < N; ++iz, ++idx) data[idx] = f(c, {ix * h, iy * h, iz * h});
    out.from_real(c, data);
  }
  return out;
}

std::vector<double> SpectralField::to_real(int c) const {
  auto& P = plans_for(N_);
  std::copy(coef_.begin() + c * spectral_size(), coef_.begin() + (c + 1) * spectral_size(),
            P.cbuf.begin());
  fftw_execute(P.c2r);
  return P.rbuf;
}

void SpectralField::from_real(int c, const std::vector<double>& data) {
  auto& P = plans_for(N_);
  if (data.size() != P.rbuf.size()) throw std::invalid_argument("from_real: size mismatch");
  P.rbuf = data;
  fftw_execute(P.r2c);
  const double scale = 1.0 / (static_cast<double>(N_) * N_ * N_);
  for (size_t i = 0; i < spectral_size(); ++i) coef_[c * spectral_size() + i] = P.cbuf[i] * scale;
}

void SpectralField::leray_project() {
  if (d_ != 3) throw std::logic_error("leray_project: needs a 3-component field");
  const size_t m = spectral_size();
  for (size_t i = 0; i < m; ++i) {
    Vec3 xi = wavenumber(i);
    double k2 = dot(xi, xi);
    if (k2 == 0.0) continue;
    std::complex<double> div = xi.x * coef_[i] + xi.y * coef_[m + i] + xi.z * coef_[2 * m + i];
    std::complex<double> s = div / k2;
    coef_[i] -= xi.x * s;
    coef_[m + i] -= xi.y * s;
    coef_[2 * m + i] -= xi.z * s;
  }
}

void SpectralField::fractional_derivative(double sigma) {
  const size_t m = spectral_size();
  for (size_t i = 0; i < m; ++i) {
    Vec3 xi = wavenumber(i);
    double k2 = dot(xi, xi);
    double mult = k2 == 0.0 ? 0.0 : std::pow(k2, 0.5 * sigma);
    for (int c = 0; c < d_; ++c) coef_[c * m + i] *= mult;
  }
}

void SpectralField::heat_semigroup(double t) {
  if (t < 0.0) throw std::domain_error("heat_semigroup: t >= 0");
  if (t == 0.0) return;
  const size_t m = spectral_size();
  for (size_t i = 0; i < m; ++i) {
    Vec3 xi = wavenumber(i);
    double mult = std::exp(-t * dot(xi, xi));
    for (int c = 0; c < d_; ++c) coef_[c * m + i] *= mult;
  }
}

void SpectralField::scale(double factor) {
  for (auto& z : coef_) z *= factor;
}

double SpectralField::relative_divergence() const {
  if (d_ != 3) return 0.0;
  const size_t m = spectral_size();
  double max_div = 0.0, max_amp = 0.0;
  for (size_t i = 0; i < m; ++i) {
    Vec3 xi = wavenumber(i);
    std::complex<double> div = xi.x * coef_[i] + xi.y * coef_[m + i] + xi.z * coef_[2 * m + i];
    double knorm = std::sqrt(dot(xi, xi));
    double amp = std::abs(coef_[i]) + std::abs(coef_[m + i]) + std::abs(coef_[2 * m + i]);
    max_div = std::max(max_div, std::abs(div));
    max_amp = std::max(max_amp, knorm * amp);
  }
  return max_amp == 0.0 ? 0.0 : max_div / max_amp;
}

double SpectralField::l2_norm() const {
  // Parseval with box measure: ||u||_L2^2 = L^3 sum_k |u_k|^2 (r2c layout
  // stores only kz >= 0; mirror modes double except the kz = 0 / kz = N/2 planes).
  const size_t m = spectral_size();
  const int nzh = N_ / 2 + 1;
  double acc = 0.0;
  for (int c = 0; c < d_; ++c)
    for (size_t i = 0; i < m; ++i) {
      int kz = static_cast<int>(i % nzh);
      double mult = (kz == 0 || kz == N_ / 2) ? 1.0 : 2.0;
      acc += mult * std::norm(coef_[c * m + i]);
    }
  return std::sqrt(acc * L_ * L_ * L_);
}

double SpectralField::max_abs() const {
  std::vector<std::vector<double>> reals(d_);
  for (int c = 0; c < d_; ++c) reals[c] = to_real(c);
  double m = 0.0;
  for (size_t i = 0; i < reals[0].size(); ++i) {
    double s = 0.0;
    for (int c = 0; c < d_; ++c) s += reals[c][i] * reals[c][i];
    m = std::max(m, s);
  }
  return std::sqrt(m);
}

SpectralField& SpectralField::operator+=(const SpectralField& rhs) {
  if (N_ != rhs.N_ || d_ != rhs.d_) throw std::invalid_argument("SpectralField: shape mismatch");
  for (size_t i = 0; i < coef_.size(); ++i) coef_[i] += rhs.coef_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& rhs) {
  if (N_ != rhs.N_ || d_ != rhs.d_) throw std::invalid_argument("SpectralField: shape mismatch");
  for (size_t i = 0; i < coef_.size(); ++i) coef_[i] -= rhs.coef_[i];
  return *this;
}

GridField SpectralField::sample_to_grid(const RadialGrid& r, const SphereGrid& s) const {
  std::vector<std::vector<double>> reals(d_);
  for (int c = 0; c < d_; ++c) reals[c] = to_real(c);
  GridField out = make_grid_field(r, s, d_);
  const double h = L_ / N_;
  Vec3 c0 = center();
  auto interp = [&](const std::vector<double>& data, const Vec3& x) {
    // trilinear, periodic wrap
    double fx = x.x / h, fy = x.y / h, fz = x.z / h;
    int ix = static_cast<int>(std::floor(fx)), iy = static_cast<int>(std::floor(fy)),
        iz = static_cast<int>(std::floor(fz));
    double tx = fx - ix, ty = fy - iy, tz = fz - iz;
    auto wrap = [&](int i) { return ((i % N_) + N_) % N_; };
    double acc = 0.0;
    for (int dx = 0; dx <= 1; ++dx)
      for (int dy = 0; dy <= 1; ++dy)
        for (int dz = 0; dz <= 1; ++dz) {
          double w = (dx ? tx : 1 - tx) * (dy ? ty : 1 - ty) * (dz ? tz : 1 - tz);
          size_t idx = (static_cast<size_t>(wrap(ix + dx)) * N_ + wrap(iy + dy)) * N_ +
                       wrap(iz + dz);
          acc += w * data[idx];
        }
    return acc;
  };
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = 0; j < s.size(); ++j) {
      Vec3 x{c0.x + r.nodes[i] * s.points[j].x, c0.y + r.nodes[i] * s.points[j].y,
             c0.z + r.nodes[i] * s.points[j].z};
      for (int c = 0; c < d_; ++c) out.at(c, i, j) = interp(reals[c], x);
    }
  return out;
}

double SpectralField::mass_outside(double radius) const {
  std::vector<std::vector<double>> reals(d_);
  for (int c = 0; c < d_; ++c) reals[c] = to_real(c);
  double inside = 0.0, outside = 0.0;
  const double h = L_ / N_;
  size_t idx = 0;
  for (int ix = 0; ix < N_; ++ix)
    for (int iy = 0; iy < N_; ++iy)
      for (int iz = 0; iz < N_; ++iz, ++idx) {
        auto mi = [&](double v) {
          double d = v - L_ / 2;
          return d;  // node coords in [0,L): min-image offset from center
        };
        Vec3 dxv{mi(ix * h), mi(iy * h), mi(iz * h)};
        double r2 = dot(dxv, dxv);
        double m = 0.0;
        for (int c = 0; c < d_; ++c) m += reals[c][idx] * reals[c][idx];
        if (r2 > radius * radius)
          outside += m;
        else
          inside += m;
      }
  double total = inside + outside;
  return total == 0.0 ? 0.0 : outside / total;
}

double SpectralField::box_lebesgue_norm(double p) const {
  std::vector<std::vector<double>> reals(d_);
  for (int c = 0; c < d_; ++c) reals[c] = to_real(c);
  const double h3 = std::pow(L_ / N_, 3);
  if (std::isinf(p)) return max_abs();
  double acc = 0.0;
  for (size_t i = 0; i < reals[0].size(); ++i) {
    double s = 0.0;
    for (int c = 0; c < d_; ++c) s += reals[c][i] * reals[c][i];
    acc += h3 * std::pow(std::sqrt(s), p);
  }
  return std::pow(acc, 1.0 / p);
}

SpectralTensor outer_product_dealiased(const SpectralField& u) {
  if (u.components() != 3) throw std::logic_error("outer_product: needs 3 components");
  const int N = u.resolution();
  SpectralTensor F;
  F.N = N;
  F.L = u.box_length();
  F.coef.assign(6 * F.spectral_size(), {0.0, 0.0});

  std::vector<std::vector<double>> ur(3);
  for (int c = 0; c < 3; ++c) ur[c] = u.to_real(c);

  // pairs: xx yy zz xy xz yz
  const int pa[6] = {0, 1, 2, 0, 0, 1};
  const int pb[6] = {0, 1, 2, 1, 2, 2};
  SpectralField tmp(N, u.box_length(), 1);
  std::vector<double> prod(ur[0].size());
  const int cutoff = N / 3;
  for (int t6 = 0; t6 < 6; ++t6) {
    for (size_t i = 0; i < prod.size(); ++i) prod[i] = ur[pa[t6]][i] * ur[pb[t6]][i];
    tmp.from_real(0, prod);
    const size_t m = F.spectral_size();
    const int nzh = N / 2 + 1;
    for (size_t i = 0; i < m; ++i) {
      int kz = static_cast<int>(i % nzh);
      int ky = signed_index(static_cast<int>((i / nzh) % N), N);
      int kx = signed_index(static_cast<int>(i / (static_cast<size_t>(nzh) * N)), N);
      bool keep = std::abs(kx) <= cutoff && std::abs(ky) <= cutoff && std::abs(kz) <= cutoff;
      F.coef[t6 * m + i] = keep ? tmp.coeff(0, i) : std::complex<double>{0.0, 0.0};
    }
  }
  return F;
}

SpectralField leray_div(const SpectralTensor& F) {
  SpectralField out(F.N, F.L, 3);
  const size_t m = F.spectral_size();
  // tensor component lookup: T[i][j] index into the 6-pack
  const int tidx[3][3] = {{0, 3, 4}, {3, 1, 5}, {4, 5, 2}};
  for (size_t i = 0; i < m; ++i) {
    Vec3 xi = out.wavenumber(i);
    double k[3] = {xi.x, xi.y, xi.z};
    std::complex<double> div[3];
    for (int a = 0; a < 3; ++a) {
      std::complex<double> acc{0.0, 0.0};
      for (int b = 0; b < 3; ++b)
        acc += std::complex<double>(0.0, k[b]) * F.coef[tidx[a][b] * m + i];
      div[a] = acc;
    }
    double k2 = xi.x * xi.x + xi.y * xi.y + xi.z * xi.z;
    if (k2 > 0.0) {
      std::complex<double> kdotdiv = k[0] * div[0] + k[1] * div[1] + k[2] * div[2];
      for (int a = 0; a < 3; ++a) div[a] -= k[a] * kdotdiv / k2;
    } else {
      div[0] = div[1] = div[2] = {0.0, 0.0};
    }
    for (int a = 0; a < 3; ++a) out.coeff(a, i) = div[a];
  }
  return out;
}

SpectralField heat_oseen_apply(const SpectralTensor& F, double t) {
  SpectralField out = leray_div(F);
  out.heat_semigroup(t);
  return out;
}

}  // namespace anglab
