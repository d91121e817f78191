#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace anglab {

struct Vec3 {
  double x = 0, y = 0, z = 0;
};

inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int npoints, std::vector<double>& nodes, std::vector<double>& weights);

enum class Grading { Log, Linear, Composite };

/// Quadrature for integrals over a radial interval, d(rho) measure (no
/// rho^{n-1} factor; the norms attach their own weights). Composite
/// Gauss-Legendre panels, optionally log-graded toward the origin.
struct RadialGrid {
  std::vector<double> nodes;    // strictly increasing, > 0
  std::vector<double> weights;  // positive, sum = rho_max - rho_min
  Grading grading = Grading::Log;
  double rho_min = 0, rho_max = 0;

  size_t size() const { return nodes.size(); }
  /// Width of the quadrature cell around node i (for near-diagonal logic).
  double local_spacing(size_t i) const;
  /// Edges of the quadrature cell that node i belongs to.
  std::pair<double, double> cell(size_t i) const;

  std::vector<std::pair<double, double>> panels;  // panel edges
};

RadialGrid build_radial_grid(double rho_min, double rho_max, int n_points, Grading grading);

/// Quadrature nodes on the unit sphere S^{n-1}, n in {2,3}. Weights carry the
/// unnormalized surface measure: they sum to 2*pi (n=2) or 4*pi (n=3).
/// n=2: uniform angles (trapezoid, spectrally accurate).
/// n=3: Gauss-Legendre in cos(theta) x uniform in phi; exact for spherical
/// harmonics up to the declared degree.
struct SphereGrid {
  int dimension = 3;  // ambient dimension n
  int level = 0;
  std::vector<Vec3> points;     // unit vectors
  std::vector<double> weights;  // sum to |S^{n-1}|
  int exact_degree = 0;

  size_t size() const { return points.size(); }
  double surface_measure() const;
};

SphereGrid build_sphere_grid(int n, int level);

/// Scalar or vector samples on the product radial x sphere grid; the carrier
/// for mixed-norm quadrature and kernel convolutions.
struct GridField {
  RadialGrid radial;
  SphereGrid sphere;
  int components = 1;
  std::vector<double> values;  // [component][radial][sphere]

  size_t n_radial() const { return radial.size(); }
  size_t n_sphere() const { return sphere.size(); }
  double& at(int c, size_t i, size_t j) {
    return values[(static_cast<size_t>(c) * n_radial() + i) * n_sphere() + j];
  }
  double at(int c, size_t i, size_t j) const {
    return values[(static_cast<size_t>(c) * n_radial() + i) * n_sphere() + j];
  }
  Vec3 node(size_t i, size_t j) const {
    const Vec3& w = sphere.points[j];
    double r = radial.nodes[i];
    return {r * w.x, r * w.y, r * w.z};
  }
  /// Euclidean magnitude across components at a node.
  double magnitude(size_t i, size_t j) const;
  bool all_finite() const;
};

GridField make_grid_field(const RadialGrid& r, const SphereGrid& s, int components = 1);

/// Samples f(rho, omega) -> value; scalar fields only.
GridField sample_field(const RadialGrid& r, const SphereGrid& s,
                       const std::function<double(double, const Vec3&)>& f);

/// CSV format: one '#'-prefixed JSON descriptor line (grids, components),
/// then rows rho,omega_index,component,value in canonical order. Floats are
/// written with 17 significant digits so round-trips are exact.
void export_gridfield_csv(const GridField& f, const std::string& path);
GridField import_gridfield_csv(const std::string& path);

/// Flat binary: magic, descriptor JSON, then raw little-endian doubles.
void export_gridfield_binary(const GridField& f, const std::string& path);
GridField import_gridfield_binary(const std::string& path);

/// Deterministic pairwise sum (fixed reduction order, bit-reproducible).
double pairwise_sum(const double* data, size_t n);
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

}  // namespace anglab
