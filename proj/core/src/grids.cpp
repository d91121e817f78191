#include "anglab/grids.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "anglab/index_core.hpp"

namespace anglab {

void gauss_legendre(int npoints, std::vector<double>& nodes, std::vector<double>& weights) {
  if (npoints < 1) throw std::invalid_argument("gauss_legendre: npoints < 1");
  nodes.assign(npoints, 0.0);
  weights.assign(npoints, 0.0);
  const int m = (npoints + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev estimate, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (npoints + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < npoints; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = npoints * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[npoints - 1 - i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[npoints - 1 - i] = weights[i];
  }
}

double RadialGrid::local_spacing(size_t i) const {
  auto [a, b] = cell(i);
  return b - a;
}

std::pair<double, double> RadialGrid::cell(size_t i) const {
  double x = nodes[i];
  for (const auto& pr : panels)
    if (x >= pr.first && x <= pr.second) return pr;
  return {rho_min, rho_max};
}

namespace {

std::vector<double> panel_edges(double a, double b, int n_panels, Grading grading) {
  std::vector<double> edges;
  edges.reserve(n_panels + 1);
  switch (grading) {
    case Grading::Linear:
      for (int k = 0; k <= n_panels; ++k) edges.push_back(a + (b - a) * k / n_panels);
      break;
    case Grading::Log: {
      double ratio = std::pow(b / a, 1.0 / n_panels);
      double e = a;
      for (int k = 0; k <= n_panels; ++k) {
        edges.push_back(e);
        e *= ratio;
      }
      edges.back() = b;
      break;
    }
    case Grading::Composite: {
      // Log-graded below the crossover, uniform above.
      double cross = std::min(1.0, std::sqrt(a * b));
      if (cross <= a || cross >= b) return panel_edges(a, b, n_panels, Grading::Log);
      int lo = std::max(1, n_panels / 2);
      int hi = std::max(1, n_panels - lo);
      auto left = panel_edges(a, cross, lo, Grading::Log);
      auto right = panel_edges(cross, b, hi, Grading::Linear);
      edges = left;
      edges.insert(edges.end(), right.begin() + 1, right.end());
      break;
    }
  }
  return edges;
}

}  // namespace

RadialGrid build_radial_grid(double rho_min, double rho_max, int n_points, Grading grading) {
  if (!(rho_min > 0.0) || !(rho_max > rho_min))
    throw std::invalid_argument("build_radial_grid: need 0 < rho_min < rho_max");
  if (n_points < 8) throw std::invalid_argument("build_radial_grid: N >= 8 required");

  const int per_panel = n_points >= 32 ? 16 : 8;
  const int n_panels = std::max(1, (n_points + per_panel / 2) / per_panel);

  std::vector<double> gl_x, gl_w;
  gauss_legendre(per_panel, gl_x, gl_w);

  RadialGrid g;
  g.grading = grading;
  g.rho_min = rho_min;
  g.rho_max = rho_max;
  auto edges = panel_edges(rho_min, rho_max, n_panels, grading);
  for (size_t k = 0; k + 1 < edges.size(); ++k) {
    double mid = 0.5 * (edges[k] + edges[k + 1]);
    double half = 0.5 * (edges[k + 1] - edges[k]);
    g.panels.emplace_back(edges[k], edges[k + 1]);
    for (int j = 0; j < per_panel; ++j) {
      g.nodes.push_back(mid + half * gl_x[j]);
      g.weights.push_back(half * gl_w[j]);
    }
  }
  return g;
}

double SphereGrid::surface_measure() const {
  return dimension == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
}

SphereGrid build_sphere_grid(int n, int level) {
  if (n != 2 && n != 3) throw std::invalid_argument("build_sphere_grid: n must be 2 or 3");
  if (level < 0) throw std::invalid_argument("build_sphere_grid: level >= 0");
  SphereGrid g;
  g.dimension = n;
  g.level = level;
  if (n == 2) {
    int m = 2 * (level + 1);
    double dphi = 2.0 * std::numbers::pi / m;
    for (int j = 0; j < m; ++j) {
      double phi = j * dphi;
      g.points.push_back({std::cos(phi), std::sin(phi), 0.0});
      g.weights.push_back(dphi);
    }
    g.exact_degree = m - 1;
    return g;
  }
  // n = 3: Gauss-Legendre in cos(theta), uniform phi.
  int mt = level + 1;
  int mp = 2 * (level + 1);
  std::vector<double> ct, wt;
  gauss_legendre(mt, ct, wt);
  double dphi = 2.0 * std::numbers::pi / mp;
  for (int i = 0; i < mt; ++i) {
    double c = ct[i];
    double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int j = 0; j < mp; ++j) {
      double phi = j * dphi;
      g.points.push_back({s * std::cos(phi), s * std::sin(phi), c});
      g.weights.push_back(wt[i] * dphi);
    }
  }
  g.exact_degree = std::min(2 * mt - 1, mp - 1);
  return g;
}

double GridField::magnitude(size_t i, size_t j) const {
  if (components == 1) return std::abs(at(0, i, j));
  double s = 0.0;
  for (int c = 0; c < components; ++c) {
    double v = at(c, i, j);
    s += v * v;
  }
  return std::sqrt(s);
}

bool GridField::all_finite() const {
  for (double v : values)
    if (!std::isfinite(v)) return false;
  return true;
}

GridField make_grid_field(const RadialGrid& r, const SphereGrid& s, int components) {
  GridField f;
  f.radial = r;
  f.sphere = s;
  f.components = components;
  f.values.assign(static_cast<size_t>(components) * r.size() * s.size(), 0.0);
  return f;
}

GridField sample_field(const RadialGrid& r, const SphereGrid& s,
                       const std::function<double(double, const Vec3&)>& f) {
  GridField out = make_grid_field(r, s, 1);
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = 0; j < s.size(); ++j) out.at(0, i, j) = f(r.nodes[i], s.points[j]);
  return out;
}

double pairwise_sum(const double* data, size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = data[0];
    for (size_t i = 1; i < n; ++i) s += data[i];
    return s;
  }
  size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

namespace {

using nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json descriptor(const GridField& f) {
  ordered_json d;
  d["format"] = "anglab-gridfield";
  d["version"] = 1;
  d["components"] = f.components;
  ordered_json rad;
  rad["grading"] = f.radial.grading == Grading::Log       ? "log"
                   : f.radial.grading == Grading::Linear ? "linear"
                                                          : "composite";
  rad["rho_min"] = fmt17(f.radial.rho_min);
  rad["rho_max"] = fmt17(f.radial.rho_max);
  ordered_json nodes = ordered_json::array(), weights = ordered_json::array(),
               panels = ordered_json::array();
  for (double x : f.radial.nodes) nodes.push_back(fmt17(x));
  for (double w : f.radial.weights) weights.push_back(fmt17(w));
  for (auto& pr : f.radial.panels) {
    panels.push_back(ordered_json::array({fmt17(pr.first), fmt17(pr.second)}));
  }
  rad["nodes"] = nodes;
  rad["weights"] = weights;
  rad["panels"] = panels;
  d["radial"] = rad;
  ordered_json sph;
  sph["n"] = f.sphere.dimension;
  sph["level"] = f.sphere.level;
  d["sphere"] = sph;
  return d;
}

GridField field_from_descriptor(const ordered_json& d) {
  if (d.value("format", "") != "anglab-gridfield")
    throw config_error("gridfield: bad descriptor");
  RadialGrid r;
  const auto& rad = d.at("radial");
  std::string gr = rad.at("grading").get<std::string>();
  r.grading = gr == "log" ? Grading::Log : gr == "linear" ? Grading::Linear : Grading::Composite;
  r.rho_min = std::stod(rad.at("rho_min").get<std::string>());
  r.rho_max = std::stod(rad.at("rho_max").get<std::string>());
  for (const auto& x : rad.at("nodes")) r.nodes.push_back(std::stod(x.get<std::string>()));
  for (const auto& w : rad.at("weights")) r.weights.push_back(std::stod(w.get<std::string>()));
  for (const auto& pr : rad.at("panels"))
    r.panels.emplace_back(std::stod(pr[0].get<std::string>()), std::stod(pr[1].get<std::string>()));
  SphereGrid s = build_sphere_grid(d.at("sphere").at("n").get<int>(),
                                   d.at("sphere").at("level").get<int>());
  return make_grid_field(r, s, d.at("components").get<int>());
}

}  // namespace

void export_gridfield_csv(const GridField& f, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << "# " << descriptor(f).dump() << "\n";
  os << "rho,omega_index,component,value\n";
  for (int c = 0; c < f.components; ++c)
    for (size_t i = 0; i < f.n_radial(); ++i)
      for (size_t j = 0; j < f.n_sphere(); ++j)
        os << fmt17(f.radial.nodes[i]) << "," << j << "," << c << "," << fmt17(f.at(c, i, j))
           << "\n";
}

GridField import_gridfield_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(is, line) || line.size() < 2 || line[0] != '#')
    throw config_error("gridfield csv: missing descriptor line");
  GridField f = field_from_descriptor(ordered_json::parse(line.substr(1)));
  std::getline(is, line);  // column header
  for (int c = 0; c < f.components; ++c)
    for (size_t i = 0; i < f.n_radial(); ++i)
      for (size_t j = 0; j < f.n_sphere(); ++j) {
        if (!std::getline(is, line)) throw config_error("gridfield csv: truncated");
        std::istringstream ls(line);
        std::string tok;
        std::getline(ls, tok, ',');  // rho (redundant, checked)
        double rho = std::stod(tok);
        if (std::abs(rho - f.radial.nodes[i]) > 1e-12 * std::max(1.0, f.radial.nodes[i]))
          throw config_error("gridfield csv: row order mismatch");
        std::getline(ls, tok, ',');
        std::getline(ls, tok, ',');
        std::getline(ls, tok, ',');
        f.at(c, i, j) = std::stod(tok);
      }
  return f;
}

void export_gridfield_binary(const GridField& f, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  std::string desc = descriptor(f).dump();
  const char magic[8] = {'A', 'N', 'G', 'F', 'L', 'D', '0', '1'};
  os.write(magic, 8);
  uint64_t len = desc.size();
  os.write(reinterpret_cast<const char*>(&len), 8);
  os.write(desc.data(), static_cast<std::streamsize>(len));
  os.write(reinterpret_cast<const char*>(f.values.data()),
           static_cast<std::streamsize>(f.values.size() * sizeof(double)));
}

GridField import_gridfield_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  char magic[8];
  is.read(magic, 8);
  if (std::string(magic, 8) != "ANGFLD01") throw config_error("gridfield binary: bad magic");
  uint64_t len = 0;
  is.read(reinterpret_cast<char*>(&len), 8);
  std::string desc(len, '\0');
  is.read(desc.data(), static_cast<std::streamsize>(len));
  GridField f = field_from_descriptor(ordered_json::parse(desc));
  is.read(reinterpret_cast<char*>(f.values.data()),
          static_cast<std::streamsize>(f.values.size() * sizeof(double)));
  if (!is) throw config_error("gridfield binary: truncated");
  return f;
}

}  // namespace anglab
