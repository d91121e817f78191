// anglab: index-admissibility checks, mixed-norm quadrature, singular
// integral and kernel-decay experiments, and the periodic-box Picard lab.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "anglab/kernels.hpp"
#include "anglab/norms.hpp"
#include "anglab/nse_picard.hpp"
#include "anglab/probe.hpp"
#include "anglab/report.hpp"
#include "anglab/singular_integrals.hpp"

using namespace anglab;
using nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNoConvergence = 3;

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw config_error("cannot open " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

IndexTuple tuple_from_args(const std::string& inline_json, const std::string& file) {
  if (!inline_json.empty()) return IndexTuple::from_json_text(inline_json);
  if (!file.empty()) return IndexTuple::from_json_text(slurp(file));
  throw config_error("a tuple is required: --tuple '<json>' or --tuple-file <path>");
}

void emit(const std::string& body, const std::string& output, const std::string& config_hash,
          bool json_body) {
  ReportHeader header{kToolVersion, config_hash};
  if (output.empty()) {
    if (json_body) {
      ordered_json wrapped;
      wrapped["tool"] = header.tool_version;
      wrapped["config_hash"] = header.config_hash;
      wrapped["result"] = ordered_json::parse(body);
      std::cout << wrapped.dump(2) << "\n";
    } else {
      std::cout << "# tool: " << header.tool_version << "\n"
                << "# config_hash: " << header.config_hash << "\n"
                << body;
    }
    return;
  }
  write_report(body, output, header, json_body);
}

std::string hash_of(const ordered_json& j) {
  return sha256_hex(canonical_json(nlohmann::json::parse(j.dump())));
}

int exit_code_for(Overall o) { return o == Overall::Fail ? kExitFail : kExitPass; }

GridField datum_field(const std::string& kind, const RadialGrid& r, const SphereGrid& s,
                      double spike_exponent, double delta) {
  TestFamily fam;
  if (kind == "gaussian") {
    fam.kind = TestFamily::Kind::Gaussian;
  } else if (kind == "spike") {
    fam.kind = TestFamily::Kind::PowerLogSpike;
    fam.spike_exponent = spike_exponent;
    fam.delta = delta;
  } else if (kind == "plateau") {
    return sample_field(r, s, [](double rho, const Vec3&) {
      return std::pow(1.0 + (rho / 5.0) * (rho / 5.0), -0.6);
    });
  } else {
    throw config_error("unknown datum kind '" + kind + "'");
  }
  return make_test_field(fam, r, s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"angular-lab: weighted mixed radial-angular inequality toolkit"};
  app.require_subcommand(1);

  // ---- check ----
  auto* check = app.add_subcommand("check", "decide a theorem's hypothesis system on a tuple");
  std::string check_theorem, check_tuple, check_tuple_file, check_output;
  check->add_option("--theorem", check_theorem,
                    "classical-sw|radial-sw|mixed-sw|mixed-sw-strict|mixed-sw-annulus|nonhom|"
                    "sobolev|strauss|ckn|ckn-int|decay-heat|decay-oseen|decay-local|"
                    "decay-integrated|decay-duhamel")
      ->required();
  check->add_option("--tuple", check_tuple, "IndexTuple as inline JSON");
  check->add_option("--tuple-file", check_tuple_file, "IndexTuple JSON file");
  check->add_option("--output", check_output, "write the verdict JSON here");

  // ---- scan ----
  auto* scan = app.add_subcommand("scan", "raster a checker over 1 or 2 tuple axes");
  std::string scan_checker, scan_tuple, scan_tuple_file, scan_output;
  std::vector<std::string> scan_axes;
  scan->add_option("--checker", scan_checker, "checker id (see check --theorem)")->required();
  scan->add_option("--tuple", scan_tuple, "template tuple inline JSON");
  scan->add_option("--tuple-file", scan_tuple_file, "template tuple JSON file");
  scan->add_option("--axis", scan_axes, "field:lo:hi:steps (repeat once for a second axis)")
      ->required();
  scan->add_option("--output", scan_output, "CSV path");

  // ---- norm ----
  auto* norm = app.add_subcommand("norm", "weighted mixed norm of a stored GridField");
  std::string norm_field, norm_output, norm_p = "2", norm_ptilde = "2";
  double norm_alpha = 0.0;
  bool norm_binary = false;
  norm->add_option("--field", norm_field, "GridField CSV (or binary with --binary)")->required();
  norm->add_flag("--binary", norm_binary, "field file is flat binary");
  norm->add_option("--alpha", norm_alpha, "weight exponent");
  norm->add_option("--p", norm_p, "outer radial exponent (number or 'inf')");
  norm->add_option("--ptilde", norm_ptilde, "inner sphere exponent (number or 'inf')");
  norm->add_option("--output", norm_output, "write result JSON here");

  // ---- singint ----
  auto* singint = app.add_subcommand("singint", "angular singular integrals and envelopes");
  std::string si_mode = "eval-i", si_output;
  double si_nu = 1.0, si_r = 1.0, si_rho = 0.0, si_tol = 1e-9;
  int si_n = 3, si_samples = 32;
  std::string si_regime;
  singint->add_option("--mode", si_mode, "eval-i|closed-form|eval-j|envelope-i|envelope-j|ratio-scan");
  singint->add_option("--nu", si_nu, "kernel exponent")->required();
  singint->add_option("--r", si_r, "|x|");
  singint->add_option("--rho", si_rho, "shell radius (J only)");
  singint->add_option("--n", si_n, "dimension, 2 or 3");
  singint->add_option("--tol", si_tol, "quadrature tolerance");
  singint->add_option("--regime", si_regime,
                      "far|near_origin|shell_sub|shell_log|shell_super|mixed_J");
  singint->add_option("--samples", si_samples, "ratio-scan sample count");
  singint->add_option("--output", si_output, "write result JSON here");

  // ---- decay ----
  auto* decay = app.add_subcommand("decay", "heat-kernel decay-rate experiment");
  std::string dc_kind = "heat", dc_tuple, dc_tuple_file, dc_datum = "gaussian", dc_output;
  int dc_eta = 0, dc_tcount = 7, dc_points = 96, dc_level = 2;
  double dc_tmin = 10.0, dc_tmax = 1000.0, dc_rmin = 1e-3, dc_rmax = 14.0;
  double dc_spike_exponent = -0.75, dc_delta = 0.01;
  bool dc_saturation = false;
  std::vector<double> dc_radii;
  decay->add_option("--kind", dc_kind, "heat|oseen|local|integrated|duhamel");
  decay->add_option("--tuple", dc_tuple, "tuple inline JSON");
  decay->add_option("--tuple-file", dc_tuple_file, "tuple JSON file");
  decay->add_option("--eta", dc_eta, "derivative order (0 or 1 measured)");
  decay->add_option("--datum", dc_datum, "gaussian|spike|plateau");
  decay->add_option("--spike-exponent", dc_spike_exponent, "spike datum exponent");
  decay->add_option("--delta", dc_delta, "spike truncation");
  decay->add_option("--t-min", dc_tmin, "first time");
  decay->add_option("--t-max", dc_tmax, "last time");
  decay->add_option("--t-count", dc_tcount, "log-spaced sample count");
  decay->add_option("--grid-points", dc_points, "radial points");
  decay->add_option("--grid-min", dc_rmin, "radial grid inner edge");
  decay->add_option("--grid-max", dc_rmax, "radial grid outer edge");
  decay->add_option("--sphere-level", dc_level, "sphere grid level");
  decay->add_option("--radii", dc_radii, "parabola radii R (local kind)");
  decay->add_flag("--expect-saturation", dc_saturation, "demand |slope + predicted| <= 0.05");
  decay->add_option("--output", dc_output, "write result JSON here");

  // ---- probe ----
  auto* probe = app.add_subcommand("probe", "inequality-ratio experiments");
  std::string pr_config, pr_output;
  probe->add_option("--config", pr_config, "RunConfig JSON file")->required();
  probe->add_option("--output", pr_output, "override config output path");

  // ---- picard ----
  auto* picard = app.add_subcommand("picard", "small-data Picard iteration on a periodic box");
  std::string pi_config, pi_output;
  picard->add_option("--config", pi_config, "RunConfig JSON file")->required();
  picard->add_option("--output", pi_output, "override config output path");

  // ---- split ----
  auto* split = app.add_subcommand("split", "Calderon-type amplitude-threshold splitting");
  std::string sp_config, sp_output;
  double sp_ptilde = 3.0;
  split->add_option("--ptilde", sp_ptilde, "angular exponent in (2,4)")->required();
  split->add_option("--config", sp_config, "RunConfig JSON file (datum parameters)");
  split->add_option("--output", sp_output, "write result JSON here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) {
      IndexTuple t = tuple_from_args(check_tuple, check_tuple_file);
      ordered_json cfg{{"command", "check"}, {"theorem", check_theorem},
                       {"tuple", ordered_json::parse(t.to_json_text())}};
      Verdict v = run_checker(check_theorem, t);
      emit(verdict_to_json(v).dump(), check_output, hash_of(cfg), true);
      return exit_code_for(v.overall);
    }

    if (*scan) {
      IndexTuple t = tuple_from_args(scan_tuple, scan_tuple_file);
      std::vector<ScanAxis> axes;
      for (const auto& spec : scan_axes) {
        ScanAxis ax;
        char field[64];
        if (std::sscanf(spec.c_str(), "%63[^:]:%lf:%lf:%d", field, &ax.lo, &ax.hi, &ax.steps) != 4)
          throw config_error("bad --axis '" + spec + "', want field:lo:hi:steps");
        ax.field = field;
        axes.push_back(ax);
      }
      ordered_json cfg{{"command", "scan"}, {"checker", scan_checker},
                       {"tuple", ordered_json::parse(t.to_json_text())}};
      for (const auto& a : scan_axes) cfg["axes"].push_back(a);
      ScanResult res = scan_region(t, axes, scan_checker);
      emit(scan_to_csv(res), scan_output, hash_of(cfg), false);
      return kExitPass;
    }

    if (*norm) {
      GridField f = norm_binary ? import_gridfield_binary(norm_field)
                                : import_gridfield_csv(norm_field);
      double value = mixed_norm(f, norm_alpha, ExtReal::parse(norm_p),
                                ExtReal::parse(norm_ptilde));
      ordered_json cfg{{"command", "norm"}, {"field", norm_field},
                       {"alpha", fmt_double(norm_alpha)}, {"p", norm_p},
                       {"ptilde", norm_ptilde}};
      ordered_json out{{"mixed_norm", fmt_double(value)}};
      emit(out.dump(), norm_output, hash_of(cfg), true);
      return kExitPass;
    }

    if (*singint) {
      ordered_json cfg{{"command", "singint"}, {"mode", si_mode}, {"nu", fmt_double(si_nu)},
                       {"r", fmt_double(si_r)}, {"rho", fmt_double(si_rho)}, {"n", si_n}};
      ordered_json out;
      if (si_mode == "eval-i") {
        out["value"] = fmt_double(eval_I(si_nu, si_r, si_n, si_tol));
      } else if (si_mode == "closed-form") {
        out["value"] = fmt_double(closed_form_I_n3(si_nu, si_r));
      } else if (si_mode == "eval-j") {
        out["value"] = fmt_double(eval_J(si_nu, si_r, si_rho, si_n, si_tol));
      } else if (si_mode == "envelope-i" || si_mode == "envelope-j") {
        RegimeEnvelope e = si_mode == "envelope-i" ? envelope_I(si_nu, si_r, si_n)
                                                   : envelope_J(si_nu, si_r, si_rho, si_n);
        out["regime"] = to_string(e.regime);
        out["value"] = fmt_double(e.value);
        out["formula"] = e.formula_id;
      } else if (si_mode == "ratio-scan") {
        Regime rg;
        if (si_regime == "far") rg = Regime::Far;
        else if (si_regime == "near_origin") rg = Regime::NearOrigin;
        else if (si_regime == "shell_sub") rg = Regime::ShellSub;
        else if (si_regime == "shell_log") rg = Regime::ShellLog;
        else if (si_regime == "shell_super") rg = Regime::ShellSuper;
        else if (si_regime == "mixed_J") rg = Regime::MixedJ;
        else throw config_error("unknown regime '" + si_regime + "'");
        RatioBracket b = envelope_ratio_scan(si_nu, si_n, rg, si_samples);
        out["min_ratio"] = fmt_double(b.min_ratio);
        out["max_ratio"] = fmt_double(b.max_ratio);
      } else {
        throw config_error("unknown singint mode '" + si_mode + "'");
      }
      emit(out.dump(), si_output, hash_of(cfg), true);
      return kExitPass;
    }

    if (*decay) {
      IndexTuple t = tuple_from_args(dc_tuple, dc_tuple_file);
      DecayKind kind = dc_kind == "heat"         ? DecayKind::PointwiseHeat
                       : dc_kind == "oseen"      ? DecayKind::PointwiseOseen
                       : dc_kind == "local"      ? DecayKind::LocalParabola
                       : dc_kind == "integrated" ? DecayKind::TimeIntegrated
                       : dc_kind == "duhamel"    ? DecayKind::Duhamel
                                                 : throw config_error("unknown decay kind");
      RadialGrid r = build_radial_grid(dc_rmin, dc_rmax, dc_points, Grading::Composite);
      SphereGrid s = build_sphere_grid(t.n, dc_level);
      GridField u0 = datum_field(dc_datum, r, s, dc_spike_exponent, dc_delta);
      std::vector<double> times;
      for (int k = 0; k < dc_tcount; ++k)
        times.push_back(dc_tmin * std::pow(dc_tmax / dc_tmin, dc_tcount == 1
                                                                   ? 0.0
                                                                   : double(k) / (dc_tcount - 1)));
      ordered_json cfg{{"command", "decay"}, {"kind", dc_kind},
                       {"tuple", ordered_json::parse(t.to_json_text())},
                       {"datum", dc_datum}, {"eta", dc_eta}};
      if (kind == DecayKind::PointwiseOseen || kind == DecayKind::TimeIntegrated ||
          kind == DecayKind::Duhamel) {
        // Hypothesis check only: the grid lane has no Oseen kernel and no
        // space-time Duhamel quadrature (those live on the spectral side).
        DecayCheck chk = check_decay_estimate(t, kind, dc_eta);
        ordered_json out;
        out["admissibility"] = verdict_to_json(chk.verdict);
        out["predicted_exponent"] = fmt_double(chk.predicted_exponent);
        out["note"] = "check-only kind; no grid-side measurement";
        emit(out.dump(), dc_output, hash_of(cfg), true);
        return exit_code_for(chk.verdict.overall);
      }
      if (kind == DecayKind::LocalParabola) {
        if (dc_radii.empty()) dc_radii = {1.0, 2.0, 4.0};
        LocalizedDecayResult res = localized_decay_constants(t, dc_eta, u0, times, dc_radii);
        ordered_json out;
        out["lambda_gap"] = fmt_double(res.lambda_gap);
        for (size_t i = 0; i < res.radii.size(); ++i) {
          out["constants"].push_back(
              {{"R", fmt_double(res.radii[i])}, {"c", fmt_double(res.constants[i])}});
        }
        out["fitted_slope"] = fmt_double(res.fitted_slope);
        out["predicted_slope"] = fmt_double(-res.lambda_gap);
        bool ok = std::abs(res.fitted_slope + res.lambda_gap) <= 0.1 * std::abs(res.lambda_gap);
        out["pass"] = ok;
        emit(out.dump(), dc_output, hash_of(cfg), true);
        return ok ? kExitPass : kExitFail;
      }
      DecayVerification res = verify_decay(t, dc_eta, u0, times, kind, dc_saturation);
      ordered_json out;
      out["admissibility"] = verdict_to_json(res.admissibility.verdict);
      out["predicted_exponent"] = fmt_double(res.predicted);
      out["fit"] = decay_fit_to_json(res.fit);
      for (auto [tt, vv] : res.series)
        out["series"].push_back({{"t", fmt_double(tt)}, {"norm", fmt_double(vv)}});
      out["bound_consistent"] = res.bound_consistent;
      out["saturates"] = res.saturates;
      out["pass"] = res.pass;
      emit(out.dump(), dc_output, hash_of(cfg), true);
      return res.pass ? kExitPass : kExitFail;
    }

    if (*probe) {
      RunConfig cfg = RunConfig::from_json_text(slurp(pr_config));
      if (!pr_output.empty()) cfg.output = pr_output;
      const auto& P = cfg.params;
      std::string experiment = P.value("experiment", "sw-ratio");
      double rmin = P.value("grid_min", 1e-3), rmax = P.value("grid_max", 12.0);
      int points = P.value("grid_points", 128), level = P.value("sphere_level", 2);
      RadialGrid r = build_radial_grid(rmin, rmax, points, Grading::Composite);
      SphereGrid s = build_sphere_grid(cfg.tuple ? cfg.tuple->n : 3, level);
      if (experiment == "sw-ratio" || experiment == "ckn-ratio") {
        if (!cfg.tuple) throw config_error("probe: config needs a tuple");
        TestFamily fam;
        std::string famname = P.value("family", "gaussian");
        if (famname == "spike") {
          fam.kind = TestFamily::Kind::PowerLogSpike;
          fam.spike_exponent = P.value("spike_exponent", -0.5);
          fam.delta = P.value("delta", 0.01);
        }
        GridField u = make_test_field(fam, r, s);
        RatioReport rep;
        if (experiment == "sw-ratio") {
          rep = ratio_stein_weiss(u, *cfg.tuple);
        } else {
          GridField du = make_test_field_radial_derivative(fam, r, s);
          rep = ratio_ckn(u, du, *cfg.tuple);
        }
        ordered_json out{{"lhs", fmt_double(rep.lhs)}, {"rhs", fmt_double(rep.rhs)},
                         {"ratio", fmt_double(rep.ratio)}};
        emit(out.dump(), cfg.output, cfg.hash(), true);
        return kExitPass;
      }
      if (experiment == "sharpness") {
        if (!cfg.tuple) throw config_error("probe: config needs a tuple");
        TestFamily fam;
        fam.kind = TestFamily::Kind::PowerLogSpike;
        fam.spike_exponent = P.value("spike_exponent", -0.5);
        std::vector<double> ladder;
        for (const auto& d : P.value("delta_ladder", nlohmann::ordered_json::array()))
          ladder.push_back(d.get<double>());
        if (ladder.empty()) ladder = {0.02, 0.0063, 0.002, 0.00063, 0.0002};
        auto rows = sharpness_scan({*cfg.tuple}, fam, ladder, RatioKind::Ckn, r, s);
        std::string csv = "delta,ratio\n";
        for (size_t i = 0; i < rows[0].deltas.size(); ++i)
          csv += fmt_double(rows[0].deltas[i]) + "," + fmt_double(rows[0].ratios[i]) + "\n";
        emit(csv, cfg.output, cfg.hash(), false);
        return kExitPass;
      }
      throw config_error("unknown probe experiment '" + experiment + "'");
    }

    if (*picard) {
      RunConfig cfg = RunConfig::from_json_text(slurp(pi_config));
      if (!pi_output.empty()) cfg.output = pi_output;
      const auto& P = cfg.params;
      int N = P.value("resolution", 32);
      double L = P.value("box", 6.283185307179586);
      double T = P.value("horizon", 1.0);
      int steps = P.value("steps", 20);
      int max_iter = P.value("max_iter", 10);
      std::string datum = P.value("datum", "taylor-green");
      double amplitude = P.value("amplitude", 0.05);
      MonitorNorm mon;
      mon.alpha = P.value("monitor_alpha", 0.0);
      mon.p = ExtReal::parse(P.value("monitor_p", std::string("2")));
      mon.ptilde = ExtReal::parse(P.value("monitor_ptilde", std::string("2")));
      mon.s = ExtReal::parse(P.value("monitor_s", std::string("inf")));
      SpectralField u0 = datum == "taylor-green"
                             ? taylor_green(N, L, amplitude)
                             : localized_vortex(N, L, amplitude, P.value("width", L / 22.0));
      PicardTrace tr = picard_iterate(u0, T, steps, max_iter, mon);
      emit(picard_trace_to_csv(tr, mon), cfg.output, cfg.hash(), false);
      return tr.converged ? kExitPass : kExitNoConvergence;
    }

    if (*split) {
      int N = 32;
      double L = 6.283185307179586;
      double amplitude = 2.0, width = L / 16.0;
      RunConfig cfg;
      cfg.command = "split";
      if (!sp_config.empty()) {
        cfg = RunConfig::from_json_text(slurp(sp_config));
        N = cfg.params.value("resolution", N);
        L = cfg.params.value("box", L);
        amplitude = cfg.params.value("amplitude", amplitude);
        width = cfg.params.value("width", width);
      }
      if (!sp_output.empty()) cfg.output = sp_output;
      SpectralField u0 = localized_vortex(N, L, amplitude, width);
      CalderonSplit cs = calderon_split(u0, sp_ptilde);
      ordered_json out;
      out["theta"] = fmt_double(cs.theta);
      out["s"] = fmt_double(cs.s);
      out["a_theta"] = fmt_double(cs.a_theta);
      out["b_theta"] = fmt_double(cs.b_theta);
      out["u0_norm"] = fmt_double(cs.u0_norm);
      out["w0_norm"] = fmt_double(cs.w0_norm);
      out["v0_norm"] = fmt_double(cs.v0_norm);
      out["measured_c_w"] = fmt_double(cs.measured_c_w);
      out["measured_c_v"] = fmt_double(cs.measured_c_v);
      emit(out.dump(), cfg.output, cfg.hash(), true);
      return kExitPass;
    }
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoConvergence;
  }
  return kExitConfig;
}
