#include "anglab/index_core.hpp"

#include <stdexcept>

#include <json.hpp>

namespace anglab {

namespace {

const ExtReal kHalf = rat(1, 2);

void require_exponent(const ExtReal& p, const char* name) {
  if (!p.is_inf() && p < ExtReal(1))
    throw std::domain_error(std::string(name) + " must lie in [1, inf]");
}

}  // namespace

ExtReal holder_conjugate(const ExtReal& p) {
  require_exponent(p, "p");
  if (p.is_inf()) return ExtReal(1);
  if (approx_equal(p, ExtReal(1), 0.0)) return ExtReal::infinity();
  // 1/p' = 1 - 1/p
  return (ExtReal(1) - p.reciprocal()).reciprocal();
}

ExtReal lambda_index(const ExtReal& alpha, const ExtReal& p, const ExtReal& ptilde, int n) {
  ExtReal nm1(n - 1);
  return alpha + nm1 * p.reciprocal() - nm1 * ptilde.reciprocal();
}

ExtReal omega_index(const ExtReal& alpha, const ExtReal& p, const ExtReal& s, int n) {
  return alpha + ExtReal(n) * p.reciprocal() + ExtReal(2) * s.reciprocal();
}

ExtReal ptilde_local(const ExtReal& alpha, const ExtReal& p, int n) {
  require_exponent(p, "p");
  if (alpha < -kHalf || !(alpha < ExtReal(1)))
    throw std::domain_error("ptilde_local: alpha outside [-1/2, 1)");
  ExtReal two_nm1(2 * (n - 1));
  // Reciprocal form keeps p = inf exact:
  //   1/pL = (2a+1)/(2(n-1)) + 1/p   for alpha < 0,
  //   1/pL = 1/(2(n-1)) + 1/p        for 0 <= alpha < 1.
  ExtReal inv = (alpha < ExtReal(0))
                    ? (ExtReal(2) * alpha + ExtReal(1)) / two_nm1 + p.reciprocal()
                    : two_nm1.reciprocal() + p.reciprocal();
  return inv.reciprocal();
}

ExtReal ptilde_global(const ExtReal& alpha, const ExtReal& p, int n, bool* degenerate) {
  require_exponent(p, "p");
  if (degenerate) *degenerate = false;
  ExtReal lo = rat(1 - n, 2);
  if (alpha < lo || kHalf < alpha)
    throw std::domain_error("ptilde_global: alpha outside [(1-n)/2, 1/2]");
  // 1/v = alpha/(n-1) + 1/p; v = (n-1)p/(alpha p + n-1).
  ExtReal inv = alpha / ExtReal(n - 1) + p.reciprocal();
  if (inv < ExtReal(0) || inv.is_zero()) {
    // alpha*p + n - 1 <= 0: Lambda(alpha,p,ptilde) >= 0 unattainable by any
    // finite ptilde (attained exactly at ptilde = inf when equality).
    if (degenerate) *degenerate = true;
    return ExtReal::infinity();
  }
  ExtReal v = inv.reciprocal();
  if (alpha < ExtReal(0)) return v < ExtReal(4) ? ExtReal(4) : v;
  return v;
}

CknDeltas ckn_deltas(const IndexTuple& t) {
  auto need = [](const std::optional<ExtReal>& f, const char* name) -> const ExtReal& {
    if (!f) throw config_error(std::string("ckn_deltas: missing field ") + name);
    return *f;
  };
  const ExtReal& a = need(t.a, "a");
  const ExtReal& sigma = need(t.sigma, "sigma");
  ExtReal one_minus_a = ExtReal(1) - a;
  ExtReal en(t.n);
  auto delta_of = [&](const ExtReal& r, const ExtReal& q, const ExtReal& p) {
    return a * sigma + en * (r.reciprocal() - one_minus_a * q.reciprocal() - a * p.reciprocal());
  };
  CknDeltas out{delta_of(need(t.r, "r"), need(t.q, "q"), need(t.p, "p")),
                delta_of(need(t.rtilde, "rtilde"), need(t.qtilde, "qtilde"),
                         need(t.ptilde, "ptilde")),
                std::nullopt};
  if (t.gamma && t.alpha && t.beta)
    out.scaling_residual = out.delta - (*t.gamma - a * (*t.alpha) - one_minus_a * (*t.beta));
  return out;
}

ExtReal sw_scaling_gamma(const ExtReal& alpha, const ExtReal& beta, const ExtReal& p,
                         const ExtReal& q, int n, bool* out_of_range) {
  require_exponent(p, "p");
  require_exponent(q, "q");
  ExtReal en(n);
  ExtReal gamma = en + en * q.reciprocal() - en * p.reciprocal() - alpha - beta;
  if (out_of_range)
    *out_of_range = !(ExtReal(0) < gamma) || !(gamma < en);
  return gamma;
}

namespace {

using nlohmann::ordered_json;

ExtReal extreal_from_json(const ordered_json& j, const std::string& key) {
  if (j.is_string()) return ExtReal::parse(j.get<std::string>());
  if (j.is_number_integer()) return ExtReal(j.get<long long>());
  if (j.is_number_float()) return ExtReal(j.get<double>());
  throw config_error("tuple field '" + key + "' must be a number or string");
}

}  // namespace

IndexTuple IndexTuple::from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw config_error(std::string("tuple: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw config_error("tuple: expected a JSON object");
  IndexTuple t;
  for (auto& [key, val] : j.items()) {
    if (key == "n") {
      t.n = val.get<int>();
    } else if (key == "eta") {
      t.eta = val.get<int>();
    } else if (key == "p") t.p = extreal_from_json(val, key);
    else if (key == "ptilde") t.ptilde = extreal_from_json(val, key);
    else if (key == "q") t.q = extreal_from_json(val, key);
    else if (key == "qtilde") t.qtilde = extreal_from_json(val, key);
    else if (key == "r") t.r = extreal_from_json(val, key);
    else if (key == "rtilde") t.rtilde = extreal_from_json(val, key);
    else if (key == "s") t.s = extreal_from_json(val, key);
    else if (key == "alpha") t.alpha = extreal_from_json(val, key);
    else if (key == "beta") t.beta = extreal_from_json(val, key);
    else if (key == "gamma") t.gamma = extreal_from_json(val, key);
    else if (key == "sigma") t.sigma = extreal_from_json(val, key);
    else if (key == "mu") t.mu = extreal_from_json(val, key);
    else if (key == "a") t.a = extreal_from_json(val, key);
    else throw config_error("tuple: unknown field '" + key + "'");
  }
  if (t.n < 2) throw config_error("tuple: n must be an integer >= 2");
  auto check_range = [](const std::optional<ExtReal>& f, const char* name) {
    if (f && !f->is_inf() && *f < ExtReal(1))
      throw config_error(std::string("tuple: exponent ") + name + " outside [1, inf]");
  };
  check_range(t.p, "p");
  check_range(t.ptilde, "ptilde");
  check_range(t.q, "q");
  check_range(t.qtilde, "qtilde");
  check_range(t.r, "r");
  check_range(t.rtilde, "rtilde");
  check_range(t.s, "s");
  if (t.a && (!(ExtReal(0) < *t.a) || ExtReal(1) < *t.a))
    throw config_error("tuple: a outside (0, 1]");
  if (t.eta && *t.eta < 0) throw config_error("tuple: eta must be >= 0");
  return t;
}

std::string IndexTuple::to_json_text() const {
  ordered_json j;
  j["n"] = n;
  auto put = [&](const char* key, const std::optional<ExtReal>& f) {
    if (f) j[key] = f->str();
  };
  put("p", p);
  put("ptilde", ptilde);
  put("q", q);
  put("qtilde", qtilde);
  put("r", r);
  put("rtilde", rtilde);
  put("s", s);
  put("alpha", alpha);
  put("beta", beta);
  put("gamma", gamma);
  put("sigma", sigma);
  put("mu", mu);
  put("a", a);
  if (eta) j["eta"] = *eta;
  return j.dump();
}

}  // namespace anglab
