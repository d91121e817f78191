#include "anglab/admissibility.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace anglab {

const char* to_string(Relation r) {
  switch (r) {
    case Relation::LT: return "<";
    case Relation::LE: return "<=";
    case Relation::EQ: return "=";
    case Relation::GE: return ">=";
    case Relation::GT: return ">";
  }
  return "?";
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Satisfied: return "satisfied";
    case Status::Violated: return "violated";
    case Status::Boundary: return "boundary";
  }
  return "?";
}

const char* to_string(Overall o) {
  switch (o) {
    case Overall::Pass: return "pass";
    case Overall::Fail: return "fail";
    case Overall::Boundary: return "boundary";
  }
  return "?";
}

Status constraint_status(Relation rel, const ExtReal& lhs, const ExtReal& rhs, double tol) {
  const bool equal = approx_equal(lhs, rhs, tol);
  switch (rel) {
    case Relation::EQ:
      return equal ? Status::Satisfied : Status::Violated;
    case Relation::LT:
      if (equal) return Status::Boundary;
      return lhs < rhs ? Status::Satisfied : Status::Violated;
    case Relation::GT:
      if (equal) return Status::Boundary;
      return rhs < lhs ? Status::Satisfied : Status::Violated;
    case Relation::LE:
      if (equal) return Status::Satisfied;
      return lhs < rhs ? Status::Satisfied : Status::Violated;
    case Relation::GE:
      if (equal) return Status::Satisfied;
      return rhs < lhs ? Status::Satisfied : Status::Violated;
  }
  return Status::Violated;
}

VerdictBuilder::VerdictBuilder(std::string theorem_id) { v_.theorem_id = std::move(theorem_id); }

Status VerdictBuilder::add(const std::string& id, const std::string& description, Relation rel,
                           const ExtReal& lhs, const ExtReal& rhs) {
  Status st = constraint_status(rel, lhs, rhs);
  if ((rel == Relation::LE || rel == Relation::GE) && st == Status::Satisfied &&
      approx_equal(lhs, rhs, 1e-12))
    v_.notes.push_back("tight: " + id);
  v_.constraints.push_back(Constraint{id, description, rel, lhs.value(), rhs.value(), st});
  return st;
}

void VerdictBuilder::note(const std::string& text) { v_.notes.push_back(text); }

Verdict VerdictBuilder::finish() {
  bool any_violated = false, any_boundary = false;
  for (const auto& c : v_.constraints) {
    any_violated |= c.status == Status::Violated;
    any_boundary |= c.status == Status::Boundary;
  }
  v_.overall = any_violated ? Overall::Fail : any_boundary ? Overall::Boundary : Overall::Pass;
  return v_;
}

namespace {

const ExtReal& need(const std::optional<ExtReal>& f, const char* name, const char* checker) {
  if (!f) throw config_error(std::string(checker) + ": missing field " + name);
  return *f;
}

// beta < n/q, weakening to beta <= 0 at q = inf where the radial norm is a sup.
void upper_integrability(VerdictBuilder& b, const std::string& id, const std::string& symbol,
                         const ExtReal& weight, const ExtReal& n_over_exp, bool exp_is_inf) {
  Relation rel = exp_is_inf ? Relation::LE : Relation::LT;
  b.add(id, symbol + std::string(to_string(rel)) + " " + n_over_exp.str(), rel, weight,
        n_over_exp);
}

// beta > -n/q, weakening to beta >= 0 at q = inf.
void lower_integrability(VerdictBuilder& b, const std::string& id, const std::string& symbol,
                         const ExtReal& weight, const ExtReal& neg_bound, bool exp_is_inf) {
  Relation rel = exp_is_inf ? Relation::GE : Relation::GT;
  b.add(id, symbol + std::string(to_string(rel)) + " " + neg_bound.str(), rel, weight, neg_bound);
}

// Index ranges. Narrow: 1 < p <= q < inf. Wide: 1 <= p <= q <= inf.
// "q < inf" is tested in reciprocal form so q = inf lands on the boundary.
void add_index_range(VerdictBuilder& b, const ExtReal& p, const ExtReal& q, bool wide) {
  if (wide)
    b.add("range.p", "1 <= p", Relation::GE, p, ExtReal(1));
  else
    b.add("range.p", "1 < p", Relation::GT, p, ExtReal(1));
  b.add("range.p-le-q", "p <= q", Relation::LE, p, q);
  if (!wide) b.add("range.q-finite", "1/q > 0", Relation::GT, q.reciprocal(), ExtReal(0));
}

void add_angular_range(VerdictBuilder& b, const ExtReal& ptilde, const ExtReal& qtilde) {
  b.add("range.ptilde-le-qtilde", "ptilde <= qtilde", Relation::LE, ptilde, qtilde);
}

}  // namespace

Verdict check_stein_weiss(const IndexTuple& t, SwVariant variant, SwMode mode) {
  const char* cid = "stein-weiss";
  const ExtReal& p = need(t.p, "p", cid);
  const ExtReal& q = need(t.q, "q", cid);
  const ExtReal& alpha = need(t.alpha, "alpha", cid);
  const ExtReal& beta = need(t.beta, "beta", cid);
  const ExtReal& gamma = need(t.gamma, "gamma", cid);
  ExtReal en(t.n);

  std::string name = variant == SwVariant::Classical ? "stein-weiss-classical"
                     : variant == SwVariant::Radial  ? "stein-weiss-radial"
                                                     : "stein-weiss-mixed";
  VerdictBuilder b(name);

  const bool wide = mode != SwMode::General;
  add_index_range(b, p, q, wide);
  if (variant == SwVariant::Mixed) {
    const ExtReal& pt = need(t.ptilde, "ptilde", cid);
    const ExtReal& qt = need(t.qtilde, "qtilde", cid);
    add_angular_range(b, pt, qt);
  }

  upper_integrability(b, "integrability.beta", "beta ", beta, en * q.reciprocal(), q.is_inf());
  ExtReal pprime = holder_conjugate(p);
  upper_integrability(b, "integrability.alpha", "alpha ", alpha, en * pprime.reciprocal(),
                      pprime.is_inf());
  b.add("integrability.gamma-lower", "0 < gamma", Relation::GT, gamma, ExtReal(0));
  b.add("integrability.gamma-upper", "gamma < n", Relation::LT, gamma, en);

  ExtReal scaling_rhs = en + en * q.reciprocal() - en * p.reciprocal();
  b.add("scaling", "alpha+beta+gamma = n + n/q - n/p", Relation::EQ, alpha + beta + gamma,
        scaling_rhs);

  ExtReal bound(0);
  std::string bound_desc = "alpha+beta >= 0";
  if (variant == SwVariant::Radial) {
    bound = ExtReal(t.n - 1) * (q.reciprocal() - p.reciprocal());
    bound_desc = "alpha+beta >= (n-1)(1/q-1/p)";
  } else if (variant == SwVariant::Mixed) {
    const ExtReal& pt = *t.ptilde;
    const ExtReal& qt = *t.qtilde;
    bound = ExtReal(t.n - 1) *
            (q.reciprocal() - p.reciprocal() + pt.reciprocal() - qt.reciprocal());
    bound_desc = "alpha+beta >= (n-1)(1/q-1/p+1/ptilde-1/qtilde)";
  }
  Relation brel = mode == SwMode::Strict ? Relation::GT : Relation::GE;
  if (mode == SwMode::Strict) bound_desc.replace(bound_desc.find(">="), 2, ">");
  b.add("weight-balance", bound_desc, brel, alpha + beta, bound);

  if (variant == SwVariant::Radial) b.note("applies to radially symmetric inputs");
  if (mode == SwMode::Strict)
    b.note("index range relaxed to 1 <= p <= q <= inf via strict weight balance");
  if (mode == SwMode::Annulus)
    b.note("index range relaxed for Fourier support in an annulus; constant independent of the annulus scale");
  return b.finish();
}

Verdict check_nonhomogeneous(const IndexTuple& t) {
  const char* cid = "nonhomogeneous";
  if (!t.gamma && !t.mu) throw config_error("nonhomogeneous: needs gamma or mu");
  const ExtReal& p = need(t.p, "p", cid);
  const ExtReal& q = need(t.q, "q", cid);
  const ExtReal& pt = need(t.ptilde, "ptilde", cid);
  const ExtReal& qt = need(t.qtilde, "qtilde", cid);
  const ExtReal& alpha = need(t.alpha, "alpha", cid);
  const ExtReal& beta = need(t.beta, "beta", cid);
  ExtReal en(t.n);

  VerdictBuilder b(t.gamma ? "nonhomogeneous-gamma" : "nonhomogeneous-mu");
  add_index_range(b, p, q, /*wide=*/true);
  add_angular_range(b, pt, qt);

  upper_integrability(b, "integrability.beta", "beta ", beta, en * q.reciprocal(), q.is_inf());
  ExtReal pprime = holder_conjugate(p);
  upper_integrability(b, "integrability.alpha", "alpha ", alpha, en * pprime.reciprocal(),
                      pprime.is_inf());

  ExtReal bound = ExtReal(t.n - 1) *
                  (q.reciprocal() - p.reciprocal() + pt.reciprocal() - qt.reciprocal());
  b.add("weight-balance", "alpha+beta >= (n-1)(1/q-1/p+1/ptilde-1/qtilde)", Relation::GE,
        alpha + beta, bound);

  ExtReal kernel_rhs = en * (ExtReal(1) + q.reciprocal() - p.reciprocal());
  if (t.gamma)
    b.add("kernel-decay", "alpha+beta+gamma > n(1+1/q-1/p)", Relation::GT,
          alpha + beta + *t.gamma, kernel_rhs);
  if (t.mu)
    b.add("kernel-decay-mu", "mu > -alpha-beta+n(1+1/q-1/p)", Relation::GT, *t.mu,
          kernel_rhs - alpha - beta);
  return b.finish();
}

Verdict check_sobolev_embedding(const IndexTuple& t, SobolevMode mode) {
  const char* cid = "sobolev";
  const ExtReal& p = need(t.p, "p", cid);
  const ExtReal& sigma = need(t.sigma, "sigma", cid);
  ExtReal en(t.n);

  if (mode == SobolevMode::Strauss) {
    // |x|^{n/p-sigma}|u(x)| <~ || |D|^sigma u ||_{Lp Lptilde}, valid on the
    // window (n-1)/ptilde + 1/p < sigma < n/p.
    const ExtReal& pt = need(t.ptilde, "ptilde", cid);
    VerdictBuilder b("strauss-pointwise");
    b.add("range.p", "1 < p", Relation::GT, p, ExtReal(1));
    b.add("range.p-finite", "1/p > 0", Relation::GT, p.reciprocal(), ExtReal(0));
    ExtReal lower = ExtReal(t.n - 1) * pt.reciprocal() + p.reciprocal();
    b.add("window.lower", "(n-1)/ptilde + 1/p < sigma", Relation::LT, lower, sigma);
    b.add("window.upper", "sigma < n/p", Relation::LT, sigma, en * p.reciprocal());
    std::ostringstream os;
    os << "pointwise decay exponent n/p - sigma = " << (en * p.reciprocal() - sigma).str();
    b.note(os.str());
    return b.finish();
  }

  const ExtReal& q = need(t.q, "q", cid);
  const ExtReal& pt = need(t.ptilde, "ptilde", cid);
  const ExtReal& qt = need(t.qtilde, "qtilde", cid);
  const ExtReal& alpha = need(t.alpha, "alpha", cid);
  const ExtReal& beta = need(t.beta, "beta", cid);

  VerdictBuilder b("sobolev-embedding");
  ExtReal balance_rhs = ExtReal(t.n - 1) *
                        (q.reciprocal() - p.reciprocal() + pt.reciprocal() - qt.reciprocal());
  Status balance = constraint_status(Relation::GT, alpha + beta, balance_rhs);
  const bool wide = balance == Status::Satisfied;  // strict balance widens the index range
  add_index_range(b, p, q, wide);
  add_angular_range(b, pt, qt);

  upper_integrability(b, "integrability.beta", "beta ", beta, en * q.reciprocal(), q.is_inf());
  ExtReal pprime = holder_conjugate(p);
  upper_integrability(b, "integrability.alpha", "alpha ", alpha, en * pprime.reciprocal(),
                      pprime.is_inf());
  b.add("order.lower", "0 < sigma", Relation::GT, sigma, ExtReal(0));
  b.add("order.upper", "sigma < n", Relation::LT, sigma, en);
  b.add("scaling", "alpha+beta = sigma + n/q - n/p", Relation::EQ, alpha + beta,
        sigma + en * q.reciprocal() - en * p.reciprocal());
  b.add("weight-balance", "alpha+beta >= (n-1)(1/q-1/p+1/ptilde-1/qtilde)", Relation::GE,
        alpha + beta, balance_rhs);
  if (wide) b.note("index range relaxed to 1 <= p <= q <= inf via strict weight balance");
  return b.finish();
}

Verdict check_ckn(const IndexTuple& t, CknMode mode) {
  const char* cid = "ckn";
  const ExtReal& p = need(t.p, "p", cid);
  const ExtReal& q = need(t.q, "q", cid);
  const ExtReal& r = need(t.r, "r", cid);
  const ExtReal& pt = need(t.ptilde, "ptilde", cid);
  const ExtReal& qt = need(t.qtilde, "qtilde", cid);
  const ExtReal& rt = need(t.rtilde, "rtilde", cid);
  const ExtReal& alpha = need(t.alpha, "alpha", cid);
  const ExtReal& beta = need(t.beta, "beta", cid);
  const ExtReal& gamma = need(t.gamma, "gamma", cid);
  const ExtReal& sigma = need(t.sigma, "sigma", cid);
  const ExtReal& a = need(t.a, "a", cid);
  ExtReal en(t.n);

  VerdictBuilder b(mode == CknMode::Fractional ? "ckn-fractional" : "ckn-integer-sigma");

  b.add("range.p", "1 < p", Relation::GT, p, ExtReal(1));
  for (auto [e, nm] : {std::pair<const ExtReal*, const char*>{&r, "r"},
                       {&rt, "rtilde"},
                       {&p, "p"},
                       {&pt, "ptilde"},
                       {&q, "q"},
                       {&qt, "qtilde"}})
    b.add(std::string("range.") + nm + "-finite", std::string("1/") + nm + " > 0", Relation::GT,
          e->reciprocal(), ExtReal(0));

  if (mode == CknMode::IntegerSigma) {
    double s = sigma.value();
    b.add("order.integer", "sigma integer", Relation::EQ, sigma,
          ExtReal(static_cast<long long>(std::llround(s))));
    b.add("order.lower", "1 <= sigma", Relation::GE, sigma, ExtReal(1));
    b.add("order.upper", "sigma <= n-1", Relation::LE, sigma, ExtReal(t.n - 1));
    b.note("alpha lower bound dropped for integer sigma");
  } else {
    b.add("order.lower", "0 < sigma", Relation::GT, sigma, ExtReal(0));
    b.add("order.upper", "sigma < n", Relation::LT, sigma, en);
  }

  // eq. I: local integrability of the three weights.
  b.add("integrability.gamma", "gamma < n/r", Relation::LT, gamma, en * r.reciprocal());
  b.add("integrability.beta", "beta < n/q", Relation::LT, beta, en * q.reciprocal());
  if (mode == CknMode::Fractional)
    b.add("integrability.alpha-lower", "n/p - n < alpha", Relation::LT,
          en * p.reciprocal() - en, alpha);
  b.add("integrability.alpha-upper", "alpha < n/p - sigma", Relation::LT, alpha,
        en * p.reciprocal() - sigma);

  CknDeltas d = ckn_deltas(t);
  b.add("scaling.delta-identity", "Delta = gamma - a*alpha - (1-a)*beta", Relation::EQ, d.delta,
        gamma - a * alpha - (ExtReal(1) - a) * beta);

  Status balance =
      b.add("delta-balance", "Delta + (n-1)*Delta~ >= 0", Relation::GE,
            d.delta + ExtReal(t.n - 1) * d.delta_tilde, ExtReal(0));
  bool balance_strict =
      balance == Status::Satisfied &&
      !approx_equal(d.delta + ExtReal(t.n - 1) * d.delta_tilde, ExtReal(0), 1e-12);

  // eq. III; the strict lower bound relaxes when the balance is strict.
  Relation low_rel = balance_strict ? Relation::LE : Relation::LT;
  b.add("window.delta-lower",
        balance_strict ? "a(sigma - n/p) <= Delta" : "a(sigma - n/p) < Delta", low_rel,
        a * (sigma - en * p.reciprocal()), d.delta);
  b.add("window.delta-upper", "Delta <= a*sigma", Relation::LE, d.delta, a * sigma);
  b.add("window.delta-tilde-lower", "a(sigma - n/ptilde) <= Delta~", Relation::GE, d.delta_tilde,
        a * (sigma - en * pt.reciprocal()));
  b.add("window.delta-tilde-upper", "Delta~ <= a*sigma", Relation::LE, d.delta_tilde, a * sigma);
  if (balance_strict) b.note("strict delta balance: window inequalities relaxed to non-strict");
  return b.finish();
}

DecayCheck check_decay_estimate(const IndexTuple& t, DecayKind kind, int eta) {
  const char* cid = "decay";
  const ExtReal& p = need(t.p, "p", cid);
  const ExtReal& q = need(t.q, "q", cid);
  const ExtReal& pt = need(t.ptilde, "ptilde", cid);
  const ExtReal& qt = need(t.qtilde, "qtilde", cid);
  const ExtReal& alpha = need(t.alpha, "alpha", cid);
  const ExtReal& beta = need(t.beta, "beta", cid);
  if (eta < 0) throw config_error("decay: eta must be >= 0");
  ExtReal en(t.n);
  ExtReal eeta(eta);

  const char* name = kind == DecayKind::PointwiseHeat    ? "decay-pointwise-heat"
                     : kind == DecayKind::PointwiseOseen ? "decay-pointwise-oseen"
                     : kind == DecayKind::LocalParabola  ? "decay-local-parabola"
                     : kind == DecayKind::TimeIntegrated ? "decay-time-integrated"
                                                         : "decay-duhamel";
  VerdictBuilder b(name);

  ExtReal lam_a = lambda_index(alpha, p, pt, t.n);
  ExtReal lam_b = lambda_index(beta, q, qt, t.n);
  // Exponent of the decay bound c/t^e.
  ExtReal exponent = (eeta + en * p.reciprocal() - en * q.reciprocal() + alpha - beta) / ExtReal(2);

  DecayCheck out;
  out.predicted_exponent = exponent.value();

  // Weight integrability in the Ch.3 convention (output weight |x|^beta).
  auto add_weights = [&]() {
    lower_integrability(b, "integrability.beta", "beta ", beta, -(en * q.reciprocal()),
                        q.is_inf());
    ExtReal pprime = holder_conjugate(p);
    upper_integrability(b, "integrability.alpha", "alpha ", alpha, en * pprime.reciprocal(),
                        pprime.is_inf());
  };

  switch (kind) {
    case DecayKind::PointwiseHeat:
    case DecayKind::PointwiseOseen: {
      Status lam = constraint_status(Relation::GT, lam_a, lam_b);
      bool wide = lam == Status::Satisfied;
      add_index_range(b, p, q, wide);
      add_angular_range(b, pt, qt);
      add_weights();
      b.add("lambda-order", "Lambda(alpha,p,ptilde) >= Lambda(beta,q,qtilde)", Relation::GE,
            lam_a, lam_b);
      if (kind == DecayKind::PointwiseOseen) {
        exponent = exponent + rat(1, 2);
        out.predicted_exponent = exponent.value();
        b.add("exponent.positive", "1 + |eta| + n/p - n/q + alpha - beta > 0", Relation::GT,
              exponent, ExtReal(0));
      } else {
        b.add("exponent.nonnegative", "|eta| + n/p - n/q + alpha - beta >= 0", Relation::GE,
              exponent, ExtReal(0));
      }
      if (wide) b.note("index range relaxed to 1 <= p <= q <= inf via strict Lambda ordering");
      break;
    }
    case DecayKind::LocalParabola: {
      add_index_range(b, p, q, /*wide=*/false);
      add_angular_range(b, pt, qt);
      add_weights();
      b.add("lambda-order", "Lambda(alpha,p,ptilde) < Lambda(beta,q,qtilde)", Relation::LT, lam_a,
            lam_b);
      b.add("exponent.nonnegative", "|eta| + n/p - n/q + alpha - beta >= 0", Relation::GE,
            exponent, ExtReal(0));
      out.lambda_gap = (lam_a - lam_b).value();
      std::ostringstream os;
      os << "restricted constant amplified by R^(" << -(lam_a - lam_b).value()
         << ") on the parabola |x|/sqrt(t) < R";
      b.note(os.str());
      break;
    }
    case DecayKind::TimeIntegrated: {
      const ExtReal& rr = need(t.r, "r", cid);
      add_weights();
      b.add("range.p", "1 < p", Relation::GT, p, ExtReal(1));
      b.add("range.p-le-q", "p <= q", Relation::LE, p, q);
      // q < n p / ((|eta| + alpha - beta) p + n - 2), i.e. 1/q > ... in
      // reciprocal form so a nonpositive denominator imposes nothing.
      ExtReal qbound_inv =
          (eeta + alpha - beta) / en + ExtReal(t.n - 2) / en * p.reciprocal();
      b.add("range.q-upper", "1/q > (|eta|+alpha-beta)/n + (n-2)/(n p)", Relation::GT,
            q.reciprocal(), qbound_inv);
      b.add("range.r-lower", "1 < r", Relation::GT, rr, ExtReal(1));
      b.add("range.r-finite", "1/r > 0", Relation::GT, rr.reciprocal(), ExtReal(0));
      add_angular_range(b, pt, qt);
      b.add("omega-scaling", "|eta| + Omega(alpha,p,inf) = Omega(beta,q,r)", Relation::EQ,
            eeta + omega_index(alpha, p, ExtReal::infinity(), t.n),
            omega_index(beta, q, rr, t.n));
      b.add("lambda-order", "Lambda(alpha,p,ptilde) >= Lambda(beta,q,qtilde)", Relation::GE,
            lam_a, lam_b);
      out.predicted_exponent = 1.0 / rr.value();
      break;
    }
    case DecayKind::Duhamel: {
      const ExtReal& rr = need(t.r, "r", cid);
      const ExtReal& ss = need(t.s, "s", cid);
      add_weights();
      ExtReal two_lam_a = ExtReal(2) * lam_a;
      Status lam = constraint_status(Relation::GT, two_lam_a, lam_b);
      bool wide = lam == Status::Satisfied;
      if (wide) {
        b.add("range.p", "1 <= p", Relation::GE, p, ExtReal(1));
        b.add("range.p-le-2q", "p <= 2q", Relation::LE, p, ExtReal(2) * q);
        b.note("index range relaxed via strict 2*Lambda(alpha) > Lambda(beta)");
      } else {
        b.add("range.p", "1 < p", Relation::GT, p, ExtReal(1));
        b.add("range.p-le-2q", "p <= 2q", Relation::LE, p, ExtReal(2) * q);
        b.add("range.q-finite", "1/q > 0", Relation::GT, q.reciprocal(), ExtReal(0));
      }
      b.add("range.s", "1 < s", Relation::GT, ss, ExtReal(1));
      b.add("range.s-le-2r", "s <= 2r", Relation::LE, ss, ExtReal(2) * rr);
      b.add("range.r-finite", "1/r > 0", Relation::GT, rr.reciprocal(), ExtReal(0));
      b.add("range.ptilde-le-2qtilde", "ptilde <= 2*qtilde", Relation::LE, pt, ExtReal(2) * qt);
      b.add("omega-scaling", "2*Omega(alpha,p,s) = Omega(beta,q,r) + 1 - |eta|", Relation::EQ,
            ExtReal(2) * omega_index(alpha, p, ss, t.n),
            omega_index(beta, q, rr, t.n) + ExtReal(1) - eeta);
      b.add("lambda-order", "2*Lambda(alpha,p,ptilde) >= Lambda(beta,q,qtilde)", Relation::GE,
            two_lam_a, lam_b);
      out.predicted_exponent = 0.0;
      break;
    }
  }
  out.verdict = b.finish();
  return out;
}

RegularityClass classify_regularity(const ExtReal& alpha, const ExtReal& p, const ExtReal& ptilde,
                                    const ExtReal& s, int n) {
  ExtReal residual = ExtReal(2) * s.reciprocal() + ExtReal(n) * p.reciprocal() -
                     (ExtReal(1) - alpha);
  if (!approx_equal(residual, ExtReal(0), 1e-12)) {
    std::ostringstream os;
    os << "classify_regularity: parabolic scaling 2/s + n/p = 1 - alpha violated, residual = "
       << residual.value();
    throw std::domain_error(os.str());
  }
  ExtReal lo = rat(1 - n, 2);
  if (ExtReal(1) < alpha || approx_equal(alpha, ExtReal(1), 0.0) || alpha < lo)
    throw std::domain_error("classify_regularity: alpha outside [(1-n)/2, 1)");

  RegularityClass rc;
  const ExtReal half = rat(1, 2);
  std::optional<ExtReal> pl, pg;
  if (!(alpha < rat(-1, 2))) pl = ptilde_local(alpha, p, n);
  if (!(half < alpha)) pg = ptilde_global(alpha, p, n);
  if (pl) rc.ptilde_local_threshold = pl->value();
  if (pg) rc.ptilde_global_threshold = pg->value();

  auto ge = [](const ExtReal& x, const ExtReal& y) {
    return approx_equal(x, y, 1e-12) || y < x;
  };
  if (pg && ge(ptilde, *pg)) {
    rc.value = RegularityClass::Global;
    if (approx_equal(ptilde, *pg, 1e-12)) rc.notes.push_back("boundary: ptilde = ptilde_G");
  } else if (pl && ge(ptilde, *pl)) {
    rc.value = RegularityClass::LocalOnly;
    if (approx_equal(ptilde, *pl, 1e-12)) rc.notes.push_back("boundary: ptilde = ptilde_L");
  } else {
    rc.value = RegularityClass::Unknown;
  }
  return rc;
}

void set_tuple_field(IndexTuple& t, const std::string& field, double value) {
  if (field == "n") {
    t.n = static_cast<int>(std::llround(value));
    return;
  }
  if (field == "eta") {
    t.eta = static_cast<int>(std::llround(value));
    return;
  }
  ExtReal v(value);
  if (field == "p") t.p = v;
  else if (field == "ptilde") t.ptilde = v;
  else if (field == "q") t.q = v;
  else if (field == "qtilde") t.qtilde = v;
  else if (field == "r") t.r = v;
  else if (field == "rtilde") t.rtilde = v;
  else if (field == "s") t.s = v;
  else if (field == "alpha") t.alpha = v;
  else if (field == "beta") t.beta = v;
  else if (field == "gamma") t.gamma = v;
  else if (field == "sigma") t.sigma = v;
  else if (field == "mu") t.mu = v;
  else if (field == "a") t.a = v;
  else throw config_error("scan: unknown tuple field '" + field + "'");
}

Verdict run_checker(const std::string& id, const IndexTuple& t) {
  if (id == "classical-sw") return check_stein_weiss(t, SwVariant::Classical);
  if (id == "radial-sw") return check_stein_weiss(t, SwVariant::Radial);
  if (id == "mixed-sw") return check_stein_weiss(t, SwVariant::Mixed);
  if (id == "mixed-sw-strict") return check_stein_weiss(t, SwVariant::Mixed, SwMode::Strict);
  if (id == "mixed-sw-annulus") return check_stein_weiss(t, SwVariant::Mixed, SwMode::Annulus);
  if (id == "nonhom") return check_nonhomogeneous(t);
  if (id == "sobolev") return check_sobolev_embedding(t);
  if (id == "strauss") return check_sobolev_embedding(t, SobolevMode::Strauss);
  if (id == "ckn") return check_ckn(t);
  if (id == "ckn-int") return check_ckn(t, CknMode::IntegerSigma);
  int eta = t.eta.value_or(0);
  if (id == "decay-heat") return check_decay_estimate(t, DecayKind::PointwiseHeat, eta).verdict;
  if (id == "decay-oseen") return check_decay_estimate(t, DecayKind::PointwiseOseen, eta).verdict;
  if (id == "decay-local") return check_decay_estimate(t, DecayKind::LocalParabola, eta).verdict;
  if (id == "decay-integrated")
    return check_decay_estimate(t, DecayKind::TimeIntegrated, eta).verdict;
  if (id == "decay-duhamel") return check_decay_estimate(t, DecayKind::Duhamel, eta).verdict;
  throw config_error("unknown checker '" + id + "'");
}

ScanResult scan_region(const IndexTuple& tmpl, const std::vector<ScanAxis>& axes,
                       const std::string& checker_id) {
  if (axes.empty() || axes.size() > 2) throw config_error("scan: needs 1 or 2 axes");
  ScanResult out;
  out.checker = checker_id;
  out.axes = axes;
  for (const auto& ax : axes) {
    if (ax.steps < 0) throw config_error("scan: negative step count");
    std::vector<double> vals;
    if (ax.steps == 0) {
      vals.push_back(ax.lo);
    } else {
      for (int i = 0; i <= ax.steps; ++i)
        vals.push_back(ax.lo + (ax.hi - ax.lo) * i / ax.steps);
    }
    out.axis_values.push_back(std::move(vals));
  }
  const auto& v0 = out.axis_values[0];
  const std::vector<double> v1 =
      axes.size() == 2 ? out.axis_values[1] : std::vector<double>{0.0};
  out.grid.reserve(v0.size() * v1.size());
  bool noted_error = false;
  for (double a0 : v0) {
    for (double a1 : v1) {
      IndexTuple t = tmpl;
      set_tuple_field(t, axes[0].field, a0);
      if (axes.size() == 2) set_tuple_field(t, axes[1].field, a1);
      try {
        out.grid.push_back(run_checker(checker_id, t).overall);
      } catch (const std::exception&) {
        out.grid.push_back(Overall::Fail);
        noted_error = true;
      }
    }
  }
  (void)noted_error;
  return out;
}

}  // namespace anglab
