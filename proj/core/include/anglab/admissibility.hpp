#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "anglab/index_core.hpp"

namespace anglab {

enum class Relation { LT, LE, EQ, GE, GT };
enum class Status { Satisfied, Violated, Boundary };
enum class Overall { Pass, Fail, Boundary };

/// One hypothesis line of a theorem, rendered and decided.
///
/// Status rules under the module tolerance (1e-12, exact on rationals):
/// equality in a strict relation (< or >) is Boundary, never Pass/Fail;
/// equality in a non-strict relation is Satisfied (tight constraints get a
/// note on the verdict); = is Satisfied exactly at equality.
struct Constraint {
  std::string id;
  std::string description;
  Relation relation;
  double lhs = 0.0;
  double rhs = 0.0;
  Status status = Status::Satisfied;
};

struct Verdict {
  Overall overall = Overall::Pass;
  std::vector<Constraint> constraints;
  std::string theorem_id;
  std::vector<std::string> notes;

  bool passed() const { return overall == Overall::Pass; }
};

const char* to_string(Relation r);
const char* to_string(Status s);
const char* to_string(Overall o);

Status constraint_status(Relation rel, const ExtReal& lhs, const ExtReal& rhs,
                         double tol = 1e-12);

/// Incremental verdict assembly used by every checker.
class VerdictBuilder {
public:
  explicit VerdictBuilder(std::string theorem_id);
  /// Adds one constraint; returns its decided status.
  Status add(const std::string& id, const std::string& description, Relation rel,
             const ExtReal& lhs, const ExtReal& rhs);
  void note(const std::string& text);
  Verdict finish();

private:
  Verdict v_;
};

enum class SwVariant { Classical, Radial, Mixed };
enum class SwMode { General, Strict, Annulus };

/// Stein-Weiss hypothesis systems: classical (alpha+beta >= 0), radial
/// (alpha+beta >= (n-1)(1/q-1/p)), and the mixed radial-angular extension
/// (alpha+beta >= (n-1)(1/q-1/p+1/ptilde-1/qtilde)). Strict/Annulus modes
/// widen the index range to 1 <= p <= q <= inf; Strict additionally demands
/// a strict angular condition.
Verdict check_stein_weiss(const IndexTuple& t, SwVariant variant, SwMode mode = SwMode::General);

/// Nonhomogeneous kernels: gamma-form checks the wider index range plus
/// alpha+beta+gamma > n(1+1/q-1/p); mu-form checks the smooth-kernel window
/// mu > -alpha-beta+n(1+1/q-1/p). Requires gamma or mu present.
Verdict check_nonhomogeneous(const IndexTuple& t);

enum class SobolevMode { Embedding, Strauss };

/// Weighted Sobolev embedding conditions; Strauss mode checks the pointwise
/// window (n-1)/ptilde + 1/p < sigma < n/p.
Verdict check_sobolev_embedding(const IndexTuple& t, SobolevMode mode = SobolevMode::Embedding);

enum class CknMode { Fractional, IntegerSigma };

/// Mixed-norm Caffarelli-Kohn-Nirenberg conditions. The scaling relation is
/// enforced through the Delta identity Delta = gamma - a*alpha - (1-a)*beta.
/// IntegerSigma drops the alpha lower bound and requires sigma in {1..n-1}.
Verdict check_ckn(const IndexTuple& t, CknMode mode = CknMode::Fractional);

enum class DecayKind { PointwiseHeat, PointwiseOseen, LocalParabola, TimeIntegrated, Duhamel };

struct DecayCheck {
  Verdict verdict;
  /// t-exponent of the decay bound: (|eta| + n/p - n/q + alpha - beta)/2,
  /// plus 1/2 for the Oseen kernel.
  double predicted_exponent = 0.0;
  /// LocalParabola only: Lambda_{alpha,beta} = Lambda_alpha - Lambda_beta < 0;
  /// the restricted constant grows like R^(-lambda_gap).
  std::optional<double> lambda_gap;
};

/// Ch.3 sign conventions: input weight |x|^alpha, output weight |x|^beta.
DecayCheck check_decay_estimate(const IndexTuple& t, DecayKind kind, int eta = 0);

struct RegularityClass {
  enum Value { Global, LocalOnly, Unknown };
  Value value = Unknown;
  std::optional<double> ptilde_local_threshold;
  std::optional<double> ptilde_global_threshold;
  std::vector<std::string> notes;
};

/// Classifies a monitored norm by the regularity criteria thresholds:
/// Global iff ptilde >= ptilde_G, LocalOnly iff ptilde_L <= ptilde < ptilde_G.
/// Requires the parabolic scaling 2/s + n/p = 1 - alpha (error carries the
/// residual otherwise).
RegularityClass classify_regularity(const ExtReal& alpha, const ExtReal& p,
                                    const ExtReal& ptilde, const ExtReal& s, int n);

struct ScanAxis {
  std::string field;  // one of the IndexTuple field names
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;  // number of intervals; steps == 0 means the single point lo
};

struct ScanResult {
  std::string checker;
  std::vector<ScanAxis> axes;
  std::vector<std::vector<double>> axis_values;  // one vector per axis
  std::vector<Overall> grid;                     // row-major over axis order
};

/// Known checker ids: classical-sw, radial-sw, mixed-sw, mixed-sw-strict,
/// mixed-sw-annulus, nonhom, sobolev, strauss, ckn, ckn-int, decay-heat,
/// decay-oseen, decay-local, decay-integrated, decay-duhamel.
Verdict run_checker(const std::string& checker_id, const IndexTuple& t);

/// Rasters a checker over 1 or 2 tuple axes; rows ordered by the first axis.
ScanResult scan_region(const IndexTuple& tmpl, const std::vector<ScanAxis>& axes,
                       const std::string& checker_id);

/// Sets a tuple field by name (scan plumbing).
void set_tuple_field(IndexTuple& t, const std::string& field, double value);

}  // namespace anglab
