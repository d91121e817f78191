#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "anglab/ext_real.hpp"

namespace anglab {

/// One record housing every exponent symbol used by any condition system.
/// Fields a condition system does not use may stay absent; checkers raise
/// config_error naming the missing field.
struct IndexTuple {
  int n = 3;  // space dimension, >= 2
  std::optional<ExtReal> p, ptilde, q, qtilde, r, rtilde, s;  // Lebesgue exponents in [1, inf]
  std::optional<ExtReal> alpha, beta, gamma, sigma, mu;       // weight / order exponents
  std::optional<ExtReal> a;                                   // CKN interpolation weight in (0,1]
  std::optional<int> eta;                                     // multi-index order |eta| >= 0

  /// Parses {"n":3,"p":2,"ptilde":"inf","alpha":"-1/2",...}; unknown keys rejected.
  static IndexTuple from_json_text(const std::string& text);
  std::string to_json_text() const;
};

/// Missing/invalid configuration (field named in what()); CLI exit code 2.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Holder conjugate p' with 1/p + 1/p' = 1; domain error for p < 1.
ExtReal holder_conjugate(const ExtReal& p);

/// Lambda(alpha,p,ptilde) = alpha + (n-1)/p - (n-1)/ptilde.
ExtReal lambda_index(const ExtReal& alpha, const ExtReal& p, const ExtReal& ptilde, int n);

/// Omega(alpha,p,s) = alpha + n/p + 2/s.
ExtReal omega_index(const ExtReal& alpha, const ExtReal& p, const ExtReal& s, int n);

/// Minimal angular integrability for local regularity; alpha in [-1/2, 1).
ExtReal ptilde_local(const ExtReal& alpha, const ExtReal& p, int n);

/// Minimal angular integrability for global regularity; alpha in [(1-n)/2, 1/2].
/// Returns +inf (flagging *degenerate when given) when alpha*p + n - 1 <= 0,
/// where no finite angular integrability achieves Lambda >= 0.
ExtReal ptilde_global(const ExtReal& alpha, const ExtReal& p, int n,
                      bool* degenerate = nullptr);

struct CknDeltas {
  ExtReal delta;
  ExtReal delta_tilde;
  /// delta - (gamma - a*alpha - (1-a)*beta); vanishes under the scaling relation.
  std::optional<ExtReal> scaling_residual;
};

/// Delta = a*sigma + n(1/r - (1-a)/q - a/p), and the tilded twin.
CknDeltas ckn_deltas(const IndexTuple& t);

/// gamma = n + n/q - n/p - alpha - beta; *out_of_range set when gamma outside (0, n).
ExtReal sw_scaling_gamma(const ExtReal& alpha, const ExtReal& beta, const ExtReal& p,
                         const ExtReal& q, int n, bool* out_of_range = nullptr);

}  // namespace anglab
