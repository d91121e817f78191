#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace anglab {

/// Extended real for Lebesgue exponents and weight powers.
///
/// A value is either +infinity, an exact rational (int64 numerator /
/// denominator), or an inexact double. Arithmetic stays rational as long as
/// both operands are rational and nothing overflows, so scaling identities
/// like alpha+beta+gamma = n + n/q - n/p are decided exactly on rational
/// input instead of by float noise. reciprocal(inf) == 0 exactly.
class ExtReal {
public:
  ExtReal() : ExtReal(0) {}
  ExtReal(int v) : num_(v), den_(1), val_(static_cast<double>(v)), exact_(true) {}
  ExtReal(long long v) : num_(v), den_(1), val_(static_cast<double>(v)), exact_(true) {}
  ExtReal(double v);  // inexact unless v is a small integer

  static ExtReal rational(long long num, long long den);
  static ExtReal infinity();
  /// Parses "inf", "a/b" (exact) or a plain decimal literal (inexact).
  static ExtReal parse(const std::string& text);

  bool is_inf() const { return inf_; }
  bool is_exact() const { return inf_ || exact_; }
  bool is_zero() const;
  double value() const;  // +inf for infinity()

  /// 1/x with the conventions 1/inf = 0 (exact) and 1/0 = inf.
  ExtReal reciprocal() const;

  ExtReal operator-() const;
  friend ExtReal operator+(const ExtReal& a, const ExtReal& b);
  friend ExtReal operator-(const ExtReal& a, const ExtReal& b);
  friend ExtReal operator*(const ExtReal& a, const ExtReal& b);
  friend ExtReal operator/(const ExtReal& a, const ExtReal& b);

  /// Exact on rationals, |a-b| <= tol otherwise. Infinities compare equal.
  friend bool approx_equal(const ExtReal& a, const ExtReal& b, double tol);
  /// Total order; exact cross-multiplication on rationals.
  friend bool operator<(const ExtReal& a, const ExtReal& b);
  friend bool operator>(const ExtReal& a, const ExtReal& b) { return b < a; }

  std::string str() const;  // "inf", "3/4" or decimal

private:
  long long num_ = 0;
  long long den_ = 1;   // always >= 1 when exact
  double val_ = 0.0;    // cached double view (ignored when inf_)
  bool exact_ = false;
  bool inf_ = false;
};

std::ostream& operator<<(std::ostream& os, const ExtReal& x);

inline ExtReal rat(long long num, long long den) { return ExtReal::rational(num, den); }

}  // namespace anglab
