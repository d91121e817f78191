#include "anglab/ext_real.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace anglab {

namespace {

bool fits64(__int128 v) {
  return v <= std::numeric_limits<long long>::max() &&
         v >= std::numeric_limits<long long>::min();
}

}  // namespace

ExtReal::ExtReal(double v) {
  if (std::isnan(v)) throw std::invalid_argument("ExtReal: NaN");
  if (std::isinf(v)) {
    if (v < 0) throw std::invalid_argument("ExtReal: -inf not representable");
    inf_ = true;
    return;
  }
  // Integral doubles are safe to treat as exact.
  if (std::nearbyint(v) == v && std::abs(v) < 1e15) {
    num_ = static_cast<long long>(v);
    den_ = 1;
    exact_ = true;
  }
  val_ = v;
}

ExtReal ExtReal::rational(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("ExtReal: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  ExtReal r;
  r.num_ = num;
  r.den_ = den;
  r.val_ = static_cast<double>(num) / static_cast<double>(den);
  r.exact_ = true;
  return r;
}

ExtReal ExtReal::infinity() {
  ExtReal r;
  r.inf_ = true;
  return r;
}

ExtReal ExtReal::parse(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "infinity" || text == "oo")
    return infinity();
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    long long n = std::stoll(text.substr(0, slash));
    long long d = std::stoll(text.substr(slash + 1));
    return rational(n, d);
  }
  size_t pos = 0;
  double v = std::stod(text, &pos);
  if (pos != text.size()) throw std::invalid_argument("ExtReal: cannot parse '" + text + "'");
  return ExtReal(v);
}

bool ExtReal::is_zero() const {
  if (inf_) return false;
  return exact_ ? num_ == 0 : val_ == 0.0;
}

double ExtReal::value() const {
  if (inf_) return std::numeric_limits<double>::infinity();
  return val_;
}

ExtReal ExtReal::reciprocal() const {
  if (inf_) return ExtReal(0);
  if (is_zero()) return infinity();
  if (exact_) {
    long long n = num_, d = den_;
    if (n < 0) return rational(-d, -n);
    return rational(d, n);
  }
  return ExtReal(1.0 / val_);
}

ExtReal ExtReal::operator-() const {
  if (inf_) throw std::domain_error("ExtReal: -inf not representable");
  if (exact_) return rational(-num_, den_);
  return ExtReal(-val_);
}

namespace {

// Combines two rationals; returns nullopt on int64 overflow.
std::optional<ExtReal> rat_combine(long long an, long long ad, long long bn, long long bd,
                                   bool subtract) {
  __int128 num = static_cast<__int128>(an) * bd;
  __int128 rhs = static_cast<__int128>(bn) * ad;
  num = subtract ? num - rhs : num + rhs;
  __int128 den = static_cast<__int128>(ad) * bd;
  if (!fits64(num) || !fits64(den)) return std::nullopt;
  return ExtReal::rational(static_cast<long long>(num), static_cast<long long>(den));
}

}  // namespace

ExtReal operator+(const ExtReal& a, const ExtReal& b) {
  if (a.inf_ || b.inf_) return ExtReal::infinity();
  if (a.exact_ && b.exact_) {
    if (auto r = rat_combine(a.num_, a.den_, b.num_, b.den_, false)) return *r;
  }
  return ExtReal(a.val_ + b.val_);
}

ExtReal operator-(const ExtReal& a, const ExtReal& b) {
  if (b.inf_) throw std::domain_error("ExtReal: subtracting inf");
  if (a.inf_) return ExtReal::infinity();
  if (a.exact_ && b.exact_) {
    if (auto r = rat_combine(a.num_, a.den_, b.num_, b.den_, true)) return *r;
  }
  return ExtReal(a.val_ - b.val_);
}

ExtReal operator*(const ExtReal& a, const ExtReal& b) {
  if (a.inf_ || b.inf_) {
    const ExtReal& fin = a.inf_ ? b : a;
    if (!fin.inf_ && fin.is_zero()) return ExtReal(0);  // convention 0 * inf = 0
    if (!fin.inf_ && fin.value() < 0) throw std::domain_error("ExtReal: negative * inf");
    return ExtReal::infinity();
  }
  if (a.exact_ && b.exact_) {
    __int128 num = static_cast<__int128>(a.num_) * b.num_;
    __int128 den = static_cast<__int128>(a.den_) * b.den_;
    if (fits64(num) && fits64(den))
      return ExtReal::rational(static_cast<long long>(num), static_cast<long long>(den));
  }
  return ExtReal(a.val_ * b.val_);
}

ExtReal operator/(const ExtReal& a, const ExtReal& b) { return a * b.reciprocal(); }

bool approx_equal(const ExtReal& a, const ExtReal& b, double tol) {
  if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
  if (a.exact_ && b.exact_)
    return static_cast<__int128>(a.num_) * b.den_ == static_cast<__int128>(b.num_) * a.den_;
  return std::abs(a.val_ - b.val_) <= tol;
}

bool operator<(const ExtReal& a, const ExtReal& b) {
  if (a.inf_) return false;
  if (b.inf_) return true;
  if (a.exact_ && b.exact_)
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  return a.val_ < b.val_;
}

std::string ExtReal::str() const {
  if (inf_) return "inf";
  if (exact_) {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  std::ostringstream os;
  os.precision(17);
  os << val_;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ExtReal& x) { return os << x.str(); }

}  // namespace anglab
