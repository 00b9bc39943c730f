#ifndef MWCUT_RATIONAL_HPP_
#define MWCUT_RATIONAL_HPP_

#include <cstdint>
#include <cstdlib>
#include <iosfwd>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace mwcut {

/// Exact rational scalar on 64-bit numerator/denominator.
///
/// Used wherever the artifact promises exact arithmetic (grid instances,
/// volumes, dual shortest paths on integer-weighted meshes). Operations
/// normalize by gcd and throw on 64-bit overflow; the quantities handled
/// here stay tiny, so an overflow indicates a logic error, not a limit
/// to engineer around.
class Rational {
 public:
  Rational() = default;
  Rational(long long value) : num_(value), den_(1) {}  // NOLINT: implicit by design
  Rational(long long num, long long den) : num_(num), den_(den) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  static Rational from_string(const std::string& text);
  std::string str() const;

  Rational operator-() const { return Rational(-num_, den_, NoNormalize{}); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(checked(i128(a.num_) * b.den_ + i128(b.num_) * a.den_),
                    checked(i128(a.den_) * b.den_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(checked(i128(a.num_) * b.num_), checked(i128(a.den_) * b.den_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return Rational(checked(i128(a.num_) * b.den_), checked(i128(a.den_) * b.num_));
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  using i128 = __int128;
  struct NoNormalize {};
  Rational(long long num, long long den, NoNormalize) : num_(num), den_(den) {}

  static long long checked(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("Rational: 64-bit overflow");
    return static_cast<long long>(v);
  }

  void normalize() {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  long long num_ = 0;
  long long den_ = 1;
};

inline Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

inline std::ostream& operator<<(std::ostream& os, const Rational& r) {
  os << r.num_;
  if (r.den_ != 1) os << '/' << r.den_;
  return os;
}

/// Parses "p", "p/q" or a plain decimal like "-1.25" exactly.
inline Rational Rational::from_string(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("Rational: empty string");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    long long p = std::stoll(text.substr(0, slash));
    long long q = std::stoll(text.substr(slash + 1));
    return Rational(p, q);
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(std::stoll(text));
  bool negative = text[0] == '-';
  std::string digits = text;
  digits.erase(dot, 1);
  long long scale = 1;
  for (size_t i = dot; i < text.size() - 1; ++i) {
    if (scale > INT64_MAX / 10) throw std::overflow_error("Rational: decimal too long");
    scale *= 10;
  }
  (void)negative;
  return Rational(std::stoll(digits), scale);
}

inline std::string Rational::str() const {
  std::string s = std::to_string(num_);
  if (den_ != 1) s += "/" + std::to_string(den_);
  return s;
}

}  // namespace mwcut

namespace Eigen {

template <>
struct NumTraits<mwcut::Rational> {
  using Real = mwcut::Rational;
  using NonInteger = mwcut::Rational;
  using Literal = long long;
  using Nested = mwcut::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 4,
  };
  static inline Real epsilon() { return mwcut::Rational(0); }
  static inline Real dummy_precision() { return mwcut::Rational(0); }
  static inline int digits10() { return 18; }
  static inline Real highest() { return mwcut::Rational(INT64_MAX); }
  static inline Real lowest() { return mwcut::Rational(INT64_MIN); }
};

}  // namespace Eigen

#endif  // MWCUT_RATIONAL_HPP_
