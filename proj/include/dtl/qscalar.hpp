#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace dtl {

using Rational = mpq_class;

// True for positive square-free integers (1 included).
bool is_squarefree(std::int64_t d);

// Exact element rational + radical * sqrt(D) of the real quadratic field Q(sqrt D).
//
// D = 1 denotes plain rationals; the radical part is folded into the rational
// part so the representation stays unique. A value with D = 1 may be combined
// with any field; two different D > 1 raise FieldMismatch.
class QScalar {
 public:
  QScalar() = default;
  QScalar(long v) : rational_(v) {}  // NOLINT(google-explicit-constructor)
  explicit QScalar(Rational r) : rational_(std::move(r)) { rational_.canonicalize(); }
  QScalar(Rational rational, Rational radical, std::int64_t d);

  // sqrt(d) as a field element.
  static QScalar sqrt(std::int64_t d);

  const Rational& rational_part() const { return rational_; }
  const Rational& radical_part() const { return radical_; }
  std::int64_t discriminant() const { return d_; }

  int sign() const;
  bool is_zero() const { return sgn(rational_) == 0 && sgn(radical_) == 0; }
  double to_double() const;

  // Integer value if the scalar is a rational integer that fits in int64.
  bool is_integer() const;
  std::int64_t to_int64() const;

  // `p`, `p/q`, `r/s√D`, or `p/q+r/s√D`.
  std::string str() const;

  QScalar operator-() const;
  QScalar inverse() const;

  friend QScalar operator+(const QScalar& a, const QScalar& b);
  friend QScalar operator-(const QScalar& a, const QScalar& b);
  friend QScalar operator*(const QScalar& a, const QScalar& b);
  friend QScalar operator/(const QScalar& a, const QScalar& b);
  QScalar& operator+=(const QScalar& o) { return *this = *this + o; }
  QScalar& operator-=(const QScalar& o) { return *this = *this - o; }
  QScalar& operator*=(const QScalar& o) { return *this = *this * o; }

  friend std::strong_ordering operator<=>(const QScalar& a, const QScalar& b);
  friend bool operator==(const QScalar& a, const QScalar& b);

 private:
  struct Trusted {};
  QScalar(Rational rational, Rational radical, std::int64_t d, Trusted);
  void normalize();

  Rational rational_{0};
  Rational radical_{0};
  std::int64_t d_ = 1;
};

// Discriminant shared by a and b; throws FieldMismatch if they live in different fields.
std::int64_t common_field(const QScalar& a, const QScalar& b);

// Exact ordering of the real values.
std::strong_ordering scalar_cmp(const QScalar& a, const QScalar& b);

// Parses `a`, `-a`, or `a/b`; throws dtl::Error on malformed text or zero denominator.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& r);

}  // namespace dtl
