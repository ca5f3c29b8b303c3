#include "dtl/qscalar.hpp"

#include <cmath>
#include <limits>

#include "dtl/error.hpp"

namespace dtl {

bool is_squarefree(std::int64_t d) {
  if (d < 1) return false;
  for (std::int64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

std::int64_t common_field(const QScalar& a, const QScalar& b) {
  if (a.discriminant() == b.discriminant()) return a.discriminant();
  if (a.discriminant() == 1) return b.discriminant();
  if (b.discriminant() == 1) return a.discriminant();
  throw FieldMismatch("scalars from Q(sqrt " + std::to_string(a.discriminant()) + ") and Q(sqrt " +
                      std::to_string(b.discriminant()) + ") cannot be combined");
}

QScalar::QScalar(Rational rational, Rational radical, std::int64_t d)
    : rational_(std::move(rational)), radical_(std::move(radical)), d_(d) {
  if (!is_squarefree(d)) {
    throw Error("discriminant must be a positive square-free integer, got " + std::to_string(d));
  }
  rational_.canonicalize();
  radical_.canonicalize();
  normalize();
}

QScalar::QScalar(Rational rational, Rational radical, std::int64_t d, Trusted)
    : rational_(std::move(rational)), radical_(std::move(radical)), d_(d) {
  normalize();
}

void QScalar::normalize() {
  if (d_ == 1 && sgn(radical_) != 0) {
    rational_ += radical_;
    radical_ = 0;
  }
}

QScalar QScalar::sqrt(std::int64_t d) { return QScalar(Rational(0), Rational(1), d); }

int QScalar::sign() const {
  const int s = sgn(rational_);
  const int t = sgn(radical_);
  if (t == 0) return s;
  if (s == 0 || s == t) return t;
  // Opposite signs: the larger of rational^2 and radical^2 * D wins.
  const Rational lhs = rational_ * rational_;
  const Rational rhs = radical_ * radical_ * d_;
  const int c = cmp(lhs, rhs);
  if (c == 0) return 0;
  return c > 0 ? s : t;
}

double QScalar::to_double() const {
  return rational_.get_d() + radical_.get_d() * std::sqrt(static_cast<double>(d_));
}

bool QScalar::is_integer() const {
  return sgn(radical_) == 0 && rational_.get_den() == 1 && rational_.get_num().fits_slong_p();
}

std::int64_t QScalar::to_int64() const {
  if (!is_integer()) throw Error("scalar " + str() + " is not a machine integer");
  return rational_.get_num().get_si();
}

std::string format_rational(const Rational& r) {
  Rational c(r);
  c.canonicalize();
  return c.get_str();
}

std::string QScalar::str() const {
  if (sgn(radical_) == 0) return format_rational(rational_);
  std::string rad = format_rational(radical_) + "√" + std::to_string(d_);
  if (sgn(rational_) == 0) return rad;
  if (sgn(radical_) > 0) rad.insert(0, "+");
  return format_rational(rational_) + rad;
}

QScalar QScalar::operator-() const { return QScalar(-rational_, -radical_, d_, Trusted{}); }

QScalar QScalar::inverse() const {
  if (is_zero()) throw Error("division by zero");
  // (s + t sqrt D)^-1 = (s - t sqrt D) / (s^2 - t^2 D)
  const Rational norm = rational_ * rational_ - radical_ * radical_ * d_;
  return QScalar(Rational(rational_ / norm), Rational(-radical_ / norm), d_, Trusted{});
}

QScalar operator+(const QScalar& a, const QScalar& b) {
  const auto d = common_field(a, b);
  return QScalar(Rational(a.rational_ + b.rational_), Rational(a.radical_ + b.radical_), d,
                 QScalar::Trusted{});
}

QScalar operator-(const QScalar& a, const QScalar& b) {
  const auto d = common_field(a, b);
  return QScalar(Rational(a.rational_ - b.rational_), Rational(a.radical_ - b.radical_), d,
                 QScalar::Trusted{});
}

QScalar operator*(const QScalar& a, const QScalar& b) {
  const auto d = common_field(a, b);
  Rational rat = a.rational_ * b.rational_ + a.radical_ * b.radical_ * d;
  Rational rad = a.rational_ * b.radical_ + a.radical_ * b.rational_;
  return QScalar(std::move(rat), std::move(rad), d, QScalar::Trusted{});
}

QScalar operator/(const QScalar& a, const QScalar& b) {
  common_field(a, b);
  return a * b.inverse();
}

std::strong_ordering operator<=>(const QScalar& a, const QScalar& b) {
  const int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool operator==(const QScalar& a, const QScalar& b) {
  common_field(a, b);
  return a.rational_ == b.rational_ && a.radical_ == b.radical_;
}

std::strong_ordering scalar_cmp(const QScalar& a, const QScalar& b) { return a <=> b; }

Rational parse_rational(const std::string& text) {
  const auto bad = [&] { return Error("malformed rational '" + text + "'"); };
  if (text.empty()) throw bad();
  const auto slash = text.find('/');
  const auto digits_ok = [](const std::string& s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false)) throw bad();
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num, 10);
  mpz_class dd(den, 10);
  if (dd == 0) throw Error("zero denominator in '" + text + "'");
  Rational r(n, dd);
  r.canonicalize();
  return r;
}

}  // namespace dtl
