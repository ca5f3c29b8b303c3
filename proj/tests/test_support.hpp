#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "dtl/geometry.hpp"
#include "dtl/qscalar.hpp"

namespace dtl::testing {

// Fixed-seed generators for property tests.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen_);
  }
  bool coin() { return uniform(0, 1) == 1; }

  Rational rational(std::int64_t num_limit, std::int64_t den_limit) {
    Rational r(static_cast<long>(uniform(-num_limit, num_limit)), static_cast<unsigned long>(uniform(1, den_limit)));
    r.canonicalize();
    return r;
  }

  QScalar scalar(std::int64_t d, std::int64_t num_limit = 20, std::int64_t den_limit = 6) {
    return QScalar(rational(num_limit, den_limit), rational(num_limit, den_limit), d);
  }

  QPoint point(std::int64_t d, std::int64_t num_limit = 20, std::int64_t den_limit = 6) {
    return {scalar(d, num_limit, den_limit), scalar(d, num_limit, den_limit)};
  }

  QPoint int_point(std::int64_t lim) {
    return {QScalar(static_cast<long>(uniform(-lim, lim))), QScalar(static_cast<long>(uniform(-lim, lim)))};
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    std::shuffle(v.begin(), v.end(), gen_);
  }

 private:
  std::mt19937_64 gen_;
};

inline QScalar q(long v) { return QScalar(v); }
inline QScalar q(long num, long den) { return QScalar(Rational(num, den)); }
inline QScalar q3(Rational rat, Rational rad) { return QScalar(std::move(rat), std::move(rad), 3); }
inline QPoint pt(long x, long y) { return {QScalar(x), QScalar(y)}; }

// Regular hexagon on the unit circle, exact in Q(sqrt 3).
inline std::vector<QPoint> unit_hexagon() {
  const Rational h(1, 2);
  return {{q(1), q(0)},           {q3(h, 0), q3(0, h)},  {q3(-h, 0), q3(0, h)},
          {q(-1), q(0)},          {q3(-h, 0), q3(0, -h)}, {q3(h, 0), q3(0, -h)}};
}

}  // namespace dtl::testing
