#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dtl/qscalar.hpp"

namespace dtl {

// Planar point with coordinates in one quadratic field.
struct QPoint {
  QScalar x;
  QScalar y;

  QPoint() = default;
  QPoint(QScalar px, QScalar py);

  std::int64_t discriminant() const { return common_field(x, y); }
  std::string str() const;

  friend bool operator==(const QPoint& a, const QPoint& b) { return a.x == b.x && a.y == b.y; }
};

QPoint operator+(const QPoint& a, const QPoint& b);
QPoint operator-(const QPoint& a, const QPoint& b);
QPoint operator*(const QScalar& s, const QPoint& p);
QScalar dot(const QPoint& a, const QPoint& b);
QScalar cross(const QPoint& a, const QPoint& b);

QScalar sq_dist(const QPoint& p, const QPoint& q);

// 2(s1 s2 + s2 s3 + s3 s1) - s1^2 - s2^2 - s3^2, i.e. 16 * area^2 from squared sides.
template <class T>
T heron16(const T& s1, const T& s2, const T& s3) {
  return T(2) * (s1 * s2 + s2 * s3 + s3 * s1) - s1 * s1 - s2 * s2 - s3 * s3;
}

// Congruence-class key of a triangle: its squared side lengths, sorted ascending.
class TriangleShape {
 public:
  // Sorts the sides; throws if any side is non-positive or the triple is not realizable.
  static TriangleShape from_sides(QScalar a, QScalar b, QScalar c);

  const QScalar& s1() const { return sides_[0]; }
  const QScalar& s2() const { return sides_[1]; }
  const QScalar& s3() const { return sides_[2]; }
  const std::array<QScalar, 3>& sides() const { return sides_; }
  std::string str() const;

  friend auto operator<=>(const TriangleShape& a, const TriangleShape& b) {
    return a.sides_ <=> b.sides_;
  }
  friend bool operator==(const TriangleShape& a, const TriangleShape& b) = default;

 private:
  std::array<QScalar, 3> sides_;
};

TriangleShape shape_of(const QPoint& a, const QPoint& b, const QPoint& c);
bool is_degenerate(const TriangleShape& s);

struct ShapeClass {
  bool isosceles = false;
  bool right = false;
  bool degenerate = false;

  bool scalene() const { return !isosceles; }
  std::string str() const;
};

ShapeClass classify(const TriangleShape& s);

// Integer-sided variant used by lattice code.
template <class T>
ShapeClass classify_sides(const T& s1, const T& s2, const T& s3) {
  ShapeClass c;
  c.isosceles = s1 == s2 || s2 == s3;
  c.right = s1 + s2 == s3;
  c.degenerate = heron16(s1, s2, s3) == T(0);
  return c;
}

// The reflections of c that keep the shape of triangle abc fixed while fixing {a, b}:
// across line ab, through the midpoint of ab, and across the perpendicular bisector.
// Results equal to c are dropped, duplicates removed, in that order.
std::vector<QPoint> congruent_apex_positions(const QPoint& a, const QPoint& b, const QPoint& c);

struct CongruenceRelation {
  bool axis_reflection = false;
  bool midpoint_reflection = false;
  bool bisector_reflection = false;

  bool empty() const { return !axis_reflection && !midpoint_reflection && !bisector_reflection; }
  std::string str() const;
  friend bool operator==(const CongruenceRelation&, const CongruenceRelation&) = default;
};

// Which of the three reflections carry c to d, for {abc} congruent to {abd}.
CongruenceRelation classify_congruence(const QPoint& a, const QPoint& b, const QPoint& c,
                                       const QPoint& d);

struct TriangleCount {
  std::size_t count = 0;
  std::vector<TriangleShape> shapes;  // ascending
};

TriangleCount distinct_triangle_count(std::span<const QPoint> points, bool include_degenerate = true);
QScalar diameter(std::span<const QPoint> points);

// Pairwise squared distances for point sets that are given only by their metric,
// e.g. regular polygons whose coordinates leave every quadratic field.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  // `upper` holds the n(n-1)/2 entries above the diagonal, row-major.
  DistanceMatrix(std::size_t n, std::vector<QScalar> upper);

  std::size_t size() const { return n_; }
  std::int64_t discriminant() const { return d_; }
  const QScalar& at(std::size_t i, std::size_t j) const;
  const std::vector<QScalar>& upper() const { return upper_; }

 private:
  std::size_t index(std::size_t i, std::size_t j) const;

  std::size_t n_ = 0;
  std::int64_t d_ = 1;
  std::vector<QScalar> upper_;
};

TriangleCount distinct_triangle_count(const DistanceMatrix& m, bool include_degenerate = true);

// Tolerance-based path for configurations outside a single quadratic field.
struct FloatPoint {
  double x = 0;
  double y = 0;
};

inline constexpr double kDefaultTolerance = 1e-9;

struct FloatTriangleCount {
  std::size_t count = 0;
  std::vector<std::array<double, 3>> shapes;  // bucket representatives, diameter normalized to 1
};

// Squared distances are divided by the squared diameter and snapped to a grid of width
// `tolerance`. Two true values closer than `tolerance` may be merged, and a value sitting
// on a bucket boundary may be split.
FloatTriangleCount float_distinct_triangle_count(std::span<const FloatPoint> points,
                                                 double tolerance = kDefaultTolerance,
                                                 bool include_degenerate = true);

// Integer bucket of each pairwise squared distance after diameter normalization.
std::vector<std::int64_t> float_distance_buckets(std::span<const FloatPoint> points,
                                                 double tolerance);

}  // namespace dtl
