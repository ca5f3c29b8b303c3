#include "dtl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "dtl/error.hpp"

namespace dtl {

QPoint::QPoint(QScalar px, QScalar py) : x(std::move(px)), y(std::move(py)) {
  common_field(x, y);
}

std::string QPoint::str() const { return "(" + x.str() + ", " + y.str() + ")"; }

QPoint operator+(const QPoint& a, const QPoint& b) { return {a.x + b.x, a.y + b.y}; }
QPoint operator-(const QPoint& a, const QPoint& b) { return {a.x - b.x, a.y - b.y}; }
QPoint operator*(const QScalar& s, const QPoint& p) { return {s * p.x, s * p.y}; }
QScalar dot(const QPoint& a, const QPoint& b) { return a.x * b.x + a.y * b.y; }
QScalar cross(const QPoint& a, const QPoint& b) { return a.x * b.y - a.y * b.x; }

QScalar sq_dist(const QPoint& p, const QPoint& q) {
  const QPoint d = p - q;
  return dot(d, d);
}

TriangleShape TriangleShape::from_sides(QScalar a, QScalar b, QScalar c) {
  TriangleShape s;
  s.sides_ = {std::move(a), std::move(b), std::move(c)};
  std::sort(s.sides_.begin(), s.sides_.end());
  if (s.sides_[0].sign() <= 0) throw Error("triangle sides must be strictly positive");
  if (heron16(s.sides_[0], s.sides_[1], s.sides_[2]).sign() < 0) {
    throw Error("side lengths " + s.str() + " violate the triangle inequality");
  }
  return s;
}

std::string TriangleShape::str() const {
  return "(" + sides_[0].str() + ", " + sides_[1].str() + ", " + sides_[2].str() + ")";
}

TriangleShape shape_of(const QPoint& a, const QPoint& b, const QPoint& c) {
  if (a == b || b == c || a == c) throw Error("triangle vertices must be distinct");
  return TriangleShape::from_sides(sq_dist(a, b), sq_dist(b, c), sq_dist(a, c));
}

bool is_degenerate(const TriangleShape& s) { return heron16(s.s1(), s.s2(), s.s3()).is_zero(); }

ShapeClass classify(const TriangleShape& s) { return classify_sides(s.s1(), s.s2(), s.s3()); }

std::string ShapeClass::str() const {
  std::string out = isosceles ? "isosceles" : "scalene";
  out += right ? ", right" : ", non-right";
  out += degenerate ? ", degenerate" : ", proper";
  return out;
}

namespace {

QPoint reflect_across_line(const QPoint& a, const QPoint& b, const QPoint& c) {
  const QPoint u = b - a;
  const QPoint w = c - a;
  const QScalar t = dot(w, u) / dot(u, u);
  return a + (QScalar(2) * t) * u - w;
}

QPoint reflect_through_midpoint(const QPoint& a, const QPoint& b, const QPoint& c) {
  return a + b - c;
}

QPoint reflect_across_bisector(const QPoint& a, const QPoint& b, const QPoint& c) {
  const QPoint u = b - a;
  const QPoint mid = QScalar(Rational(1, 2)) * (a + b);
  const QScalar t = dot(c - mid, u) / dot(u, u);
  return c - (QScalar(2) * t) * u;
}

}  // namespace

std::vector<QPoint> congruent_apex_positions(const QPoint& a, const QPoint& b, const QPoint& c) {
  if (a == b) throw Error("apex reflection needs a != b");
  if (c == a || c == b) throw Error("apex must differ from both base vertices");
  std::vector<QPoint> out;
  for (QPoint d : {reflect_across_line(a, b, c), reflect_through_midpoint(a, b, c),
                   reflect_across_bisector(a, b, c)}) {
    if (d == c || std::find(out.begin(), out.end(), d) != out.end()) continue;
    out.push_back(std::move(d));
  }
  return out;
}

std::string CongruenceRelation::str() const {
  std::string out;
  const auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ",";
    out += name;
  };
  add(axis_reflection, "axis-reflection");
  add(midpoint_reflection, "midpoint-reflection");
  add(bisector_reflection, "perpendicular-bisector-reflection");
  return "{" + out + "}";
}

CongruenceRelation classify_congruence(const QPoint& a, const QPoint& b, const QPoint& c,
                                       const QPoint& d) {
  if (c == d) throw Error("apexes must be distinct");
  if (shape_of(a, b, c) != shape_of(a, b, d)) throw Error("triangles abc and abd are not congruent");
  CongruenceRelation rel;
  rel.axis_reflection = reflect_across_line(a, b, c) == d;
  rel.midpoint_reflection = reflect_through_midpoint(a, b, c) == d;
  rel.bisector_reflection = reflect_across_bisector(a, b, c) == d;
  if (rel.empty()) {
    throw InvariantViolation("no reflection maps " + c.str() + " to " + d.str() +
                             " although the triangles are congruent");
  }
  return rel;
}

namespace {

void check_distinct(std::span<const QPoint> points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] == points[j]) {
        throw Error("duplicate point " + points[i].str() + " at indices " + std::to_string(i) +
                    " and " + std::to_string(j));
      }
    }
  }
}

TriangleCount to_count(std::set<TriangleShape> shapes) {
  TriangleCount out;
  out.count = shapes.size();
  out.shapes.assign(std::make_move_iterator(shapes.begin()), std::make_move_iterator(shapes.end()));
  return out;
}

}  // namespace

TriangleCount distinct_triangle_count(std::span<const QPoint> points, bool include_degenerate) {
  check_distinct(points);
  const std::size_t n = points.size();
  // Squared distances once per pair; the triple loop only sorts.
  std::vector<QScalar> dist(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) dist[i * n + j] = dist[j * n + i] = sq_dist(points[i], points[j]);
  }
  std::set<TriangleShape> shapes;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        auto s = TriangleShape::from_sides(dist[i * n + j], dist[j * n + k], dist[i * n + k]);
        if (!include_degenerate && is_degenerate(s)) continue;
        shapes.insert(std::move(s));
      }
    }
  }
  return to_count(std::move(shapes));
}

QScalar diameter(std::span<const QPoint> points) {
  if (points.size() < 2) throw Error("diameter needs at least two points");
  QScalar best = sq_dist(points[0], points[1]);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) best = std::max(best, sq_dist(points[i], points[j]));
  }
  return best;
}

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<QScalar> upper)
    : n_(n), upper_(std::move(upper)) {
  if (upper_.size() != n * (n - (n > 0 ? 1 : 0)) / 2) {
    throw Error("distance matrix of size " + std::to_string(n) + " needs " +
                std::to_string(n * (n - 1) / 2) + " entries, got " + std::to_string(upper_.size()));
  }
  for (const auto& e : upper_) {
    if (e.discriminant() != 1) {
      if (d_ == 1) d_ = e.discriminant();
      if (e.discriminant() != d_) throw FieldMismatch("distance matrix mixes fields");
    }
    if (e.sign() <= 0) throw Error("distance matrix entries must be positive, got " + e.str());
  }
}

std::size_t DistanceMatrix::index(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  // Row i starts after rows 0..i-1, which hold (n-1) + ... + (n-i) entries.
  return i * n_ - i * (i + 1) / 2 + (j - i - 1);
}

const QScalar& DistanceMatrix::at(std::size_t i, std::size_t j) const {
  if (i == j || i >= n_ || j >= n_) throw Error("distance matrix index out of range");
  return upper_[index(i, j)];
}

TriangleCount distinct_triangle_count(const DistanceMatrix& m, bool include_degenerate) {
  std::set<TriangleShape> shapes;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        auto s = TriangleShape::from_sides(m.at(i, j), m.at(j, k), m.at(i, k));
        if (!include_degenerate && is_degenerate(s)) continue;
        shapes.insert(std::move(s));
      }
    }
  }
  return to_count(std::move(shapes));
}

std::vector<std::int64_t> float_distance_buckets(std::span<const FloatPoint> points, double tolerance) {
  if (!(tolerance > 0)) throw Error("tolerance must be positive");
  const std::size_t n = points.size();
  std::vector<double> dist(n * n, 0.0);
  double diam = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = points[i].x - points[j].x;
      const double dy = points[i].y - points[j].y;
      dist[i * n + j] = dist[j * n + i] = dx * dx + dy * dy;
      diam = std::max(diam, dist[i * n + j]);
    }
  }
  std::vector<std::int64_t> buckets(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (dist[i * n + j] <= tolerance * diam) {
        throw Error("points " + std::to_string(i) + " and " + std::to_string(j) +
                    " coincide within tolerance");
      }
      buckets[i * n + j] = std::llround(dist[i * n + j] / diam / tolerance);
    }
  }
  return buckets;
}

FloatTriangleCount float_distinct_triangle_count(std::span<const FloatPoint> points, double tolerance,
                                                 bool include_degenerate) {
  const std::size_t n = points.size();
  const auto buckets = n >= 2 ? float_distance_buckets(points, tolerance) : std::vector<std::int64_t>{};
  std::set<std::array<std::int64_t, 3>> keys;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        std::array<std::int64_t, 3> key{buckets[i * n + j], buckets[j * n + k], buckets[i * n + k]};
        std::sort(key.begin(), key.end());
        if (!include_degenerate) {
          const double s1 = key[0] * tolerance, s2 = key[1] * tolerance, s3 = key[2] * tolerance;
          if (std::abs(heron16(s1, s2, s3)) <= 16 * tolerance) continue;
        }
        keys.insert(key);
      }
    }
  }
  FloatTriangleCount out;
  out.count = keys.size();
  for (const auto& k : keys) out.shapes.push_back({k[0] * tolerance, k[1] * tolerance, k[2] * tolerance});
  return out;
}

}  // namespace dtl
