#include "dtl/rotatability.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <thread>

#include "dtl/error.hpp"
#include "dtl/geometry.hpp"

namespace dtl {

bool PythTriple::valid() const {
  return p > 0 && q > 0 && r > 0 && p * p + q * q == r * r && std::gcd(p, q) == 1;
}

std::string PythTriple::str() const {
  return "(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + ")";
}

std::vector<PythTriple> enum_primitive_triples(std::int64_t max_r) {
  if (max_r < 5) throw Error("enum_primitive_triples needs max_r >= 5, got " + std::to_string(max_r));
  std::vector<PythTriple> out;
  // (m^2 - k^2, 2mk, m^2 + k^2) for coprime m > k >= 1 of opposite parity.
  for (std::int64_t m = 2; m * m + 1 <= max_r; ++m) {
    for (std::int64_t k = (m % 2 == 0) ? 1 : 2; k < m && m * m + k * k <= max_r; k += 2) {
      if (std::gcd(m, k) != 1) continue;
      const std::int64_t a = m * m - k * k, b = 2 * m * k, r = m * m + k * k;
      out.push_back({a, b, r});
      out.push_back({b, a, r});
    }
  }
  std::sort(out.begin(), out.end(), [](const PythTriple& x, const PythTriple& y) {
    return x.r != y.r ? x.r < y.r : x.p < y.p;
  });
  return out;
}

PythTriple smallest_primitive_triple_at_least(std::int64_t min_r) {
  PythTriple best{0, 0, 0};
  auto better = [&](const PythTriple& t) {
    return best.r == 0 || t.r < best.r || (t.r == best.r && t.p < best.p);
  };
  // Every hypotenuse m^2 + k^2 >= min_r; for each m the smallest admissible k is enough.
  for (std::int64_t m = 2; (m - 1) * (m - 1) < std::max<std::int64_t>(min_r, 5) * 2; ++m) {
    if (best.r != 0 && m * m + 1 > best.r) break;
    for (std::int64_t k = (m % 2 == 0) ? 1 : 2; k < m; k += 2) {
      const std::int64_t r = m * m + k * k;
      if (r < min_r || std::gcd(m, k) != 1) continue;
      const std::int64_t a = m * m - k * k, b = 2 * m * k;
      for (const PythTriple& t : {PythTriple{a, b, r}, PythTriple{b, a, r}}) {
        if (better(t)) best = t;
      }
      break;
    }
  }
  if (best.r == 0) throw InvariantViolation("no primitive triple found above " + std::to_string(min_r));
  return best;
}

std::optional<LatticePoint> rotate_exact(const LatticePoint& pt, const PythTriple& t) {
  const std::int64_t x = pt.u * t.q - pt.v * t.p;
  const std::int64_t y = pt.u * t.p + pt.v * t.q;
  if (x % t.r != 0 || y % t.r != 0) return std::nullopt;
  return LatticePoint{x / t.r, y / t.r};
}

bool is_rotatable_by(const LatticePoint& pt, const PythTriple& t) { return rotate_exact(pt, t).has_value(); }

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, a1 = mod(a, m);
  while (a1 != 0) {
    const std::int64_t q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw Error(std::to_string(a) + " has no inverse modulo " + std::to_string(m));
  return mod(x, m);
}

void require_non_origin(const LatticePoint& pt) {
  if (pt.u == 0 && pt.v == 0) throw Error("the origin is fixed by every rotation; rotatability is vacuous");
}

}  // namespace

RotationCongruence RotationCongruence::of(const PythTriple& t) {
  // a q = b p (mod r)  <=>  a = b p q^-1 (mod r)
  return {t, static_cast<std::int64_t>((__int128)t.p * mod_inverse(t.q, t.r) % t.r)};
}

bool RotationCongruence::contains(const LatticePoint& pt) const {
  return mod(pt.u, triple.r) == static_cast<std::int64_t>((__int128)mod(pt.v, triple.r) * c % triple.r);
}

bool has_split_prime_factor(std::int64_t m) {
  if (m < 1) return false;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    if (p % 4 == 1) return true;
    while (m % p == 0) m /= p;
  }
  return m > 1 && m % 4 == 1;
}

bool is_rotatable_point(const LatticePoint& pt) {
  require_non_origin(pt);
  const std::int64_t norm = pt.norm();
  if (norm < 5) return false;
  for (const auto& t : enum_primitive_triples(norm)) {
    if (is_rotatable_by(pt, t)) return true;
  }
  return false;
}

bool is_rotatable_point_fast(const LatticePoint& pt) {
  require_non_origin(pt);
  return has_split_prime_factor(pt.norm());
}

std::int64_t count_rotatable_points(std::int64_t n, const PythTriple& t) {
  if (n < 1) throw Error("grid side must be at least 1");
  std::int64_t count = 0;
  for (std::int64_t a = 0; a < n; ++a) {
    for (std::int64_t b = 0; b < n; ++b) count += is_rotatable_by({a, b}, t) ? 1 : 0;
  }
  return count;
}

std::int64_t rotatable_points_bound(std::int64_t n, const PythTriple& t) {
  if (t.r > 2 * n * n) return 1;
  if (t.r >= n) return n;
  const std::int64_t blocks = (n + t.r - 1) / t.r;
  return t.r * blocks * blocks;
}

bool is_rotatable_triangle(const LatticePoint& a, const LatticePoint& b) {
  require_non_origin(a);
  require_non_origin(b);
  if (a == b) throw Error("triangle vertices must be distinct");
  const std::int64_t limit = std::min(a.norm(), b.norm());
  if (limit < 5) return false;
  for (const auto& t : enum_primitive_triples(limit)) {
    if (is_rotatable_by(a, t) && is_rotatable_by(b, t)) return true;
  }
  return false;
}

RotatableBreakdown count_rotatable_triangles(int n, unsigned workers, int limit) {
  if (n < 2) throw Error("grid side must be at least 2");
  if (n > limit) {
    throw Error("rotatable triangle count refused: n=" + std::to_string(n) + " exceeds limit " +
                std::to_string(limit));
  }
  const std::int64_t side = n;
  const std::size_t cells = static_cast<std::size_t>(side * side);
  const std::int64_t max_norm = 2 * (side - 1) * (side - 1);
  const auto triples = max_norm >= 5 ? enum_primitive_triples(max_norm) : std::vector<PythTriple>{};

  // Pair (i, j), i < j, of cell indices u * n + v marks one rotatable triangle.
  workers = std::max(1u, workers);
  std::vector<std::vector<bool>> marks(workers, std::vector<bool>(cells * cells, false));
  auto run = [&](unsigned w) {
    std::vector<std::size_t> pts;
    for (std::size_t ti = w; ti < triples.size(); ti += workers) {
      pts.clear();
      for (std::int64_t u = 0; u < side; ++u) {
        for (std::int64_t v = 0; v < side; ++v) {
          if ((u != 0 || v != 0) && is_rotatable_by({u, v}, triples[ti])) pts.push_back(u * side + v);
        }
      }
      for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) marks[w][pts[i] * cells + pts[j]] = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& t : pool) t.join();

  RotatableBreakdown out;
  for (std::size_t i = 0; i < cells; ++i) {
    for (std::size_t j = i + 1; j < cells; ++j) {
      bool hit = false;
      for (const auto& m : marks) hit = hit || m[i * cells + j];
      if (!hit) continue;
      const LatticePoint a{std::int64_t(i) / side, std::int64_t(i) % side};
      const LatticePoint b{std::int64_t(j) / side, std::int64_t(j) % side};
      ++out.total;
      if (bounding_box_class(a, b) == BoundingBoxClass::three_on_box) {
        ++out.three_on_box;
      } else {
        ++out.two_on_box;
      }
    }
  }
  return out;
}

ConstantSum constant_sum(std::int64_t cutoff) {
  if (cutoff < 1000) throw Error("constant_sum needs cutoff >= 1000, got " + std::to_string(cutoff));
  auto triples = enum_primitive_triples(cutoff);
  // Smallest terms first; Neumaier-compensated.
  double sum = 0, comp = 0;
  for (auto it = triples.rbegin(); it != triples.rend(); ++it) {
    const double r = static_cast<double>(it->r);
    const double term = 1.0 / (2.0 * r * r);
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  ConstantSum out;
  out.triples = triples.size();
  out.partial = sum + comp;
  out.tail_bound = 2.0 / std::sqrt(static_cast<double>(cutoff - 1));
  out.total_bound = out.partial + out.tail_bound;
  return out;
}

OriginTriangle::OriginTriangle(LatticePoint x, LatticePoint y) : a(x), b(y) {
  if (b < a) std::swap(a, b);
}

std::string OriginTriangle::str() const {
  return "{O,(" + std::to_string(a.u) + "," + std::to_string(a.v) + "),(" + std::to_string(b.u) + "," +
         std::to_string(b.v) + ")}";
}

namespace {

IntShape origin_shape(const LatticePoint& a, const LatticePoint& b) {
  const LatticePoint d{a.u - b.u, a.v - b.v};
  IntShape s{a.norm(), b.norm(), d.norm()};
  std::sort(s.begin(), s.end());
  return s;
}

LatticePoint transpose(const LatticePoint& p) { return {p.v, p.u}; }

bool has_axis_parallel_side(const LatticePoint& a, const LatticePoint& b) {
  return a.u == 0 || a.v == 0 || b.u == 0 || b.v == 0 || a.u == b.u || a.v == b.v;
}

}  // namespace

std::vector<OriginTriangle> minimal_congruency_set(const LatticePoint& a, const LatticePoint& b) {
  const LatticePoint o{};
  if (a == o || b == o || a == b) throw Error("minimal congruency set: degenerate input (coincident vertices)");
  if (a.u < 0 || a.v < 0 || b.u < 0 || b.v < 0) throw Error("minimal congruency set: vertices must lie in the first quadrant");
  if (has_axis_parallel_side(a, b)) throw Error("minimal congruency set: axis-parallel side");
  const IntShape s = origin_shape(a, b);
  const ShapeClass cls = classify_sides(s[0], s[1], s[2]);
  if (cls.degenerate) throw Error("minimal congruency set: degenerate triangle");
  if (cls.isosceles) throw Error("minimal congruency set: isosceles triangle");
  if (cls.right) throw Error("minimal congruency set: right triangle");

  LatticePoint hi = a, lo = b;
  if (hi.u < lo.u) std::swap(hi, lo);
  std::vector<OriginTriangle> out{{hi, lo}, {transpose(hi), transpose(lo)}};
  if (hi.v > lo.v) {
    // lo is strictly inside the box spanned by O and hi: the half-turn about hi/2 swaps O and hi.
    const LatticePoint d{hi.u - lo.u, hi.v - lo.v};
    out.emplace_back(hi, d);
    out.emplace_back(transpose(hi), transpose(d));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<OriginTriangle> congruency_class_at_origin(const LatticePoint& a, const LatticePoint& b, int n) {
  const LatticePoint o{};
  if (a == o || b == o || a == b) throw Error("congruency class: degenerate input (coincident vertices)");
  for (const auto& p : {a, b}) {
    if (p.u < 0 || p.v < 0 || p.u >= n || p.v >= n) throw Error("congruency class: vertex outside the grid");
  }
  const IntShape key = origin_shape(a, b);
  std::vector<LatticePoint> pts;
  for (std::int64_t u = 0; u < n; ++u) {
    for (std::int64_t v = 0; v < n; ++v) {
      if (u != 0 || v != 0) pts.push_back({u, v});
    }
  }
  std::vector<OriginTriangle> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (origin_shape(pts[i], pts[j]) == key) out.emplace_back(pts[i], pts[j]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

MinimalityReport verify_minimality(int n, int limit) {
  if (n < 2) throw Error("grid side must be at least 2");
  if (n > limit) {
    throw Error("minimality check refused: n=" + std::to_string(n) + " exceeds limit " + std::to_string(limit));
  }
  std::vector<LatticePoint> pts;
  for (std::int64_t u = 0; u < n; ++u) {
    for (std::int64_t v = 0; v < n; ++v) {
      if (u != 0 || v != 0) pts.push_back({u, v});
    }
  }
  // One scan groups every origin triangle by shape; each group is a congruency class.
  std::map<IntShape, std::vector<OriginTriangle>> classes;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      classes[origin_shape(pts[i], pts[j])].emplace_back(pts[i], pts[j]);
    }
  }
  for (auto& [key, members] : classes) std::sort(members.begin(), members.end());

  MinimalityReport report;
  report.n = n;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const auto& a = pts[i];
      const auto& b = pts[j];
      const IntShape s = origin_shape(a, b);
      const ShapeClass cls = classify_sides(s[0], s[1], s[2]);
      if (cls.isosceles || cls.right || cls.degenerate) continue;
      if (has_axis_parallel_side(a, b)) {
        ++report.axis_parallel_skipped;
        continue;
      }
      if (is_rotatable_triangle(a, b)) continue;
      ++report.checked;
      if (classes.at(s) != minimal_congruency_set(a, b)) report.violations.emplace_back(a, b);
    }
  }
  return report;
}

BoundReport rotation_bound_check(std::int64_t max_r, int max_n, bool keep_rows) {
  if (max_r > 100 || max_n > 50) throw Error("rotation bound check limited to max_r <= 100 and max_n <= 50");
  if (max_n < 1) throw Error("max_n must be at least 1");
  BoundReport report;
  if (max_r < 5) return report;
  for (const auto& t : enum_primitive_triples(max_r)) {
    for (int n = 1; n <= max_n; ++n) {
      const BoundCase c{t, n, count_rotatable_points(n, t), rotatable_points_bound(n, t)};
      ++report.cases;
      if (c.count > c.bound) report.violations.push_back(c);
      if (keep_rows) report.rows.push_back(c);
    }
  }
  return report;
}

SpotCheckReport large_hypotenuse_spot_check(int m, std::int64_t n, const PythTriple& t) {
  if (m <= 4) throw Error("hypothesis unmet: m > 4 required, got m=" + std::to_string(m));
  const std::int64_t m4 = std::int64_t(m) * m * m * m;
  if (n < m4 * m) {
    throw Error("hypothesis unmet: n >= m^5 required (n=" + std::to_string(n) +
                ", m^5=" + std::to_string(m4 * m) + ")");
  }
  if (!t.valid()) throw Error("spot check: " + t.str() + " is not a primitive Pythagorean triple");
  if (t.r < 2 * m4 * n) {
    throw Error("hypothesis unmet: r >= 2 m^4 n required (r=" + std::to_string(t.r) +
                ", 2m^4n=" + std::to_string(2 * m4 * n) + ")");
  }
  SpotCheckReport out;
  out.m = m;
  out.n = n;
  out.triple = t;
  out.count = count_rotatable_points(n, t);
  out.bound = static_cast<double>(n) / m;
  out.pass = static_cast<double>(out.count) <= out.bound;
  return out;
}

}  // namespace dtl
