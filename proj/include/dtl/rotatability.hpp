#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dtl/lattice.hpp"

namespace dtl {

// Primitive Pythagorean triple p^2 + q^2 = r^2, gcd(p, q) = 1. (p, q, r) and (q, p, r) are
// different values. Encodes the rotation angle with cos = q/r and sin = p/r.
struct PythTriple {
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::int64_t r = 0;

  bool valid() const;
  // The same angle plus a quarter turn has legs swapped.
  PythTriple swapped() const { return {q, p, r}; }
  std::string str() const;

  friend bool operator==(const PythTriple&, const PythTriple&) = default;
};

// All primitive triples with r <= max_r, both leg orders, ordered by (r, p).
std::vector<PythTriple> enum_primitive_triples(std::int64_t max_r);

// Smallest primitive triple with r >= min_r, smaller p first on ties.
PythTriple smallest_primitive_triple_at_least(std::int64_t min_r);

// ((a q - b p) / r, (a p + b q) / r) when both coordinates are integers.
std::optional<LatticePoint> rotate_exact(const LatticePoint& pt, const PythTriple& t);
bool is_rotatable_by(const LatticePoint& pt, const PythTriple& t);

// Rotatability by t as one congruence: a = b * c (mod r) with c = p * q^-1.
struct RotationCongruence {
  PythTriple triple;
  std::int64_t c = 0;

  static RotationCongruence of(const PythTriple& t);
  bool contains(const LatticePoint& pt) const;
};

// Ground truth: some primitive triple with r <= a^2 + b^2 rotates pt.
bool is_rotatable_point(const LatticePoint& pt);
// a^2 + b^2 has a prime factor congruent to 1 mod 4.
bool is_rotatable_point_fast(const LatticePoint& pt);
bool has_split_prime_factor(std::int64_t m);

// Points of [n] x [n] (origin included) rotatable by t.
std::int64_t count_rotatable_points(std::int64_t n, const PythTriple& t);

// Upper bound on count_rotatable_points: n when n <= r <= 2n^2, r * ceil(n/r)^2 when r < n.
// For r > 2n^2 only the origin survives, so the bound is 1.
std::int64_t rotatable_points_bound(std::int64_t n, const PythTriple& t);

// Some primitive triple with r <= min(|a|^2, |b|^2) rotates both a and b.
bool is_rotatable_triangle(const LatticePoint& a, const LatticePoint& b);

struct RotatableBreakdown {
  std::uint64_t total = 0;
  std::uint64_t three_on_box = 0;
  std::uint64_t two_on_box = 0;
};

inline constexpr int kDefaultRotatableLimit = 64;

// Rotatable triangles {O, A, B} with A, B distinct non-origin points of [n] x [n].
RotatableBreakdown count_rotatable_triangles(int n, unsigned workers = 1, int limit = kDefaultRotatableLimit);

struct ConstantSum {
  std::uint64_t triples = 0;
  double partial = 0;      // sum of 1/(2 r^2) over triples with r <= cutoff
  double tail_bound = 0;   // 2 / sqrt(cutoff - 1) >= sum_{r > cutoff} sqrt(r) / r^2
  double total_bound = 0;
};

ConstantSum constant_sum(std::int64_t cutoff = 100000);

// Triangle {O, a, b}, stored with a < b.
struct OriginTriangle {
  LatticePoint a;
  LatticePoint b;

  OriginTriangle() = default;
  OriginTriangle(LatticePoint x, LatticePoint y);
  std::string str() const;
  friend auto operator<=>(const OriginTriangle&, const OriginTriangle&) = default;
};

// Transpose and vertex-difference images forced by grid symmetry: four triangles when only
// two vertices lie on the bounding box, two when all three do. Sorted.
std::vector<OriginTriangle> minimal_congruency_set(const LatticePoint& a, const LatticePoint& b);

// Every origin triangle inside [n] x [n] congruent to {O, a, b}. Sorted.
std::vector<OriginTriangle> congruency_class_at_origin(const LatticePoint& a, const LatticePoint& b, int n);

struct MinimalityReport {
  int n = 0;
  std::uint64_t checked = 0;
  std::uint64_t axis_parallel_skipped = 0;  // scalene, non-right, proper, but with an axis-parallel side
  std::vector<OriginTriangle> violations;
};

inline constexpr int kDefaultMinimalityLimit = 12;

// Non-rotatable scalene non-right proper triangles without axis-parallel sides must have
// exactly their minimal congruency set as congruency class.
MinimalityReport verify_minimality(int n, int limit = kDefaultMinimalityLimit);

struct BoundCase {
  PythTriple triple;
  int n = 0;
  std::int64_t count = 0;
  std::int64_t bound = 0;
};

struct BoundReport {
  std::uint64_t cases = 0;
  std::vector<BoundCase> violations;
  std::vector<BoundCase> rows;  // every case, when requested
};

BoundReport rotation_bound_check(std::int64_t max_r, int max_n, bool keep_rows = false);

struct SpotCheckReport {
  int m = 0;
  std::int64_t n = 0;
  PythTriple triple;
  std::int64_t count = 0;
  double bound = 0;  // n / m
  bool pass = false;
};

// Hypotheses m > 4, n >= m^5, r >= 2 m^4 n are checked; throws naming the first one unmet.
SpotCheckReport large_hypotenuse_spot_check(int m, std::int64_t n, const PythTriple& t);

}  // namespace dtl
