#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dtl/qscalar.hpp"

namespace dtl {

struct LatticePoint {
  std::int64_t u = 0;
  std::int64_t v = 0;

  std::int64_t norm() const { return u * u + v * v; }
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

// Squared length of (du, dv) is a du^2 + b du dv + c dv^2.
struct GramForm {
  Rational a{1};
  Rational b{0};
  Rational c{1};

  static GramForm square() { return {Rational(1), Rational(0), Rational(1)}; }
  static GramForm triangular() { return {Rational(1), Rational(1), Rational(1)}; }

  bool positive_definite() const;
  // Smallest positive integer L with L*a, L*b, L*c all integral.
  std::int64_t denominator_lcm() const;
  std::string str() const;

  friend bool operator==(const GramForm&, const GramForm&) = default;
};

class LatticeKind {
 public:
  enum class Tag { square, triangular, general };

  static LatticeKind square() { return LatticeKind(Tag::square, GramForm::square()); }
  static LatticeKind triangular() { return LatticeKind(Tag::triangular, GramForm::triangular()); }
  static LatticeKind general(GramForm g);

  Tag tag() const { return tag_; }
  const GramForm& gram() const { return gram_; }
  // `square`, `triangular`, or `general(a;b;c)`.
  std::string name() const;

 private:
  LatticeKind(Tag t, GramForm g) : tag_(t), gram_(std::move(g)) {}
  Tag tag_;
  GramForm gram_;
};

struct ShapeCensus {
  LatticeKind kind = LatticeKind::square();
  int n = 0;
  bool include_degenerate = true;
  std::uint64_t distinct = 0;
  double elapsed_ms = 0;
  unsigned workers = 1;

  double ratio() const;
};

// Sorted squared side lengths; general lattices are scaled by GramForm::denominator_lcm().
using IntShape = std::array<std::int64_t, 3>;

inline constexpr int kDefaultOracleLimit = 8;

// Distinct shapes over all triples of the n x n square grid, counted from triangles
// with a vertex at the origin and the other two in the first quadrant.
ShapeCensus grid_census(int n, bool include_degenerate = true, unsigned workers = 1);

// Triangular lattice {u(1,0) + v(1/2, sqrt3/2)}: triangles anchored at the 60 and 120
// degree corners of the coefficient box.
ShapeCensus tri_lattice_census(int n, bool include_degenerate = true, unsigned workers = 1);

// Any positive definite Gram form, by translation: delta pairs whose span fits the box.
ShapeCensus general_lattice_census(const GramForm& gram, int n, bool include_degenerate = true,
                                   unsigned workers = 1);

ShapeCensus census(const LatticeKind& kind, int n, bool include_degenerate = true, unsigned workers = 1);

// Shape list behind census(); only meant for small n.
std::vector<IntShape> census_shapes(const LatticeKind& kind, int n, bool include_degenerate = true);

// Brute force over all C(n^2, 3) triples. Square and triangular points are embedded
// exactly in Q and Q(sqrt 3); general forms are evaluated in rational arithmetic.
ShapeCensus all_triples_census(int n, const LatticeKind& kind, bool include_degenerate = true,
                               int oracle_limit = kDefaultOracleLimit);
std::vector<IntShape> all_triples_shapes(int n, const LatticeKind& kind, bool include_degenerate = true,
                                         int oracle_limit = kDefaultOracleLimit);

enum class BoundingBoxClass { two_on_box, three_on_box };
std::string to_string(BoundingBoxClass c);

// Number of vertices of triangle {O, a, b} on its axis-aligned bounding rectangle.
BoundingBoxClass bounding_box_class(const LatticePoint& a, const LatticePoint& b);

std::string census_csv_header();
std::string census_csv_row(const ShapeCensus& c);

// One census per n, each row streamed to `out` as CSV (header first).
std::vector<ShapeCensus> census_series(const LatticeKind& kind, std::span<const int> n_values,
                                       bool include_degenerate, unsigned workers, std::ostream& out);

struct SeriesPoint {
  double n = 0;
  double value = 0;
};

struct RatioFit {
  double c = 0;         // coefficient of n^4
  double d = 0;         // coefficient of n^3
  double residual = 0;  // Euclidean norm of the residual vector
};

// Ordinary least squares of value ~ c n^4 + d n^3.
RatioFit ratio_fit(std::span<const SeriesPoint> rows);
RatioFit ratio_fit(std::span<const ShapeCensus> rows);

// Formats with 10 significant digits.
std::string format_double(double v);

}  // namespace dtl
