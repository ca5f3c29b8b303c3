#include "dtl/lattice.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>
#include <tuple>

#include "dtl/error.hpp"
#include "dtl/geometry.hpp"
#include "dtl/shape_set.hpp"

namespace dtl {

bool GramForm::positive_definite() const { return sgn(a) > 0 && sgn(4 * a * c - b * b) > 0; }

std::int64_t GramForm::denominator_lcm() const {
  mpz_class l = 1;
  for (const Rational* r : {&a, &b, &c}) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r->get_den().get_mpz_t());
  if (!l.fits_slong_p()) throw Error("Gram form denominators too large");
  return l.get_si();
}

std::string GramForm::str() const {
  return format_rational(a) + ";" + format_rational(b) + ";" + format_rational(c);
}

LatticeKind LatticeKind::general(GramForm g) {
  if (!g.positive_definite()) throw Error("Gram form (" + g.str() + ") is not positive definite");
  return LatticeKind(Tag::general, std::move(g));
}

std::string LatticeKind::name() const {
  switch (tag_) {
    case Tag::square:
      return "square";
    case Tag::triangular:
      return "triangular";
    case Tag::general:
      return "general(" + gram_.str() + ")";
  }
  return "?";
}

double ShapeCensus::ratio() const {
  const double n4 = std::pow(static_cast<double>(n), 4);
  return n4 > 0 ? static_cast<double>(distinct) / n4 : 0.0;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void require_side(int n) {
  if (n < 2) throw Error("lattice side length must be at least 2, got " + std::to_string(n));
}

// Enough shards that one shard's set stays around 2^25 insertions, and at least one per worker.
unsigned shard_count(double pairs, unsigned workers) {
  unsigned s = 1;
  while (s < workers) s <<= 1;
  while (pairs / s > double(1 << 25) && s < 1024) s <<= 1;
  return s;
}

// `gen(sink)` calls sink(s1, s2, s3) once per triangle, unsorted.
template <class Gen>
ShardedResult run_census(const Gen& gen, std::int64_t max_side, double pairs, unsigned workers,
                         bool collect) {
  const unsigned shards = collect ? 1 : shard_count(pairs, workers);
  auto with = [&]<class Traits>(Traits) {
    return sharded_distinct<Traits>(
        [&](auto&& emit) {
          gen([&](std::int64_t a, std::int64_t b, std::int64_t c) { emit(Traits::make(a, b, c)); });
        },
        shards, workers, collect);
  };
  if (max_side <= PackedKey::kMax) return with(PackedKey{});
  return with(WideKey{});
}

struct Anchored {
  std::int64_t u, v, q;
  bool canonical;  // in the chosen half of its orbit under the region's reflection
};

// Triangles {O, A, B} with A, B distinct non-origin points of `pts`; q is the scaled form.
//
// Each region is symmetric under a reflection that fixes the origin and preserves q. A pair
// with q(A) > q(B) is emitted only when A is canonical, which still hits every orbit; pairs
// with q(A) = q(B) are all emitted. `pts` must be sorted by q.
template <class Form, class Sink>
void emit_anchored(const std::vector<Anchored>& pts, const Form& form, bool include_degenerate, Sink& sink) {
  const std::size_t m = pts.size();
  std::size_t tie_begin = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& a = pts[i];
    if (pts[tie_begin].q != a.q) tie_begin = i;
    const std::size_t lower = a.canonical ? tie_begin : 0;
    for (std::size_t j = 0; j < lower; ++j) {
      const auto& b = pts[j];
      if (!include_degenerate && a.u * b.v == a.v * b.u) continue;
      sink(a.q, b.q, form(a.u - b.u, a.v - b.v));
    }
    for (std::size_t j = i + 1; j < m && pts[j].q == a.q; ++j) {
      const auto& b = pts[j];
      if (!include_degenerate && a.u * b.v == a.v * b.u) continue;
      sink(a.q, b.q, form(a.u - b.u, a.v - b.v));
    }
  }
}

void sort_by_norm(std::vector<Anchored>& pts) {
  std::sort(pts.begin(), pts.end(), [](const Anchored& x, const Anchored& y) {
    return std::tie(x.q, x.u, x.v) < std::tie(y.q, y.u, y.v);
  });
}

ShapeCensus make_census(LatticeKind kind, int n, bool incl, unsigned workers, const ShardedResult& r,
                        Clock::time_point t0) {
  ShapeCensus c;
  c.kind = std::move(kind);
  c.n = n;
  c.include_degenerate = incl;
  c.distinct = r.distinct;
  c.workers = workers;
  c.elapsed_ms = ms_since(t0);
  return c;
}

ShardedResult grid_impl(int n, bool incl, unsigned workers, bool collect) {
  require_side(n);
  auto form = [](std::int64_t du, std::int64_t dv) { return du * du + dv * dv; };
  std::vector<Anchored> pts;
  for (std::int64_t u = 0; u < n; ++u) {
    for (std::int64_t v = 0; v < n; ++v) {
      // Transpose (u, v) -> (v, u) maps the quadrant to itself.
      if (u != 0 || v != 0) pts.push_back({u, v, form(u, v), u >= v});
    }
  }
  sort_by_norm(pts);
  auto gen = [&](auto&& sink) { emit_anchored(pts, form, incl, sink); };
  const double m = static_cast<double>(pts.size());
  return run_census(gen, 2 * std::int64_t(n - 1) * (n - 1), m * (m - 1) / 4, workers, collect);
}

ShardedResult tri_impl(int n, bool incl, unsigned workers, bool collect) {
  require_side(n);
  auto form = [](std::int64_t du, std::int64_t dv) { return du * du + du * dv + dv * dv; };
  // 60-degree corner: u, v >= 0. 120-degree corner, turned by 180 degrees: u <= 0 <= v.
  std::vector<Anchored> sixty, one_twenty;
  for (std::int64_t u = 0; u < n; ++u) {
    for (std::int64_t v = 0; v < n; ++v) {
      if (u == 0 && v == 0) continue;
      // Reflections: (u, v) -> (v, u) on the first region, (u, v) -> (-v, -u) on the second.
      sixty.push_back({u, v, form(u, v), u >= v});
      one_twenty.push_back({-u, v, form(-u, v), v >= u});
    }
  }
  sort_by_norm(sixty);
  sort_by_norm(one_twenty);
  auto gen = [&](auto&& sink) {
    emit_anchored(sixty, form, incl, sink);
    emit_anchored(one_twenty, form, incl, sink);
  };
  const double m = static_cast<double>(sixty.size());
  return run_census(gen, 3 * std::int64_t(n - 1) * (n - 1), m * (m - 1) / 2, workers, collect);
}

struct IntGram {
  std::int64_t a, b, c;
  std::int64_t operator()(std::int64_t du, std::int64_t dv) const { return a * du * du + b * du * dv + c * dv * dv; }
};

IntGram scaled_gram(const GramForm& g) {
  const mpz_class l = g.denominator_lcm();
  auto part = [&](const Rational& r) {
    const mpz_class v = r.get_num() * (l / r.get_den());
    if (!v.fits_slong_p()) throw Error("Gram form coefficients too large");
    return v.get_si();
  };
  return {part(g.a), part(g.b), part(g.c)};
}

ShardedResult general_impl(const GramForm& gram, int n, bool incl, unsigned workers, bool collect) {
  if (!gram.positive_definite()) throw Error("Gram form (" + gram.str() + ") is not positive definite");
  require_side(n);
  const IntGram form = scaled_gram(gram);
  const double bound = (std::abs(double(form.a)) + std::abs(double(form.b)) + std::abs(double(form.c))) *
                       double(n - 1) * double(n - 1);
  if (bound > double(std::numeric_limits<std::int64_t>::max() / 4)) {
    throw Error("scaled squared distances overflow 64-bit keys");
  }
  std::vector<Anchored> deltas;
  for (std::int64_t u = -(n - 1); u <= n - 1; ++u) {
    for (std::int64_t v = -(n - 1); v <= n - 1; ++v) {
      if (u != 0 || v != 0) deltas.push_back({u, v, form(u, v), true});
    }
  }
  const std::int64_t span = n - 1;
  auto fits = [span](std::int64_t x, std::int64_t y) {
    return std::max({std::int64_t{0}, x, y}) - std::min({std::int64_t{0}, x, y}) <= span;
  };
  auto gen = [&](auto&& sink) {
    const std::size_t m = deltas.size();
    for (std::size_t i = 0; i < m; ++i) {
      const auto& a = deltas[i];
      for (std::size_t j = i + 1; j < m; ++j) {
        const auto& b = deltas[j];
        if (!fits(a.u, b.u) || !fits(a.v, b.v)) continue;
        if (!incl && a.u * b.v == a.v * b.u) continue;
        sink(a.q, b.q, form(a.u - b.u, a.v - b.v));
      }
    }
  };
  const double m = static_cast<double>(deltas.size());
  return run_census(gen, static_cast<std::int64_t>(bound), m * (m - 1) / 2, workers, collect);
}

ShardedResult census_impl(const LatticeKind& kind, int n, bool incl, unsigned workers, bool collect) {
  switch (kind.tag()) {
    case LatticeKind::Tag::square:
      return grid_impl(n, incl, workers, collect);
    case LatticeKind::Tag::triangular:
      return tri_impl(n, incl, workers, collect);
    case LatticeKind::Tag::general:
      return general_impl(kind.gram(), n, incl, workers, collect);
  }
  throw Error("unknown lattice kind");
}

}  // namespace

ShapeCensus grid_census(int n, bool include_degenerate, unsigned workers) {
  return census(LatticeKind::square(), n, include_degenerate, workers);
}

ShapeCensus tri_lattice_census(int n, bool include_degenerate, unsigned workers) {
  return census(LatticeKind::triangular(), n, include_degenerate, workers);
}

ShapeCensus general_lattice_census(const GramForm& gram, int n, bool include_degenerate, unsigned workers) {
  const auto t0 = Clock::now();
  const auto r = general_impl(gram, n, include_degenerate, workers, false);
  return make_census(LatticeKind::general(gram), n, include_degenerate, workers, r, t0);
}

ShapeCensus census(const LatticeKind& kind, int n, bool include_degenerate, unsigned workers) {
  workers = std::max(1u, workers);
  const auto t0 = Clock::now();
  const auto r = census_impl(kind, n, include_degenerate, workers, false);
  return make_census(kind, n, include_degenerate, workers, r, t0);
}

std::vector<IntShape> census_shapes(const LatticeKind& kind, int n, bool include_degenerate) {
  return census_impl(kind, n, include_degenerate, 1, true).shapes;
}

std::vector<IntShape> all_triples_shapes(int n, const LatticeKind& kind, bool include_degenerate, int oracle_limit) {
  require_side(n);
  if (n > oracle_limit) {
    throw Error("all-triples census refused: n=" + std::to_string(n) + " exceeds oracle limit " +
                std::to_string(oracle_limit) + " (set DTL_ORACLE_LIMIT to raise it)");
  }
  std::vector<IntShape> out;
  auto to_int = [](const TriangleShape& s) {
    return IntShape{s.s1().to_int64(), s.s2().to_int64(), s.s3().to_int64()};
  };
  if (kind.tag() != LatticeKind::Tag::general) {
    // Exact planar embedding, so this path shares nothing with the Gram-form arithmetic.
    std::vector<QPoint> pts;
    for (long u = 0; u < n; ++u) {
      for (long v = 0; v < n; ++v) {
        if (kind.tag() == LatticeKind::Tag::square) {
          pts.emplace_back(QScalar(u), QScalar(v));
        } else {
          pts.emplace_back(QScalar(Rational(2 * u + v, 2)), QScalar(Rational(0), Rational(v, 2), 3));
        }
      }
    }
    for (const auto& s : distinct_triangle_count(pts, include_degenerate).shapes) out.push_back(to_int(s));
    return out;
  }

  const GramForm& g = kind.gram();
  const Rational scale(g.denominator_lcm());
  auto q = [&](long du, long dv) {
    const Rational v = scale * (g.a * du * du + g.b * du * dv + g.c * dv * dv);
    if (v.get_den() != 1 || !v.get_num().fits_slong_p()) throw InvariantViolation("scaled Gram value not integral");
    return std::int64_t{v.get_num().get_si()};
  };
  std::vector<std::pair<long, long>> pts;
  for (long u = 0; u < n; ++u) {
    for (long v = 0; v < n; ++v) pts.emplace_back(u, v);
  }
  std::set<IntShape> shapes;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        const auto [ui, vi] = pts[i];
        const auto [uj, vj] = pts[j];
        const auto [uk, vk] = pts[k];
        if (!include_degenerate && (uj - ui) * (vk - vi) == (vj - vi) * (uk - ui)) continue;
        IntShape s{q(ui - uj, vi - vj), q(uj - uk, vj - vk), q(ui - uk, vi - vk)};
        std::sort(s.begin(), s.end());
        shapes.insert(s);
      }
    }
  }
  out.assign(shapes.begin(), shapes.end());
  return out;
}

ShapeCensus all_triples_census(int n, const LatticeKind& kind, bool include_degenerate, int oracle_limit) {
  const auto t0 = Clock::now();
  ShardedResult r;
  r.distinct = all_triples_shapes(n, kind, include_degenerate, oracle_limit).size();
  return make_census(kind, n, include_degenerate, 1, r, t0);
}

std::string to_string(BoundingBoxClass c) {
  return c == BoundingBoxClass::two_on_box ? "two-vertices-on-box" : "three-vertices-on-box";
}

BoundingBoxClass bounding_box_class(const LatticePoint& a, const LatticePoint& b) {
  const LatticePoint o{};
  if (a == o || b == o || a == b) throw Error("bounding box class needs origin, a, b pairwise distinct");
  const std::int64_t lo_u = std::min({o.u, a.u, b.u}), hi_u = std::max({o.u, a.u, b.u});
  const std::int64_t lo_v = std::min({o.v, a.v, b.v}), hi_v = std::max({o.v, a.v, b.v});
  int on_box = 0;
  for (const auto& p : {o, a, b}) {
    on_box += (p.u == lo_u || p.u == hi_u || p.v == lo_v || p.v == hi_v) ? 1 : 0;
  }
  if (on_box < 2) throw InvariantViolation("triangle with fewer than two vertices on its bounding box");
  return on_box == 3 ? BoundingBoxClass::three_on_box : BoundingBoxClass::two_on_box;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string census_csv_header() { return "kind,n,include_degenerate,distinct,ratio,elapsed_ms,workers"; }

std::string census_csv_row(const ShapeCensus& c) {
  return c.kind.name() + "," + std::to_string(c.n) + "," + (c.include_degenerate ? "true" : "false") + "," +
         std::to_string(c.distinct) + "," + format_double(c.ratio()) + "," + format_double(c.elapsed_ms) + "," +
         std::to_string(c.workers);
}

std::vector<ShapeCensus> census_series(const LatticeKind& kind, std::span<const int> n_values,
                                       bool include_degenerate, unsigned workers, std::ostream& out) {
  if (n_values.empty()) throw Error("census series needs at least one n");
  for (std::size_t i = 1; i < n_values.size(); ++i) {
    if (n_values[i] <= n_values[i - 1]) throw Error("census series n values must be strictly ascending");
  }
  std::vector<ShapeCensus> rows;
  out << census_csv_header() << '\n';
  for (int n : n_values) {
    rows.push_back(census(kind, n, include_degenerate, workers));
    out << census_csv_row(rows.back()) << '\n' << std::flush;
    if (!out) throw Error("failed writing census series output");
  }
  return rows;
}

RatioFit ratio_fit(std::span<const SeriesPoint> rows) {
  if (rows.size() < 3) throw Error("ratio fit needs at least 3 rows");
  long double scale = 0;
  for (const auto& r : rows) scale = std::max<long double>(scale, std::abs(r.n));
  if (scale == 0) throw Error("ratio fit: singular system");
  // Columns scaled to O(1) before forming the normal equations.
  long double s11 = 0, s12 = 0, s22 = 0, t1 = 0, t2 = 0;
  for (const auto& r : rows) {
    const long double x = r.n / scale;
    const long double x3 = x * x * x, x4 = x3 * x;
    s11 += x4 * x4;
    s12 += x4 * x3;
    s22 += x3 * x3;
    t1 += x4 * r.value;
    t2 += x3 * r.value;
  }
  const long double det = s11 * s22 - s12 * s12;
  if (std::abs(det) <= 1e-12L * s11 * s22) throw Error("ratio fit: singular system (need at least two distinct n)");
  const long double c = (t1 * s22 - t2 * s12) / det;
  const long double d = (s11 * t2 - s12 * t1) / det;
  RatioFit fit;
  fit.c = static_cast<double>(c / (scale * scale * scale * scale));
  fit.d = static_cast<double>(d / (scale * scale * scale));
  long double ss = 0;
  for (const auto& r : rows) {
    const long double n = r.n;
    const long double e = r.value - (fit.c * n * n * n * n + fit.d * n * n * n);
    ss += e * e;
  }
  fit.residual = static_cast<double>(std::sqrt(ss));
  return fit;
}

RatioFit ratio_fit(std::span<const ShapeCensus> rows) {
  std::vector<SeriesPoint> pts;
  for (const auto& r : rows) pts.push_back({double(r.n), double(r.distinct)});
  return ratio_fit(pts);
}

}  // namespace dtl
