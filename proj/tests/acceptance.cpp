// Acceptance criteria, one line each: `PASS <n> <name>: <details>` or `FAIL ...`.
// With arguments, runs only the listed criteria. Exit status is non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>

#include "dtl/geometry.hpp"
#include "dtl/lattice.hpp"
#include "dtl/rotatability.hpp"
#include "dtl/search.hpp"

using namespace dtl;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream details;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      details << "[failed: " << what << "] ";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

unsigned hw() { return std::max(1u, std::thread::hardware_concurrency()); }

void origin_reduction(Outcome& o) {
  const auto t0 = Clock::now();
  int cases = 0;
  for (int n = 2; n <= 6; ++n) {
    for (bool incl : {true, false}) {
      const auto fast = grid_census(n, incl, 1).distinct;
      const auto slow = all_triples_census(n, LatticeKind::square(), incl).distinct;
      o.require(fast == slow, "n=" + std::to_string(n) + (incl ? " with" : " without") + " degenerate: " +
                                  std::to_string(fast) + " vs " + std::to_string(slow));
      ++cases;
    }
  }
  const double s = seconds_since(t0);
  o.require(s < 5, "runtime under 5 s");
  o.details << cases << " cases equal to brute force, " << s << " s";
}

double band_distance(double r, double lo, double hi) { return r < lo ? lo - r : r > hi ? r - hi : 0.0; }

void grid_band(Outcome& o) {
  const auto t0 = Clock::now();
  constexpr double lo = 0.1358, hi = 0.2075;
  const auto c64 = grid_census(64, true, 8);
  const auto c128 = grid_census(128, true, 8);
  const double s = seconds_since(t0);
  o.require(c128.ratio() >= lo && c128.ratio() <= hi, "ratio(128) inside [0.1358, 0.2075]");
  o.require(band_distance(c128.ratio(), lo, hi) <= band_distance(c64.ratio(), lo, hi), "trend toward the band");
  o.require(s < 300, "runtime under 5 min");
  o.details << "distinct(64)=" << c64.distinct << " ratio " << format_double(c64.ratio()) << ", distinct(128)="
            << c128.distinct << " ratio " << format_double(c128.ratio()) << ", " << s << " s at 8 workers";
}

void triangular(Outcome& o) {
  const auto t0 = Clock::now();
  std::vector<ShapeCensus> rows;
  for (int n : {50, 75, 100, 125, 150}) rows.push_back(tri_lattice_census(n, true, hw()));
  const double s = seconds_since(t0);
  const double r100 = rows[2].ratio();
  const RatioFit fit = ratio_fit(std::span<const ShapeCensus>(rows));
  o.require(std::abs(r100 - 0.2) <= 0.02, "ratio(100) = 0.2 +- 0.02");
  o.require(std::abs(fit.c - 0.2) <= 0.02, "fit leading coefficient = 0.2 +- 0.02");
  o.require(s < 600, "runtime under 10 min");
  o.details << "ratio(100)=" << format_double(r100) << ", ratios";
  for (const auto& r : rows) o.details << " " << r.n << ":" << format_double(r.ratio());
  o.details << ", fit c=" << format_double(fit.c) << " d=" << format_double(fit.d) << ", " << s << " s";
}

void constant(Outcome& o) {
  const auto t0 = Clock::now();
  const auto c = constant_sum(100000);
  const double s = seconds_since(t0);
  o.require(std::abs(c.partial - 0.05685) <= 0.0002, "partial = 0.05685 +- 0.0002");
  o.require(c.tail_bound <= 0.0064, "tail bound <= 0.0064");
  o.require(c.total_bound < 0.0633, "total < 0.0633");
  o.require(s < 30, "runtime under 30 s");
  o.details << "partial=" << format_double(c.partial) << " tail=" << format_double(c.tail_bound)
            << " total=" << format_double(c.total_bound) << ", " << s << " s";
}

void triple_density(Outcome& o) {
  const auto t0 = Clock::now();
  const auto n = enum_primitive_triples(100000).size();
  const double s = seconds_since(t0);
  const double density = static_cast<double>(n) / 100000;
  o.require(density >= 0.315 && density <= 0.321, "density in [0.315, 0.321]");
  o.require(s < 10, "runtime under 10 s");
  o.details << n << " triples, density " << format_double(density) << ", " << s << " s";
}

void rotation_bounds(Outcome& o) {
  const auto t0 = Clock::now();
  const auto r = rotation_bound_check(50, 30);
  const auto tight = count_rotatable_points(5, {3, 4, 5});
  const double s = seconds_since(t0);
  o.require(r.violations.empty(), "zero violations");
  o.require(tight == 5 && rotatable_points_bound(5, {3, 4, 5}) == 5, "tight at n=5, (3,4,5)");
  o.require(s < 10, "runtime under 10 s");
  o.details << r.cases << " cases, " << r.violations.size() << " violations, n=5 (3,4,5) count " << tight << ", "
            << s << " s";
}

void minimality(Outcome& o) {
  const auto t0 = Clock::now();
  for (int n : {8, 10}) {
    const auto r = verify_minimality(n);
    o.require(r.violations.empty() && r.checked > 0, "n=" + std::to_string(n));
    o.details << "n=" << n << " checked " << r.checked << " violations " << r.violations.size() << "; ";
  }
  const double s = seconds_since(t0);
  o.require(s < 120, "runtime under 2 min");
  o.details << s << " s";
}

void spot_check(Outcome& o) {
  const auto t0 = Clock::now();
  const auto t = smallest_primitive_triple_at_least(3906250);
  const auto r = large_hypotenuse_spot_check(5, 3125, t);
  const double s = seconds_since(t0);
  o.require(r.count <= 625, "count <= 625");
  o.require(s < 60, "runtime under 1 min");
  o.details << "triple " << t.str() << " count " << r.count << " <= " << r.bound << ", " << s << " s";
}

void hexagon_search(Outcome& o) {
  const auto t0 = Clock::now();
  const auto g = make_ngon_ground_set(12);
  const auto r = max_subset_with_k_shapes(g, 3);
  const std::vector<std::size_t> hexagon{0, 2, 4, 6, 8, 10};
  o.require(r.max_size == 6, "max_size 6");
  o.require(std::find(r.witnesses.begin(), r.witnesses.end(), hexagon) != r.witnesses.end(), "hexagon among witnesses");
  o.require(verify_subset(g, hexagon, 3), "hexagon verifies");
  for (const auto& w : r.witnesses) o.require(verify_subset(g, w, 3), "witness verifies");
  int sevens = 0, failing = 0;
  for (std::uint32_t mask = 0; mask < (1u << 12); ++mask) {
    if (__builtin_popcount(mask) != 7) continue;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < 12; ++i)
      if (mask >> i & 1u) idx.push_back(i);
    ++sevens;
    failing += verify_subset(g, idx, 3) ? 0 : 1;
  }
  o.require(failing == sevens, "every 7-subset fails");
  const double s = seconds_since(t0);
  o.require(s < 30, "runtime under 30 s");
  o.details << "max_size " << r.max_size << ", " << r.witnesses.size() << " witnesses, " << failing << "/" << sevens
            << " seven-point subsets exceed 3 shapes, " << s << " s";
}

void small_configs(Outcome& o) {
  const auto t0 = Clock::now();
  auto p = [](long x, long y) { return QPoint(QScalar(x), QScalar(y)); };
  const std::vector<QPoint> square{p(0, 0), p(1, 0), p(0, 1), p(1, 1)};
  const Rational h(1, 2);
  auto r3 = [](const Rational& a, const Rational& b) { return QScalar(a, b, 3); };
  const std::vector<QPoint> hex{{QScalar(1), QScalar(0)}, {r3(h, 0), r3(0, h)},  {r3(-h, 0), r3(0, h)},
                                {QScalar(-1), QScalar(0)}, {r3(-h, 0), r3(0, -h)}, {r3(h, 0), r3(0, -h)}};
  const QScalar side(Rational(5, 2), Rational(-1, 2), 5), diag(Rational(5, 2), Rational(1, 2), 5);
  std::vector<QScalar> upper;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) upper.push_back(std::min(j - i, 5 - j + i) == 1 ? side : diag);
  const auto sq = distinct_triangle_count(square).count;
  const auto hx = distinct_triangle_count(hex).count;
  const auto pent = distinct_triangle_count(DistanceMatrix(5, upper)).count;
  o.require(sq == 1, "unit square 1");
  o.require(hx == 3, "hexagon 3");
  o.require(pent == 2, "pentagon 2");
  std::vector<std::int64_t> ngon;
  for (int n = 3; n <= 7; ++n) ngon.push_back(ngon_distinct_triangles(n));
  o.require(ngon == std::vector<std::int64_t>{1, 1, 2, 3, 4}, "ngon counts (1,1,2,3,4)");
  const double s = seconds_since(t0);
  o.require(s < 1, "runtime under 1 s");
  o.details << "square " << sq << ", hexagon " << hx << ", pentagon " << pent << ", ngon(3..7)";
  for (auto c : ngon) o.details << " " << c;
  o.details << ", " << s << " s";
}

void properties(Outcome& o) {
  const auto t0 = Clock::now();
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  auto next = [&](std::int64_t lo, std::int64_t hi) {
    seed ^= seed << 13;
    seed ^= seed >> 7;
    seed ^= seed << 17;
    return lo + static_cast<std::int64_t>(seed % static_cast<std::uint64_t>(hi - lo + 1));
  };

  // Permutation and isometry invariance of shape keys.
  int shape_bad = 0;
  for (int i = 0; i < 2000; ++i) {
    std::array<QPoint, 3> v;
    for (auto& pt : v) pt = {QScalar(static_cast<long>(next(-8, 8))), QScalar(static_cast<long>(next(-8, 8)))};
    if (v[0] == v[1] || v[1] == v[2] || v[0] == v[2]) continue;
    const auto ref = shape_of(v[0], v[1], v[2]);
    shape_bad += shape_of(v[2], v[0], v[1]) == ref && shape_of(v[1], v[0], v[2]) == ref ? 0 : 1;
    for (int k = 0; k < 8; ++k) {
      auto iso = [k](const QPoint& pt) {
        QScalar x = pt.x, y = pt.y;
        if (k & 4) std::swap(x, y);
        return QPoint(k & 1 ? -x : x, k & 2 ? -y : y);
      };
      shape_bad += shape_of(iso(v[0]), iso(v[1]), iso(v[2])) == ref ? 0 : 1;
    }
  }
  o.require(shape_bad == 0, "shape invariance");

  // Integrality equivalence for r <= 50 and congruence agreement for r <= 30.
  int integral_bad = 0, congruence_bad = 0;
  for (const auto& t : enum_primitive_triples(50)) {
    const auto cong = RotationCongruence::of(t);
    for (std::int64_t a = 0; a < t.r; ++a)
      for (std::int64_t b = 0; b < t.r; ++b) {
        const bool x = (a * t.q - b * t.p) % t.r == 0, y = (a * t.p + b * t.q) % t.r == 0;
        integral_bad += x == y ? 0 : 1;
        if (t.r <= 30) congruence_bad += cong.contains({a, b}) == x ? 0 : 1;
      }
  }
  o.require(integral_bad == 0, "integrality equivalence");
  o.require(congruence_bad == 0, "congruence agreement");

  int split_bad = 0;
  for (std::int64_t a = 0; a < 40; ++a)
    for (std::int64_t b = 0; b < 40; ++b)
      if (a != 0 || b != 0) split_bad += is_rotatable_point({a, b}) == is_rotatable_point_fast({a, b}) ? 0 : 1;
  o.require(split_bad == 0, "split-prime agreement on [40]^2");

  bool deterministic = true;
  for (const auto& kind : {LatticeKind::square(), LatticeKind::triangular()}) {
    const auto ref = census(kind, 40, true, 1).distinct;
    for (unsigned w : {2u, 8u}) deterministic = deterministic && census(kind, 40, true, w).distinct == ref;
  }
  o.require(deterministic, "census determinism across workers {1,2,8}");

  // Search against all 2^n subsets.
  int search_bad = 0, grounds = 0;
  for (int n = 5; n <= 12; ++n) {
    const auto g = make_ngon_ground_set(n);
    ++grounds;
    std::vector<std::size_t> shapes(1u << n);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<std::size_t> idx;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1u) idx.push_back(i);
      shapes[mask] = subset_shape_count(g, idx);
    }
    for (int k = 1; k <= 4; ++k) {
      std::size_t best = 0;
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
        if (shapes[mask] <= static_cast<std::size_t>(k)) best = std::max<std::size_t>(best, __builtin_popcount(mask));
      search_bad += max_subset_with_k_shapes(g, k).max_size == best ? 0 : 1;
    }
  }
  o.require(search_bad == 0, "search/oracle agreement");

  const double s = seconds_since(t0);
  o.require(s < 300, "runtime under 5 min");
  o.details << "shape, integrality, congruence, split-prime, determinism and search checks ("
            << grounds << " ground sets) all clean, " << s << " s";
}

const std::map<int, std::pair<const char*, std::function<void(Outcome&)>>> kCriteria = {
    {1, {"origin reduction", origin_reduction}},
    {2, {"grid band", grid_band}},
    {3, {"triangular lattice", triangular}},
    {4, {"constant", constant}},
    {5, {"triple density", triple_density}},
    {6, {"rotation bounds", rotation_bounds}},
    {7, {"minimality oracle", minimality}},
    {8, {"large hypotenuse spot check", spot_check}},
    {9, {"hexagon via search", hexagon_search}},
    {10, {"small configurations", small_configs}},
    {11, {"property suites", properties}},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (const auto& [id, _] : kCriteria) which.push_back(id);
  int failed = 0;
  for (int id : which) {
    const auto it = kCriteria.find(id);
    if (it == kCriteria.end()) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    Outcome o;
    try {
      it->second.second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.details << "exception: " << e.what();
    }
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, it->second.first, o.details.str().c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
