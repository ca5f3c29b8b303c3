#include "dtl/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <thread>

#include "dtl/error.hpp"
#include "dtl/lattice.hpp"
#include "dtl/pointset_io.hpp"

namespace dtl {

std::int64_t ngon_distinct_triangles(int n) {
  if (n < 3) throw Error("regular polygon needs n >= 3, got " + std::to_string(n));
  std::int64_t count = 0;
  for (std::int64_t i = 1; 3 * i <= n; ++i) {
    for (std::int64_t j = i; i + 2 * j <= n; ++j) ++count;  // k = n - i - j >= j
  }
  return count;
}

std::vector<NgonRow> ngon_asymptotic_check(std::span<const int> n_values) {
  std::vector<NgonRow> out;
  for (int n : n_values) {
    const std::int64_t c = ngon_distinct_triangles(n);
    out.push_back({n, c, static_cast<double>(c) / (static_cast<double>(n) * n)});
  }
  return out;
}

std::size_t GroundSet::size() const {
  return std::visit(
      [](const auto& d) -> std::size_t {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, FloatGround>) {
          return d.points.size();
        } else {
          return d.size();
        }
      },
      data);
}

std::string GroundSet::mode() const {
  switch (data.index()) {
    case 0: return "coordinates";
    case 1: return "distance-matrix";
    default: return "float";
  }
}

std::vector<QScalar> ngon_chord_squares(int n) {
  // 2 cos(2 pi k / n) as rational + radical sqrt(D), k = 1 .. n/2.
  struct Entry {
    std::int64_t d;
    std::vector<std::pair<Rational, Rational>> twice_cos;
  };
  const Rational h(1, 2);
  static const std::map<int, Entry> tables = {
      {3, {1, {{-1, 0}}}},
      {4, {1, {{0, 0}, {-2, 0}}}},
      {5, {5, {{-h, h}, {-h, -h}}}},
      {6, {1, {{1, 0}, {-1, 0}, {-2, 0}}}},
      {8, {2, {{0, 1}, {0, 0}, {0, -1}, {-2, 0}}}},
      {10, {5, {{h, h}, {-h, h}, {h, -h}, {-h, -h}, {-2, 0}}}},
      {12, {3, {{0, 1}, {1, 0}, {0, 0}, {-1, 0}, {0, -1}, {-2, 0}}}},
  };
  const auto it = tables.find(n);
  if (it == tables.end()) return {};
  std::vector<QScalar> out;
  for (const auto& [rat, rad] : it->second.twice_cos) {
    out.push_back(QScalar(2) - QScalar(rat, rad, it->second.d));
  }
  return out;
}

GroundSet make_ngon_ground_set(int n) {
  if (n < 3) throw Error("regular polygon needs n >= 3, got " + std::to_string(n));
  GroundSet g;
  g.label = "ngon:" + std::to_string(n);
  const auto chords = ngon_chord_squares(n);
  if (!chords.empty()) {
    std::vector<QScalar> upper;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) upper.push_back(chords[std::min(j - i, n - (j - i)) - 1]);
    }
    g.data = DistanceMatrix(static_cast<std::size_t>(n), std::move(upper));
    return g;
  }
  FloatGround f;
  for (int i = 0; i < n; ++i) {
    const double a = 2 * std::numbers::pi * i / n;
    f.points.push_back({std::cos(a), std::sin(a)});
  }
  g.data = std::move(f);
  return g;
}

GroundSet make_grid_ground_set(int n) {
  if (n < 1) throw Error("grid side must be at least 1");
  std::vector<QPoint> pts;
  for (long x = 0; x < n; ++x) {
    for (long y = 0; y < n; ++y) pts.emplace_back(QScalar(x), QScalar(y));
  }
  return {std::move(pts), "grid:" + std::to_string(n)};
}

GroundSet ground_from_file(const std::filesystem::path& path) {
  GroundSet g;
  g.label = "file:" + path.string();
  auto data = read_pointset_file(path);
  if (auto* e = std::get_if<ExactPointSet>(&data)) {
    g.data = std::move(e->points);
  } else if (auto* f = std::get_if<FloatPointSet>(&data)) {
    g.data = FloatGround{std::move(f->points), kDefaultTolerance};
  } else {
    g.data = std::move(std::get<DistanceMatrix>(data));
  }
  return g;
}

namespace {

// Dense ids for the distinct pairwise distances, then for the distinct triangles.
struct ShapeTable {
  std::size_t n = 0;
  std::size_t shapes = 0;
  std::vector<std::uint32_t> id;  // n^3, filled for i < j < l only

  std::uint32_t at(std::size_t i, std::size_t j, std::size_t l) const {
    if (i > j) std::swap(i, j);
    if (j > l) std::swap(j, l);
    if (i > j) std::swap(i, j);
    return id[(i * n + j) * n + l];
  }
};

std::vector<std::int64_t> distance_ids(const GroundSet& g) {
  const std::size_t n = g.size();
  std::vector<std::int64_t> ids(n * n, 0);
  if (const auto* f = std::get_if<FloatGround>(&g.data)) {
    return n >= 2 ? float_distance_buckets(f->points, f->tolerance) : ids;
  }
  std::vector<QScalar> dist(n * n);
  if (const auto* pts = std::get_if<std::vector<QPoint>>(&g.data)) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        dist[i * n + j] = sq_dist((*pts)[i], (*pts)[j]);
        if (dist[i * n + j].is_zero()) throw Error("ground set has coincident points");
      }
    }
  } else {
    const auto& m = std::get<DistanceMatrix>(g.data);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) dist[i * n + j] = m.at(i, j);
    }
  }
  std::vector<QScalar> values;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) values.push_back(dist[i * n + j]);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto pos = std::lower_bound(values.begin(), values.end(), dist[i * n + j]) - values.begin();
      ids[i * n + j] = ids[j * n + i] = pos;
    }
  }
  return ids;
}

ShapeTable build_shape_table(const GroundSet& g) {
  ShapeTable t;
  t.n = g.size();
  const std::size_t n = t.n;
  const auto dist = distance_ids(g);
  t.id.assign(n * n * n, 0);
  std::map<std::array<std::int64_t, 3>, std::uint32_t> seen;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t l = j + 1; l < n; ++l) {
        std::array<std::int64_t, 3> key{dist[i * n + j], dist[j * n + l], dist[i * n + l]};
        std::sort(key.begin(), key.end());
        const auto [it, fresh] = seen.emplace(key, static_cast<std::uint32_t>(seen.size()));
        t.id[(i * n + j) * n + l] = it->second;
      }
    }
  }
  t.shapes = seen.size();
  return t;
}

class Searcher {
 public:
  Searcher(const ShapeTable& table, int k, std::size_t cap, std::atomic<std::size_t>& best)
      : t_(table), k_(static_cast<std::size_t>(k)), cap_(cap), best_(best),
        mult_(table.shapes, 0), stamp_(table.shapes, 0) {}

  void run_root(std::size_t first) {
    const std::size_t n = t_.n;
    if (1 + (n - 1 - first) < best_.load()) return;
    chosen_.assign(1, first);
    std::vector<std::size_t> cands;
    for (std::size_t w = first + 1; w < n; ++w) cands.push_back(w);
    explore(cands);
  }

  std::size_t local_best = 0;
  std::vector<std::vector<std::size_t>> witnesses;
  std::uint64_t nodes = 0;

 private:
  // Shapes added by w that the current subset does not span yet.
  std::size_t fresh_shapes(std::size_t w) {
    ++epoch_;
    std::size_t fresh = 0;
    for (std::size_t a = 0; a < chosen_.size(); ++a) {
      for (std::size_t b = a + 1; b < chosen_.size(); ++b) {
        const auto s = t_.at(chosen_[a], chosen_[b], w);
        if (mult_[s] == 0 && stamp_[s] != epoch_) {
          stamp_[s] = epoch_;
          ++fresh;
        }
      }
    }
    return fresh;
  }

  void push(std::size_t w) {
    for (std::size_t a = 0; a < chosen_.size(); ++a) {
      for (std::size_t b = a + 1; b < chosen_.size(); ++b) {
        if (mult_[t_.at(chosen_[a], chosen_[b], w)]++ == 0) ++distinct_;
      }
    }
    chosen_.push_back(w);
  }

  void pop() {
    const std::size_t w = chosen_.back();
    chosen_.pop_back();
    for (std::size_t a = 0; a < chosen_.size(); ++a) {
      for (std::size_t b = a + 1; b < chosen_.size(); ++b) {
        if (--mult_[t_.at(chosen_[a], chosen_[b], w)] == 0) --distinct_;
      }
    }
  }

  // `cands` holds every later index that can join the current subset on its own.
  void explore(const std::vector<std::size_t>& cands) {
    ++nodes;
    const std::size_t size = chosen_.size();
    if (size >= best_.load() && size >= local_best) {
      if (size > local_best) {
        local_best = size;
        witnesses.clear();
      }
      witnesses.push_back(chosen_);
      std::size_t cur = best_.load();
      while (size > cur && !best_.compare_exchange_weak(cur, size)) {
      }
    }
    if (cap_ != 0 && size >= cap_) return;
    std::vector<std::size_t> next;
    for (std::size_t p = 0; p < cands.size(); ++p) {
      if (size + (cands.size() - p) < best_.load()) break;
      push(cands[p]);
      next.clear();
      for (std::size_t q = p + 1; q < cands.size(); ++q) {
        if (distinct_ + fresh_shapes(cands[q]) <= k_) next.push_back(cands[q]);
      }
      explore(next);
      pop();
    }
  }

  const ShapeTable& t_;
  std::size_t k_;
  std::size_t cap_;
  std::atomic<std::size_t>& best_;
  std::vector<std::size_t> chosen_;
  std::vector<std::uint32_t> mult_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t epoch_ = 0;
  std::size_t distinct_ = 0;
};

// Index-order greedy pass; a valid lower bound for the incumbent.
std::size_t greedy_size(const ShapeTable& t, std::size_t k, std::size_t cap) {
  std::vector<std::size_t> chosen;
  std::set<std::uint32_t> shapes;
  for (std::size_t w = 0; w < t.n && (cap == 0 || chosen.size() < cap); ++w) {
    std::set<std::uint32_t> grown = shapes;
    for (std::size_t a = 0; a < chosen.size(); ++a) {
      for (std::size_t b = a + 1; b < chosen.size(); ++b) grown.insert(t.at(chosen[a], chosen[b], w));
    }
    if (grown.size() <= k) {
      shapes.swap(grown);
      chosen.push_back(w);
    }
  }
  return chosen.size();
}

}  // namespace

SearchResult max_subset_with_k_shapes(const GroundSet& ground, int k, const SearchOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  if (k < 1) throw Error("shape budget k must be at least 1, got " + std::to_string(k));
  const std::size_t n = ground.size();
  if (n > opts.ground_limit) {
    throw Error("ground set too large: " + std::to_string(n) + " points exceeds limit " +
                std::to_string(opts.ground_limit));
  }
  SearchResult res;
  res.k = k;
  if (n == 0) {
    res.witnesses.push_back({});
    return res;
  }
  const ShapeTable table = build_shape_table(ground);
  std::atomic<std::size_t> best{greedy_size(table, static_cast<std::size_t>(k), opts.size_cap)};
  std::atomic<std::size_t> next_root{0};
  const unsigned workers = std::clamp<unsigned>(opts.workers, 1, static_cast<unsigned>(n));
  std::vector<Searcher> searchers;
  for (unsigned w = 0; w < workers; ++w) searchers.emplace_back(table, k, opts.size_cap, best);

  auto run = [&](Searcher& s) {
    for (std::size_t r; (r = next_root.fetch_add(1)) < n;) s.run_root(r);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run, std::ref(searchers[w]));
  run(searchers[0]);
  for (auto& t : pool) t.join();

  res.max_size = best.load();
  for (auto& s : searchers) {
    res.nodes_explored += s.nodes;
    if (s.local_best != res.max_size) continue;
    for (auto& w : s.witnesses) res.witnesses.push_back(std::move(w));
  }
  std::sort(res.witnesses.begin(), res.witnesses.end());
  res.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return res;
}

std::vector<std::string> subset_shape_labels(const GroundSet& ground, std::span<const std::size_t> indices) {
  const std::size_t n = ground.size();
  std::set<std::size_t> seen;
  for (auto i : indices) {
    if (i >= n) throw Error("subset index " + std::to_string(i) + " out of range for ground set of size " + std::to_string(n));
    if (!seen.insert(i).second) throw Error("subset index " + std::to_string(i) + " repeated");
  }
  std::vector<std::string> out;
  if (indices.size() < 3) return out;
  if (const auto* pts = std::get_if<std::vector<QPoint>>(&ground.data)) {
    std::vector<QPoint> sub;
    for (auto i : indices) sub.push_back((*pts)[i]);
    for (const auto& s : distinct_triangle_count(sub).shapes) out.push_back(s.str());
    return out;
  }
  if (const auto* m = std::get_if<DistanceMatrix>(&ground.data)) {
    std::vector<QScalar> upper;
    for (std::size_t a = 0; a < indices.size(); ++a) {
      for (std::size_t b = a + 1; b < indices.size(); ++b) upper.push_back(m->at(indices[a], indices[b]));
    }
    for (const auto& s : distinct_triangle_count(DistanceMatrix(indices.size(), std::move(upper))).shapes) {
      out.push_back(s.str());
    }
    return out;
  }
  const auto& f = std::get<FloatGround>(ground.data);
  std::vector<FloatPoint> sub;
  for (auto i : indices) sub.push_back(f.points[i]);
  for (const auto& s : float_distinct_triangle_count(sub, f.tolerance).shapes) {
    out.push_back("(" + format_double(s[0]) + "," + format_double(s[1]) + "," + format_double(s[2]) + ")");
  }
  return out;
}

std::size_t subset_shape_count(const GroundSet& ground, std::span<const std::size_t> indices) {
  return subset_shape_labels(ground, indices).size();
}

bool verify_subset(const GroundSet& ground, std::span<const std::size_t> indices, int k) {
  return subset_shape_count(ground, indices) <= static_cast<std::size_t>(std::max(k, 0));
}

}  // namespace dtl
