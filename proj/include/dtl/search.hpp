#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dtl/geometry.hpp"

namespace dtl {

// Arc-length partitions i <= j <= k, i + j + k = n: one per distinct triangle of the regular n-gon.
std::int64_t ngon_distinct_triangles(int n);

struct NgonRow {
  int n = 0;
  std::int64_t count = 0;
  double ratio = 0;  // count / n^2
};

std::vector<NgonRow> ngon_asymptotic_check(std::span<const int> n_values);

struct FloatGround {
  std::vector<FloatPoint> points;
  double tolerance = kDefaultTolerance;
};

struct GroundSet {
  std::variant<std::vector<QPoint>, DistanceMatrix, FloatGround> data;
  std::string label;

  std::size_t size() const;
  bool exact() const { return !std::holds_alternative<FloatGround>(data); }
  std::string mode() const;  // coordinates, distance-matrix or float
};

// Unit circumradius. Exact distance matrix for n in {3, 4, 5, 6, 8, 10, 12}, float otherwise.
GroundSet make_ngon_ground_set(int n);
// Chord^2 = 2 - 2 cos(2 pi k / n) for 1 <= k <= n / 2, or empty when n has no exact table.
std::vector<QScalar> ngon_chord_squares(int n);
// Points of [n] x [n], row-major in (x, y).
GroundSet make_grid_ground_set(int n);
GroundSet ground_from_file(const std::filesystem::path& path);

struct SearchResult {
  int k = 0;
  std::size_t max_size = 0;
  std::vector<std::vector<std::size_t>> witnesses;  // ascending indices, lexicographic order
  std::uint64_t nodes_explored = 0;
  double elapsed_ms = 0;
};

inline constexpr std::size_t kDefaultGroundLimit = 64;

struct SearchOptions {
  std::size_t size_cap = 0;  // 0: no cap
  unsigned workers = 1;      // > 1 splits the root branching
  std::size_t ground_limit = kDefaultGroundLimit;
};

// All maximum subsets whose triples span at most k distinct triangles.
SearchResult max_subset_with_k_shapes(const GroundSet& ground, int k, const SearchOptions& opts = {});

// Distinct triangles spanned by the chosen points, recomputed from the ground set's own geometry.
// Labels are sorted squared sides, exact or diameter-normalized floats.
std::vector<std::string> subset_shape_labels(const GroundSet& ground, std::span<const std::size_t> indices);
std::size_t subset_shape_count(const GroundSet& ground, std::span<const std::size_t> indices);
bool verify_subset(const GroundSet& ground, std::span<const std::size_t> indices, int k);

}  // namespace dtl
