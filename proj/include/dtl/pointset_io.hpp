#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <variant>
#include <vector>

#include "dtl/geometry.hpp"

namespace dtl {

struct ExactPointSet {
  std::int64_t discriminant = 1;
  std::vector<QPoint> points;
};

struct FloatPointSet {
  std::vector<FloatPoint> points;
};

using PointSetData = std::variant<ExactPointSet, FloatPointSet, DistanceMatrix>;

// Text formats, one record per line, blank lines and `#` comments ignored:
//   dtl-pointset v1 D=<d>      then  p <x_rat> <x_rad> <y_rat> <y_rad>
//   dtl-pointset v1 float      then  p <x> <y>
//   dtl-distmatrix v1 D=<d> n=<n>  then n(n-1)/2 upper-triangle entries `<rat> <rad>`
PointSetData read_pointset(std::istream& in);
PointSetData read_pointset_file(const std::filesystem::path& path);

void write_pointset(std::ostream& out, const ExactPointSet& set);
void write_pointset(std::ostream& out, const FloatPointSet& set);
void write_distance_matrix(std::ostream& out, const DistanceMatrix& m);

}  // namespace dtl
