#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dtl/error.hpp"
#include "dtl/lattice.hpp"
#include "dtl/pointset_io.hpp"
#include "dtl/rotatability.hpp"
#include "dtl/search.hpp"

namespace py = pybind11;
using namespace dtl;

namespace {

using Triple = std::tuple<std::int64_t, std::int64_t, std::int64_t>;

PythTriple to_triple(const Triple& t) {
  PythTriple out{std::get<0>(t), std::get<1>(t), std::get<2>(t)};
  if (!out.valid()) throw py::value_error("not a primitive Pythagorean triple: " + out.str());
  return out;
}

LatticeKind lattice_kind(const std::string& name, const std::optional<std::tuple<std::string, std::string, std::string>>& gram) {
  if (name == "square") return LatticeKind::square();
  if (name == "tri" || name == "triangular") return LatticeKind::triangular();
  if (name == "general") {
    if (!gram) throw py::value_error("general lattice needs gram=(a, b, c)");
    const auto& [a, b, c] = *gram;
    return LatticeKind::general(GramForm{parse_rational(a), parse_rational(b), parse_rational(c)});
  }
  throw py::value_error("unknown lattice '" + name + "'");
}

py::dict census_dict(const ShapeCensus& c) {
  py::dict d;
  d["kind"] = c.kind.name();
  d["n"] = c.n;
  d["include_degenerate"] = c.include_degenerate;
  d["distinct"] = c.distinct;
  d["ratio"] = c.ratio();
  d["elapsed_ms"] = c.elapsed_ms;
  d["workers"] = c.workers;
  return d;
}

// Exact sets give sorted squared sides as strings, float sets give normalized triples.
py::dict count_pointset(const std::string& text, bool include_degenerate, double tolerance) {
  std::istringstream in(text);
  const PointSetData data = read_pointset(in);
  py::dict d;
  py::list shapes;
  if (const auto* e = std::get_if<ExactPointSet>(&data)) {
    const auto r = distinct_triangle_count(e->points, include_degenerate);
    d["mode"] = "coordinates";
    for (const auto& s : r.shapes) shapes.append(py::make_tuple(s.s1().str(), s.s2().str(), s.s3().str()));
    d["count"] = r.count;
  } else if (const auto* m = std::get_if<DistanceMatrix>(&data)) {
    const auto r = distinct_triangle_count(*m, include_degenerate);
    d["mode"] = "distance-matrix";
    for (const auto& s : r.shapes) shapes.append(py::make_tuple(s.s1().str(), s.s2().str(), s.s3().str()));
    d["count"] = r.count;
  } else {
    const auto& f = std::get<FloatPointSet>(data);
    const auto r = float_distinct_triangle_count(f.points, tolerance, include_degenerate);
    d["mode"] = "float";
    for (const auto& s : r.shapes) shapes.append(py::make_tuple(s[0], s[1], s[2]));
    d["count"] = r.count;
  }
  d["shapes"] = shapes;
  return d;
}

}  // namespace

PYBIND11_MODULE(_dtl, m) {
  m.doc() = "Distinct triangles in lattices and small configurations";

  py::register_exception<Error>(m, "DtlError", PyExc_ValueError);

  m.def(
      "grid_census",
      [](int n, bool incl, unsigned workers) {
        ShapeCensus c;
        {
          py::gil_scoped_release release;
          c = grid_census(n, incl, workers);
        }
        return census_dict(c);
      },
      py::arg("n"), py::arg("include_degenerate") = true, py::arg("workers") = 1);
  m.def(
      "census",
      [](const std::string& lattice, int n, bool incl, unsigned workers,
         std::optional<std::tuple<std::string, std::string, std::string>> gram) {
        const LatticeKind kind = lattice_kind(lattice, gram);
        ShapeCensus c;
        {
          py::gil_scoped_release release;
          c = census(kind, n, incl, workers);
        }
        return census_dict(c);
      },
      py::arg("lattice"), py::arg("n"), py::arg("include_degenerate") = true, py::arg("workers") = 1,
      py::arg("gram") = py::none());
  m.def(
      "brute_force_census",
      [](const std::string& lattice, int n, bool incl,
         std::optional<std::tuple<std::string, std::string, std::string>> gram) {
        return all_triples_census(n, lattice_kind(lattice, gram), incl).distinct;
      },
      py::arg("lattice"), py::arg("n"), py::arg("include_degenerate") = true, py::arg("gram") = py::none());

  m.def("primitive_triples", [](std::int64_t max_r) {
    std::vector<Triple> out;
    for (const auto& t : enum_primitive_triples(max_r)) out.emplace_back(t.p, t.q, t.r);
    return out;
  }, py::arg("max_r"));
  m.def("count_rotatable_points", [](std::int64_t n, const Triple& t) { return count_rotatable_points(n, to_triple(t)); },
        py::arg("n"), py::arg("triple"));
  m.def("rotatable_points_bound", [](std::int64_t n, const Triple& t) { return rotatable_points_bound(n, to_triple(t)); },
        py::arg("n"), py::arg("triple"));
  m.def("is_rotatable_point", [](std::int64_t a, std::int64_t b) { return is_rotatable_point_fast({a, b}); },
        py::arg("a"), py::arg("b"));
  m.def(
      "count_rotatable_triangles",
      [](int n, unsigned workers) {
        RotatableBreakdown b;
        {
          py::gil_scoped_release release;
          b = count_rotatable_triangles(n, workers);
        }
        py::dict d;
        d["count"] = b.total;
        d["three_vertices_on_box"] = b.three_on_box;
        d["two_vertices_on_box"] = b.two_on_box;
        return d;
      },
      py::arg("n"), py::arg("workers") = 1);
  m.def(
      "constant_sum",
      [](std::int64_t cutoff) {
        const auto c = constant_sum(cutoff);
        py::dict d;
        d["triples"] = c.triples;
        d["partial"] = c.partial;
        d["tail_bound"] = c.tail_bound;
        d["total_bound"] = c.total_bound;
        return d;
      },
      py::arg("cutoff") = 100000);

  m.def("ngon_distinct_triangles", &ngon_distinct_triangles, py::arg("n"));
  m.def("count_pointset", &count_pointset, py::arg("text"), py::arg("include_degenerate") = true,
        py::arg("tolerance") = kDefaultTolerance);

  py::class_<GroundSet>(m, "GroundSet")
      .def_property_readonly("label", [](const GroundSet& g) { return g.label; })
      .def_property_readonly("mode", &GroundSet::mode)
      .def("__len__", &GroundSet::size)
      .def("__repr__", [](const GroundSet& g) { return "<GroundSet " + g.label + " (" + g.mode() + ")>"; });
  m.def("ngon_ground", &make_ngon_ground_set, py::arg("n"));
  m.def("grid_ground", &make_grid_ground_set, py::arg("n"));
  m.def("file_ground", [](const std::string& path) { return ground_from_file(path); }, py::arg("path"));

  m.def(
      "max_subset",
      [](const GroundSet& g, int k, std::size_t size_cap, unsigned workers, std::size_t limit) {
        SearchResult r;
        {
          py::gil_scoped_release release;
          r = max_subset_with_k_shapes(g, k, {size_cap, workers, limit});
        }
        py::dict d;
        d["k"] = r.k;
        d["max_size"] = r.max_size;
        d["witnesses"] = r.witnesses;
        d["nodes_explored"] = r.nodes_explored;
        return d;
      },
      py::arg("ground"), py::arg("k"), py::arg("size_cap") = 0, py::arg("workers") = 1,
      py::arg("limit") = kDefaultGroundLimit);
  m.def("subset_shapes", [](const GroundSet& g, const std::vector<std::size_t>& idx) { return subset_shape_labels(g, idx); },
        py::arg("ground"), py::arg("indices"));
  m.def("verify_subset", [](const GroundSet& g, const std::vector<std::size_t>& idx, int k) { return verify_subset(g, idx, k); },
        py::arg("ground"), py::arg("indices"), py::arg("k"));
}
