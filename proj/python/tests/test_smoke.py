import pytest

import distinct_triangles as dt


def test_grid_census_small():
    assert [dt.grid_census(n)["distinct"] for n in range(2, 7)] == [1, 10, 33, 88, 185]
    assert dt.grid_census(4, include_degenerate=False)["distinct"] == 29


def test_census_matches_brute_force():
    for lattice in ("square", "triangular"):
        for n in (2, 3, 4):
            assert dt.census(lattice, n)["distinct"] == dt.brute_force_census(lattice, n)
    assert dt.census("general", 3, gram=("1", "0", "2"))["kind"] == "general(1;0;2)"


def test_census_workers_agree():
    assert dt.census("triangular", 20, workers=3)["distinct"] == dt.census("triangular", 20)["distinct"]


def test_rotatability():
    assert dt.primitive_triples(13) == [(3, 4, 5), (4, 3, 5), (5, 12, 13), (12, 5, 13)]
    assert dt.count_rotatable_points(5, (3, 4, 5)) == 5
    assert dt.rotatable_points_bound(5, (3, 4, 5)) == 5
    assert dt.is_rotatable_point(2, 1) and not dt.is_rotatable_point(1, 1)
    assert dt.count_rotatable_triangles(5) == {"count": 12, "three_vertices_on_box": 6, "two_vertices_on_box": 6}
    with pytest.raises(ValueError):
        dt.count_rotatable_points(5, (3, 4, 6))


def test_constant():
    c = dt.constant_sum()
    assert abs(c["partial"] - 0.05685) < 2e-4
    assert c["total_bound"] < 0.0633


def test_pointsets():
    square = "dtl-pointset v1 D=1\np 0 0 0 0\np 1 0 0 0\np 0 0 1 0\np 1 0 1 0\n"
    r = dt.count_pointset(square)
    assert r["mode"] == "coordinates" and r["count"] == 1
    assert r["shapes"] == [("1", "1", "2")]
    flt = "dtl-pointset v1 float\np 0 0\np 1 0\np 0 1\np 1 1\n"
    assert dt.count_pointset(flt)["count"] == 1
    with pytest.raises(dt.DtlError):
        dt.count_pointset("dtl-pointset v1 D=1\np 0 0\n")


def test_search():
    g = dt.ngon_ground(12)
    assert len(g) == 12 and g.mode == "distance-matrix"
    r = dt.max_subset(g, 3)
    assert r["max_size"] == 6
    assert [0, 2, 4, 6, 8, 10] in r["witnesses"]
    assert dt.verify_subset(g, [0, 2, 4, 6, 8, 10], 3)
    assert not dt.verify_subset(g, list(range(7)), 3)
    assert len(dt.subset_shapes(g, [0, 2, 4, 6, 8, 10])) == 3
    assert [dt.ngon_distinct_triangles(n) for n in range(3, 8)] == [1, 1, 2, 3, 4]
    assert dt.max_subset(dt.grid_ground(2), 1)["max_size"] == 4
