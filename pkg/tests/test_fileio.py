import json

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from repropairs import gallery as gal
from repropairs.fileio import (
    InputError,
    family_from_dict,
    read_family,
    read_frequency_profile,
    read_radial_profile,
    read_spherical,
    write_family,
    write_profile,
    write_spherical,
)

from helpers import crandn, random_family, random_metric


def test_family_round_trip_is_exact(tmp_path, rng):
    fam = random_family(rng, 3, 5, metric=random_metric(rng, 3))
    path = tmp_path / "fam.json"
    write_family(fam, path)
    back = read_family(path)
    assert_array_equal(back.vectors, fam.vectors)
    assert_array_equal(back.metric, fam.metric)
    assert_array_equal(back.grid.weights, fam.grid.weights)
    assert_array_equal(back.grid.points, fam.grid.points)


def test_family_two_dimensional_points(tmp_path):
    fam = gal.finite_gabor(np.array([1.0, 0.5, 0.0, 0.0]), 2, 2)
    write_family(fam, tmp_path / "g.json")
    back = read_family(tmp_path / "g.json")
    assert back.grid.points.shape == (4, 2)


def test_family_metric_optional():
    doc = {"dim": 1, "points": [0.0], "weights": [1.0], "vectors": [[[2.0, 1.0]]]}
    fam = family_from_dict(doc)
    assert fam.metric.tolist() == [1.0]
    assert fam.vectors[0, 0] == 2 + 1j


@pytest.mark.parametrize("doc, needle", [
    ({"points": [0], "weights": [1], "vectors": [[[1, 0]]]}, "missing field 'dim'"),
    ({"dim": 1, "points": [0], "weights": [1], "vectors": [[1, 0]]}, "field 'vectors'"),
    ({"dim": 2, "points": [0], "weights": [1], "vectors": [[[1, 0]]]}, "dim is 2"),
    ({"dim": 1, "points": [0], "weights": [-1], "vectors": [[[1, 0]]]}, "weights"),
    ({"dim": "x", "points": [0], "weights": [1], "vectors": [[[1, 0]]]}, "field 'dim'"),
    ([1, 2], "top level"),
])
def test_family_diagnostics(doc, needle):
    with pytest.raises(InputError, match=needle):
        family_from_dict(doc, "f.json")


def test_family_bad_json_names_line(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"dim": 1,\n "points": [0.0],\n oops}\n')
    with pytest.raises(InputError, match="line 3"):
        read_family(p)


def test_missing_file(tmp_path):
    with pytest.raises(InputError, match="cannot read"):
        read_family(tmp_path / "none.json")


def test_frequency_profile_table(tmp_path):
    omega = np.array([-2.0, -1.0, 1.0, 2.0])
    vals = np.array([1 + 1j, 2, 3, 4j])
    p = tmp_path / "f.tbl"
    write_profile(omega, vals, p)
    prof = read_frequency_profile(p)
    assert_array_equal(prof.omega, omega)
    assert_array_equal(prof.values, vals)
    assert_allclose(prof.weights, [0.5, 0.5, 0.5, 0.5])


def test_radial_profile_table(tmp_path):
    prof = gal.gaussian_profile(0.1, 10, n=3)
    p = tmp_path / "r.tbl"
    write_profile(prof.r, prof.values, p, {"n": 3})
    back = read_radial_profile(p)
    assert back.n == 3
    assert_array_equal(back.values, prof.values)


def test_table_diagnostics(tmp_path):
    p = tmp_path / "t.tbl"
    p.write_text("# comment\n1 2 3\n4 5\n")
    with pytest.raises(InputError, match="line 3: expected 3 columns"):
        read_frequency_profile(p)
    p.write_text("1 2 x\n")
    with pytest.raises(InputError, match="line 1: non-numeric"):
        read_frequency_profile(p)
    p.write_text("# only comments\n")
    with pytest.raises(InputError, match="no data"):
        read_frequency_profile(p)
    p.write_text("0 1 0\n1 1 0\n")
    with pytest.raises(InputError, match="omega = 0"):
        read_frequency_profile(p)


def test_spherical_round_trip(tmp_path, rng):
    a = np.linspace(1, 2, 4)
    c = gal.SphericalCoefficients.from_degree_values(a, crandn(rng, 3, 4))
    p = tmp_path / "s.tbl"
    write_spherical(c, p)
    back = read_spherical(p)
    assert_array_equal(back.coeffs, c.coeffs)
    assert_array_equal(back.weights, c.weights)
    assert_allclose(gal.spherical_symbol(back), gal.spherical_symbol(c), rtol=0)


def test_spherical_sparse_table(tmp_path):
    p = tmp_path / "s.tbl"
    p.write_text("# a: 1 1.5 2\n0 0 0 1 0\n0 0 1 1 0\n0 0 2 1 0\n")
    c = read_spherical(p)
    assert c.L == 0
    assert_allclose(c.weights.sum(), 3 / 8)


def test_spherical_diagnostics(tmp_path):
    p = tmp_path / "s.tbl"
    p.write_text("0 0 0 1 0\n")
    with pytest.raises(InputError, match="# a:"):
        read_spherical(p)
    p.write_text("# a: 1 2\n1 2 0 1 0\n")
    with pytest.raises(InputError, match="row 1: index out of range"):
        read_spherical(p)
    p.write_text("# a: 1 2\n0 0 0.5 1 0\n")
    with pytest.raises(InputError, match="integers"):
        read_spherical(p)
    p.write_text("# a: 1 x\n0 0 0 1 0\n")
    with pytest.raises(InputError, match="list of numbers"):
        read_spherical(p)


def test_written_family_is_plain_json(tmp_path):
    write_family(gal.onb(2), tmp_path / "o.json")
    doc = json.loads((tmp_path / "o.json").read_text())
    assert set(doc) == {"dim", "metric", "points", "weights", "vectors"}
    assert doc["vectors"][0][0] == [1.0, 0.0]
