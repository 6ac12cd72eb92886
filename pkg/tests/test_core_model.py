import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ebem2d import (
    BoundaryGeometry,
    MeshSpec,
    TimeGrid,
    make_material,
    make_mesh,
    mesh_stats,
)
from ebem2d.core_model import read_mesh, write_mesh

CRACK = BoundaryGeometry("open_segment", [(-0.5, 0.0), (0.5, 0.0)])
TRIANGLE = BoundaryGeometry("polygon", [(-0.5, 0.0), (0.5, 0.0), (0.0, 1.0)])


def test_material_derived_quantities():
    m = make_material(2.0, 1.0, 1.0)
    assert m.c_p == pytest.approx(2.0)
    assert m.c_s == pytest.approx(1.0)
    assert m.poisson == pytest.approx(2.0 / 6.0)
    assert m.kolosov == pytest.approx(3 - 4 * 2.0 / 6.0)
    m3 = make_material(7.0, 1.0, 1.0)
    assert m3.c_p == pytest.approx(3.0)


@pytest.mark.parametrize("bad", [(-1, 1, 1), (1, 0, 1), (1, 1, -2)])
def test_material_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        make_material(*bad)


def test_uniform_mesh_counts_and_lengths():
    mesh = make_mesh(CRACK, MeshSpec("uniform", 10))
    assert mesh.n_elements == 10
    assert mesh.topology == "open"
    np.testing.assert_allclose(mesh.element_lengths(), 0.1)


@given(nel=st.integers(2, 60), bt=st.floats(1.0, 4.0))
@settings(max_examples=40, deadline=None)
def test_algebraic_grading_symmetric_and_ordered(nel, bt):
    mesh = make_mesh(CRACK, MeshSpec("algebraic", nel, beta_tilde=bt))
    x = mesh.nodes[:, 0]
    assert mesh.n_elements == nel
    assert np.all(np.diff(x) > 0)
    assert x[0] == -0.5 and x[-1] == 0.5
    # grading is mirror-symmetric about the midpoint
    np.testing.assert_allclose(x + x[::-1], 0.0, atol=1e-15)


def test_algebraic_node_positions_follow_power_rule():
    mesh = make_mesh(CRACK, MeshSpec("algebraic", 8, beta_tilde=2.0))
    # left half nodes at -1/2 + (1/2)(k/4)^2
    for k in range(5):
        assert mesh.nodes[k, 0] == pytest.approx(-0.5 + 0.5 * (k / 4) ** 2)


@given(n=st.integers(1, 12), sigma=st.floats(0.1, 0.5))
@settings(max_examples=40, deadline=None)
def test_geometric_grading_ratio_and_min_length(n, sigma):
    mesh = make_mesh(CRACK, MeshSpec("geometric", sigma=sigma, n_levels=n))
    hmax, hmin, nel = mesh_stats(mesh)
    assert nel == 2 * (n + 1)
    assert hmin == pytest.approx(0.5 * sigma**n, rel=1e-12)
    lengths = mesh.element_lengths()
    # lengths away from the two tip cells shrink by the factor sigma
    for k in range(1, n):
        assert lengths[k + 1] / lengths[k] == pytest.approx(1.0 / sigma, rel=1e-6)


def test_polygon_mesh_closes():
    mesh = make_mesh(TRIANGLE, MeshSpec("uniform", 7))
    assert mesh.topology == "closed"
    assert mesh.n_elements == 21
    a = mesh.nodes[mesh.elements[:, 0]]
    b = mesh.nodes[mesh.elements[:, 1]]
    np.testing.assert_allclose((b - a).sum(axis=0), 0.0, atol=1e-14)


def test_polygon_per_side_counts():
    mesh = make_mesh(TRIANGLE, MeshSpec("algebraic", 80, beta_tilde=2.0),
                     per_side_elements=[75, 80, 80])
    assert mesh.n_elements == 235
    assert np.bincount(mesh.side_of_element).tolist() == [75, 80, 80]


def test_geometry_validation():
    with pytest.raises(ValueError):
        BoundaryGeometry("open_segment", [(0.0, 0.0), (0.0, 0.0)])
    with pytest.raises(ValueError):
        BoundaryGeometry("polygon", [(0, 0), (1, 0)])
    with pytest.raises(ValueError):
        BoundaryGeometry("polygon", [(0, 0), (1, 0), (2, 0)])


def test_mesh_spec_validation():
    with pytest.raises(ValueError):
        MeshSpec("uniform")
    with pytest.raises(ValueError):
        MeshSpec("algebraic", 10, beta_tilde=0.5)
    with pytest.raises(ValueError):
        MeshSpec("geometric", sigma=0.7, n_levels=3)
    with pytest.raises(ValueError):
        MeshSpec("whatever", 10)


def test_time_grid():
    g = TimeGrid(1.0, 80)
    assert g.dt == pytest.approx(0.0125)
    assert g.t(80) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        TimeGrid(0.0, 10)


@given(bt=st.floats(1.0, 3.5), nel=st.integers(1, 25))
@settings(max_examples=25, deadline=None)
def test_mesh_text_round_trip_bit_exact(bt, nel, tmp_path_factory):
    mesh = make_mesh(CRACK, MeshSpec("algebraic", nel, beta_tilde=bt))
    path = tmp_path_factory.mktemp("mesh") / "mesh.txt"
    write_mesh(mesh, str(path))
    back = read_mesh(str(path))
    assert np.array_equal(mesh.nodes, back.nodes)
    assert np.array_equal(mesh.elements, back.elements)
    assert back.topology == mesh.topology
