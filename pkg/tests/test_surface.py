import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import DATA, fixture, tri_of
from oracles import box_points

from crosscap.hilbert import read_basis
from crosscap.normal_coords import edge_weight, euler_functional, evaluate, matching_equations, quad_groups
from crosscap.surface import (NormalSurface, NotAdmissibleError, classify, is_spanning,
                              reconstruct, summaries_to_json)


def test_zero_vector_is_empty(unknot):
    S = reconstruct(unknot.tri, [0] * 7)
    assert S.num_components == 0 and classify(S) == []
    assert not is_spanning(unknot, [0] * 7)


def test_vertex_link_of_boundary_vertex_is_disc(unknot):
    # The only vertex lies on the boundary torus, so its link is a disc
    # meeting every boundary edge twice.
    link = [1, 1, 1, 1, 0, 0, 0]
    (c,) = classify(reconstruct(unknot.tri, link))
    assert not c.closed and c.orientable and c.euler == 1 and c.boundary == 1
    assert not is_spanning(unknot, link)


def test_vertex_links_of_closed_triangulation_are_spheres():
    comps = classify(reconstruct(fixture("s3_double"), [1, 1, 1, 1, 0, 0, 0] * 2))
    assert len(comps) == 4
    assert all(c.closed and c.orientable and c.euler == 2 for c in comps)


def test_single_triangle_is_disc():
    (c,) = classify(reconstruct(fixture("free_tet"), [1, 0, 0, 0, 0, 0, 0]))
    assert (c.closed, c.orientable, c.euler, c.boundary, c.genus) == (False, True, 1, 1, 0)


def test_meridian_disc_of_solid_torus(unknot):
    v = [0, 0, 1, 1, 0, 1, 0]
    assert is_spanning(unknot, v)
    (c,) = classify(reconstruct(unknot.tri, v))
    assert c.orientable and c.euler == 1 and c.boundary == 1 and c.genus == 0


def test_single_quad_in_solid_torus_is_mobius_band(unknot):
    v = [0, 0, 0, 0, 0, 0, 1]
    (c,) = classify(reconstruct(unknot.tri, v))
    assert not c.orientable and c.euler == 0 and c.boundary == 1 and c.genus == 1


def test_trefoil_mobius_band(trefoil):
    bands = []
    for v in read_basis(DATA / "trefoil_fundamental.txt"):
        if is_spanning(trefoil, v):
            (c,) = classify(reconstruct(trefoil.tri, v))
            if not c.orientable:
                bands.append(c)
    assert any(c.euler == 0 and c.boundary == 1 and c.genus == 1 for c in bands)


def test_not_admissible_rejected():
    with pytest.raises(NotAdmissibleError):
        NormalSurface(fixture("free_tet"), [0, 0, 0, 0, 1, 1, 0])


def test_summary_json(trefoil):
    v = read_basis(DATA / "trefoil_fundamental.txt")[0]
    doc = json.loads(summaries_to_json(classify(reconstruct(trefoil.tri, v))))
    assert set(doc[0]) == {"closed", "orientable", "euler", "boundary", "genus", "discs"}


def _check_vector(tri, v):
    S = NormalSurface(tri, v)
    comps = S.classify()
    assert evaluate(euler_functional(tri), v) == sum(c.euler for c in comps)
    assert sum(c.discs for c in comps) == sum(v)
    for k, c in enumerate(comps):
        if c.orientable:
            assert c.euler == 2 - 2 * c.genus - c.boundary
        else:
            assert c.euler == 2 - c.genus - c.boundary and c.genus >= 1
        assert c.closed == (c.boundary == 0)
        seeds = {S.component_orientable(k, seed) for seed in (0, 1, 7, 13)}
        assert seeds == {c.orientable}
    assert sum(S.component_vector(k)[i] for k in range(len(comps)) for i in range(len(v))) == sum(v)


@pytest.mark.parametrize("name", ["unknot", "unknot_layered", "free_tet", "s3_double"])
def test_euler_and_genus_on_small_boxes(name):
    tri = tri_of(fixture(name))
    for v in box_points(matching_equations(tri), 7 * tri.size, 2, quad_groups(tri.size)):
        _check_vector(tri, [int(x) for x in v])


@pytest.mark.parametrize("name", ["trefoil", "unknot_layered", "trefoil_exposed"])
def test_regina_fundamentals(name):
    tri = fixture(name).tri
    for v in read_basis(DATA / f"{name}_fundamental.txt"):
        _check_vector(tri, v)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_sums_of_compatible_fundamentals(data):
    """Sums of trefoil fundamental surfaces with compatible quads stay consistent."""
    tri = fixture("trefoil").tri
    basis = read_basis(DATA / "trefoil_fundamental.txt")
    k = data.draw(st.integers(1, 4))
    picks = [basis[data.draw(st.integers(0, len(basis) - 1))] for _ in range(k)]
    v = [sum(col) for col in zip(*picks)]
    if not all(sum(1 for c in g if v[c]) <= 1 for g in quad_groups(tri.size)):
        return
    _check_vector(tri, v)


def test_removing_closed_components(trefoil):
    # In these fixtures spanning and closed fundamentals always meet, so their
    # sum is connected; check the two pure cases instead.
    basis = read_basis(DATA / "trefoil_fundamental.txt")
    torus = next(v for v in basis if NormalSurface(trefoil.tri, v).classify()[0].closed)
    double = [2 * x for x in torus]
    comps = NormalSurface(trefoil.tri, double).classify()
    assert len(comps) == 2 and all(c.closed for c in comps)
    assert not any(NormalSurface(trefoil.tri, double).without_closed_components())
    span = next(v for v in basis if is_spanning(trefoil, v))
    stripped = NormalSurface(trefoil.tri, span).without_closed_components()
    assert stripped == tuple(span)
    assert edge_weight(trefoil.tri, stripped, trefoil.meridian) == 1


def test_closed_components_of_closed_triangulation():
    S = NormalSurface(fixture("s3_double"), [1, 1, 1, 1, 0, 0, 0] * 2)
    assert not any(S.without_closed_components())
