"""Acceptance gate: one test per criterion, each reported as a PASS/FAIL line
in the terminal summary (see conftest.py)."""
import json
import time
from fractions import Fraction

from conftest import DATA, fixture, tri_of, two_vertex
from oracles import box_points, brute_force_max, decomposable, minimal_points

from crosscap.fixtures import KNOWN_GENUS
from crosscap.hilbert import Cone, fundamental_surfaces, hilbert_basis, read_basis
from crosscap.milp import (BOUNDED, EXACT, OPTIMAL, build_ip, solve_exact, solve_float,
                           verify_solution_exact)
from crosscap.normal_coords import (euler_functional, evaluate, matching_equations, quad_groups,
                                    spanning_equation)
from crosscap.pipeline import (HILBERT, IP_BOUNDED, IP_EXACT, REFINED, STRICT, result_json, run)
from crosscap.surface import NormalSurface
from crosscap.triangulation import check_suitable_structure


def _tri(name):
    return two_vertex() if name == "two_vertex" else tri_of(fixture(name))


def test_criterion_1_unknot():
    start = time.perf_counter()
    m = fixture("unknot")
    hil, _ = run(m, HILBERT)
    assert str(hil) == "Exact(0)"
    bounded, _ = run(m, IP_BOUNDED)
    assert bounded.kind == "UpperBound" and bounded.values[0] <= 1
    (c,) = bounded.components
    assert c.orientable and c.genus == 0 and c.euler == 1 and c.boundary == 1
    assert time.perf_counter() - start < 5


def test_criterion_2_trefoil():
    start = time.perf_counter()
    for name in ("trefoil", "trefoil_layered", "trefoil_exposed"):
        m = fixture(name)
        assert check_suitable_structure(m)
        hil, _ = run(m, HILBERT)
        assert str(hil) == "Exact(1)", name
        # the least orientable genus among spanning fundamentals is 1
        assert hil.details["g_o"] == 1 and hil.details["g_n"] == 1
        (c,) = hil.components
        assert not c.orientable and c.euler == 0 and c.boundary == 1   # Moebius band
    for name in ("trefoil", "trefoil_layered"):
        assert str(run(fixture(name), IP_BOUNDED)[0]) == "UpperBound(1)"
    assert str(run(fixture("trefoil"), IP_EXACT)[0]) == "Exact(1)"
    assert time.perf_counter() - start < 60


def test_criterion_3_hilbert_oracle():
    start = time.perf_counter()
    # full cones small enough for the box oracle
    for name in ("free_tet", "unknot", "unknot_layered", "s3_double", "two_vertex"):
        tri = _tri(name)
        pts = box_points(matching_equations(tri), 7 * tri.size, 4)
        basis = hilbert_basis(Cone.of(tri))
        assert minimal_points(pts) == [v for v in basis if max(v) <= 4], name
        assert all(decomposable(pts, basis).values()), name
    # trefoil fixtures: admissible part of the cone, against the box and a frozen reference
    tri = fixture("trefoil").tri
    pts = box_points(matching_equations(tri), 35, 2, quad_groups(5))
    fund = [v for v, _ in fundamental_surfaces(tri)]
    assert minimal_points(pts) == [v for v in fund if max(v) <= 2]
    assert all(decomposable(pts, fund).values())
    for name in ("trefoil", "trefoil_exposed"):
        got = [v for v, _ in fundamental_surfaces(fixture(name).tri)]
        assert got == sorted(read_basis(DATA / f"{name}_fundamental.txt")), name
    assert time.perf_counter() - start < 120


def test_criterion_4_mip_oracle():
    for name in ("unknot", "unknot_layered", "trefoil"):
        m = fixture(name)
        n = m.tri.size
        pts = box_points(matching_equations(m.tri), 7 * n, 4, quad_groups(n),
                         [(spanning_equation(m), 1)])
        best, _ = brute_force_max(euler_functional(m.tri), pts)
        p = build_ip(m, EXACT)
        out = solve_exact(p)
        assert out.status == OPTIMAL
        assert Fraction(out.objective, p.objective_scale) == best, name


def test_criterion_5_euler_consistency():
    checked = 0
    for name in ("free_tet", "unknot", "unknot_layered", "s3_double", "two_vertex", "trefoil"):
        tri = _tri(name)
        chi = euler_functional(tri)
        for v in box_points(matching_equations(tri), 7 * tri.size, 3, quad_groups(tri.size)):
            v = [int(x) for x in v]
            direct = sum(c.euler for c in NormalSurface(tri, v).classify())
            assert evaluate(chi, v) == direct, (name, v)
            checked += 1
    assert checked > 1000


def test_criterion_6_counts_and_bigm():
    for name in ("unknot", "unknot_layered", "trefoil", "trefoil_layered", "trefoil_exposed"):
        m = fixture(name)
        n = m.tri.size
        for mode in (EXACT, BOUNDED):
            p = build_ip(m, mode)
            assert len(p.constraints) == 3 * len(m.tri.internal_faces) + 1 + 3 * n + n
            assert p.bigm == (n * 2 ** (7 * n + 2) if mode == EXACT else 10000)
    assert build_ip(fixture("unknot_layered"), EXACT).bigm == 131072


def test_criterion_7_verification_gate():
    for name in ("unknot", "unknot_layered", "trefoil", "trefoil_layered"):
        p = build_ip(fixture(name), BOUNDED)
        out = solve_float(p)
        assert verify_solution_exact(p, out.solution)
        x = list(out.solution)
        n = p.n
        # every normal coordinate, and every indicator that carries a quad
        coords = list(range(7 * n))
        coords += [7 * n + 3 * t + k for t in range(n) for k in range(3) if x[7 * t + 4 + k]]
        for j in coords:
            for d in (1, -1):
                y = list(x)
                y[j] += d
                assert not verify_solution_exact(p, y), (name, p.variables[j].name, d)
    for name in ("unknot", "unknot_layered", "trefoil"):
        p = build_ip(fixture(name), EXACT)
        out = solve_exact(p, collect_optima=True)
        assert out.optima and all(verify_solution_exact(p, x) for x in out.optima)


# Exact programs on the layered trefoils and float search on the exposed one
# exceed the test budget, so those runs are left out.
CLARK_RUNS = {
    "unknot": (HILBERT, IP_EXACT, IP_BOUNDED),
    "unknot_layered": (HILBERT, IP_EXACT, IP_BOUNDED),
    "trefoil": (HILBERT, IP_EXACT, IP_BOUNDED),
    "trefoil_layered": (HILBERT, IP_BOUNDED),
    "trefoil_exposed": (HILBERT,),
}


def test_criterion_8_clark_bound():
    assert set(CLARK_RUNS) == set(KNOWN_GENUS)
    for name, methods in CLARK_RUNS.items():
        g = KNOWN_GENUS[name]
        for method in methods:
            for mode in (STRICT, REFINED):
                res, _ = run(fixture(name), method, mode)
                assert res.values, (name, method)
                assert all(v <= 2 * g + 1 for v in res.values), (name, method, mode)


def test_criterion_9_determinism():
    for name in ("unknot", "trefoil"):
        m = fixture(name)
        for method in (HILBERT, IP_EXACT, IP_BOUNDED):
            for mode in (STRICT, REFINED):
                a, b = run(m, method, mode)[0], run(m, method, mode)[0]
                assert (a.kind, a.values, a.witness) == (b.kind, b.values, b.witness)
                ja, jb = result_json(a, m), result_json(b, m)
                assert ja == jb and "timing" not in json.loads(ja)
