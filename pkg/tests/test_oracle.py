import itertools

import pytest

from conewalk.complex import build_complex
from conewalk.coning import lemma_vertices
from conewalk.errors import BudgetExceeded
from conewalk.io import generate_random_complex, parse_complex
from conewalk.oracle import (assignment_ok, b_face_restriction, cross_check, domain, encode,
                             kernel, oracle_solve)
from conewalk.templates import build_template

CUBE = build_template("cube")


def translation_cube():
    """Single cube with each face glued to its opposite by translation."""
    gluings = []
    for f in range(6):
        g = CUBE.opposite[f]
        if g < f:
            continue
        pf = [CUBE.coordinates[v] for v in CUBE.faces[f]]
        pg = [CUBE.coordinates[v] for v in CUBE.faces[g]]
        axis = next(i for i in range(3) if len({p[i] for p in pf}) == 1)
        perm = []
        for p in pf:
            q = tuple(-x if i == axis else x for i, x in enumerate(p))
            perm.append(pg.index(q))
        gluings.append(((0, f), (0, g), tuple(perm)))
    return build_complex(["cube"], gluings)


def brute_force(cx, restriction=None):
    """All apex triples (positions on each 2-cell's first side) passing the cone check."""
    restriction = restriction or {}
    hits = []
    for combo in itertools.product(range(4), repeat=len(cx.two_cells)):
        if any(tc in restriction and combo[tc] not in restriction[tc] for tc in range(len(combo))):
            continue
        apexes = {}
        for tc, p in zip(cx.two_cells, combo):
            s0, s1 = tc.reps
            apexes[s0[1]] = cx.face_vertices(*s0)[p]
            apexes[s1[1]] = cx.face_vertices(*s1)[tc.maps[0][p]]
        if lemma_vertices(CUBE, apexes):
            hits.append(combo)
    return hits


def test_translation_cube_brute_force():
    cx = translation_cube()
    assert len(cx.two_cells) == 3
    assert len(brute_force(cx)) == 32


def test_translation_cube_sat_unrestricted(kernel_name):
    cx = translation_cube()
    res = oracle_solve(cx, kernel_name=kernel_name)
    assert res.status == "sat" and assignment_ok(cx, res.assignment)


def test_translation_cube_overconstrained_is_unsat(kernel_name):
    cx = translation_cube()
    restriction = {0: {0}, 1: {0}, 2: {1}}
    assert brute_force(cx, restriction) == []
    res = oracle_solve(cx, restriction=restriction, kernel_name=kernel_name)
    assert res.status == "unsat"
    assert res.lines() == [f"unsat nodes {res.nodes}"]


def test_domain_sizes(fixtures):
    cx = fixtures["double-cube"]
    assert all(len(domain(cx, tc.id)) == 2 for tc in cx.two_cells)
    cx = fixtures["double-dodecahedron"]
    assert all(len(domain(cx, tc.id)) == 5 for tc in cx.two_cells)
    assert domain(cx, 0, {1, 3}) == [1, 3]


def test_fixtures_sat(fixtures, kernel_name):
    for name, cx in fixtures.items():
        res = oracle_solve(cx, kernel_name=kernel_name)
        assert res.status == "sat", name
        assert assignment_ok(cx, res.assignment)


def test_kernels_agree():
    pytest.importorskip("conewalk._search_ext")
    for seed in range(15):
        kind = ("dodecahedron", "cube")[seed % 2]
        cx = parse_complex(generate_random_complex(2 + seed % 4, kind, seed))
        arrays, _ = encode(cx)
        a = kernel("cython")(*arrays, 10 ** 6)
        b = kernel("python")(*arrays, 10 ** 6)
        assert (a[0], list(a[1]), a[2]) == (b[0], list(b[1]), b[2])


def test_budget_exceeded(kernel_name):
    cx = translation_cube()
    with pytest.raises(BudgetExceeded) as info:
        oracle_solve(cx, restriction={0: {0}, 1: {0}, 2: {1}}, budget=1, kernel_name=kernel_name)
    assert info.value.nodes >= 1


def test_restricted_b_faces_still_sat():
    for seed in range(10):
        cx = parse_complex(generate_random_complex(3, "dodecahedron", seed))
        res = oracle_solve(cx, restriction=b_face_restriction(cx, 0))
        assert res.status == "sat" and assignment_ok(cx, res.assignment)


def test_cross_check_consistent():
    for seed in range(10):
        cx = parse_complex(generate_random_complex(2, "dodecahedron", seed))
        report = cross_check(cx, seed)
        assert report.consistent and report.assigner_ok and report.oracle_ok


def test_search_is_deterministic(fixtures):
    cx = fixtures["two-cube"]
    assert oracle_solve(cx).lines() == oracle_solve(cx).lines()


def test_environment_forces_python_kernel():
    import os
    import subprocess
    import sys

    env = dict(os.environ, CONEWALK_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import conewalk.oracle as o; print(o.KERNEL)"],
                         capture_output=True, text=True, env=env)
    assert out.stdout.strip() == "python"
