import cmath
import itertools
import math
import random

import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from conewalk.coning import Cone, Tetrahedron, cone_cell, triangulate
from conewalk.assigner import assign_all
from conewalk.errors import DegenerateTuple, FlatTetrahedron
from conewalk.geometry import (INF, canonical_ideal_coordinates, cell_shapes, export_coordinates,
                               stereographic, tetra_shape, verify_nonflat)
from conewalk.templates import build_template

# independent 50-digit oracle: tests/oracles/nonflat_minimum.py
DODECA_MIN = 0.16539613456240187443
CUBE_MIN = 0.28867513459481288225


def mobius(a, b, c, d):
    def f(z):
        if z == INF:
            return a / c if c else INF
        den = c * z + d
        return INF if abs(den) < 1e-300 else (a * z + b) / den
    return f


def test_normalized_cross_ratio():
    for z in (0.3 + 2j, -1 - 1j, 5j):
        assert abs(tetra_shape(0, 1, INF, z) - z) < 1e-12


def test_concircular_points_are_flat():
    pts = [cmath.exp(1j * t) for t in (0.1, 1.3, 2.9, 4.4)]
    assert abs(tetra_shape(*pts).imag) < 1e-12
    assert abs(tetra_shape(0, 1, 2, INF).imag) < 1e-12


def test_degenerate_tuple():
    with pytest.raises(DegenerateTuple):
        tetra_shape(0, 1, 1 + 1e-14, 2j)
    with pytest.raises(DegenerateTuple):
        tetra_shape(INF, 1, INF, 2j)


def test_regular_ideal_tetrahedron_shape():
    tet = build_template("tetrahedron")
    pts = canonical_ideal_coordinates(tet)
    cone = cone_cell(tet, 0, 3, {})
    (z,) = cell_shapes(tet, cone.tetrahedra, pts)
    assert abs(z - cmath.exp(1j * math.pi / 3)) < 1e-9


def test_mobius_invariance():
    rng = random.Random(1)
    for _ in range(50):
        pts = [complex(rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(4)]
        coef = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(4)]
        if abs(coef[0] * coef[3] - coef[1] * coef[2]) < 1e-3:
            continue
        f = mobius(*coef)
        assert abs(tetra_shape(*map(f, pts)) - tetra_shape(*pts)) < 1e-9


def test_rotation_invariance_on_dodecahedron():
    tpl = build_template("dodecahedron")
    base = canonical_ideal_coordinates(tpl)
    cone = cone_cell(tpl, 0, 0, {f: (0 if 0 in face else face[2]) for f, face in enumerate(tpl.faces)})
    want = cell_shapes(tpl, cone.tetrahedra, base)
    rot = Rotation.random(random_state=7).as_matrix()
    moved = [stereographic(tuple(rot @ np.array(p))) for p in tpl.coordinates]
    got = cell_shapes(tpl, cone.tetrahedra, moved)
    assert max(abs(a - b) for a, b in zip(got, want)) < 1e-9


def test_face_four_tuples_are_flat():
    tpl = build_template("dodecahedron")
    pts = canonical_ideal_coordinates(tpl)
    for face in tpl.faces:
        for quad in itertools.combinations(face, 4):
            assert abs(tetra_shape(*(pts[v] for v in quad)).imag) < 1e-9


def test_projection_has_distinct_points():
    for kind in ("tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron"):
        pts = canonical_ideal_coordinates(build_template(kind))
        finite = [p for p in pts if p != INF]
        assert len(pts) - len(finite) <= 1
        assert min(abs(a - b) for a, b in itertools.combinations(finite, 2)) > 1e-6


def all_cone_shapes(tpl):
    """Shapes of every (cone vertex, face triangle) tetrahedron a valid assignment can produce."""
    pts = canonical_ideal_coordinates(tpl)
    shapes = {}
    for v in range(tpl.n_vertices):
        for k in range(max(len(f) for f in tpl.faces)):
            apexes = {f: (v if v in face else face[k % len(face)])
                      for f, face in enumerate(tpl.faces) if len(face) > 3}
            cone = cone_cell(tpl, 0, v, apexes)
            for tet, z in zip(cone.tetrahedra, cell_shapes(tpl, cone.tetrahedra, pts)):
                shapes[tet.corners] = z
    return shapes


def test_cube_all_choices_nonflat():
    shapes = all_cone_shapes(build_template("cube"))
    ims = [z.imag for z in shapes.values()]
    assert all(x > 0 for x in ims)
    assert abs(min(ims) - CUBE_MIN) < 1e-9


def test_dodecahedron_minimum_matches_oracle():
    shapes = all_cone_shapes(build_template("dodecahedron"))
    # 20 cone vertices, 9 faces away from each; all 10 vertex triples of a pentagon occur in some fan
    assert len(shapes) == 20 * 9 * 10
    ims = [z.imag for z in shapes.values()]
    assert all(x > 0 for x in ims)
    assert abs(min(ims) - DODECA_MIN) < 1e-9


def test_fabricated_flat_tetrahedron(fixtures):
    cx = fixtures["self-dodecahedron"]
    tpl = cx.templates[0]
    bad = Tetrahedron(0, tuple(tpl.faces[0][:4]))
    cone = Cone(0, bad.corners[3], [bad], [], {})
    with pytest.raises(FlatTetrahedron) as info:
        verify_nonflat(cx, [cone])
    assert len(info.value.offenders) == 1


@pytest.mark.parametrize("name", ["self-dodecahedron", "double-dodecahedron", "two-cube",
                                  "octahedron", "two-tet"])
def test_fixture_certificates(fixtures, name):
    cx = fixtures[name]
    _, cones = triangulate(cx, assign_all(cx))
    report = verify_nonflat(cx, cones)
    assert report.min_abs_im >= 1e-6 and report.consistently_oriented
    exported = export_coordinates(cx, cones)
    assert sum(len(c["tetrahedra"]) for c in exported) == sum(len(c.tetrahedra) for c in cones)
