import itertools
import random

import pytest

from conewalk.assigner import (AmbiguousEdgeFan, DiagonalAssignment, assign_all,
                               assign_dodecahedral, classify_abd, common_vertex,
                               step4_resolve_fans)
from conewalk.coning import cell_face_apexes, lemma_vertices
from conewalk.errors import FoldedEdge, NotTriangleFaced, PatternViolation, UnsupportedTemplate
from conewalk.io import generate_random_complex, parse_complex
from conewalk.oracle import assignment_ok
from conewalk.templates import build_template

DODECA = build_template("dodecahedron")


def all_ownerships(tpl):
    pairs = [(f, tpl.opposite[f]) for f in range(len(tpl.faces)) if f < tpl.opposite[f]]
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        yield {pair[b] for pair, b in zip(pairs, bits)}


def test_every_ownership_is_common_vertex_or_abd():
    counts = {"vertex": 0, "abd": 0}
    for owned in all_ownerships(DODECA):
        if common_vertex(DODECA, owned) is not None:
            counts["vertex"] += 1
            with pytest.raises(PatternViolation):
                classify_abd(DODECA, 0, owned)
        else:
            p = classify_abd(DODECA, 0, owned)
            assert set(p.bs) | {p.d} == owned
            counts["abd"] += 1
    # the A-face determines the pattern: its five neighbors plus its opposite
    assert counts == {"vertex": 52, "abd": 12}


def abd_patterns():
    for owned in all_ownerships(DODECA):
        if common_vertex(DODECA, owned) is None:
            yield classify_abd(DODECA, 0, owned)


def test_d_face_has_no_owned_neighbor():
    for p in abd_patterns():
        assert not set(DODECA.neighbors(p.d)) & (set(p.bs) | {p.d})
        assert p.d == DODECA.opposite[p.a]


def test_adjacent_a_vertices_share_exactly_one_b_face():
    for p in abd_patterns():
        face = DODECA.faces[p.a]
        for i in range(5):
            v1, v2 = face[i], face[(i + 1) % 5]
            both = [b for b in p.bs if {v1, v2} <= set(p.allowed[b])]
            assert both == [p.bs[i]]


def test_each_a_vertex_lies_on_two_b_faces():
    for p in abd_patterns():
        for v in DODECA.faces[p.a]:
            assert sum(v in p.allowed[b] for b in p.bs) == 2


def test_pattern_violation_for_non_pattern():
    with pytest.raises(PatternViolation):
        classify_abd(DODECA, 0, {0, 1, 2, 3, 4, 5})


def b_face_property(cx, asg):
    """A-face apex v: every B-face allowed at v is fanned from v; all B apexes in their pair."""
    for c, p in asg.patterns.items():
        v = asg.vertex_on((c, p.a))
        for b in p.bs:
            got = asg.vertex_on((c, b))
            assert got in p.allowed[b]
            if v in p.allowed[b]:
                assert got == v
        assert v in lemma_vertices(cx.templates[c], cell_face_apexes(asg.face_apexes(), c))


@pytest.mark.parametrize("seed", range(40))
def test_random_complexes_satisfy_restriction_and_cone_condition(seed):
    cx = parse_complex(generate_random_complex(1 + seed % 8, "dodecahedron", seed))
    asg = assign_dodecahedral(cx, seed % 3)
    assert asg.total and assignment_ok(cx, asg)
    b_face_property(cx, asg)


def test_double_dodecahedron_steps(fixtures):
    cx = fixtures["double-dodecahedron"]
    asg = assign_dodecahedral(cx, 0)
    assert len(asg.apex) == 12
    assert set(asg.step.values()) <= {"step1", "step1-random", "step2", "step3", "step3-random",
                                      "step4", "step5", "step5-random"}
    assert assignment_ok(cx, asg)


def test_step1_cells_settle_at_their_common_vertex():
    for seed in range(30):
        cx = parse_complex(generate_random_complex(3, "dodecahedron", seed))
        asg = assign_dodecahedral(cx, 0)
        for c in set(range(cx.n_cells)) - set(asg.patterns):
            w = asg.cell_apex[c]
            for f in DODECA.faces_at_vertex[w]:
                assert asg.vertex_on((c, f)) == w


def test_propagation_chain_settles():
    # three cells, two deferred B-faces each waiting on the next
    cx = parse_complex(generate_random_complex(3, "dodecahedron", 15))
    asg = assign_dodecahedral(cx, 0)
    assert "step5" in asg.step.values()
    assert not asg.fans
    b_face_property(cx, asg)


def test_self_dependent_fan_is_resolved_by_an_edge_end():
    cx = parse_complex(generate_random_complex(2, "dodecahedron", 103))
    asg = assign_dodecahedral(cx, 0)
    assert len(asg.fans) == 1
    fan = asg.fans[0]
    (c, b), = fan.members
    assert any("own B-face" in n for n in asg.notes)
    x, y = asg.patterns[c].allowed[b]
    v = asg.vertex_on((c, b))
    assert asg.step[cx.two_cell_of(c, b)] == "step4"
    assert cx.end_of(c, x, y) in fan.ends and v in (x, y)
    b_face_property(cx, asg)


def test_folded_fan_edge_raises(fixtures):
    cx = fixtures["double-dodecahedron"]
    fan = AmbiguousEdgeFan(0, ((0, 0),), (0,))
    with pytest.raises(FoldedEdge):
        step4_resolve_fans(cx, {}, [fan], DiagonalAssignment(cx), random.Random(0))


def test_one_apex_per_two_cell(fixtures):
    cx = fixtures["double-dodecahedron"]
    asg = DiagonalAssignment(cx)
    asg.set((0, 0), DODECA.faces[0][0], "test")
    with pytest.raises(RuntimeError):
        asg.set((1, 0), DODECA.faces[0][1], "test")


def test_assignment_is_seed_deterministic():
    cx = parse_complex(generate_random_complex(5, "dodecahedron", 11))
    assert assign_dodecahedral(cx, 4).dump() == assign_dodecahedral(cx, 4).dump()


def test_mode_dispatch(fixtures):
    assert set(assign_all(fixtures["two-tet"]).step.values()) == {"triangle"}
    assert set(assign_all(fixtures["double-cube"]).step.values()) == {"oracle"}
    with pytest.raises(NotTriangleFaced):
        assign_all(fixtures["double-cube"], "triangle")
    with pytest.raises(UnsupportedTemplate):
        assign_all(fixtures["double-cube"], "dodecahedral")


def test_every_cell_gets_a_cone_vertex(fixtures):
    for name, cx in fixtures.items():
        asg = assign_all(cx)
        assert sorted(asg.cell_apex) == list(range(cx.n_cells)), name


def test_two_member_fan_uses_one_edge_end():
    cx = parse_complex(generate_random_complex(6, "dodecahedron", 206))
    asg = assign_dodecahedral(cx, 0)
    fan = next(f for f in asg.fans if len(f.members) == 2)
    ends = set()
    for c, b in fan.members:
        x, y = asg.patterns[c].allowed[b]
        assert cx.edge_class_of(c, x, y) == fan.edge_class
        v = asg.vertex_on((c, b))
        ends.add(cx.end_of(c, v, y if v == x else x))
        assert asg.step[cx.two_cell_of(c, b)] == "step4"
    assert len(ends) == 1
    b_face_property(cx, asg)
