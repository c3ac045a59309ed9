"""Choosing face diagonals so every cell can be coned from one of its vertices.

All diagonals of a face emanate from a single vertex, its *apex*, so a
diagonal choice is one apex per 2-cell. For dodecahedral complexes the apexes
are chosen by the five-step construction built on face-cycle ownership:

1. cells owning three faces around a vertex settle at that vertex;
2. every other cell owns an A/B/D pattern (see :func:`classify_abd`) and its
   D-face gets a random apex;
3. cells whose A-face is glued to a B-face fix all but one B-face;
4. the B-faces left over form fans around ambiguous edges, resolved by
   picking an end of the edge;
5. the remaining B-faces follow from known A-face apexes by propagation.

B-face apexes are always restricted to the two ends of the edge the B-face
shares with its own A-face.
"""
from dataclasses import dataclass, field
import logging
import random

from .errors import (DanglingBFace, FoldedEdge, NotTriangleFaced, PatternViolation,
                     PropagationStalled, RestrictionViolation, UnsupportedTemplate)
from .face_cycles import ownership as compute_ownership, owned_faces

log = logging.getLogger(__name__)


class DiagonalAssignment:
    """One apex per 2-cell, stored as a position on a reference side.

    The reference side of a 2-cell is its owner when an ownership is known,
    else its lexicographically smaller side.
    """

    def __init__(self, cx, reference=None):
        self.cx = cx
        self.reference = dict(reference) if reference else {tc.id: tc.reps[0] for tc in cx.two_cells}
        self.apex = {}
        self.step = {}
        self.cell_apex = {}
        self.notes = []

    def __contains__(self, tc):
        return tc in self.apex

    def is_assigned(self, side):
        return self.cx.two_cell_of(*side) in self.apex

    def set(self, side, vertex, step):
        """Put the apex of the 2-cell containing ``side`` at cell vertex ``vertex``."""
        cx = self.cx
        tc = cx.two_cell_of(*side)
        if tc in self.apex:
            raise RuntimeError(f"two-cell {tc} assigned twice")
        pos = cx.templates[side[0]].position(side[1], vertex)
        ref = self.reference[tc]
        if ref != side:
            pos = cx.map_position(side, pos)[1]
        self.apex[tc] = pos
        self.step[tc] = step
        log.debug("%s: two-cell %d apex %d on %s", step, tc, pos, ref)

    def set_position(self, tc, pos, step):
        if tc in self.apex:
            raise RuntimeError(f"two-cell {tc} assigned twice")
        self.apex[tc] = pos
        self.step[tc] = step

    def vertex_on(self, side):
        """Cell vertex of the induced apex on ``side``, or None if unassigned."""
        cx = self.cx
        tc = cx.two_cell_of(*side)
        if tc not in self.apex:
            return None
        pos = self.apex[tc]
        ref = self.reference[tc]
        if ref != side:
            pos = cx.map_position(ref, pos)[1]
        return cx.face_vertices(*side)[pos]

    def face_apexes(self):
        """Induced view: ``(cell, face) -> apex vertex`` for every assigned side."""
        out = {}
        for side in self.cx.sides():
            v = self.vertex_on(side)
            if v is not None:
                out[side] = v
        return out

    @property
    def total(self):
        return len(self.apex) == len(self.cx.two_cells)

    def dump(self):
        """Report lines, one per 2-cell: reference side and apex."""
        lines = []
        for tc in sorted(self.apex):
            c, f = self.reference[tc]
            lines.append(f"assign {tc} owner {c} {f} apex {self.apex[tc]} "
                         f"vertex {self.cx.face_vertices(c, f)[self.apex[tc]]} step {self.step[tc]}")
        for c in sorted(self.cell_apex):
            lines.append(f"cell {c} apex {self.cell_apex[c]}")
        return lines


@dataclass
class ABDPattern:
    cell: int
    a: int
    bs: tuple        # bs[i] shares the A-face edge (A[i], A[i+1])
    d: int
    others: tuple
    allowed: dict = field(default_factory=dict)   # B-face -> its two allowed apex vertices


def common_vertex(tpl, owned):
    """Smallest vertex all of whose faces are owned, or None."""
    for v, faces in enumerate(tpl.faces_at_vertex):
        if all(f in owned for f in faces):
            return v
    return None


def classify_abd(tpl, cell, owned):
    """A/B/D labeling of a cell's six owned faces."""
    owned = set(owned)
    if common_vertex(tpl, owned) is not None:
        raise PatternViolation(f"cell {cell} owns three faces at a vertex")
    candidates = [f for f in range(len(tpl.faces))
                  if f not in owned and all(g in owned for g in tpl.neighbors(f))]
    if len(candidates) != 1:
        raise PatternViolation(f"cell {cell}: {len(candidates)} candidate A-faces")
    a = candidates[0]
    d = tpl.opposite[a]
    face_a = tpl.faces[a]
    m = len(face_a)
    bs = []
    allowed = {}
    for i in range(m):
        x, y = face_a[i], face_a[(i + 1) % m]
        b = next(g for g in tpl.neighbors(a) if x in tpl.faces[g] and y in tpl.faces[g])
        bs.append(b)
        allowed[b] = (x, y)
    if owned != set(bs) | {d}:
        raise PatternViolation(f"cell {cell}: owned faces {sorted(owned)} do not form an A/B/D pattern")
    others = tuple(sorted(set(range(len(tpl.faces))) - owned - {a}))
    return ABDPattern(cell, a, tuple(bs), d, others, allowed)


def assign_triangle_cells(cx):
    if not all(t.is_triangle_faced for t in cx.templates):
        raise NotTriangleFaced("triangle path needs every face to be a triangle")
    asg = DiagonalAssignment(cx)
    for tc in cx.two_cells:
        asg.set_position(tc.id, 0, "triangle")
    for c in range(cx.n_cells):
        asg.cell_apex[c] = 0
    return asg


def step1_common_vertex(cx, own, asg, rng):
    """Settle every cell owning three faces around a vertex; return settled cells."""
    owned = owned_faces(own, cx.n_cells)
    settled = set()
    for c, tpl in enumerate(cx.templates):
        w = common_vertex(tpl, owned[c])
        if w is None:
            continue
        for f in sorted(owned[c]):
            if asg.is_assigned((c, f)):
                continue
            if w in tpl.faces[f]:
                asg.set((c, f), w, "step1")
            else:
                asg.set((c, f), tpl.faces[f][rng.randrange(len(tpl.faces[f]))], "step1-random")
        asg.cell_apex[c] = w
        settled.add(c)
    return settled


def step2_random_d(cx, patterns, asg, rng):
    for c in sorted(patterns):
        p = patterns[c]
        side = (c, p.d)
        if asg.is_assigned(side):
            continue
        face = cx.face_vertices(*side)
        asg.set(side, face[rng.randrange(len(face))], "step2")


def _b_partner(cx, patterns, p):
    """The B-face side glued to ``p``'s A-face, or None if it is not a B-face."""
    (c2, f2), _ = cx.partner(p.cell, p.a)
    q = patterns.get(c2)
    if q is not None and f2 in q.allowed:
        return (c2, f2), q
    return None


def _a_images(cx, p, side2, q):
    """Vertices of ``p``'s A-face glued to the two allowed apexes of ``side2``."""
    tpl2 = cx.templates[side2[0]]
    images = []
    for u in q.allowed[side2[1]]:
        pos = tpl2.position(side2[1], u)
        _, pos_a = cx.map_position(side2, pos)
        images.append(cx.face_vertices(p.cell, p.a)[pos_a])
    return images


def step3_a_glued_to_b(cx, patterns, asg, rng):
    """Fix B-faces of cells whose A-face is glued to a B-face; return deferred sides."""
    deferred = {}
    for c in sorted(patterns):
        p = patterns[c]
        hit = _b_partner(cx, patterns, p)
        if hit is None:
            continue
        side2, q = hit
        known = asg.vertex_on(side2)
        if known is not None and known not in q.allowed[side2[1]]:
            raise RestrictionViolation(
                f"B-face {side2} has apex {known} outside its allowed pair {q.allowed[side2[1]]}")
        if side2[0] == c:
            asg.notes.append(f"cell {c}: A-face glued to its own B-face {side2[1]}")
        v1, v2 = _a_images(cx, p, side2, q)
        for b in p.bs:
            if asg.is_assigned((c, b)):
                continue
            touching = [v for v in (v1, v2) if v in p.allowed[b]]
            if len(touching) == 1:
                asg.set((c, b), touching[0], "step3")
            elif not touching:
                asg.set((c, b), p.allowed[b][rng.randrange(2)], "step3-random")
            else:
                deferred[(c, b)] = side2
    return deferred


@dataclass
class AmbiguousEdgeFan:
    edge_class: int
    members: tuple     # B-face sides f_0, ..., f_{k-1}
    ends: tuple


def find_ambiguous_fans(cx, patterns, asg, deferred):
    """Group deferred B-faces into cyclic fans around their ambiguous edges.

    ``deferred`` maps each deferred side to the B-face side glued to its
    cell's A-face (the face it waits on). Chains that end at an assigned
    face, or at a face that propagation will reach, are not fans.
    """
    for c in sorted(patterns):
        for b in patterns[c].bs:
            side = (c, b)
            if asg.is_assigned(side) or side in deferred:
                continue
            if _b_partner(cx, patterns, patterns[c]) is not None:
                raise DanglingBFace(f"B-face {side} is unassigned after step 3 but not deferred")
    state = {}
    fans = []
    for start in sorted(deferred):
        path = []
        cur = start
        while cur in deferred and cur not in state:
            state[cur] = "open"
            path.append(cur)
            cur = deferred[cur]
        if state.get(cur) == "open":
            cyc = path[path.index(cur):]
            fans.append(_make_fan(cx, patterns, cyc))
        for s in path:
            state[s] = "done"
    return fans


def _make_fan(cx, patterns, members):
    classes = set()
    for c, b in members:
        x, y = patterns[c].allowed[b]
        classes.add(cx.edge_class_of(c, x, y))
    if len(classes) != 1:
        raise DanglingBFace(f"fan members {members} lie on different edge classes {sorted(classes)}")
    e = classes.pop()
    return AmbiguousEdgeFan(e, tuple(members), cx.ends_of_edge[e])


def step4_resolve_fans(cx, patterns, fans, asg, rng):
    for fan in fans:
        if len(fan.ends) != 2:
            raise FoldedEdge(f"ambiguous edge class {fan.edge_class} has a single end")
        end = fan.ends[rng.randrange(2)]
        for c, b in fan.members:
            x, y = patterns[c].allowed[b]
            v = x if cx.end_of(c, x, y) == end else y
            asg.set((c, b), v, "step4")


def step5_propagate(cx, patterns, asg, rng):
    pending = sorted(patterns)
    progress = True
    while pending and progress:
        progress = False
        still = []
        for c in pending:
            p = patterns[c]
            v = asg.vertex_on((c, p.a))
            if v is None:
                still.append(c)
                continue
            for b in p.bs:
                side = (c, b)
                current = asg.vertex_on(side)
                if v in p.allowed[b]:
                    if current is None:
                        asg.set(side, v, "step5")
                    elif current != v:
                        raise RestrictionViolation(
                            f"B-face {side} has apex {current}, cell {c} needs {v}")
                elif current is None:
                    asg.set(side, p.allowed[b][rng.randrange(2)], "step5-random")
            asg.cell_apex[c] = v
            progress = True
        pending = still
    if not asg.total:
        missing = [tc.id for tc in cx.two_cells if tc.id not in asg.apex]
        raise PropagationStalled(f"two-cells {missing} left unassigned")


def assign_dodecahedral(cx, seed=0):
    if any(t.kind != "dodecahedron" for t in cx.templates):
        raise UnsupportedTemplate("dodecahedral mode needs every cell to be a dodecahedron")
    own = compute_ownership(cx, seed)
    rng = random.Random(seed)
    asg = DiagonalAssignment(cx, own)
    settled = step1_common_vertex(cx, own, asg, rng)
    owned = owned_faces(own, cx.n_cells)
    patterns = {c: classify_abd(cx.templates[c], c, owned[c])
                for c in range(cx.n_cells) if c not in settled}
    step2_random_d(cx, patterns, asg, rng)
    deferred = step3_a_glued_to_b(cx, patterns, asg, rng)
    fans = find_ambiguous_fans(cx, patterns, asg, deferred)
    step4_resolve_fans(cx, patterns, fans, asg, rng)
    step5_propagate(cx, patterns, asg, rng)
    asg.patterns = patterns
    asg.fans = fans
    return asg


MODES = ("triangle", "dodecahedral", "oracle")


def choose_mode(cx):
    if all(t.is_triangle_faced for t in cx.templates):
        return "triangle"
    if all(t.kind == "dodecahedron" for t in cx.templates):
        return "dodecahedral"
    return "oracle"


def assign_all(cx, mode="auto", seed=0, budget=None):
    """Dispatch to the triangle path, the five-step construction or the oracle.

    The result always satisfies the cone condition on every cell; this is
    re-checked before returning.
    """
    from .coning import check_lemma_condition, cell_face_apexes

    if mode == "auto":
        mode = choose_mode(cx)
    if mode == "triangle":
        asg = assign_triangle_cells(cx)
    elif mode == "dodecahedral":
        asg = assign_dodecahedral(cx, seed)
    elif mode == "oracle":
        from .oracle import oracle_solve, DEFAULT_BUDGET

        result = oracle_solve(cx, budget=budget or DEFAULT_BUDGET)
        if result.assignment is None:
            raise PropagationStalled(f"oracle found no assignment ({result.nodes} nodes)")
        asg = result.assignment
    else:
        raise ValueError(f"unknown mode {mode!r}")
    apexes = asg.face_apexes()
    for c in range(cx.n_cells):
        v = check_lemma_condition(cx.templates[c], cell_face_apexes(apexes, c), cell=c)
        asg.cell_apex.setdefault(c, v)
    return asg
