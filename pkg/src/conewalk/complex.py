"""Glued cell complexes and their quotient structure.

A complex is a list of cells (each referencing a :class:`PolyhedronTemplate`)
together with face gluings. Building one validates closedness and the gluing
maps, then derives the 2-cells, the edge classes, the edge ends and the ideal
vertex classes by union-find. All derived ids are numbered in lexicographic
order of their first representative, so they do not depend on the order in
which gluings were listed.
"""
from dataclasses import dataclass, field

from scipy.cluster.hierarchy import DisjointSet

from .errors import (CorrespondenceNotDihedral, DoubleGluing, OpenComplex,
                     SelfGluedFace, SizeMismatch)
from .templates import PolyhedronTemplate, build_template


@dataclass(frozen=True)
class FaceGluing:
    """``side_a`` face position ``j`` is glued to ``side_b`` position ``correspondence[j]``."""

    side_a: tuple
    side_b: tuple
    correspondence: tuple
    line: int = field(default=None, compare=False)


def dihedral_step(perm):
    """Return +1/-1 if ``perm`` is a rotation/reflection of the polygon, else None."""
    m = len(perm)
    if sorted(perm) != list(range(m)):
        return None
    for step in (1, -1):
        if all((perm[(j + 1) % m] - perm[j]) % m == step % m for j in range(m)):
            return step
    return None


def invert(perm):
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


@dataclass(frozen=True)
class TwoCell:
    id: int
    reps: tuple      # ((cell, face), (cell, face)), lexicographically ordered
    maps: tuple      # maps[k][j]: position j on reps[k] -> position on reps[1-k]


class CellComplex:
    """Immutable closed cell complex with derived quotient data."""

    def __init__(self, templates, gluings):
        self.templates = tuple(templates)
        self.gluings = tuple(gluings)
        self._derive()

    @property
    def n_cells(self):
        return len(self.templates)

    def sides(self):
        for c, tpl in enumerate(self.templates):
            for f in range(len(tpl.faces)):
                yield (c, f)

    def face_vertices(self, cell, face):
        return self.templates[cell].faces[face]

    def partner(self, cell, face):
        """``(other_side, position_map)`` for the face glued to ``(cell, face)``."""
        return self._partner[(cell, face)]

    def two_cell_of(self, cell, face):
        return self._two_cell_of[(cell, face)]

    def map_position(self, side, pos):
        """Position on the partner face corresponding to ``pos`` on ``side``."""
        other, pmap = self._partner[side]
        return other, pmap[pos]

    def _derive(self):
        partner = {}
        for g in self.gluings:
            partner[g.side_a] = (g.side_b, tuple(g.correspondence))
            partner[g.side_b] = (g.side_a, invert(g.correspondence))
        self._partner = partner

        two_cells = []
        of = {}
        for side in self.sides():
            if side in of:
                continue
            other, pmap = partner[side]
            tc = TwoCell(len(two_cells), (side, other), (pmap, invert(pmap)))
            two_cells.append(tc)
            of[side] = of[other] = tc.id
        self.two_cells = tuple(two_cells)
        self._two_cell_of = of

        edges = DisjointSet()
        ends = DisjointSet()
        verts = DisjointSet()
        for c, tpl in enumerate(self.templates):
            for e, (a, b) in enumerate(tpl.edges):
                edges.add((c, e))
                ends.add((c, e, a))
                ends.add((c, e, b))
            for v in range(tpl.n_vertices):
                verts.add((c, v))
        for g in self.gluings:
            (ca, fa), (cb, fb) = g.side_a, g.side_b
            face_a = self.templates[ca].faces[fa]
            face_b = self.templates[cb].faces[fb]
            m = len(face_a)
            for j in range(m):
                a0, a1 = face_a[j], face_a[(j + 1) % m]
                b0, b1 = face_b[g.correspondence[j]], face_b[g.correspondence[(j + 1) % m]]
                ea = self.templates[ca].edge_id(a0, a1)
                eb = self.templates[cb].edge_id(b0, b1)
                edges.merge((ca, ea), (cb, eb))
                ends.merge((ca, ea, a0), (cb, eb, b0))
                ends.merge((ca, ea, a1), (cb, eb, b1))
                verts.merge((ca, a0), (cb, b0))

        def number(ds, keys):
            ids, out = {}, {}
            for k in keys:
                root = ds[k]
                if root not in ids:
                    ids[root] = len(ids)
                out[k] = ids[root]
            return out, len(ids)

        edge_keys = [(c, e) for c, tpl in enumerate(self.templates) for e in range(len(tpl.edges))]
        end_keys = [(c, e, v) for c, tpl in enumerate(self.templates)
                    for e, pair in enumerate(tpl.edges) for v in pair]
        vert_keys = [(c, v) for c, tpl in enumerate(self.templates) for v in range(tpl.n_vertices)]
        self.edge_class, self.n_edge_classes = number(edges, edge_keys)
        self.edge_end, self.n_edge_ends = number(ends, end_keys)
        self.vertex_class, self.n_vertex_classes = number(verts, vert_keys)

        self.ends_of_edge = [set() for _ in range(self.n_edge_classes)]
        for (c, e, v), end in self.edge_end.items():
            self.ends_of_edge[self.edge_class[(c, e)]].add(end)
        self.ends_of_edge = tuple(tuple(sorted(s)) for s in self.ends_of_edge)

    def end_of(self, cell, a, b):
        """Edge-end class of endpoint ``a`` of the cell edge ``ab``."""
        tpl = self.templates[cell]
        return self.edge_end[(cell, tpl.edge_id(a, b), a)]

    def edge_class_of(self, cell, a, b):
        return self.edge_class[(cell, self.templates[cell].edge_id(a, b))]

    def folded_edges(self):
        """Edge classes identified with themselves reversed (only one end)."""
        return [i for i, ends in enumerate(self.ends_of_edge) if len(ends) != 2]

    def kinds(self):
        return {t.kind for t in self.templates}


def _as_template(cell):
    if isinstance(cell, PolyhedronTemplate):
        return cell
    return build_template(cell)


def build_complex(cells, gluings):
    """Validate the gluing data and return the derived :class:`CellComplex`.

    ``cells`` is a sequence of templates or kind names; the cell id is the
    position in the sequence. ``gluings`` are :class:`FaceGluing` objects or
    ``(side_a, side_b, correspondence)`` triples.
    """
    templates = [_as_template(c) for c in cells]
    glued = {}
    checked = []
    for g in gluings:
        if not isinstance(g, FaceGluing):
            g = FaceGluing(tuple(g[0]), tuple(g[1]), tuple(g[2]))
        for (c, f) in (g.side_a, g.side_b):
            if not (0 <= c < len(templates)) or not (0 <= f < len(templates[c].faces)):
                raise OpenComplex(f"gluing refers to nonexistent face ({c}, {f})", line=g.line)
        if g.side_a == g.side_b:
            raise SelfGluedFace(f"face {g.side_a} glued to itself", line=g.line)
        for side in (g.side_a, g.side_b):
            if side in glued:
                raise DoubleGluing(f"face {side} glued more than once", line=g.line)
            glued[side] = g
        ma = len(templates[g.side_a[0]].faces[g.side_a[1]])
        mb = len(templates[g.side_b[0]].faces[g.side_b[1]])
        if ma != mb:
            raise SizeMismatch(f"faces {g.side_a} and {g.side_b} have sizes {ma} and {mb}",
                               line=g.line)
        if len(g.correspondence) != ma or dihedral_step(g.correspondence) is None:
            raise CorrespondenceNotDihedral(
                f"correspondence {list(g.correspondence)} is not a dihedral symmetry of the {ma}-gon",
                line=g.line)
        checked.append(g)
    for c, tpl in enumerate(templates):
        for f in range(len(tpl.faces)):
            if (c, f) not in glued:
                raise OpenComplex(f"face ({c}, {f}) is not glued")
    return CellComplex(templates, checked)


@dataclass
class Report:
    cells: int
    two_cells: int
    edge_classes: int
    vertex_classes: int
    euler: int
    orientation_reversing: bool
    orientable: bool
    folded_edges: list
    link_euler: list
    findings: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.findings

    @property
    def manifold(self):
        """No folded edges and every vertex link is a torus or Klein bottle."""
        return not self.folded_edges and all(x == 0 for x in self.link_euler)

    def lines(self):
        yn = lambda b: "yes" if b else "no"
        out = [
            f"complex cells {self.cells} two_cells {self.two_cells} "
            f"edges {self.edge_classes} vertices {self.vertex_classes} euler {self.euler}",
            f"orientation_reversing {yn(self.orientation_reversing)} orientable {yn(self.orientable)} "
            f"folded_edges {len(self.folded_edges)} cusped_manifold {yn(self.manifold)}",
            "links " + " ".join(str(x) for x in self.link_euler),
        ]
        out += [f"finding {x}" for x in self.findings]
        return out


def _orientable(cx):
    sign = {}
    for start in range(cx.n_cells):
        if start in sign:
            continue
        sign[start] = 1
        stack = [start]
        while stack:
            c = stack.pop()
            for f in range(len(cx.templates[c].faces)):
                (c2, _), pmap = cx.partner(c, f)
                # a reflection (step -1) reverses boundary orientation, as it must
                want = sign[c] * -dihedral_step(pmap)
                if c2 not in sign:
                    sign[c2] = want
                    stack.append(c2)
                elif sign[c2] != want:
                    return False
    return True


def link_euler_characteristics(cx):
    """Euler characteristic of the link of each ideal vertex class."""
    nv = cx.n_vertex_classes
    faces = [0] * nv
    edges = [0] * nv
    vertices = [set() for _ in range(nv)]
    for (c, v), k in cx.vertex_class.items():
        faces[k] += 1
    for tc in cx.two_cells:
        c, f = tc.reps[0]
        for v in cx.face_vertices(c, f):
            edges[cx.vertex_class[(c, v)]] += 1
    for (c, e, v), end in cx.edge_end.items():
        vertices[cx.vertex_class[(c, v)]].add(end)
    return [len(vertices[k]) - edges[k] + faces[k] for k in range(nv)]


def validate_complex(cx):
    """Re-check the complex invariants and summarize the quotient."""
    findings = []
    seen = {}
    for tc in cx.two_cells:
        for side in tc.reps:
            seen[side] = seen.get(side, 0) + 1
        if tc.reps[0] == tc.reps[1]:
            findings.append(f"two-cell {tc.id} has a self-glued face")
    for side in cx.sides():
        if seen.get(side, 0) != 1:
            findings.append(f"face {side} lies in {seen.get(side, 0)} two-cells")
    for g in cx.gluings:
        if dihedral_step(g.correspondence) is None:
            findings.append(f"gluing {g.side_a}-{g.side_b} is not dihedral")
    counts = {}
    for ends in cx.ends_of_edge:
        counts[len(ends)] = counts.get(len(ends), 0) + 1
    folded = cx.folded_edges()
    euler = cx.n_vertex_classes - cx.n_edge_classes + len(cx.two_cells) - cx.n_cells
    return Report(
        cells=cx.n_cells,
        two_cells=len(cx.two_cells),
        edge_classes=cx.n_edge_classes,
        vertex_classes=cx.n_vertex_classes,
        euler=euler,
        orientation_reversing=all(dihedral_step(g.correspondence) == -1 for g in cx.gluings),
        orientable=_orientable(cx),
        folded_edges=folded,
        link_euler=link_euler_characteristics(cx),
        findings=findings,
    )
