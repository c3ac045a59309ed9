"""Subdividing cells into tetrahedra by coning, and assembling the gluing table.

A face with apex ``p`` is fanned into triangles ``(p, p+i, p+i+1)``. If a cell
vertex ``v`` lies on every triangle of every face touching it, coning the
face triangles that miss ``v`` to ``v`` subdivides the cell. Tetrahedron
corners 0-2 are the face triangle's vertices in ascending cell-local id and
corner 3 is the cone apex.
"""
from dataclasses import dataclass, field
from itertools import combinations

from scipy.cluster.hierarchy import DisjointSet

from .errors import IncompatibleDiagonals, NoLemmaVertex


def fan_triangles(face, apex):
    """Triangles (as vertex triples in face order) of the fan from ``apex``."""
    m = len(face)
    p = face.index(apex)
    return [(face[p], face[(p + i) % m], face[(p + i + 1) % m]) for i in range(1, m - 1)]


def through_vertices(face, apex):
    """Vertices lying on every triangle of the fan from ``apex``."""
    common = set(face)
    for t in fan_triangles(face, apex):
        common &= set(t)
    return common


def cell_face_apexes(face_apexes, cell):
    return {f: v for (c, f), v in face_apexes.items() if c == cell}


def lemma_vertices(template, apexes):
    """All vertices satisfying the cone condition, ascending."""
    out = []
    for v, faces in enumerate(template.faces_at_vertex):
        ok = True
        for f in faces:
            face = template.faces[f]
            if len(face) == 3:
                continue
            if f not in apexes or v not in through_vertices(face, apexes[f]):
                ok = False
                break
        if ok:
            out.append(v)
    return out


def check_lemma_condition(template, apexes, cell=None):
    """Smallest vertex ``v`` such that every face touching ``v`` is fanned through ``v``."""
    found = lemma_vertices(template, apexes)
    if not found:
        raise NoLemmaVertex(f"cell {cell}: no vertex meets the diagonals of all its faces")
    return found[0]


@dataclass(frozen=True)
class Tetrahedron:
    cell: int
    corners: tuple     # cell-local vertex ids; corners[3] is the cone apex


@dataclass
class Cone:
    """Tetrahedra of one coned cell plus the lookup of its boundary triangles."""

    cell: int
    apex: int
    tetrahedra: list
    internal: list                 # ((i, face), (j, face), perm) with local tet indices
    boundary: dict                 # frozenset(triangle) -> (local tet index, tet face)
    triangles: dict = field(default_factory=dict)   # face -> list of triangles


def cone_cell(template, cell, apex, apexes):
    """Cone the face triangulation of one cell to ``apex``.

    ``apexes`` maps each non-triangle face index to its apex vertex.
    """
    if apex not in lemma_vertices(template, apexes):
        raise NoLemmaVertex(f"cell {cell}: vertex {apex} does not satisfy the cone condition")
    triangles = {}
    for f, face in enumerate(template.faces):
        triangles[f] = fan_triangles(face, apexes.get(f, face[0])) if len(face) > 3 else [tuple(face)]
    tets = []
    tet_of = {}
    by_edge = {}
    for f in range(len(template.faces)):
        for t in triangles[f]:
            key = frozenset(t)
            for e in combinations(sorted(t), 2):
                by_edge.setdefault(e, []).append(key)
            if apex in t:
                continue
            tet_of[key] = len(tets)
            tets.append(Tetrahedron(cell, tuple(sorted(t)) + (apex,)))

    boundary = {}
    internal = []
    for key, i in tet_of.items():
        boundary[key] = (i, 3)
    for e, keys in sorted(by_edge.items(), key=lambda kv: kv[0]):
        if apex in e:
            continue
        if len(keys) != 2:
            raise NoLemmaVertex(f"cell {cell}: edge {e} is not shared by two face triangles")
        k1, k2 = keys
        in1, in2 = k1 in tet_of, k2 in tet_of
        if in1 and in2:
            i, j = tet_of[k1], tet_of[k2]
            z1 = next(iter(k1 - set(e)))
            z2 = next(iter(k2 - set(e)))
            c1, c2 = tets[i].corners, tets[j].corners
            perm = tuple(c2.index(z2 if x == z1 else x) for x in c1)
            internal.append(((i, c1.index(z1)), (j, c2.index(z2)), perm))
        elif in1 or in2:
            inner, absorbed = (k1, k2) if in1 else (k2, k1)
            i = tet_of[inner]
            z = next(iter(inner - set(e)))
            boundary[absorbed] = (i, tets[i].corners.index(z))
    return Cone(cell, apex, tets, internal, boundary, triangles)


@dataclass
class Triangulation:
    """Tetrahedra with face pairings.

    ``neighbors[t][f]`` is the tet across face ``f`` (opposite corner ``f``)
    and ``gluings[t][f]`` maps corner ``i`` of ``t`` to corner ``gluings[t][f][i]``
    of that neighbor.
    """

    neighbors: list
    gluings: list
    tetrahedra: list = field(default=None, compare=False)

    @property
    def size(self):
        return len(self.neighbors)

    def check(self):
        """List of invariant violations (empty when valid)."""
        problems = []
        n = self.size
        for t in range(n):
            for f in range(4):
                u = self.neighbors[t][f]
                g = self.gluings[t][f]
                if u is None or not (0 <= u < n):
                    problems.append(f"tet {t} face {f} unglued")
                    continue
                if sorted(g) != [0, 1, 2, 3]:
                    problems.append(f"tet {t} face {f}: gluing {g} is not a permutation")
                    continue
                f2 = g[f]
                if u == t and f2 == f:
                    problems.append(f"tet {t} face {f} glued to itself")
                    continue
                back = self.gluings[u][f2]
                if self.neighbors[u][f2] != t or any(back[g[i]] != i for i in range(4)):
                    problems.append(f"tet {t} face {f}: pairing is not involutive")
        return problems

    def edge_classes(self):
        """Union-find of the 6 edges of each tetrahedron through the face pairings."""
        ds = DisjointSet((t, e) for t in range(self.size) for e in combinations(range(4), 2))
        for t in range(self.size):
            for f in range(4):
                u, g = self.neighbors[t][f], self.gluings[t][f]
                for i, j in combinations([k for k in range(4) if k != f], 2):
                    a, b = sorted((g[i], g[j]))
                    ds.merge((t, (i, j)), (u, (a, b)))
        return ds.subsets()

    def vertex_classes(self):
        ds = DisjointSet((t, v) for t in range(self.size) for v in range(4))
        for t in range(self.size):
            for f in range(4):
                u, g = self.neighbors[t][f], self.gluings[t][f]
                for i in range(4):
                    if i != f:
                        ds.merge((t, i), (u, g[i]))
        return ds.subsets()

    def euler(self):
        n = self.size
        return len(self.vertex_classes()) - len(self.edge_classes()) + 2 * n - n


def induced_triangles(cx, face_apexes, side):
    c, f = side
    face = cx.face_vertices(c, f)
    if len(face) == 3:
        return [tuple(face)]
    if side not in face_apexes:
        raise IncompatibleDiagonals(f"face {side} has no apex")
    return fan_triangles(face, face_apexes[side])


def check_compatibility(cx, face_apexes):
    """Raise IncompatibleDiagonals unless both sides of each 2-cell agree."""
    for tc in cx.two_cells:
        s0, s1 = tc.reps
        face0 = cx.face_vertices(*s0)
        face1 = cx.face_vertices(*s1)
        pos0 = {v: i for i, v in enumerate(face0)}
        mapped = {frozenset(face1[tc.maps[0][pos0[v]]] for v in t)
                  for t in induced_triangles(cx, face_apexes, s0)}
        other = {frozenset(t) for t in induced_triangles(cx, face_apexes, s1)}
        if mapped != other:
            raise IncompatibleDiagonals(f"two-cell {tc.id}: sides {s0} and {s1} disagree on diagonals")


def assemble_triangulation(cx, face_apexes, cones):
    """Glue the coned cells across the complex's face pairings."""
    check_compatibility(cx, face_apexes)
    offset = []
    tets = []
    for cone in cones:
        offset.append(len(tets))
        tets.extend(cone.tetrahedra)
    n = len(tets)
    neighbors = [[None] * 4 for _ in range(n)]
    gluings = [[None] * 4 for _ in range(n)]

    def join(t, f, u, perm):
        neighbors[t][f] = u
        gluings[t][f] = tuple(perm)
        inv = [0] * 4
        for i, p in enumerate(perm):
            inv[p] = i
        neighbors[u][perm[f]] = t
        gluings[u][perm[f]] = tuple(inv)

    for cone, off in zip(cones, offset):
        for (i, fi), (j, _), perm in cone.internal:
            join(off + i, fi, off + j, perm)

    for tc in cx.two_cells:
        (c0, f0), (c1, f1) = tc.reps
        face0 = cx.face_vertices(c0, f0)
        face1 = cx.face_vertices(c1, f1)
        pos0 = {v: k for k, v in enumerate(face0)}
        for t in cones[c0].triangles[f0]:
            image = {v: face1[tc.maps[0][pos0[v]]] for v in t}
            i, fi = cones[c0].boundary[frozenset(t)]
            j, fj = cones[c1].boundary[frozenset(image.values())]
            ti, tj = offset[c0] + i, offset[c1] + j
            ci, cj = tets[ti].corners, tets[tj].corners
            perm = [fj if k == fi else cj.index(image[x]) for k, x in enumerate(ci)]
            join(ti, fi, tj, perm)
    return Triangulation(neighbors, gluings, tets)


def classify_edges(cx, tri):
    """Count triangulation edge classes by origin: polyhedron edge, face diagonal or cone edge."""
    counts = {"polyhedron": 0, "diagonal": 0, "interior": 0}
    for members in tri.edge_classes():
        tags = set()
        for t, (i, j) in members:
            tet = tri.tetrahedra[t]
            tpl = cx.templates[tet.cell]
            a, b = tet.corners[i], tet.corners[j]
            if (min(a, b), max(a, b)) in tpl.edge_index:
                tags.add("polyhedron")
            elif any(a in face and b in face for face in tpl.faces):
                tags.add("diagonal")
            else:
                tags.add("interior")
        if len(tags) != 1:
            raise IncompatibleDiagonals(f"edge class mixes origins {sorted(tags)}")
        counts[tags.pop()] += 1
    return counts


def triangulate(cx, asg):
    """Cone every cell of an assigned complex and assemble the result."""
    face_apexes = asg.face_apexes() if hasattr(asg, "face_apexes") else dict(asg)
    check_compatibility(cx, face_apexes)
    cones = []
    for c, tpl in enumerate(cx.templates):
        apexes = cell_face_apexes(face_apexes, c)
        cones.append(cone_cell(tpl, c, check_lemma_condition(tpl, apexes, cell=c), apexes))
    return assemble_triangulation(cx, face_apexes, cones), cones
