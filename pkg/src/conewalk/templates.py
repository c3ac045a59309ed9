"""Canonical combinatorial Platonic solids.

Every template is generated from explicit coordinates so the labeling is
reproducible without hand-entered tables:

* vertices are numbered by ascending lexicographic coordinate order,
* faces are the planar vertex sets of the convex hull, numbered by ascending
  lexicographic order of their sorted vertex lists,
* each face is listed counterclockwise seen from outside, starting at its
  smallest vertex index,
* ``opposite[f]`` is the face whose centroid is the negated centroid of ``f``
  (absent for the tetrahedron).
"""
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
import math

import numpy as np

from .errors import UnsupportedTemplate

PHI = (1 + math.sqrt(5)) / 2
KINDS = ("tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron")

_TOL = 1e-9


def _signed_perms(base):
    """All sign choices of the nonzero entries of ``base``."""
    out = set()
    nz = [i for i, x in enumerate(base) if x != 0]
    for signs in range(1 << len(nz)):
        p = list(base)
        for k, i in enumerate(nz):
            if signs >> k & 1:
                p[i] = -p[i]
        out.add(tuple(p))
    return out


def _cyclic(base):
    a, b, c = base
    return [(a, b, c), (c, a, b), (b, c, a)]


def canonical_coordinates(kind):
    """Raw (unnormalized) vertex coordinates of a Platonic solid, sorted."""
    if kind == "tetrahedron":
        pts = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    elif kind == "cube":
        pts = _signed_perms((1, 1, 1))
    elif kind == "octahedron":
        pts = set()
        for base in _cyclic((1, 0, 0)):
            pts |= _signed_perms(base)
    elif kind == "dodecahedron":
        pts = set(_signed_perms((1, 1, 1)))
        for base in _cyclic((0, 1 / PHI, PHI)):
            pts |= _signed_perms(base)
    elif kind == "icosahedron":
        pts = set()
        for base in _cyclic((0, 1, PHI)):
            pts |= _signed_perms(base)
    else:
        raise UnsupportedTemplate(f"unknown polyhedron kind {kind!r}")
    return sorted(tuple(float(x) for x in p) for p in pts)


@dataclass(frozen=True)
class PolyhedronTemplate:
    kind: str
    n_vertices: int
    faces: tuple
    opposite: tuple = None
    edges: tuple = field(default=None)
    coordinates: tuple = field(default=None, compare=False)

    def __post_init__(self):
        if self.edges is None:
            es = set()
            for face in self.faces:
                for a, b in zip(face, face[1:] + face[:1]):
                    es.add((min(a, b), max(a, b)))
            object.__setattr__(self, "edges", tuple(sorted(es)))

    # small derived tables, computed lazily and cached on the instance
    @property
    def edge_index(self):
        try:
            return self._edge_index
        except AttributeError:
            idx = {e: i for i, e in enumerate(self.edges)}
            object.__setattr__(self, "_edge_index", idx)
            return idx

    @property
    def faces_at_vertex(self):
        try:
            return self._faces_at_vertex
        except AttributeError:
            fav = [[] for _ in range(self.n_vertices)]
            for f, face in enumerate(self.faces):
                for v in face:
                    fav[v].append(f)
            fav = tuple(tuple(x) for x in fav)
            object.__setattr__(self, "_faces_at_vertex", fav)
            return fav

    def edge_id(self, a, b):
        return self.edge_index[(min(a, b), max(a, b))]

    def face_size(self, f):
        return len(self.faces[f])

    def position(self, f, v):
        """Position of vertex ``v`` in the cyclic list of face ``f``."""
        return self.faces[f].index(v)

    def neighbors(self, f):
        """Faces sharing an edge with ``f``."""
        face = self.faces[f]
        out = []
        for a, b in zip(face, face[1:] + face[:1]):
            for g in self.faces_at_vertex[a]:
                if g != f and b in self.faces[g]:
                    out.append(g)
        return out

    @property
    def is_triangle_faced(self):
        return all(len(face) == 3 for face in self.faces)

    def check(self):
        """Raise ``ValueError`` if a structural invariant fails."""
        for face in self.faces:
            if len(set(face)) != len(face) or len(face) < 3:
                raise ValueError(f"face {face} is not a simple cycle")
        count = {}
        for face in self.faces:
            for a, b in zip(face, face[1:] + face[:1]):
                e = (min(a, b), max(a, b))
                count[e] = count.get(e, 0) + 1
        if any(c != 2 for c in count.values()):
            raise ValueError("every edge must lie in exactly two faces")
        if self.opposite is not None:
            for f, g in enumerate(self.opposite):
                if g == f or self.opposite[g] != f:
                    raise ValueError("opposite map is not a fixed-point-free involution")
                if set(self.faces[f]) & set(self.faces[g]):
                    raise ValueError(f"opposite faces {f}, {g} share a vertex")


def _hull_faces(points):
    pts = np.asarray(points)
    n = len(pts)
    found = {}
    for i, j, k in combinations(range(n), 3):
        normal = np.cross(pts[j] - pts[i], pts[k] - pts[i])
        norm = np.linalg.norm(normal)
        if norm < _TOL:
            continue
        normal /= norm
        d = pts @ normal - pts[i] @ normal
        if d.max() < _TOL:
            normal = -normal
            d = -d
        elif d.min() > -_TOL:
            pass
        else:
            continue
        # all points now satisfy d >= 0 w.r.t. inward normal (-normal outward)
        on_plane = tuple(int(x) for x in np.flatnonzero(np.abs(d) < _TOL))
        found.setdefault(on_plane, -normal)
    return found


def _ccw_from_outside(pts, vertex_ids, outward):
    centroid = pts[list(vertex_ids)].mean(axis=0)
    u = pts[vertex_ids[0]] - centroid
    u /= np.linalg.norm(u)
    w = np.cross(outward, u)

    def angle(v):
        r = pts[v] - centroid
        return math.atan2(r @ w, r @ u)

    ordered = sorted(vertex_ids, key=angle)
    start = ordered.index(min(ordered))
    return tuple(ordered[start:] + ordered[:start])


@lru_cache(maxsize=None)
def build_template(kind):
    """Deterministic combinatorial template of the named Platonic solid."""
    coords = canonical_coordinates(kind)
    pts = np.array(coords)
    hull = _hull_faces(pts)
    faces = []
    centroids = []
    for vertex_set in sorted(hull):
        outward = hull[vertex_set]
        faces.append(_ccw_from_outside(pts, list(vertex_set), outward))
        centroids.append(pts[list(vertex_set)].mean(axis=0))
    opposite = None
    if kind != "tetrahedron":
        opposite = []
        for c in centroids:
            matches = [g for g, d in enumerate(centroids) if np.allclose(d, -c, atol=1e-9)]
            opposite.append(matches[0])
        opposite = tuple(opposite)
    tpl = PolyhedronTemplate(kind, len(coords), tuple(faces), opposite,
                             coordinates=tuple(coords))
    tpl.check()
    return tpl


def custom_template(faces, opposite=None):
    """Template for a user-supplied combinatorial polyhedron."""
    faces = tuple(tuple(f) for f in faces)
    n = 1 + max(max(f) for f in faces)
    tpl = PolyhedronTemplate("custom", n, faces,
                             tuple(opposite) if opposite is not None else None)
    tpl.check()
    return tpl


def opposite_face(template, face):
    if template.opposite is None:
        raise UnsupportedTemplate(f"{template.kind} has no opposite-face pairs")
    return template.opposite[face]
