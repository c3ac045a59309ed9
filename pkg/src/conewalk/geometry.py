"""Per-cell numeric certificate that coned tetrahedra are not flat.

Regular ideal cells are placed with their vertices at the unit-sphere
directions of the canonical template coordinates, projected stereographically
from the north pole to the extended complex plane. A tetrahedron with ideal
vertices ``p0..p3`` has shape ``z``, the image of ``p3`` under the Mobius map
sending ``p0, p1, p2`` to ``0, 1, inf``; it is flat exactly when ``Im z = 0``.
"""
from dataclasses import dataclass, field
import cmath
import math

from .errors import DegenerateTuple, FlatTetrahedron

INF = math.inf
DEGENERACY_TOL = 1e-12


def is_infinite(p):
    return cmath.isinf(p)


def stereographic(direction):
    x, y, z = direction
    r = math.sqrt(x * x + y * y + z * z)
    x, y, z = x / r, y / r, z / r
    if 1 - z < 1e-15:
        return INF
    return complex(x, y) / (1 - z)


def canonical_ideal_coordinates(template):
    """Ideal vertex positions of the regular ideal solid, in template vertex order."""
    return [stereographic(p) for p in template.coordinates]


def tetra_shape(p0, p1, p2, p3):
    pts = (p0, p1, p2, p3)
    for i in range(4):
        for j in range(i + 1, 4):
            a, b = pts[i], pts[j]
            if (is_infinite(a) and is_infinite(b)) or (
                    not is_infinite(a) and not is_infinite(b) and abs(a - b) < DEGENERACY_TOL):
                raise DegenerateTuple(f"corners {i} and {j} coincide")
    # drop the two factors involving a point at infinity; they cancel in the limit
    if is_infinite(p0):
        return (p1 - p2) / (p3 - p2)
    if is_infinite(p1):
        return (p3 - p0) / (p3 - p2)
    if is_infinite(p2):
        return (p3 - p0) / (p1 - p0)
    if is_infinite(p3):
        return (p1 - p2) / (p1 - p0)
    return ((p3 - p0) * (p1 - p2)) / ((p3 - p2) * (p1 - p0))


def oriented_corners(template, tet):
    """Cone tetrahedron corners as (face triangle counterclockwise from outside, apex)."""
    tri = set(tet.corners[:3])
    face = next(f for f in template.faces if tri <= set(f))
    # increasing face position is a cyclic order, hence counterclockwise
    return tuple(sorted(tri, key=face.index)) + (tet.corners[3],)


@dataclass
class CellCertificate:
    cell: int
    kind: str
    min_abs_im: float
    signs: set
    shapes: list = field(repr=False, default_factory=list)


@dataclass
class NonflatReport:
    cells: list
    offenders: list
    eps: float

    @property
    def min_abs_im(self):
        return min((c.min_abs_im for c in self.cells), default=math.inf)

    @property
    def consistently_oriented(self):
        return all(len(c.signs) == 1 for c in self.cells)

    def lines(self):
        out = [f"geometry min_abs_im {self.min_abs_im:.12g} eps {self.eps:g} "
               f"oriented {'yes' if self.consistently_oriented else 'no'} offenders {len(self.offenders)}"]
        for c in self.cells:
            out.append(f"geometry cell {c.cell} {c.kind} min_abs_im {c.min_abs_im:.12g}")
        return out


def cell_shapes(template, tetrahedra, points):
    """Shape of every tetrahedron of one cone, corners oriented consistently."""
    return [tetra_shape(*(points[v] for v in oriented_corners(template, tet))) for tet in tetrahedra]


def verify_nonflat(cx, cones, eps=1e-6, coordinates=None):
    """Check ``|Im z| >= eps`` for every coned tetrahedron of every cell.

    ``coordinates`` optionally maps cell ids to user-supplied ideal points;
    other cells use the regular ideal position of their template.
    """
    coordinates = coordinates or {}
    cells = []
    offenders = []
    for cone in cones:
        tpl = cx.templates[cone.cell]
        points = coordinates.get(cone.cell) or canonical_ideal_coordinates(tpl)
        shapes = cell_shapes(tpl, cone.tetrahedra, points)
        ims = [abs(z.imag) for z in shapes]
        for k, (tet, im) in enumerate(zip(cone.tetrahedra, ims)):
            if im < eps:
                offenders.append((cone.cell, k, tet.corners, im))
        cells.append(CellCertificate(cone.cell, tpl.kind, min(ims, default=math.inf),
                                     {z.imag > 0 for z in shapes}, shapes))
    if offenders:
        raise FlatTetrahedron(offenders)
    return NonflatReport(cells, offenders, eps)


def export_coordinates(cx, cones, coordinates=None):
    """Per-cell tetrahedron vertex coordinates as plain data (for JSON export)."""
    coordinates = coordinates or {}

    def enc(p):
        return "inf" if is_infinite(p) else [p.real, p.imag]

    out = []
    for cone in cones:
        tpl = cx.templates[cone.cell]
        points = coordinates.get(cone.cell) or canonical_ideal_coordinates(tpl)
        out.append({
            "cell": cone.cell,
            "kind": tpl.kind,
            "apex": cone.apex,
            "tetrahedra": [{"corners": list(t.corners), "points": [enc(points[v]) for v in t.corners]}
                           for t in cone.tetrahedra],
        })
    return out
