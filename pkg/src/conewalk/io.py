"""Text documents, built-in fixtures and the random complex generator.

Complex document::

    # comment
    cells 2
    cell 0 dodecahedron
    cell 1 dodecahedron
    glue 0 3 1 7 : 0 4 3 2 1

``glue a fa b fb : i0 ... i(m-1)`` sends position ``j`` of face ``fa`` of cell
``a`` to position ``i_j`` of face ``fb`` of cell ``b``.

Triangulation document::

    tets 2
    tet 0 : 1 1 1 1 : 1032 0213 2103 3120

``tet t : n0 n1 n2 n3 : g0 g1 g2 g3`` gives the neighbor across each face and
the corner map as a string of four image digits.
"""
import random
import re

from .complex import FaceGluing, build_complex
from .coning import Triangulation
from .errors import ConewalkError, ParseError, UnknownExample
from .templates import KINDS, build_template

_TOKEN = re.compile(r"\S+")


def _tokens(line):
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]


def _content_lines(text):
    for n, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].rstrip("\r")
        if line.strip():
            yield n, line


def _int(tok, n, what):
    word, col = tok
    try:
        value = int(word)
    except ValueError:
        raise ParseError(f"expected integer {what}, got {word!r}", line=n, column=col) from None
    if value < 0:
        raise ParseError(f"{what} must be non-negative", line=n, column=col)
    return value


def parse_complex_document(text):
    """Parse a complex document into ``(kinds, gluings)`` without validating gluings."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("missing 'cells' header", line=1, column=1)
    n, line = lines[0]
    toks = _tokens(line)
    if toks[0][0] != "cells" or len(toks) != 2:
        raise ParseError("expected 'cells <n>'", line=n, column=toks[0][1])
    n_cells = _int(toks[1], n, "cell count")
    kinds = [None] * n_cells
    gluings = []
    for n, line in lines[1:]:
        toks = _tokens(line)
        head, col = toks[0]
        if head == "cell":
            if len(toks) != 3:
                raise ParseError("expected 'cell <id> <kind>'", line=n, column=col)
            cid = _int(toks[1], n, "cell id")
            if cid >= n_cells:
                raise ParseError(f"cell id {cid} out of range", line=n, column=toks[1][1])
            if kinds[cid] is not None:
                raise ParseError(f"cell {cid} declared twice", line=n, column=toks[1][1])
            if toks[2][0] not in KINDS:
                raise ParseError(f"unknown polyhedron kind {toks[2][0]!r}", line=n, column=toks[2][1])
            kinds[cid] = toks[2][0]
        elif head == "glue":
            if len(toks) < 7 or toks[5][0] != ":":
                raise ParseError("expected 'glue <a> <fa> <b> <fb> : <perm>'", line=n, column=col)
            a, fa, b, fb = (_int(t, n, "index") for t in toks[1:5])
            perm = tuple(_int(t, n, "position") for t in toks[6:])
            gluings.append(FaceGluing((a, fa), (b, fb), perm, line=n))
        else:
            raise ParseError(f"unknown record {head!r}", line=n, column=col)
    missing = [i for i, k in enumerate(kinds) if k is None]
    if missing:
        raise ParseError(f"cells {missing} not declared", line=lines[0][0], column=1)
    return kinds, gluings


def parse_complex(text):
    kinds, gluings = parse_complex_document(text)
    return build_complex(kinds, gluings)


def write_complex(kinds, gluings, comment=None):
    out = []
    if comment:
        out += [f"# {c}" for c in comment.split("\n")]
    out.append(f"cells {len(kinds)}")
    out += [f"cell {i} {k}" for i, k in enumerate(kinds)]
    for g in gluings:
        if not isinstance(g, FaceGluing):
            g = FaceGluing(*g)
        (a, fa), (b, fb) = g.side_a, g.side_b
        out.append(f"glue {a} {fa} {b} {fb} : " + " ".join(str(i) for i in g.correspondence))
    return "\n".join(out) + "\n"


def complex_to_document(cx, comment=None):
    return write_complex([t.kind for t in cx.templates], cx.gluings, comment)


def write_triangulation(tri):
    out = [f"tets {tri.size}"]
    for t in range(tri.size):
        nbrs = " ".join(str(u) for u in tri.neighbors[t])
        perms = " ".join("".join(str(i) for i in g) for g in tri.gluings[t])
        out.append(f"tet {t} : {nbrs} : {perms}")
    return "\n".join(out) + "\n"


def parse_triangulation(text):
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("missing 'tets' header", line=1, column=1)
    n, line = lines[0]
    toks = _tokens(line)
    if toks[0][0] != "tets" or len(toks) != 2:
        raise ParseError("expected 'tets <n>'", line=n, column=toks[0][1])
    size = _int(toks[1], n, "tetrahedron count")
    neighbors = [None] * size
    gluings = [None] * size
    for n, line in lines[1:]:
        toks = _tokens(line)
        if toks[0][0] != "tet" or len(toks) != 12 or toks[2][0] != ":" or toks[7][0] != ":":
            raise ParseError("expected 'tet <id> : n0 n1 n2 n3 : g0 g1 g2 g3'", line=n, column=toks[0][1])
        t = _int(toks[1], n, "tet id")
        if t >= size or neighbors[t] is not None:
            raise ParseError(f"bad or repeated tet id {t}", line=n, column=toks[1][1])
        neighbors[t] = [_int(tok, n, "neighbor") for tok in toks[3:7]]
        perms = []
        for word, col in toks[8:12]:
            if len(word) != 4 or not word.isdigit() or sorted(word) != list("0123"):
                raise ParseError(f"bad corner map {word!r}", line=n, column=col)
            perms.append(tuple(int(ch) for ch in word))
        gluings[t] = perms
    missing = [t for t in range(size) if neighbors[t] is None]
    if missing:
        raise ParseError(f"tets {missing} missing", line=lines[0][0], column=1)
    return Triangulation(neighbors, gluings)


def random_gluings(n_cells, kind, rng):
    tpl = build_template(kind)
    sides = [(c, f) for c in range(n_cells) for f in range(len(tpl.faces))]
    rng.shuffle(sides)
    gluings = []
    for a, b in zip(sides[0::2], sides[1::2]):
        m = len(tpl.faces[a[1]])
        r = rng.randrange(m)
        step = rng.choice((1, -1))
        a, b = min(a, b), max(a, b)
        gluings.append(FaceGluing(a, b, tuple((r + step * j) % m for j in range(m))))
    return sorted(gluings, key=lambda g: g.side_a)


def generate_random_complex(n_cells, kind="dodecahedron", seed=0):
    """Seeded random closed complex as a document.

    The face pairing is a uniform random perfect matching and each gluing map
    a uniform random dihedral symmetry. Draws with an edge glued to itself
    reversed are rejected, so every edge class has two ends.
    """
    if n_cells < 1:
        raise ValueError("n_cells must be at least 1")
    rng = random.Random(f"{kind}:{n_cells}:{seed}")
    while True:
        gluings = random_gluings(n_cells, kind, rng)
        cx = build_complex([kind] * n_cells, gluings)
        if not cx.folded_edges():
            break
    return write_complex([kind] * n_cells, gluings,
                         comment=f"random {kind} complex, {n_cells} cells, seed {seed}")


# The single-cusp and two-cusp fixtures came from a search over random
# gluings; every vertex link has Euler characteristic 0.
_FIXTURES = {
    "double-dodecahedron": (
        "two dodecahedra glued face-to-face by the identity",
        ["dodecahedron"] * 2,
        [((0, f), (1, f), (0, 1, 2, 3, 4)) for f in range(12)],
    ),
    "double-cube": (
        "two cubes glued face-to-face by the identity",
        ["cube"] * 2,
        [((0, f), (1, f), (0, 1, 2, 3)) for f in range(6)],
    ),
    "two-tet": (
        "two tetrahedra, one cusp, two edges of degree 6",
        ["tetrahedron"] * 2,
        [((0, 0), (1, 3), (1, 0, 2)), ((0, 1), (1, 1), (2, 1, 0)),
         ((0, 2), (1, 0), (0, 2, 1)), ((0, 3), (1, 2), (1, 0, 2))],
    ),
    "self-dodecahedron": (
        "one dodecahedron with opposite faces paired, one cusp, five edges of degree 6",
        ["dodecahedron"],
        [((0, f), (0, 11 - f), tuple((r - j) % 5 for j in range(5)))
         for f, r in zip(range(6), (0, 1, 3, 4, 1, 2))],
    ),
    "octahedron": (
        "one octahedron, one cusp, three edges of degree 4",
        ["octahedron"],
        [((0, 0), (0, 2), (0, 2, 1)), ((0, 1), (0, 6), (2, 1, 0)),
         ((0, 3), (0, 4), (1, 0, 2)), ((0, 5), (0, 7), (2, 1, 0))],
    ),
    "self-cube": (
        "one cube, one cusp, two edges of degree 6",
        ["cube"],
        [((0, 0), (0, 2), (2, 1, 0, 3)), ((0, 1), (0, 4), (0, 3, 2, 1)),
         ((0, 3), (0, 5), (3, 2, 1, 0))],
    ),
    "two-cube": (
        "two cubes, two cusps, four edges of degree 6",
        ["cube"] * 2,
        [((0, 0), (0, 1), (1, 0, 3, 2)), ((0, 2), (0, 3), (2, 1, 0, 3)),
         ((0, 4), (1, 0), (2, 1, 0, 3)), ((0, 5), (1, 1), (0, 3, 2, 1)),
         ((1, 2), (1, 4), (0, 3, 2, 1)), ((1, 3), (1, 5), (3, 2, 1, 0))],
    ),
}


def builtin_names():
    return sorted(_FIXTURES)


def builtin_example(name):
    try:
        comment, kinds, gluings = _FIXTURES[name]
    except KeyError:
        raise UnknownExample(f"unknown example {name!r}; choose from {', '.join(builtin_names())}") from None
    return write_complex(kinds, gluings, comment=f"{name}: {comment}")


__all__ = [
    "ConewalkError", "builtin_example", "builtin_names", "complex_to_document",
    "generate_random_complex", "parse_complex", "parse_complex_document",
    "parse_triangulation", "write_complex", "write_triangulation",
]
