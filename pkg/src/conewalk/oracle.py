"""Complete backtracking search over apex assignments.

Each 2-cell is a variable whose values are the distinct fan triangulations of
its face. Every cell keeps a count of vertices that could still serve as its
cone vertex; assigning a face rules out the face vertices its fan does not
pass through, and a cell whose count reaches zero prunes the branch. The
next variable is a 2-cell on the most constrained cell; values are tried in
ascending apex position.

The search loop lives in a compiled kernel when available, with an
equivalent pure-Python kernel as fallback. Set ``CONEWALK_PURE_PYTHON=1`` to
force the fallback.
"""
from dataclasses import dataclass, field
import os

from . import _search
from .assigner import DiagonalAssignment, assign_dodecahedral, common_vertex, classify_abd
from .coning import (cell_face_apexes, check_compatibility, fan_triangles, lemma_vertices,
                     through_vertices)
from .errors import BudgetExceeded, ConewalkError
from .face_cycles import ownership, owned_faces

DEFAULT_BUDGET = 10 ** 7

try:
    from . import _search_ext
except ImportError:   # extension not built
    _search_ext = None

if _search_ext is not None and not os.environ.get("CONEWALK_PURE_PYTHON"):
    KERNEL = "cython"
else:
    KERNEL = "python"


def kernel(name=None):
    name = name or KERNEL
    if name == "cython":
        if _search_ext is None:
            raise ImportError("compiled search kernel is not built")
        return _search_ext.search
    return _search.search


def domain(cx, tc, allowed=None):
    """Apex positions on ``reps[0]`` giving pairwise distinct triangulations."""
    c, f = cx.two_cells[tc].reps[0]
    face = cx.face_vertices(c, f)
    seen = set()
    out = []
    for p in range(len(face)):
        if allowed is not None and p not in allowed:
            continue
        key = frozenset(frozenset(t) for t in fan_triangles(face, face[p]))
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


def encode(cx, restriction=None):
    """Flatten the complex into the kernel's integer arrays."""
    restriction = restriction or {}
    offset = []
    gcell = []
    for c, tpl in enumerate(cx.templates):
        offset.append(len(gcell))
        gcell.extend([c] * tpl.n_vertices)
    adm = [tpl.n_vertices for tpl in cx.templates]
    tc_cells, val_start, viol_start, viol_list, values = [], [0], [0], [], []
    for tc in cx.two_cells:
        tc_cells.extend([tc.reps[0][0], tc.reps[1][0]])
        vals = domain(cx, tc.id, restriction.get(tc.id))
        values.append(vals)
        for p in vals:
            for s, side in enumerate(tc.reps):
                face = cx.face_vertices(*side)
                pos = p if s == 0 else tc.maps[0][p]
                through = through_vertices(face, face[pos])
                viol_list.extend(offset[side[0]] + v for v in face if v not in through)
            viol_start.append(len(viol_list))
        val_start.append(val_start[-1] + len(vals))
    return (gcell, adm, tc_cells, val_start, viol_start, viol_list), values


@dataclass
class OracleResult:
    status: str                   # "sat" or "unsat"
    nodes: int
    assignment: DiagonalAssignment = None
    kernel: str = field(default=KERNEL)

    def lines(self):
        if self.status == "unsat":
            return [f"unsat nodes {self.nodes}"]
        return [f"sat nodes {self.nodes}"] + self.assignment.dump()


def oracle_solve(cx, restriction=None, budget=DEFAULT_BUDGET, kernel_name=None):
    """Find apexes satisfying the cone condition on every cell, or prove none exist.

    ``restriction`` optionally maps 2-cell ids to allowed apex positions on
    the 2-cell's first side. Raises :class:`BudgetExceeded` when the node
    budget runs out.
    """
    arrays, values = encode(cx, restriction)
    name = kernel_name or KERNEL
    if any(not v for v in values):
        return OracleResult("unsat", 0, None, name)
    status, choice, nodes = kernel(name)(*arrays, budget)
    if status < 0:
        raise BudgetExceeded(nodes)
    if status == 0:
        return OracleResult("unsat", nodes, None, name)
    asg = DiagonalAssignment(cx)
    for tc, k in enumerate(choice):
        asg.set_position(tc, values[tc][k], "oracle")
    apexes = asg.face_apexes()
    for c, tpl in enumerate(cx.templates):
        asg.cell_apex[c] = lemma_vertices(tpl, cell_face_apexes(apexes, c))[0]
    return OracleResult("sat", nodes, asg, name)


def b_face_restriction(cx, seed=0):
    """Allowed apex positions for every B-face 2-cell of a dodecahedral complex."""
    own = ownership(cx, seed)
    owned = owned_faces(own, cx.n_cells)
    out = {}
    for c, tpl in enumerate(cx.templates):
        if common_vertex(tpl, owned[c]) is not None:
            continue
        pattern = classify_abd(tpl, c, owned[c])
        for b, pair in pattern.allowed.items():
            tc = cx.two_cell_of(c, b)
            ref = cx.two_cells[tc].reps[0]
            positions = set()
            for v in pair:
                pos = tpl.position(b, v)
                if ref != (c, b):
                    pos = cx.map_position((c, b), pos)[1]
                positions.add(pos)
            out[tc] = positions
    return out


def assignment_ok(cx, asg):
    """Soundness check shared by both routes: compatibility plus the cone condition."""
    if asg is None or not asg.total:
        return False
    apexes = asg.face_apexes()
    try:
        check_compatibility(cx, apexes)
    except ConewalkError:
        return False
    return all(lemma_vertices(tpl, cell_face_apexes(apexes, c))
               for c, tpl in enumerate(cx.templates))


@dataclass
class CrossCheck:
    assigner_ok: bool
    oracle_status: str
    oracle_ok: bool
    nodes: int
    fatal: list

    @property
    def consistent(self):
        return not self.fatal


def cross_check(cx, seed=0, budget=DEFAULT_BUDGET):
    """Run the five-step assigner and the oracle and compare them."""
    fatal = []
    try:
        asg = assign_dodecahedral(cx, seed)
        a_ok = assignment_ok(cx, asg)
        if not a_ok:
            fatal.append("assigner output fails the checker")
    except ConewalkError as exc:
        a_ok = False
        fatal.append(f"assigner failed on a valid complex: {exc}")
    res = oracle_solve(cx, budget=budget)
    o_ok = res.status == "sat" and assignment_ok(cx, res.assignment)
    if res.status == "sat" and not o_ok:
        fatal.append("oracle output fails the checker")
    if res.status == "unsat" and a_ok:
        fatal.append("oracle reports unsat but the assigner succeeded")
    return CrossCheck(a_ok, res.status, o_ok, res.nodes, fatal)
