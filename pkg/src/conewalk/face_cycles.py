"""Face cycles of a complex whose cells have opposite-face pairs, and ownership.

Walking through a cell means entering through one face and leaving through
its opposite face. Recording the face we leave through (the *exit side*) at
each step gives a permutation ``step(side) = opposite(partner(side))`` on the
set of all (cell, face) sides. Each orbit of ``step`` is an oriented face
cycle; the orbit of the partner sides is the same cycle traversed backwards.
Choosing an orientation is choosing one of the two orbits, and the sides in
the chosen orbit are the owned ones.
"""
from dataclasses import dataclass
import random

from .errors import UnsupportedTemplate


@dataclass(frozen=True)
class FaceCycle:
    two_cells: tuple     # 2-cell ids in traversal order
    exits: tuple         # exit side (cell, face) at each step; owned if oriented this way
    entries: tuple       # partner sides: the exits of the reversed traversal

    def __len__(self):
        return len(self.two_cells)

    def reversed(self):
        n = len(self.two_cells)
        # reversed traversal leaves through the entry sides, in reverse order
        order = [(-i) % n for i in range(n)]
        return FaceCycle(tuple(self.two_cells[i] for i in order),
                         tuple(self.entries[i] for i in order),
                         tuple(self.exits[i] for i in order))


def _step(cx, side):
    (c, f), _ = cx.partner(*side)
    return (c, cx.templates[c].opposite[f])


def compute_face_cycles(cx):
    """Partition the 2-cells into unoriented face cycles.

    Each cycle is returned in the orientation that owns its lexicographically
    smallest side; the reverse traversal is never listed separately.
    """
    for tpl in cx.templates:
        if tpl.opposite is None:
            raise UnsupportedTemplate(f"{tpl.kind} cells have no opposite-face pairs")
    done = set()
    cycles = []
    for side in cx.sides():
        if side in done:
            continue
        orbit = [side]
        nxt = _step(cx, side)
        while nxt != side:
            orbit.append(nxt)
            nxt = _step(cx, nxt)
        entries = [cx.partner(*s)[0] for s in orbit]
        done.update(orbit)
        done.update(entries)
        cyc = FaceCycle(tuple(cx.two_cell_of(*s) for s in orbit), tuple(orbit), tuple(entries))
        if min(entries) < min(orbit):
            cyc = cyc.reversed()
        cycles.append(cyc)
    return cycles


def orient_cycles(cycles, seed=0):
    """Pick one orientation per cycle.

    Seed 0 keeps the canonical orientation (smallest side owned); any other
    seed flips each cycle independently with a seeded coin.
    """
    if not seed:
        return list(cycles)
    rng = random.Random(seed)
    return [c.reversed() if rng.random() < 0.5 else c for c in cycles]


def derive_ownership(cycles):
    """Map each 2-cell id to its owning (cell, face) side."""
    owner = {}
    for cyc in cycles:
        for tc, side in zip(cyc.two_cells, cyc.exits):
            owner[tc] = side
    return owner


def ownership(cx, seed=0):
    return derive_ownership(orient_cycles(compute_face_cycles(cx), seed))


def owned_faces(ownership_map, n_cells):
    """Per cell, the set of face indices it owns."""
    out = [set() for _ in range(n_cells)]
    for c, f in ownership_map.values():
        out[c].add(f)
    return out
