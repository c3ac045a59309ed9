"""Pure-Python depth-first search kernel for the oracle.

Must stay step-for-step identical to ``_search_ext.pyx`` so both kernels
visit the same nodes and return the same assignment.

Encoding (all flat int sequences):

* ``gcell[g]``: cell owning global vertex ``g``.
* ``adm[c]``: initial number of admissible cone vertices of cell ``c``.
* ``tc_cells[2*t], tc_cells[2*t+1]``: the cells on the two sides of 2-cell ``t``.
* ``val_start[t] .. val_start[t+1]``: value slots of 2-cell ``t``.
* ``viol_start[k] .. viol_start[k+1]``: global vertices ruled out by value slot ``k``.

Returns ``(status, choice, nodes)`` where status is 1 (found), 0 (exhausted)
or -1 (budget hit) and ``choice[t]`` is the chosen slot offset for ``t``.
"""


def search(gcell, adm, tc_cells, val_start, viol_start, viol_list, budget):
    n_tc = len(val_start) - 1
    viol = [0] * len(gcell)
    adm = list(adm)
    assigned = [-1] * n_tc
    order = [-1] * n_tc
    next_val = [0] * n_tc
    nodes = 0
    depth = 0

    def apply(k):
        ok = True
        for i in range(viol_start[k], viol_start[k + 1]):
            g = viol_list[i]
            viol[g] += 1
            if viol[g] == 1:
                c = gcell[g]
                adm[c] -= 1
                if adm[c] == 0:
                    ok = False
        return ok

    def undo(k):
        for i in range(viol_start[k], viol_start[k + 1]):
            g = viol_list[i]
            viol[g] -= 1
            if viol[g] == 0:
                adm[gcell[g]] += 1

    while True:
        if depth == n_tc:
            return 1, [assigned[t] - val_start[t] for t in range(n_tc)], nodes
        if order[depth] < 0:
            best, best_key = -1, None
            for t in range(n_tc):
                if assigned[t] >= 0:
                    continue
                a = adm[tc_cells[2 * t]]
                b = adm[tc_cells[2 * t + 1]]
                key = a if a < b else b
                if best < 0 or key < best_key:
                    best, best_key = t, key
            order[depth] = best
            next_val[depth] = val_start[best]
        t = order[depth]
        if assigned[t] >= 0:
            undo(assigned[t])
            assigned[t] = -1
        k = next_val[depth]
        moved = False
        while k < val_start[t + 1]:
            nodes += 1
            if nodes > budget:
                return -1, None, nodes
            if apply(k):
                assigned[t] = k
                next_val[depth] = k + 1
                depth += 1
                moved = True
                break
            undo(k)
            k += 1
        if not moved:
            order[depth] = -1
            depth -= 1
            if depth < 0:
                return 0, None, nodes
