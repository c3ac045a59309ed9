# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_search.py``; see that module for the encoding."""
import numpy as np


cdef inline bint _apply(int k, int[::1] viol_start, int[::1] viol_list, int[::1] viol,
                        int[::1] gcell, int[::1] adm):
    cdef int i, g, c
    cdef bint ok = True
    for i in range(viol_start[k], viol_start[k + 1]):
        g = viol_list[i]
        viol[g] += 1
        if viol[g] == 1:
            c = gcell[g]
            adm[c] -= 1
            if adm[c] == 0:
                ok = False
    return ok


cdef inline void _undo(int k, int[::1] viol_start, int[::1] viol_list, int[::1] viol,
                       int[::1] gcell, int[::1] adm):
    cdef int i, g
    for i in range(viol_start[k], viol_start[k + 1]):
        g = viol_list[i]
        viol[g] -= 1
        if viol[g] == 0:
            adm[gcell[g]] += 1


def search(gcell_in, adm_in, tc_cells_in, val_start_in, viol_start_in, viol_list_in, long long budget):
    cdef int[::1] gcell = np.ascontiguousarray(gcell_in, dtype=np.intc)
    cdef int[::1] adm = np.array(adm_in, dtype=np.intc)
    cdef int[::1] tc_cells = np.ascontiguousarray(tc_cells_in, dtype=np.intc)
    cdef int[::1] val_start = np.ascontiguousarray(val_start_in, dtype=np.intc)
    cdef int[::1] viol_start = np.ascontiguousarray(viol_start_in, dtype=np.intc)
    cdef int[::1] viol_list = np.ascontiguousarray(viol_list_in, dtype=np.intc)
    cdef int n_tc = val_start.shape[0] - 1
    cdef int[::1] viol = np.zeros(gcell.shape[0], dtype=np.intc)
    cdef int[::1] assigned = np.full(n_tc, -1, dtype=np.intc)
    cdef int[::1] order = np.full(n_tc, -1, dtype=np.intc)
    cdef int[::1] next_val = np.zeros(n_tc, dtype=np.intc)
    cdef long long nodes = 0
    cdef int depth = 0
    cdef int t, k, best, best_key, a, b, key
    cdef bint moved

    while True:
        if depth == n_tc:
            return 1, [assigned[t] - val_start[t] for t in range(n_tc)], nodes
        if order[depth] < 0:
            best = -1
            best_key = 0
            for t in range(n_tc):
                if assigned[t] >= 0:
                    continue
                a = adm[tc_cells[2 * t]]
                b = adm[tc_cells[2 * t + 1]]
                key = a if a < b else b
                if best < 0 or key < best_key:
                    best = t
                    best_key = key
            order[depth] = best
            next_val[depth] = val_start[best]
        t = order[depth]
        if assigned[t] >= 0:
            _undo(assigned[t], viol_start, viol_list, viol, gcell, adm)
            assigned[t] = -1
        k = next_val[depth]
        moved = False
        while k < val_start[t + 1]:
            nodes += 1
            if nodes > budget:
                return -1, None, nodes
            if _apply(k, viol_start, viol_list, viol, gcell, adm):
                assigned[t] = k
                next_val[depth] = k + 1
                depth += 1
                moved = True
                break
            _undo(k, viol_start, viol_list, viol, gcell, adm)
            k += 1
        if not moved:
            order[depth] = -1
            depth -= 1
            if depth < 0:
                return 0, None, nodes
