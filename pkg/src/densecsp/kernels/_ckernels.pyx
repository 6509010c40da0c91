# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_pykernels`` for the reference semantics."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, int32_t, uint8_t

cnp.import_array()

NAME = "cython"


def greedy_level1(const uint8_t[:, :, :, ::1] T, const uint8_t[:, ::1] S,
                  const int64_t[::1] weights):
    cdef Py_ssize_t na = T.shape[0], nb = T.shape[1], q = T.shape[2]
    cdef Py_ssize_t a, b, s, t
    cdef int64_t cnt, score, best
    cdef int64_t[::1] la = np.zeros(na, dtype=np.int64)
    cdef int64_t[::1] lb = np.zeros(nb, dtype=np.int64)
    cdef int64_t[:, ::1] col = np.zeros((nb, q), dtype=np.int64)
    cdef int64_t satisfied = 0
    cdef int64_t bestcol
    with nogil:
        for a in range(na):
            best = -1
            for s in range(q):
                score = 0
                for b in range(nb):
                    if weights[b] == 0:
                        continue
                    cnt = 0
                    for t in range(q):
                        if S[b, t] and T[a, b, s, t]:
                            cnt += 1
                    score += cnt * weights[b]
                if score > best:
                    best = score
                    la[a] = s
        for a in range(na):
            s = la[a]
            for b in range(nb):
                for t in range(q):
                    if T[a, b, s, t]:
                        col[b, t] += 1
        for b in range(nb):
            bestcol = -1
            lb[b] = 0
            for t in range(q):
                if S[b, t] and col[b, t] > bestcol:
                    bestcol = col[b, t]
                    lb[b] = t
            satisfied += col[b, lb[b]]
    return np.asarray(la), np.asarray(lb), int(satisfied)


def brute_force(const uint8_t[:, :, ::1] tables, const int64_t[::1] eu,
                const int64_t[::1] ev, const int64_t[:, ::1] domains,
                const int64_t[::1] sizes):
    """Odometer enumeration, last vertex fastest, with incremental counts.

    Only edges touching a changed vertex are re-scored per step.
    """
    cdef Py_ssize_t n = sizes.shape[0], m = eu.shape[0]
    cdef Py_ssize_t e, v, k, w, i
    cdef int64_t[::1] digit = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] lab = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] best_lab = np.zeros(n, dtype=np.int64)
    cdef uint8_t[::1] sat = np.zeros(max(m, 1), dtype=np.uint8)
    # incidence lists in CSR form
    cdef int64_t[::1] deg = np.zeros(n + 1, dtype=np.int64)
    for e in range(m):
        deg[eu[e] + 1] += 1
        deg[ev[e] + 1] += 1
    for v in range(n):
        deg[v + 1] += deg[v]
    cdef int64_t[::1] fill = np.array(deg[:n], dtype=np.int64)
    cdef int64_t[::1] inc = np.zeros(max(2 * m, 1), dtype=np.int64)
    for e in range(m):
        inc[fill[eu[e]]] = e
        fill[eu[e]] += 1
        inc[fill[ev[e]]] = e
        fill[ev[e]] += 1
    cdef int64_t total = 0, best = -1
    for v in range(n):
        if sizes[v] == 0:
            return -1, np.zeros(n, dtype=np.int64)
        lab[v] = domains[v, 0]
    for e in range(m):
        sat[e] = tables[e, lab[eu[e]], lab[ev[e]]]
        total += sat[e]
    with nogil:
        while True:
            if total > best:
                best = total
                for v in range(n):
                    best_lab[v] = lab[v]
            # advance odometer; every vertex whose digit changes is re-scored
            k = n - 1
            while k >= 0:
                digit[k] += 1
                if digit[k] < sizes[k]:
                    break
                digit[k] = 0
                k -= 1
            if k < 0:
                break
            for v in range(k, n):
                lab[v] = domains[v, digit[v]]
            for v in range(k, n):
                for i in range(deg[v], deg[v + 1]):
                    e = inc[i]
                    w = tables[e, lab[eu[e]], lab[ev[e]]]
                    if w != sat[e]:
                        total += w - sat[e]
                        sat[e] = <uint8_t>w
    return int(best), np.asarray(best_lab)


def square_tables(const int32_t[:, :, ::1] P, const uint8_t[:, ::1] adj, Py_ssize_t h):
    cdef Py_ssize_t nA = P.shape[0], nB = P.shape[1], q = P.shape[2]
    cdef Py_ssize_t r = nA - h
    cdef Py_ssize_t i, j, b, k, s, t, nc, ncand, c, nl
    C_arr = np.zeros((h, r, q, q), dtype=np.uint8)
    common_arr = np.zeros((h, r), dtype=np.int64)
    cdef uint8_t[:, :, :, ::1] C = C_arr
    cdef int64_t[:, ::1] common = common_arr
    cdef int64_t[::1] left = np.zeros(nB, dtype=np.int64)
    cdef int64_t[::1] cb = np.zeros(nB, dtype=np.int64)
    cdef int64_t[::1] cand = np.zeros(q, dtype=np.int64)
    cdef int32_t target
    with nogil:
        for i in range(h):
            nl = 0
            for b in range(nB):
                if adj[i, b]:
                    left[nl] = b
                    nl += 1
            for j in range(r):
                nc = 0
                for k in range(nl):
                    if adj[h + j, left[k]]:
                        cb[nc] = left[k]
                        nc += 1
                common[i, j] = nc
                if nc == 0:
                    for s in range(q):
                        for t in range(q):
                            C[i, j, s, t] = 1
                    continue
                for s in range(q):
                    # survivors after the first common neighbour, then filtered
                    target = P[i, cb[0], s]
                    ncand = 0
                    for t in range(q):
                        if P[h + j, cb[0], t] == target:
                            cand[ncand] = t
                            ncand += 1
                    k = 1
                    while k < nc and ncand > 0:
                        b = cb[k]
                        target = P[i, b, s]
                        c = 0
                        for t in range(ncand):
                            if P[h + j, b, cand[t]] == target:
                                cand[c] = cand[t]
                                c += 1
                        ncand = c
                        k += 1
                    for t in range(ncand):
                        C[i, j, s, cand[t]] = 1
    return C_arr.view(bool), common_arr
