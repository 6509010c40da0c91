"""Pure numpy implementations of the hot kernels.

Semantics match ``_ckernels.pyx`` exactly, including every tie-break, so
either backend can be swapped in without changing results.
"""
import numpy as np

NAME = "python"


def greedy_level1(T, S, weights):
    """Two-step greedy on a free game.

    T: ``(na, nb, q, q)`` uint8 tables oriented A -> B.
    S: ``(nb, q)`` uint8 candidate masks for B.
    weights: ``(nb,)`` int64, ``L / |S_b|`` (0 for empty ``S_b``).

    Returns ``(labels_a, labels_b, satisfied)``.
    """
    T = np.asarray(T, dtype=bool)
    S = np.asarray(S, dtype=bool)
    na, nb, q, _ = T.shape
    live = np.flatnonzero(weights)
    if len(live):
        counts = np.count_nonzero(T[:, live] & S[live][None, :, None, :], axis=3)
        # object-dtype weights keep the sum exact when L overflows int64
        w = weights[live]
        score = (counts.astype(w.dtype) * w[None, :, None]).sum(axis=1)
        labels_a = np.argmax(score, axis=1)
    else:
        labels_a = np.zeros(na, dtype=np.int64)
    # col[b, s] = number of a satisfied when b takes s
    col = np.count_nonzero(T[np.arange(na), :, labels_a, :], axis=0)
    masked = np.where(S, col, -1)
    labels_b = np.argmax(masked, axis=1)
    labels_b[~S.any(axis=1)] = 0
    satisfied = int(col[np.arange(nb), labels_b].sum())
    return labels_a.astype(np.int64), labels_b.astype(np.int64), satisfied


def brute_force(tables, eu, ev, domains, sizes, chunk=1 << 15):
    """Exhaustive maximisation over the product of per-vertex domains.

    domains: ``(n, q)`` int64, row v lists the allowed labels of v in its first
    ``sizes[v]`` entries.  Enumeration is lexicographic with the last vertex
    varying fastest, so the first maximiser is the lexicographically smallest.
    """
    tables = np.asarray(tables, dtype=bool)
    n = len(sizes)
    total = 1
    for s in sizes:
        total *= int(s)
    radix = np.ones(n, dtype=np.int64)
    for v in range(n - 2, -1, -1):
        radix[v] = radix[v + 1] * sizes[v + 1]
    e_idx = np.arange(len(eu))
    best, best_k = -1, 0
    for start in range(0, total, chunk):
        ks = np.arange(start, min(total, start + chunk), dtype=np.int64)
        digits = (ks[:, None] // radix[None, :]) % np.asarray(sizes)[None, :]
        labels = np.take_along_axis(domains, digits.T, axis=1).T
        sat = np.count_nonzero(
            tables[e_idx[None, :], labels[:, eu], labels[:, ev]], axis=1)
        i = int(np.argmax(sat))
        if sat[i] > best:
            best, best_k = int(sat[i]), int(ks[i])
    digits = (best_k // radix) % np.asarray(sizes)
    labels = domains[np.arange(n), digits]
    return best, labels.astype(np.int64)


def square_tables(P, adj, h, block=64):
    """Agreement tables of a squared projection game.

    P: ``(nA, nB, q)`` int32 projections, -1 where ``(a, b)`` is not an edge.
    adj: ``(nA, nB)`` uint8 adjacency.  Rows ``0..h-1`` form the left half.

    Returns ``(C, common)`` with ``C[i, j, s, t] = 1`` iff labels ``s`` on
    left vertex ``i`` and ``t`` on right vertex ``h + j`` project to the
    same label at every common neighbour, and ``common[i, j]`` the number of
    those neighbours.
    """
    P = np.asarray(P)
    adj = np.asarray(adj, dtype=bool)
    nA, nB, q = P.shape
    r = nA - h
    adjf = adj.astype(np.float32)
    common = (adjf[:h] @ adjf[h:].T).astype(np.int64)

    def onehot(rows):
        # X[(a, s), (b, t)] = 1 iff (a, b) is an edge and P[a, b, s] == t
        X = np.zeros((len(rows), q, nB, q), dtype=np.float32)
        sub = P[rows].transpose(0, 2, 1)  # (a, s, b)
        a_i, s_i, b_i = np.nonzero(sub >= 0)
        X[a_i, s_i, b_i, sub[a_i, s_i, b_i]] = 1.0
        return X.reshape(len(rows) * q, nB * q)

    right = onehot(np.arange(h, nA))
    C = np.zeros((h, r, q, q), dtype=bool)
    for lo in range(0, h, block):
        hi = min(h, lo + block)
        agree = onehot(np.arange(lo, hi)) @ right.T
        agree = agree.reshape(hi - lo, q, r, q).transpose(0, 2, 1, 3)
        C[lo:hi] = agree == common[lo:hi, :, None, None]
    return C, common
