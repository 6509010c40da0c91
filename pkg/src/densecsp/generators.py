"""Seeded instance generators used by the CLI, tests and benchmarks."""
import numpy as np

from .core import make_instance
from .dks import Graph


def _tables(rng, m, q, p_allow):
    return rng.random((m, q, q)) < p_allow


def planted_csp(n, q, p_edge=1.0, p_allow=0.3, seed=0, min_edges=1):
    """Random instance on ``G(n, p_edge)`` with a planted satisfying assignment.

    Each constraint allows the planted pair plus every other pair with
    probability ``p_allow``.  ``p_edge == 1`` yields a ``complete`` instance.
    Returns ``(instance, planted_labels)``.
    """
    rng = np.random.default_rng(seed)
    labels = rng.integers(q, size=n)
    iu, iv = np.triu_indices(n, 1)
    while True:
        keep = rng.random(len(iu)) < p_edge
        if keep.sum() >= min_edges:
            break
    edges = np.stack([iu[keep], iv[keep]], axis=1)
    tables = _tables(rng, len(edges), q, p_allow)
    tables[np.arange(len(edges)), labels[edges[:, 0]], labels[edges[:, 1]]] = True
    kind = "complete" if keep.all() else "general"
    return make_instance(q, n, edges, tables, kind=kind), labels


def random_csp(n, q, p_edge=0.6, p_allow=0.3, seed=0):
    """Random instance with no planted solution."""
    rng = np.random.default_rng(seed)
    iu, iv = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < p_edge
    if not keep.any():
        keep[rng.integers(len(iu))] = True
    edges = np.stack([iu[keep], iv[keep]], axis=1)
    kind = "complete" if keep.all() else "general"
    return make_instance(q, n, edges, _tables(rng, len(edges), q, p_allow), kind=kind)


def random_free_game(half, q, p_allow=0.4, seed=0, planted=False):
    """Free game on ``A = 0..half-1``, ``B = half..2half-1``.

    Returns ``(game, planted_labels or None)``.
    """
    rng = np.random.default_rng(seed)
    a, b = np.meshgrid(np.arange(half), np.arange(half, 2 * half), indexing="ij")
    edges = np.stack([a.ravel(), b.ravel()], axis=1)
    tables = _tables(rng, len(edges), q, p_allow)
    labels = None
    if planted:
        labels = rng.integers(q, size=2 * half)
        tables[np.arange(len(edges)), labels[edges[:, 0]], labels[edges[:, 1]]] = True
    return make_instance(q, 2 * half, edges, tables, kind="free-game"), labels


def random_graph(n, p, seed=0):
    rng = np.random.default_rng(seed)
    iu, iv = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < p
    return Graph(n, np.stack([iu[keep], iv[keep]], axis=1))


def planted_clique_graph(n, k, p, seed=0):
    """``G(n, p)`` plus a clique on ``k`` random vertices; returns ``(graph, clique)``."""
    rng = np.random.default_rng(seed)
    clique = np.sort(rng.choice(n, size=k, replace=False))
    adj = np.triu(rng.random((n, n)) < p, 1)
    for x in clique:
        for y in clique:
            if x < y:
                adj[x, y] = True
    iu, iv = np.nonzero(adj)
    return Graph(n, np.stack([iu, iv], axis=1)), clique.tolist()


def petersen_graph():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, np.array(outer + spokes + inner))
