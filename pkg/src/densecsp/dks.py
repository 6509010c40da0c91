"""Densest k-Subgraph through a random-partition reduction to Max 2-CSP.

Vertices of the graph are split uniformly at random into ``k`` non-empty
parts.  Each part becomes a CSP variable whose label picks one vertex of
the part; a constraint between two parts accepts exactly the label pairs
naming adjacent vertices.  Any assignment therefore names ``k`` distinct
vertices, and the edges it satisfies are exactly the edges those vertices
induce.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .core import SolveReport, evaluate, make_instance
from .densifier import solve_dense_csp
from .errors import PartitionRetryError
from .freegame import DEFAULT_MAX_LEVEL, DEFAULT_MAX_WORK
from .oracle import adjacency

MAX_PARTITION_RETRIES = 1000


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    edges: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        object.__setattr__(self, "edges", e)

    def adjacency(self):
        return adjacency(self.n, self.edges)


def induced_edges(graph, vertices):
    idx = np.asarray(sorted(vertices), dtype=np.int64)
    return int(graph.adjacency()[np.ix_(idx, idx)].sum()) // 2


@dataclass(frozen=True, eq=False)
class DksMap:
    """``members[i, l]`` is the graph vertex named by label ``l`` of part ``i``."""
    members: np.ndarray
    parts: tuple


def reduce_dks(graph, k, seed=0, max_retries=MAX_PARTITION_RETRIES):
    """Random partition into ``k`` parts; returns ``(instance, DksMap)``.

    The instance keeps only part pairs with at least one allowed label pair,
    so it may have no edges at all (e.g. for an empty graph).
    """
    N = graph.n
    if not 2 <= k <= N:
        raise ValueError(f"k={k} outside 2..{N}")
    rng = np.random.default_rng(seed)
    for _ in range(max_retries):
        part = rng.integers(k, size=N)
        if len(np.unique(part)) == k:
            break
    else:
        raise PartitionRetryError(
            f"no partition with {k} non-empty parts after {max_retries} draws; "
            "try another seed")
    parts = tuple(tuple(int(v) for v in np.flatnonzero(part == i)) for i in range(k))
    q = max(len(p) for p in parts)
    # labels past a part's size alias its last vertex
    members = np.array([[p[min(l, len(p) - 1)] for l in range(q)] for p in parts],
                       dtype=np.int64)
    adj = graph.adjacency()
    iu, iv = np.triu_indices(k, 1)
    tables = adj[members[iu][:, :, None], members[iv][:, None, :]]
    live = tables.any(axis=(1, 2))
    edges = np.stack([iu[live], iv[live]], axis=1)
    inst = make_instance(q, k, edges, tables[live], check=False)
    return inst, DksMap(members, parts)


def decode_dks(dmap, phi):
    """The ``k`` graph vertices named by ``phi``, one per part."""
    phi = np.asarray(phi, dtype=np.int64)
    return sorted(int(v) for v in dmap.members[np.arange(len(phi)), phi])


def default_trials(N, c=3):
    return c * max(1, math.ceil(math.log2(N)))


def solve_dks(graph, k, gamma=None, level=None, trials=None, seed=0,
              max_work=DEFAULT_MAX_WORK, max_level=DEFAULT_MAX_LEVEL, backend=None):
    """Repeat reduce -> dense CSP solver -> decode and keep the densest subgraph.

    Returns ``(vertices, report)``; the report's assignment is the winning
    trial's CSP assignment and ``satisfied`` its induced edge count.
    """
    trials = trials or default_trials(graph.n)
    t0 = time.perf_counter()
    seeds = np.random.SeedSequence(seed).generate_state(trials, dtype=np.uint64)
    best = None
    history = []
    for t, trial_seed in enumerate(int(s) for s in seeds):
        inst, dmap = reduce_dks(graph, k, seed=trial_seed)
        if inst.m == 0:
            phi = np.zeros(k, dtype=np.int64)
            lvl = 0
        else:
            rep = solve_dense_csp(inst, gamma=gamma, level=level, seed=trial_seed,
                                  max_work=max_work, max_level=max_level, backend=backend)
            phi, lvl = rep.assignment, rep.level
        vertices = decode_dks(dmap, phi)
        count = induced_edges(graph, vertices)
        assert count == (evaluate(inst, phi) if inst.m else 0)
        history.append(count)
        if best is None or count > best[0]:
            best = (count, vertices, phi, lvl, t)
    count, vertices, phi, lvl, winner = best
    report = SolveReport(
        assignment=phi, satisfied=count, edges=k * (k - 1) // 2, seed=seed, level=lvl,
        elapsed=time.perf_counter() - t0,
        extra={"vertices": vertices, "trials": trials, "winning_trial": winner,
               "trial_edges": history,
               "vacuous": len(graph.edges) == 0})
    return vertices, report
