"""Solve an arbitrary Max 2-CSP through a free game.

``densify`` copies V into both sides of a free game and fills every
non-edge with an always-false constraint.  After the free game is solved,
``round_assignment`` picks, for each vertex, either its A-copy label or its
B-copy label by a conditional-expectation sweep. The sweep keeps at least
the expected count of a fair coin flip per vertex, which is itself at least
a quarter of the free game's satisfied count.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bounds import PowerBound
from .core import SolveReport, density, evaluate, make_instance, pair_tables
from .freegame import (DEFAULT_MAX_LEVEL, DEFAULT_MAX_WORK, LevelParams,
                       approx_free_game)


@dataclass(frozen=True)
class DensifyMap:
    n: int

    def a_of(self, v):
        return v

    def b_of(self, v):
        return self.n + v

    def split(self, phi_prime):
        phi_prime = np.asarray(phi_prime, dtype=np.int64)
        return phi_prime[:self.n], phi_prime[self.n:]


def densify(inst):
    n, q = inst.n, inst.q
    a, b = np.meshgrid(np.arange(n), np.arange(n, 2 * n), indexing="ij")
    edges = np.stack([a.ravel(), b.ravel()], axis=1)
    tables = pair_tables(inst).reshape(n * n, q, q)
    game = make_instance(q, 2 * n, edges, tables, kind="free-game", check=False)
    return game, DensifyMap(n)


def _edge_lists(inst):
    """Per-vertex incident edges as ``(edge, other endpoint, vertex-is-first)``."""
    out = [[] for _ in range(inst.n)]
    for e, (u, v) in enumerate(inst.edges.tolist()):
        out[u].append((e, v, True))
        out[v].append((e, u, False))
    return out


def _lookup(tables, e, first, x, y):
    # x is the label of the vertex we are looking from
    return bool(tables[e, x, y]) if first else bool(tables[e, y, x])


def half_half_expectation(inst, cand_a, cand_b):
    """Exact expected satisfied count when each v takes cand_a[v] or cand_b[v] with prob 1/2."""
    u, v = inst.edges[:, 0], inst.edges[:, 1]
    e = np.arange(inst.m)
    total = 0
    for cu in (cand_a, cand_b):
        for cv in (cand_a, cand_b):
            total += int(inst.tables[e, np.asarray(cu)[u], np.asarray(cv)[v]].sum())
    return Fraction(total, 4)


def round_assignment(inst, dmap, phi_prime):
    """Derandomised 1/2-1/2 choice between the two copies of every vertex.

    Vertices are fixed in ascending order; each takes whichever copy's label
    maximises the conditional expectation (ties go to the A copy).
    """
    cand_a, cand_b = dmap.split(phi_prime)
    phi = np.zeros(inst.n, dtype=np.int64)
    tables = inst.tables
    for v, incident in enumerate(_edge_lists(inst)):
        options = (int(cand_a[v]), int(cand_b[v]))
        # 4 * conditional expectation over the edges touching v
        scores = []
        for x in options:
            s = 0
            for e, w, first in incident:
                if w < v:
                    s += 4 * _lookup(tables, e, first, x, phi[w])
                else:
                    s += 2 * (_lookup(tables, e, first, x, cand_a[w])
                              + _lookup(tables, e, first, x, cand_b[w]))
            scores.append(s)
        phi[v] = options[1] if scores[1] > scores[0] else options[0]
    return phi


def dense_guarantee(inst, opt_satisfied, i):
    """``1/4 * n^2 * (delta*lambda)^((i+1)/2) * q^(-1/i)`` edges, with ``delta*lambda = opt/n^2``."""
    n2 = inst.n * inst.n
    return PowerBound.of(Fraction(n2, 4), (Fraction(opt_satisfied, n2), Fraction(i + 1, 2)),
                         (inst.q, Fraction(-1, i)))


def solve_dense_csp(inst, gamma=None, level=None, seed=0, opt_satisfied=None,
                    max_work=DEFAULT_MAX_WORK, max_level=DEFAULT_MAX_LEVEL, backend=None):
    """densify -> free-game recursion -> rounding.

    Pass ``opt_satisfied`` (the optimum, e.g. from the oracle) to attach the
    end-to-end guarantee to the report.
    """
    params = LevelParams.from_gamma(gamma) if gamma is not None else LevelParams(level or 1)
    t0 = time.perf_counter()
    game, dmap = densify(inst)
    free = approx_free_game(game, params=params, seed=seed, max_work=max_work,
                            max_level=max_level, backend=backend)
    phi = round_assignment(inst, dmap, free.assignment)
    cand_a, cand_b = dmap.split(free.assignment)
    sat = evaluate(inst, phi)
    report = SolveReport(
        assignment=phi, satisfied=sat, edges=inst.m, seed=seed, level=params.i,
        elapsed=time.perf_counter() - t0,
        extra={
            "density": str(density(inst)),
            "free_game_satisfied": free.satisfied,
            "half_half_expectation": str(half_half_expectation(inst, cand_a, cand_b)),
            "greedy_calls": free.extra["greedy_calls"],
        })
    if opt_satisfied is not None:
        bound = dense_guarantee(inst, opt_satisfied, params.i)
        report.guarantee = float(bound)
        report.guarantee_met = bound.holds(sat)
        report.extra["bound"] = bound.to_json()
        report.extra["opt_satisfied"] = int(opt_satisfied)
    return report
