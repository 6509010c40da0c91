"""Satisfiable Max 2-CSP on the complete graph, and the dense-instance QPTAS.

Targets of the form ``(prod_u 1/|S_u|)^(1/(n*i))`` are never evaluated in
floating point: every comparison is done on integer powers of the candidate
set sizes.
"""
from __future__ import annotations

import math
import time
from fractions import Fraction

import numpy as np

from .bounds import PowerBound, root_level_bound, smallest_level
from .core import (SolveReport, density, evaluate, full_restriction,
                   make_instance, pair_tables)
from .errors import KindError, UnsatisfiableRestrictionError


def _require_complete(inst):
    if inst.kind != "complete":
        raise KindError(f"expected a complete instance, got {inst.kind!r}")


def _arc_prune(D, S):
    S = S.copy()
    n = len(S)
    off_diag = ~np.eye(n, dtype=bool)
    while True:
        empty = np.flatnonzero(~S.any(axis=1))
        if len(empty):
            raise UnsatisfiableRestrictionError(empty[0])
        # support[u, v, s]: some label left in S_v is compatible with u := s
        support = (D & S[None, :, None, :]).any(axis=3)
        keep = (support | ~off_diag[:, :, None]).all(axis=1)
        pruned = S & keep
        if np.array_equal(pruned, S):
            return S
        S = pruned


def prune_arc_consistency(inst, S=None):
    """Drop every label with no compatible partner left at some other vertex.

    Raises UnsatisfiableRestrictionError when a candidate set empties.
    """
    _require_complete(inst)
    S = full_restriction(inst.n, inst.q) if S is None else np.asarray(S, dtype=bool)
    return _arc_prune(pair_tables(inst), S)


def _lcm(values):
    out = 1
    for x in values:
        out = out * x // math.gcd(out, x)
    return out


def _sweep(D, S):
    """Conditional-expectation sweep in ascending vertex order."""
    n = len(S)
    sizes = S.sum(axis=1)
    empty = np.flatnonzero(sizes == 0)
    if len(empty):
        raise UnsatisfiableRestrictionError(empty[0])
    L = _lcm(int(s) for s in sizes)
    weights = np.array([L // int(s) for s in sizes], dtype=object)
    phi = np.zeros(n, dtype=np.int64)
    for u in range(n):
        best, best_s = None, None
        # uncounted[v, s] = labels of S_v compatible with u := s
        uncounted = (D[u] & S[:, None, :]).sum(axis=2)
        for s in np.flatnonzero(S[u]):
            score = L * sum(int(D[u, w, s, phi[w]]) for w in range(u))
            score += sum(weights[w] * int(uncounted[w, s]) for w in range(u + 1, n))
            if best is None or score > best:
                best, best_s = score, int(s)
        phi[u] = best_s
    return phi


def derandomized_uniform_assign(inst, S=None):
    """Deterministic assignment doing at least as well as uniform sampling from ``S``."""
    S = full_restriction(inst.n, inst.q) if S is None else np.asarray(S, dtype=bool)
    return _sweep(pair_tables(inst), S)


def uniform_expectation(inst, S):
    """Expected satisfied count when each ``v`` is drawn uniformly from ``S_v``."""
    S = np.asarray(S, dtype=bool)
    sizes = S.sum(axis=1)
    total = Fraction(0)
    for e, (u, v) in enumerate(inst.edges.tolist()):
        good = int((inst.tables[e] & np.outer(S[u], S[v])).sum())
        total += Fraction(good, int(sizes[u] * sizes[v]))
    return total


class CompleteGameSolver:
    """Level-``i`` recursion on one complete instance.

    ``work`` counts recursion nodes actually expanded (memo hits excluded).
    """

    def __init__(self, inst):
        _require_complete(inst)
        self.inst = inst
        self.D = pair_tables(inst)
        self.n, self.q, self.m = inst.n, inst.q, inst.m
        self.work = 0
        self.last_emptied = None
        self._memo = {}

    def _meets(self, phi, size_product, j):
        # value >= (1/P)^(1/(n j))  <=>  s^(n j) * P >= m^(n j)
        s = evaluate(self.inst, phi)
        k = self.n * j
        return s ** k * size_product >= self.m ** k

    def solve(self, S, i):
        key = (i, S.tobytes())
        if key in self._memo:
            return self._memo[key]
        self.work += 1
        empty = np.flatnonzero(~S.any(axis=1))
        if len(empty):
            self.last_emptied = int(empty[0])
            out = None
        elif i == 1:
            try:
                out = _sweep(self.D, _arc_prune(self.D, S))
            except UnsatisfiableRestrictionError as err:
                self.last_emptied = err.vertex
                out = None
        else:
            out = self._inductive(S.copy(), i - 1)
        self._memo[key] = out
        return out

    def _inductive(self, S, j):
        n = self.n
        while True:
            modified = False
            P = math.prod(int(x) for x in S.sum(axis=1))
            for u in range(n):
                for s in np.flatnonzero(S[u]):
                    reduced = S & self.D[u, :, s, :]
                    reduced[u] = False
                    reduced[u, s] = True
                    sizes = reduced.sum(axis=1)
                    if (sizes == 0).any():
                        S[u, s] = False
                        modified = True
                        break
                    Pr = math.prod(int(x) for x in sizes)
                    # R^{u,s} < R  <=>  Pr^(j+1) > P^j
                    if Pr ** (j + 1) > P ** j:
                        continue
                    phi = self.solve(reduced, j)
                    if phi is not None and self._meets(phi, Pr, j):
                        return phi
                    S[u, s] = False
                    modified = True
                    break
                if modified:
                    break
            if not modified:
                break
            if not S[u].any():
                self.last_emptied = u
                return None
        return _sweep(self.D, S)


def approx_complete_game(inst, S=None, i=1, solver=None):
    """Assignment of value at least ``(prod 1/|S_u|)^(1/(n i))`` when ``S`` contains an optimum.

    Raises UnsatisfiableRestrictionError naming the first vertex whose
    candidate set empties (the instance restricted to ``S`` is unsatisfiable).
    """
    solver = solver or CompleteGameSolver(inst)
    S = full_restriction(inst.n, inst.q) if S is None else np.asarray(S, dtype=bool)
    if i < 1:
        raise ValueError("level must be >= 1")
    phi = solver.solve(S, i)
    if phi is None:
        raise UnsatisfiableRestrictionError(solver.last_emptied)
    return phi


def solve_complete(inst, level=1, seed=0):
    t0 = time.perf_counter()
    solver = CompleteGameSolver(inst)
    phi = approx_complete_game(inst, i=level, solver=solver)
    sat = evaluate(inst, phi)
    bound = root_level_bound(inst.m, inst.q, level)
    return SolveReport(assignment=phi, satisfied=sat, edges=inst.m, guarantee=float(bound),
                       guarantee_met=bound.holds(sat), seed=seed, level=level,
                       elapsed=time.perf_counter() - t0,
                       extra={"work": solver.work, "bound": bound.to_json()})


def complete_with_true(inst):
    """Add always-true constraints on every missing pair; returns the instance and the dummy count."""
    n, q = inst.n, inst.q
    present = np.zeros((n, n), dtype=bool)
    lo = np.minimum(inst.edges[:, 0], inst.edges[:, 1])
    hi = np.maximum(inst.edges[:, 0], inst.edges[:, 1])
    present[lo, hi] = True
    iu, iv = np.triu_indices(n, 1)
    missing = ~present[iu, iv]
    dummies = np.stack([iu[missing], iv[missing]], axis=1)
    edges = np.concatenate([inst.edges, dummies])
    tables = np.concatenate([inst.tables, np.ones((len(dummies), q, q), dtype=bool)])
    return make_instance(q, n, edges, tables, kind="complete", check=False), len(dummies)


def qptas_level(q, epsilon, delta):
    """``ceil(ln q / ln(1 + epsilon * delta))``, at least 1, computed exactly."""
    return smallest_level(q, Fraction(epsilon) * Fraction(delta))


def qptas_dense(inst, epsilon, seed=0):
    """Value at least ``1 - epsilon`` on a satisfiable instance."""
    epsilon = Fraction(str(epsilon)) if isinstance(epsilon, float) else Fraction(epsilon)
    if not 0 < epsilon <= 1:
        raise ValueError(f"epsilon must lie in (0, 1], got {epsilon}")
    t0 = time.perf_counter()
    delta = density(inst)
    i = qptas_level(inst.q, epsilon, delta)
    full, dummies = complete_with_true(inst)
    solver = CompleteGameSolver(full)
    phi = approx_complete_game(full, i=i, solver=solver)
    sat = evaluate(inst, phi)
    bound = PowerBound.of((1 - epsilon) * inst.m)
    return SolveReport(
        assignment=phi, satisfied=sat, edges=inst.m, guarantee=float(bound),
        guarantee_met=bound.holds(sat), seed=seed, level=i,
        elapsed=time.perf_counter() - t0,
        extra={"epsilon": str(epsilon), "density": str(delta), "work": solver.work,
               "completed_satisfied": evaluate(full, phi), "dummy_edges": dummies,
               "bound": bound.to_json()})
