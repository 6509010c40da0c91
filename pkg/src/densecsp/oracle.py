"""Exhaustive solvers used as ground truth."""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import evaluate, full_restriction, opt_degrees, satisfied_mask
from .errors import BudgetExceededError

DEFAULT_BUDGET = 10 ** 8


def budget_from_env(default=DEFAULT_BUDGET):
    raw = os.environ.get("DENSECSP_BUDGET")
    return int(float(raw)) if raw else default


@dataclass(frozen=True, eq=False)
class OptProfile:
    opt_assignment: np.ndarray
    opt_satisfied: int
    e_opt: np.ndarray  # boolean mask over the instance's edges
    d_opt: np.ndarray

    @property
    def value_fraction(self):
        return self.opt_satisfied / len(self.e_opt)


def profile_of(inst, phi):
    """OptProfile-shaped summary of an arbitrary assignment."""
    mask = satisfied_mask(inst, phi)
    return OptProfile(np.asarray(phi, dtype=np.int64), int(mask.sum()), mask,
                      opt_degrees(inst, mask))


def brute_force_csp(inst, restriction=None, budget=None, backend=None):
    """Exact maximiser; ties go to the lexicographically smallest label vector.

    ``restriction`` confines vertex ``v`` to the labels set in row ``v``.
    """
    budget = budget_from_env() if budget is None else budget
    allowed = full_restriction(inst.n, inst.q) if restriction is None else np.asarray(restriction, bool)
    required = math.prod(int(s) for s in allowed.sum(axis=1))
    if required > budget:
        raise BudgetExceededError(required, budget, "enumeration of")
    best, labels = kernels.brute_force(inst.tables, inst.edges, allowed, backend=backend)
    if best < 0:
        raise ValueError("restriction leaves some vertex without labels")
    prof = profile_of(inst, labels)
    assert prof.opt_satisfied == best == evaluate(inst, labels)
    return prof


def adjacency(n, edges):
    adj = np.zeros((n, n), dtype=bool)
    if len(edges):
        e = np.asarray(edges, dtype=np.int64)
        adj[e[:, 0], e[:, 1]] = True
        adj[e[:, 1], e[:, 0]] = True
    return adj


def brute_force_dks(n, edges, k, budget=None):
    """Densest k-subset by enumeration; lexicographically smallest among ties."""
    budget = budget_from_env() if budget is None else budget
    if not 1 <= k <= n:
        raise ValueError(f"k={k} outside 1..{n}")
    required = math.comb(n, k)
    if required > budget:
        raise BudgetExceededError(required, budget, "enumeration of")
    adj = adjacency(n, edges).astype(np.int64)
    best, best_set = -1, None
    for subset in itertools.combinations(range(n), k):
        idx = np.asarray(subset)
        count = int(adj[np.ix_(idx, idx)].sum()) // 2
        if count > best:
            best, best_set = count, subset
    return list(best_set), best
