"""Greedy / choice-reduction recursion for free games.

A free game stores A as vertices ``0..n'-1`` and B as ``n'..2n'-1``.  Candidate
sets are only ever kept for B; A-side labels range over the whole alphabet.

Level 1 is the two-step greedy.  Level ``j + 1`` tries every ``(a, sigma_a)``:
it filters each ``S_b`` down to the labels compatible with ``sigma_a`` and
recurses at level ``j``, then also runs the greedy on the unfiltered sets and
keeps the candidate that satisfies the most edges.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .bounds import PowerBound, float_at_least
from .core import SolveReport, bipartite_tables, full_restriction
from .errors import BudgetExceededError, KindError

DEFAULT_MAX_LEVEL = 4
DEFAULT_MAX_WORK = 10 ** 10


@dataclass(frozen=True)
class LevelParams:
    i: int
    gamma: Fraction | None = None

    def __post_init__(self):
        if self.i < 1:
            raise ValueError(f"level must be >= 1, got {self.i}")
        if self.gamma is not None and self.i != level_for_gamma(self.gamma):
            raise ValueError(f"level {self.i} != ceil(1/gamma) for gamma={self.gamma}")

    @classmethod
    def from_gamma(cls, gamma):
        gamma = Fraction(str(gamma)) if isinstance(gamma, float) else Fraction(gamma)
        return cls(level_for_gamma(gamma), gamma)


def level_for_gamma(gamma):
    gamma = Fraction(str(gamma)) if isinstance(gamma, float) else Fraction(gamma)
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    return math.ceil(1 / gamma)


def check_level_budget(n, q, i, max_work=DEFAULT_MAX_WORK, max_level=DEFAULT_MAX_LEVEL):
    if i > max_level:
        raise BudgetExceededError(i, max_level, "level")
    work = (n * q) ** (2 * i)
    if work > max_work:
        raise BudgetExceededError(work, max_work, "work (nq)^(2i) =")
    return work


def _require_free_game(game):
    if game.kind != "free-game":
        raise KindError(f"expected a free-game instance, got {game.kind!r}")


def _restriction(game, S):
    if S is None:
        return full_restriction(game.half, game.q)
    S = np.asarray(S, dtype=bool)
    if S.shape != (game.half, game.q):
        raise ValueError(f"restriction must have shape {(game.half, game.q)}, got {S.shape}")
    return S


def greedy_level1(game, S=None, backend=None):
    _require_free_game(game)
    la, lb, _ = kernels.greedy_level1(bipartite_tables(game), _restriction(game, S), backend)
    return np.concatenate([la, lb])


def choice_reduce(game, a, sigma_a, S=None):
    """``S_b`` filtered to the labels compatible with ``a := sigma_a``."""
    _require_free_game(game)
    if not 0 <= sigma_a < game.q:
        raise ValueError(f"label {sigma_a} outside alphabet")
    return _restriction(game, S) & bipartite_tables(game)[a, :, sigma_a, :]


class FreeGameSearch:
    """Recursive search over one game; results are memoised per (level, S)."""

    def __init__(self, game, backend=None):
        _require_free_game(game)
        self.game = game
        self.Tb = bipartite_tables(game)
        self.T = np.ascontiguousarray(self.Tb, dtype=np.uint8)
        self.backend = backend
        self.greedy_calls = 0
        self._memo = {}

    def greedy(self, S):
        self.greedy_calls += 1
        la, lb, sat = kernels.greedy_level1(self.T, S, self.backend)
        return sat, np.concatenate([la, lb])

    def solve(self, S, i):
        key = (i, S.tobytes())
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if i == 1:
            out = self.greedy(S)
        else:
            best = None
            na, q = self.T.shape[0], self.T.shape[2]
            for a in range(na):
                for s in range(q):
                    cand = self.solve(S & self.Tb[a, :, s, :], i - 1)
                    if best is None or cand[0] > best[0]:
                        best = cand
            greedy = self.greedy(S)
            out = greedy if best is None or greedy[0] > best[0] else best
        self._memo[key] = out
        return out


def guarantee_bound(game, S, profile, i):
    """Level-i lower bound on satisfied edges for a reference assignment.

    ``n' * sum_b (d_b / n')^((i+1)/2) * |S_b|^(-1/i) * [ref_b in S_b]`` where
    ``d_b`` is b's degree among edges the reference assignment satisfies.
    Holds for any reference assignment, optimal or not.
    """
    half = game.half
    S = _restriction(game, S)
    total = 0.0
    for b in range(half):
        size = int(S[b].sum())
        ref = int(profile.opt_assignment[half + b])
        if size == 0 or not S[b, ref]:
            continue
        d = int(profile.d_opt[half + b])
        total += (d / half) ** ((i + 1) / 2) * size ** (-1.0 / i)
    return half * total


def approx_free_game(game, S=None, params=None, seed=0, max_work=DEFAULT_MAX_WORK,
                     max_level=DEFAULT_MAX_LEVEL, profile=None, backend=None):
    """Best assignment from the level-``i`` recursion.

    ``profile`` (an OptProfile of the game) turns on the guarantee check.
    """
    _require_free_game(game)
    params = params or LevelParams(1)
    i = params.i
    S = _restriction(game, S)
    check_level_budget(game.n, game.q, i, max_work, max_level)
    t0 = time.perf_counter()
    search = FreeGameSearch(game, backend)
    sat, labels = search.solve(S, i)
    report = SolveReport(assignment=labels, satisfied=int(sat), edges=game.m,
                         seed=seed, level=i, elapsed=time.perf_counter() - t0,
                         extra={"greedy_calls": search.greedy_calls})
    if profile is not None:
        bound = guarantee_bound(game, S, profile, i)
        report.guarantee = bound
        report.guarantee_met = float_at_least(sat, bound)
        if S.all():
            # n'^2 * lambda'^((i+1)/2) * q^(-1/i), the full-alphabet corollary
            lam = Fraction(profile.opt_satisfied, game.m)
            corollary = PowerBound.of(game.m, (lam, Fraction(i + 1, 2)), (game.q, Fraction(-1, i)))
            report.extra["corollary_bound"] = corollary.to_json()
            report.extra["corollary_met"] = corollary.holds(sat)
    return report
