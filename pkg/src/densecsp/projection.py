"""Projection games on random bipartite graphs.

Pipeline: square the game into a free game on the two halves of A, solve
the free game, then decode B by plurality vote over the projected labels.
"""
from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .bounds import PowerBound
from .core import SolveReport, evaluate, make_instance, tables_from_pi
from .errors import KindError
from .freegame import (DEFAULT_MAX_LEVEL, DEFAULT_MAX_WORK, LevelParams,
                       approx_free_game)

log = logging.getLogger(__name__)

DECODE_LOSS = 8000


@dataclass(frozen=True)
class RandomGraphConfig:
    n: int
    p: float
    q: int
    seed: int = 0
    planted: bool = True

    def __post_init__(self):
        if not 0 < self.p <= 1:
            raise ValueError(f"p must lie in (0, 1], got {self.p}")
        if self.n < 2 or self.n % 2:
            raise ValueError(f"n must be even and >= 2, got {self.n}")
        if self.q < 1:
            raise ValueError("q must be >= 1")

    @property
    def threshold(self):
        """Edge probability below which the degree and common-neighbour bounds are not promised."""
        return 10 * math.sqrt(math.log(self.n) / self.n)


def generate_projection_game(cfg):
    """Sample ``G(n/2, n/2, p)`` with projection constraints.

    Returns ``(game, planted)``.  With ``cfg.planted`` every projection maps
    the planted A-label to the planted B-label, so ``planted`` satisfies all
    edges; otherwise ``planted`` is None and projections are uniform.
    """
    if cfg.p < cfg.threshold:
        log.warning("p=%g below 10*sqrt(ln n / n)=%.4g; degree/common-neighbour "
                    "bounds may fail", cfg.p, cfg.threshold)
    rng = np.random.default_rng(cfg.seed)
    half = cfg.n // 2
    adj = rng.random((half, half)) < cfg.p
    a, b = np.nonzero(adj)
    edges = np.stack([a, b + half], axis=1)
    labels = rng.integers(cfg.q, size=cfg.n) if cfg.planted else None
    pi = rng.integers(cfg.q, size=(len(edges), cfg.q))
    if cfg.planted:
        pi[np.arange(len(edges)), labels[a]] = labels[b + half]
    game = make_instance(cfg.q, cfg.n, edges, tables_from_pi(pi, cfg.q),
                         kind="projection", pi=pi, check=False)
    return game, labels


def _require_projection(game):
    if game.kind != "projection":
        raise KindError(f"expected a projection instance, got {game.kind!r}")


def _pi(game):
    return game.pi if game.pi is not None else game.tables.argmax(axis=2)


def side_adjacency(game):
    """``(|A|, |B|)`` boolean adjacency."""
    half = game.half
    adj = np.zeros((half, game.n - half), dtype=bool)
    adj[game.edges[:, 0], game.edges[:, 1] - half] = True
    return adj


@dataclass
class GraphCheck:
    ok: bool
    lower: float
    upper: float | None = None
    violators: list = field(default_factory=list)
    worst: float = 0.0


def check_degree_bounds(game, p, limit=20):
    """Every degree must lie in ``[n p / 10, 10 n p]`` with ``n`` the total vertex count."""
    deg = np.bincount(game.edges.ravel(), minlength=game.n)
    lo, hi = game.n * p / 10, 10 * game.n * p
    bad = np.flatnonzero((deg < lo) | (deg > hi))
    return GraphCheck(ok=len(bad) == 0, lower=lo, upper=hi,
                      violators=[(int(v), int(deg[v])) for v in bad[:limit]],
                      worst=float(deg.min()))


def common_neighbors(adj):
    a = adj.astype(np.float32)
    return np.rint(a @ a.T).astype(np.int64)


def check_common_neighbors(game, p, limit=20):
    """Every pair of distinct A vertices must share at least ``n p^2 / 10`` neighbours."""
    counts = common_neighbors(side_adjacency(game))
    np.fill_diagonal(counts, np.iinfo(np.int64).max)
    lo = game.n * p * p / 10
    bad = np.argwhere(np.triu(counts < lo, 1))
    return GraphCheck(ok=len(bad) == 0, lower=lo,
                      violators=[(int(x), int(y), int(counts[x, y])) for x, y in bad[:limit]],
                      worst=float(counts.min()))


@dataclass(frozen=True)
class SquareMap:
    """The squared game's vertex ``k`` is A-vertex ``k``; ``common[i, j]`` counts
    the B neighbours shared by A-vertices ``i`` and ``split + j``."""
    split: int
    common: np.ndarray


def square_game(game, backend=None):
    """Free game on A: left half vs right half, constraint = agreement on all common neighbours.

    Pairs without common neighbours get the all-true constraint.
    """
    _require_projection(game)
    nA = game.half
    if nA % 2:
        raise ValueError(f"|A|={nA} must be even to split in halves")
    h = nA // 2
    adj = side_adjacency(game)
    P = np.full((nA, game.n - nA, game.q), -1, dtype=np.int32)
    P[game.edges[:, 0], game.edges[:, 1] - nA] = _pi(game)
    C, common = kernels.square_tables(P, adj, h, backend)
    a, b = np.meshgrid(np.arange(h), np.arange(h, nA), indexing="ij")
    edges = np.stack([a.ravel(), b.ravel()], axis=1)
    squared = make_instance(game.q, nA, edges, C.reshape(h * h, game.q, game.q),
                            kind="free-game", check=False)
    return squared, SquareMap(h, common)


def decode(game, phi_prime):
    """Keep the A labels; give each B vertex the most frequent projected label.

    Ties go to the smallest label and isolated B vertices get label 0.
    """
    _require_projection(game)
    nA = game.half
    phi_a = np.asarray(phi_prime, dtype=np.int64)[:nA]
    votes = _pi(game)[np.arange(game.m), phi_a[game.edges[:, 0]]]
    tally = np.zeros((game.n - nA, game.q), dtype=np.int64)
    np.add.at(tally, (game.edges[:, 1] - nA, votes), 1)
    return np.concatenate([phi_a, np.argmax(tally, axis=1)])


def decode_chain(game, squared, smap, phi_prime, p):
    """Both sides of the decoding inequalities for one squared-game assignment.

    Returns a dict with the decoded satisfied count, the squared-game value,
    the intermediate weighted bound and the final ``value / 8000`` bound.
    """
    phi = decode(game, phi_prime)
    sat = evaluate(game, phi)
    sq_mask = squared.tables[np.arange(squared.m), phi_prime[squared.edges[:, 0]],
                             phi_prime[squared.edges[:, 1]]]
    sq_sat = int(sq_mask.sum())
    weighted = int((smap.common.ravel() * sq_mask).sum())
    deg = np.bincount(game.edges.ravel(), minlength=game.n)
    return {
        "assignment": phi,
        "satisfied": sat,
        "value": Fraction(sat, game.m),
        "squared_satisfied": sq_sat,
        "squared_value": Fraction(sq_sat, squared.m),
        # sum over squared pairs of |common| * C, divided by the degree cap 10np
        "weighted_bound": weighted / (10 * game.n * p),
        "max_degree_ok": bool(deg.max() <= 10 * game.n * p),
        "final_bound": Fraction(sq_sat, squared.m) / DECODE_LOSS,
    }


def solve_projection(game, gamma=None, level=None, p=None, seed=0,
                     max_work=DEFAULT_MAX_WORK, max_level=DEFAULT_MAX_LEVEL, backend=None):
    """square -> free-game recursion -> decode.

    ``p`` is the edge probability the graph was drawn with (estimated from
    the edge count when omitted); it is only used by the random-graph checks
    that gate the claimed bound.
    """
    _require_projection(game)
    params = LevelParams.from_gamma(gamma) if gamma is not None else LevelParams(level or 1)
    half = game.half
    p = p if p is not None else game.m / (half * (game.n - half))
    t0 = time.perf_counter()
    squared, smap = square_game(game, backend)
    free = approx_free_game(squared, params=params, seed=seed, max_work=max_work,
                            max_level=max_level, backend=backend)
    chain = decode_chain(game, squared, smap, free.assignment, p)
    deg_ok = check_degree_bounds(game, p).ok
    cn_ok = check_common_neighbors(game, p).ok
    report = SolveReport(
        assignment=chain["assignment"], satisfied=chain["satisfied"], edges=game.m,
        seed=seed, level=params.i, elapsed=time.perf_counter() - t0,
        extra={"p": p, "squared_satisfied": chain["squared_satisfied"],
               "squared_edges": squared.m, "degree_check": deg_ok,
               "common_neighbor_check": cn_ok, "greedy_calls": free.extra["greedy_calls"]})
    if deg_ok and cn_ok:
        # satisfiable squared game: q^(-1/i) of its pairs, then /8000 of the edges
        bound = PowerBound.of(Fraction(game.m, DECODE_LOSS), (game.q, Fraction(-1, params.i)))
        report.guarantee = float(bound)
        report.guarantee_met = bound.holds(chain["satisfied"])
        report.extra["bound"] = bound.to_json()
    else:
        report.extra["bound"] = "unverified precondition"
    return report
