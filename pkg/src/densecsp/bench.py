"""Benchmark suites: guarantee-vs-achieved tables and kernel backend timings."""
from __future__ import annotations

import time
from fractions import Fraction

import numpy as np

from . import io, kernels
from .complete import qptas_dense, solve_complete
from .densifier import solve_dense_csp
from .freegame import LevelParams, approx_free_game
from .generators import planted_csp, random_free_game
from .oracle import brute_force_csp

SUITE_SEED = 20240101


def _rng(seed):
    return np.random.default_rng([SUITE_SEED, seed])


def _row(name, level, guarantee, achieved, ok, **extra):
    return {"instance": name, "level": level, "guarantee": guarantee,
            "achieved": achieved, "ok": bool(ok), **extra}


def p1_rows(count=200, seed=0):
    """Planted complete instances, ``value >= q^(-1/i)``."""
    rng = _rng(seed)
    rows = []
    for k in range(count):
        n, q, i = int(rng.integers(4, 8)), int(rng.integers(2, 6)), int(rng.integers(1, 4))
        inst, _ = planted_csp(n, q, p_edge=1.0, p_allow=0.3, seed=int(rng.integers(2**32)))
        rep = solve_complete(inst, level=i)
        rows.append(_row(f"complete n={n} q={q} #{k}", i, rep.guarantee, rep.satisfied,
                         rep.guarantee_met, edges=inst.m))
    return rows


def freegame_rows(count=100, seed=0):
    """Random free games with the oracle profile, ``satisfied >= P(i)`` bound."""
    rng = _rng(seed)
    rows = []
    for k in range(count):
        half, q, i = int(rng.choice([3, 4])), int(rng.choice([2, 4])), int(rng.integers(1, 3))
        game, _ = random_free_game(half, q, p_allow=0.35, seed=int(rng.integers(2**32)))
        prof = brute_force_csp(game)
        rep = approx_free_game(game, params=LevelParams(i), profile=prof)
        rows.append(_row(f"freegame n'={half} q={q} #{k}", i, rep.guarantee, rep.satisfied,
                         rep.guarantee_met, opt=prof.opt_satisfied))
    return rows


def dense_rows(count=50, seed=0):
    """Dense CSP pipeline, end-to-end bound relative to the oracle optimum."""
    rng = _rng(seed)
    rows = []
    for k in range(count):
        n, q, i = int(rng.integers(4, 7)), int(rng.integers(2, 4)), int(rng.integers(1, 3))
        inst, _ = planted_csp(n, q, p_edge=0.7, p_allow=0.3, seed=int(rng.integers(2**32)))
        opt = brute_force_csp(inst).opt_satisfied
        rep = solve_dense_csp(inst, level=i, opt_satisfied=opt)
        rows.append(_row(f"dense n={n} q={q} #{k}", i, rep.guarantee, rep.satisfied,
                         rep.guarantee_met, opt=opt))
    return rows


def qptas_rows(count=50, seed=0):
    """Planted dense instances, ``value >= 1 - epsilon``."""
    rng = _rng(seed)
    rows = []
    for k in range(count):
        n, q = int(rng.integers(4, 8)), int(rng.integers(2, 5))
        eps = Fraction(1, int(rng.choice([1, 2])))
        inst, _ = planted_csp(n, q, p_edge=0.75, p_allow=0.3, seed=int(rng.integers(2**32)))
        rep = qptas_dense(inst, eps)
        rows.append(_row(f"qptas n={n} q={q} eps={eps} #{k}", rep.level, rep.guarantee,
                         rep.satisfied, rep.guarantee_met, work=rep.extra["work"]))
    return rows


def _best_time(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def kernel_rows(count=None, seed=0):
    """Wall time of each hot kernel on every available backend."""
    from .projection import RandomGraphConfig, generate_projection_game, side_adjacency
    from .projection import _pi

    rng = _rng(seed)
    half, q = 12, 4
    T = rng.random((half, half, q, q)) < 0.4
    S = rng.random((half, q)) < 0.7
    inst, _ = planted_csp(9, 4, p_edge=0.8, seed=seed)
    allowed = np.ones((inst.n, inst.q), dtype=bool)
    game, _ = generate_projection_game(RandomGraphConfig(count or 512, 0.65, 8, seed))
    nA = game.half
    adj = side_adjacency(game)
    P = np.full((nA, game.n - nA, game.q), -1, dtype=np.int32)
    P[game.edges[:, 0], game.edges[:, 1] - nA] = _pi(game)
    cases = {
        "greedy_level1": lambda b: kernels.greedy_level1(T, S, backend=b),
        "brute_force": lambda b: kernels.brute_force(inst.tables, inst.edges, allowed, backend=b),
        "square_tables": lambda b: kernels.square_tables(P, adj, nA // 2, backend=b),
    }
    rows = []
    for name, fn in cases.items():
        times = {b: _best_time(lambda: fn(b)) for b in kernels.available_backends()}
        rows.append({"kernel": name, "seconds": times,
                     "speedup": times["python"] / times["cython"] if "cython" in times else None})
    return rows


SUITES = {
    "p1-suite": p1_rows,
    "freegame-suite": freegame_rows,
    "dense-suite": dense_rows,
    "qptas-suite": qptas_rows,
    "kernels": kernel_rows,
}


def run_suite(name, seeds=None, seed=0):
    fn = SUITES[name]
    rows = fn(seeds, seed) if seeds is not None else fn(seed=seed)
    out = {"format_version": io.FORMAT_VERSION, "command": "bench", "suite": name,
           "seed": seed, "rows": rows}
    if name != "kernels":
        out["all_ok"] = all(r["ok"] for r in rows)
        out["passed"] = sum(r["ok"] for r in rows)
    return out


def format_table(result):
    rows = result["rows"]
    if result["suite"] == "kernels":
        lines = [f"{'kernel':<16}{'backend':<10}{'seconds':>12}"]
        for r in rows:
            for b, t in r["seconds"].items():
                lines.append(f"{r['kernel']:<16}{b:<10}{t:>12.6f}")
            if r["speedup"]:
                lines.append(f"{'':<16}{'speedup':<10}{r['speedup']:>11.1f}x")
        return "\n".join(lines) + "\n"
    lines = [f"{'instance':<32}{'level':>6}{'guarantee':>14}{'achieved':>10}  ok"]
    for r in rows:
        g = "-" if r["guarantee"] is None else f"{r['guarantee']:.4f}"
        lines.append(f"{r['instance']:<32}{r['level']:>6}{g:>14}{r['achieved']:>10}  "
                     f"{'yes' if r['ok'] else 'NO'}")
    lines.append(f"{result['passed']}/{len(rows)} rows meet their guarantee")
    return "\n".join(lines) + "\n"
