"""Max 2-CSP instances, assignments and candidate-set restrictions.

Labels and vertices are 0-indexed.  A constraint table is a ``(q, q)``
boolean array oriented by the stored endpoint order, so edge ``(u, v)``
with table ``T`` is satisfied by labels ``(x, y)`` iff ``T[x, y]``.

Conventions for the structured kinds:

* ``free-game``: ``A = 0..n/2-1``, ``B = n/2..n-1`` and the edges are A x B.
* ``projection``: same split; edges are stored as ``(a, b)`` with ``a`` in A
  and every table row has exactly one allowed column.
* ``complete``: all ``n(n-1)/2`` pairs are present.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InvalidAssignmentError, InvalidInstanceError

KINDS = ("general", "free-game", "projection", "complete")


def _frozen(arr):
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Instance:
    q: int
    n: int
    edges: np.ndarray
    tables: np.ndarray
    kind: str = "general"
    pi: np.ndarray | None = None

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        tables = np.asarray(self.tables, dtype=bool).reshape(len(edges), self.q, self.q)
        object.__setattr__(self, "edges", _frozen(np.ascontiguousarray(edges)))
        object.__setattr__(self, "tables", _frozen(np.ascontiguousarray(tables)))
        if self.pi is not None:
            pi = np.asarray(self.pi, dtype=np.int64).reshape(len(edges), self.q)
            object.__setattr__(self, "pi", _frozen(np.ascontiguousarray(pi)))
        object.__setattr__(self, "q", int(self.q))
        object.__setattr__(self, "n", int(self.n))

    @property
    def m(self):
        return len(self.edges)

    @property
    def half(self):
        """Size of each side for the bipartite kinds."""
        return self.n // 2

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        same_pi = (self.pi is None) == (other.pi is None) and (
            self.pi is None or np.array_equal(self.pi, other.pi))
        return (self.q == other.q and self.n == other.n and self.kind == other.kind
                and np.array_equal(self.edges, other.edges)
                and np.array_equal(self.tables, other.tables) and same_pi)

    __hash__ = None


@dataclass
class SolveReport:
    """Outcome of one solver run.

    ``guarantee`` is the claimed lower bound on ``satisfied`` (in edges) and
    ``guarantee_met`` its exact verification, both ``None`` when the run
    had no bound to claim.  ``elapsed`` is wall time and is left out of
    serialized reports unless asked for, so reruns stay byte-identical.
    """
    assignment: np.ndarray
    satisfied: int
    edges: int
    guarantee: float | None = None
    guarantee_met: bool | None = None
    seed: int = 0
    level: int = 0
    elapsed: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def value(self):
        return Fraction(self.satisfied, self.edges) if self.edges else Fraction(0)


def make_instance(q, n, edges, tables, kind="general", pi=None, check=True):
    inst = Instance(q=q, n=n, edges=edges, tables=tables, kind=kind, pi=pi)
    if check:
        problems = validate(inst)
        if problems:
            raise InvalidInstanceError(problems)
    return inst


def tables_from_pi(pi, q):
    pi = np.asarray(pi, dtype=np.int64)
    tables = np.zeros((len(pi), q, q), dtype=bool)
    e_idx = np.repeat(np.arange(len(pi)), q)
    tables[e_idx, np.tile(np.arange(q), len(pi)), pi.ravel()] = True
    return tables


def check_assignment(inst, phi):
    labels = np.asarray(phi)
    if labels.shape != (inst.n,):
        raise InvalidAssignmentError(
            f"assignment has shape {labels.shape}, expected ({inst.n},)")
    if not np.issubdtype(labels.dtype, np.integer):
        raise InvalidAssignmentError("labels must be integers")
    labels = labels.astype(np.int64)
    if labels.size and (labels.min() < 0 or labels.max() >= inst.q):
        bad = int(np.flatnonzero((labels < 0) | (labels >= inst.q))[0])
        raise InvalidAssignmentError(
            f"label {labels[bad]} of vertex {bad} outside 0..{inst.q - 1}")
    return labels


def satisfied_mask(inst, phi):
    labels = check_assignment(inst, phi)
    u, v = inst.edges[:, 0], inst.edges[:, 1]
    return inst.tables[np.arange(inst.m), labels[u], labels[v]]


def evaluate(inst, phi):
    """Number of edges whose constraint accepts the labels of ``phi``."""
    return int(np.count_nonzero(satisfied_mask(inst, phi)))


def value(inst, phi):
    return Fraction(evaluate(inst, phi), inst.m)


def density(inst):
    return Fraction(inst.m, inst.n * inst.n)


def validate(inst):
    """Return the list of violated invariants (empty when valid)."""
    out = []
    if inst.q < 1:
        out.append(f"alphabet size q={inst.q} < 1")
    if inst.n < 2:
        out.append(f"vertex count n={inst.n} < 2")
    if inst.kind not in KINDS:
        out.append(f"unknown kind {inst.kind!r}")
    m = inst.m
    if m == 0:
        out.append("instance has no edges")
    if m > inst.n * (inst.n - 1) // 2:
        out.append(f"{m} edges exceed n(n-1)/2")
    if out and (inst.q < 1 or inst.n < 2):
        return out
    u, v = inst.edges[:, 0], inst.edges[:, 1]
    if m and (inst.edges.min() < 0 or inst.edges.max() >= inst.n):
        out.append("edge endpoint out of range")
        return out
    loops = np.flatnonzero(u == v)
    for e in loops[:5]:
        out.append(f"self-loop at vertex {u[e]}")
    lo, hi = np.minimum(u, v), np.maximum(u, v)
    keys = lo * inst.n + hi
    uniq, counts = np.unique(keys, return_counts=True)
    for k in uniq[counts > 1][:5]:
        out.append(f"duplicate edge ({k // inst.n},{k % inst.n})")

    half = inst.n // 2
    if inst.kind in ("free-game", "projection"):
        if inst.n % 2:
            out.append(f"{inst.kind} needs an even vertex count")
        crossing = (lo < half) & (hi >= half)
        if not crossing.all():
            e = int(np.flatnonzero(~crossing)[0])
            out.append(f"edge ({u[e]},{v[e]}) does not cross A|B")
    if inst.kind == "free-game" and m != half * half:
        out.append(f"free game needs |A|*|B|={half * half} edges, has {m}")
    if inst.kind == "complete" and m != inst.n * (inst.n - 1) // 2:
        out.append(f"complete instance needs {inst.n * (inst.n - 1) // 2} edges, has {m}")
    if inst.kind == "projection":
        if m and not (u < half).all():
            out.append("projection edges must be stored as (a, b) with a in A")
        per_row = inst.tables.sum(axis=2)
        bad = np.argwhere(per_row != 1)
        if len(bad):
            e, s = bad[0]
            out.append(f"not a projection: edge ({u[e]},{v[e]}) label {s} "
                       f"allows {per_row[e, s]} labels")
        elif inst.pi is not None and not np.array_equal(
                inst.pi, inst.tables.argmax(axis=2)):
            out.append("pi disagrees with the allowed-pair tables")
    return out


def full_restriction(count, q):
    """Every vertex may take every label."""
    return np.ones((count, q), dtype=bool)


def restriction_from_sets(sets, q):
    mask = np.zeros((len(sets), q), dtype=bool)
    for i, s in enumerate(sets):
        mask[i, list(s)] = True
    return mask


def bipartite_tables(inst):
    """Dense ``(|A|, |B|, q, q)`` tables oriented A -> B; zero for absent pairs."""
    half = inst.half
    out = np.zeros((half, inst.n - half, inst.q, inst.q), dtype=bool)
    u, v = inst.edges[:, 0], inst.edges[:, 1]
    fwd = u < v
    out[u[fwd], v[fwd] - half] = inst.tables[fwd]
    out[v[~fwd], u[~fwd] - half] = inst.tables[~fwd].transpose(0, 2, 1)
    return out


def pair_tables(inst):
    """Dense ``(n, n, q, q)`` tables with ``D[v, u] = D[u, v].T``."""
    out = np.zeros((inst.n, inst.n, inst.q, inst.q), dtype=bool)
    u, v = inst.edges[:, 0], inst.edges[:, 1]
    out[u, v] = inst.tables
    out[v, u] = inst.tables.transpose(0, 2, 1)
    return out


def opt_degrees(inst, mask):
    """Per-vertex degree inside the edge subset selected by ``mask``."""
    deg = np.zeros(inst.n, dtype=np.int64)
    np.add.at(deg, inst.edges[mask, 0], 1)
    np.add.at(deg, inst.edges[mask, 1], 1)
    return deg
