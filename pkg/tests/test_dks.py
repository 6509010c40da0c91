import itertools

import numpy as np
import pytest

from densecsp.core import evaluate
from densecsp.dks import Graph, decode_dks, default_trials, induced_edges, reduce_dks, solve_dks
from densecsp.errors import PartitionRetryError
from densecsp.generators import petersen_graph, planted_clique_graph, random_graph
from densecsp.oracle import brute_force_csp, brute_force_dks


def test_identity_case():
    g = random_graph(6, 0.5, seed=1)
    inst, dmap = reduce_dks(g, 6, seed=0)
    assert inst.q == 1
    assert brute_force_csp(inst).opt_satisfied == len(g.edges)
    assert decode_dks(dmap, np.zeros(6, int)) == list(range(6))


@pytest.mark.parametrize("seed", range(5))
def test_every_assignment_decodes_exactly(seed):
    g = random_graph(8, 0.5, seed=seed)
    inst, dmap = reduce_dks(g, 3, seed=seed)
    for phi in itertools.product(range(inst.q), repeat=3):
        verts = decode_dks(dmap, phi)
        assert len(set(verts)) == 3
        sat = evaluate(inst, np.array(phi)) if inst.m else 0
        assert induced_edges(g, verts) == sat


def test_parts_and_aliasing():
    g = random_graph(9, 0.5, seed=2)
    inst, dmap = reduce_dks(g, 4, seed=1)
    assert sorted(v for p in dmap.parts for v in p) == list(range(9))
    for i, p in enumerate(dmap.parts):
        assert dmap.members[i, :len(p)].tolist() == list(p)
        assert (dmap.members[i, len(p):] == p[-1]).all()


def test_k_two_finds_an_edge():
    g = random_graph(7, 0.3, seed=4)
    verts, rep = solve_dks(g, 2, level=1, seed=0)
    assert rep.satisfied == 1 and induced_edges(g, verts) == 1


def test_empty_graph_vacuous():
    verts, rep = solve_dks(Graph(5, np.zeros((0, 2), int)), 3, level=1)
    assert rep.satisfied == 0 and rep.extra["vacuous"] and len(verts) == 3


def test_planted_clique_sanity():
    g, clique = planted_clique_graph(10, 4, 0.2, seed=3)
    verts, rep = solve_dks(g, 4, level=2, seed=1)
    assert len(verts) == 4
    assert rep.satisfied <= brute_force_dks(g.n, g.edges, 4)[1] == 6
    assert rep.satisfied == induced_edges(g, verts)
    assert rep.extra["trials"] == default_trials(10) == 12


def test_petersen_some_seed_reaches_fraction():
    g = petersen_graph()
    best = brute_force_dks(g.n, g.edges, 5)[1]
    hits = 0
    for seed in range(50):
        inst, _ = reduce_dks(g, 5, seed=seed)
        opt = brute_force_csp(inst).opt_satisfied if inst.m else 0
        hits += 100 * opt >= best
    assert hits >= 1


def test_errors():
    g = random_graph(6, 0.5)
    with pytest.raises(ValueError):
        reduce_dks(g, 1)
    with pytest.raises(PartitionRetryError):
        reduce_dks(g, 6, seed=0, max_retries=1)


def test_deterministic():
    g = random_graph(9, 0.4, seed=6)
    a = solve_dks(g, 3, level=1, seed=5)[1]
    b = solve_dks(g, 3, level=1, seed=5)[1]
    assert a.assignment.tolist() == b.assignment.tolist() and a.extra == b.extra
