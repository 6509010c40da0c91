import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import naive_opt
from densecsp.core import make_instance
from densecsp.errors import BudgetExceededError
from densecsp.generators import petersen_graph, random_csp, random_graph
from densecsp.oracle import brute_force_csp, brute_force_dks


def test_triangle_equality_optimum_is_constant():
    eq = np.eye(2, dtype=bool)
    inst = make_instance(2, 3, [[0, 1], [1, 2], [0, 2]], np.stack([eq] * 3))
    prof = brute_force_csp(inst)
    assert prof.opt_satisfied == 3
    assert prof.opt_assignment.tolist() == [0, 0, 0]


def test_all_true_ties_to_zero_vector(backend):
    inst = random_csp(5, 3, p_allow=1.0, seed=2)
    prof = brute_force_csp(inst, backend=backend)
    assert prof.opt_satisfied == inst.m
    assert prof.opt_assignment.tolist() == [0] * 5


def test_profile_fields_consistent():
    inst = random_csp(6, 3, seed=9)
    prof = brute_force_csp(inst)
    assert prof.e_opt.sum() == prof.opt_satisfied
    deg = np.zeros(inst.n, int)
    for (u, v), keep in zip(inst.edges, prof.e_opt):
        if keep:
            deg[u] += 1
            deg[v] += 1
    assert prof.d_opt.tolist() == deg.tolist()


def test_budget(monkeypatch):
    inst = random_csp(6, 3, seed=1)
    with pytest.raises(BudgetExceededError) as err:
        brute_force_csp(inst, budget=100)
    assert err.value.required == 3 ** 6
    monkeypatch.setenv("DENSECSP_BUDGET", "10")
    with pytest.raises(BudgetExceededError):
        brute_force_csp(inst)


@settings(max_examples=40)
@given(st.integers(2, 6), st.integers(1, 3), st.integers(0, 2**32 - 1), st.sampled_from(["python", "cython"]))
def test_matches_naive_enumeration_including_tie_break(n, q, seed, name):
    from densecsp import kernels
    if name not in kernels.available_backends():
        name = "python"
    inst = random_csp(n, q, p_allow=0.4, seed=seed)
    best, arg = naive_opt(inst)
    prof = brute_force_csp(inst, backend=name)
    assert prof.opt_satisfied == best
    assert prof.opt_assignment.tolist() == arg.tolist()


@given(st.integers(3, 6), st.integers(2, 3), st.integers(0, 2**32 - 1), st.data())
def test_restriction_containing_optimum_keeps_value(n, q, seed, data):
    inst = random_csp(n, q, seed=seed)
    prof = brute_force_csp(inst)
    R = np.array(data.draw(st.lists(st.lists(st.booleans(), min_size=q, max_size=q),
                                    min_size=n, max_size=n)))
    R[np.arange(n), prof.opt_assignment] = True
    assert brute_force_csp(inst, restriction=R).opt_satisfied == prof.opt_satisfied


def test_petersen_densest_five():
    g = petersen_graph()
    verts, count = brute_force_dks(g.n, g.edges, 5)
    assert count == 5


def test_dks_trivial_cases():
    g = random_graph(7, 0.5, seed=3)
    assert brute_force_dks(g.n, g.edges, 7)[1] == len(g.edges)
    assert brute_force_dks(g.n, g.edges, 2)[1] == 1


def test_dks_lexicographic_and_exact():
    g = random_graph(8, 0.4, seed=5)
    adj = g.adjacency()
    counts = {c: int(adj[np.ix_(c, c)].sum()) // 2 for c in itertools.combinations(range(8), 4)}
    best = max(counts.values())
    verts, count = brute_force_dks(g.n, g.edges, 4)
    assert count == best
    assert tuple(verts) == min(c for c, v in counts.items() if v == best)
    with pytest.raises(BudgetExceededError):
        brute_force_dks(g.n, g.edges, 4, budget=10)
