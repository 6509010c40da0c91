from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from densecsp.bounds import PowerBound
from densecsp.core import bipartite_tables, evaluate, make_instance
from densecsp.errors import BudgetExceededError, KindError
from densecsp.freegame import (LevelParams, approx_free_game, choice_reduce,
                               guarantee_bound, greedy_level1, level_for_gamma)
from densecsp.generators import planted_csp, random_free_game
from densecsp.oracle import brute_force_csp, profile_of
from test_kernels import naive_greedy


def naive_search(T, S, i):
    """Plain recursion: every (a, s) branch, then the greedy; first strict maximum wins."""
    if i == 1:
        la, lb, sat = naive_greedy(T, S)
        return sat, la + lb
    best = None
    for a in range(T.shape[0]):
        for s in range(T.shape[2]):
            cand = naive_search(T, S & T[a, :, s, :], i - 1)
            if best is None or cand[0] > best[0]:
                best = cand
    la, lb, sat = naive_greedy(T, S)
    return best if best[0] >= sat else (sat, la + lb)


@st.composite
def games(draw, halves=(2, 3, 4), qs=(2, 3, 4)):
    half = draw(st.sampled_from(halves))
    q = draw(st.sampled_from(qs))
    seed = draw(st.integers(0, 2**32 - 1))
    p = draw(st.sampled_from([0.2, 0.4, 0.6]))
    return random_free_game(half, q, p_allow=p, seed=seed)[0]


def test_all_true_game_fully_satisfied():
    game, _ = random_free_game(3, 3, p_allow=1.0)
    assert approx_free_game(game, params=LevelParams(2)).satisfied == 9


def test_level_one_is_greedy(backend):
    game, _ = random_free_game(4, 3, seed=5)
    rep = approx_free_game(game, params=LevelParams(1), backend=backend)
    assert rep.assignment.tolist() == greedy_level1(game, backend=backend).tolist()


@settings(max_examples=30)
@given(games(halves=(2, 3), qs=(2, 3)), st.integers(1, 2))
def test_recursion_matches_plain_transcription(game, i):
    T = bipartite_tables(game)
    S = np.ones((game.half, game.q), bool)
    want_sat, want = naive_search(T, S, i)
    rep = approx_free_game(game, params=LevelParams(i))
    assert rep.satisfied == want_sat == evaluate(game, rep.assignment)
    assert rep.assignment.tolist() == want


def test_choice_reduce_examples():
    true_game, _ = random_free_game(3, 3, p_allow=1.0)
    assert choice_reduce(true_game, 0, 1).all()
    false_game, _ = random_free_game(3, 3, p_allow=0.0)
    assert not choice_reduce(false_game, 2, 0).any()
    # one allowed b-label per a-label
    rng = np.random.default_rng(0)
    tables = np.zeros((9, 3, 3), bool)
    tables[np.arange(9)[:, None], np.arange(3), rng.integers(3, size=(9, 3))] = True
    a, b = np.meshgrid(range(3), range(3, 6), indexing="ij")
    proj = make_instance(3, 6, np.stack([a.ravel(), b.ravel()], 1), tables, kind="free-game")
    assert (choice_reduce(proj, 1, 2).sum(axis=1) == 1).all()


@given(games(), st.data())
def test_choice_reduce_shrinks_and_keeps_opt(game, data):
    prof = brute_force_csp(game)
    half = game.half
    S = np.array(data.draw(st.lists(st.lists(st.booleans(), min_size=game.q, max_size=game.q),
                                    min_size=half, max_size=half)))
    opt_b = prof.opt_assignment[half:]
    S[np.arange(half), opt_b] = True
    a = data.draw(st.integers(0, half - 1))
    R = choice_reduce(game, a, int(prof.opt_assignment[a]), S)
    assert not (R & ~S).any()
    T = bipartite_tables(game)
    for b in range(half):
        if T[a, b, prof.opt_assignment[a], opt_b[b]]:
            assert R[b, opt_b[b]]


@settings(max_examples=80)
@given(games(), st.integers(1, 2), st.data())
def test_guarantee_bound_for_any_reference(game, i, data):
    half = game.half
    S = np.array(data.draw(st.lists(st.lists(st.booleans(), min_size=game.q, max_size=game.q),
                                    min_size=half, max_size=half)))
    if data.draw(st.booleans()):
        prof = brute_force_csp(game)
    else:
        phi = data.draw(st.lists(st.integers(0, game.q - 1), min_size=game.n, max_size=game.n))
        prof = profile_of(game, phi)
    rep = approx_free_game(game, S=S, params=LevelParams(i), profile=prof)
    assert rep.guarantee == guarantee_bound(game, S, prof, i)
    assert rep.guarantee_met


@settings(max_examples=30)
@given(games(halves=(2, 3)), st.integers(1, 2))
def test_monotone_in_level(game, i):
    lo = approx_free_game(game, params=LevelParams(i)).satisfied
    assert approx_free_game(game, params=LevelParams(i + 1)).satisfied >= lo


@pytest.mark.parametrize("i", [1, 2])
def test_planted_game_corollary(i):
    for seed in range(10):
        game, planted = random_free_game(3, 4, p_allow=0.3, seed=seed, planted=True)
        prof = brute_force_csp(game)
        assert prof.opt_satisfied == game.m
        rep = approx_free_game(game, params=LevelParams(i), profile=prof)
        assert rep.extra["corollary_met"]
        assert PowerBound.of(game.m, (4, Fraction(-1, i))).holds(rep.satisfied)


def test_gamma_sets_level():
    assert level_for_gamma(Fraction(1, 2)) == 2
    assert level_for_gamma(0.4) == 3
    assert LevelParams.from_gamma(1).i == 1
    with pytest.raises(ValueError):
        LevelParams(2, gamma=Fraction(1, 3))


def test_errors():
    inst, _ = planted_csp(4, 2)
    with pytest.raises(KindError):
        approx_free_game(inst)
    game, _ = random_free_game(4, 4)
    with pytest.raises(BudgetExceededError):
        approx_free_game(game, params=LevelParams(3), max_work=10**6)
    with pytest.raises(BudgetExceededError):
        approx_free_game(game, params=LevelParams(5))


def test_backends_agree_and_deterministic():
    from densecsp import kernels
    game, _ = random_free_game(4, 3, seed=11)
    outs = [approx_free_game(game, params=LevelParams(2), backend=b).assignment.tolist()
            for b in kernels.available_backends()]
    outs.append(approx_free_game(game, params=LevelParams(2)).assignment.tolist())
    assert all(o == outs[0] for o in outs)
