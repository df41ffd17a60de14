import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parcoord.ordering import (Ordering, cut_cycle, cycle_weight, exact_cycle, exact_order,
                               greedy_fixed_start, greedy_order, matrix_oracle, ordering_from_json,
                               total_information)
from parcoord.weights import WeightMatrix

from conftest import brute_force_cycle, brute_force_path, random_symmetric


def sym(p, entries):
    W = np.zeros((p, p))
    for (i, j), v in entries.items():
        W[i, j] = W[j, i] = v
    return W


P4 = sym(4, {(0, 1): 10, (2, 3): 10, (0, 2): 1, (1, 3): 1, (0, 3): 0, (1, 2): 0})
GREEDY_EX = sym(4, {(0, 1): 5, (0, 2): 3, (0, 3): 2, (1, 2): 1, (1, 3): 0, (2, 3): 4})
TRIANGLE = sym(3, {(0, 1): 1, (1, 2): 2, (0, 2): 3})


# -- exact ------------------------------------------------------------------------

def test_triangle():
    cycle, wt = exact_cycle(TRIANGLE)
    assert cycle == [0, 1, 2]
    assert wt == 6.0


def test_four_cycle_example():
    cycle, wt = exact_cycle(P4)
    assert cycle == [0, 1, 3, 2]
    assert wt == 22.0


def test_exact_limits():
    with pytest.raises(ValueError, match="at least 3"):
        exact_cycle(np.zeros((2, 2)))
    with pytest.raises(ValueError, match="greedy"):
        exact_cycle(np.zeros((19, 19)))
    with pytest.raises(ValueError, match="greedy"):
        exact_cycle(np.zeros((6, 6)), exact_limit=5)


def test_exact_matches_enumeration_small_p():
    rng = np.random.default_rng(99)
    for trial in range(100):
        p = 3 + trial % 6  # 3..8
        W = random_symmetric(rng, p)
        best, canon = brute_force_cycle(W)
        cycle, wt = exact_cycle(W)
        assert wt == pytest.approx(best, abs=1e-12)
        assert cycle == canon


def test_exact_tie_rule_on_integer_weights():
    # integer weights produce many tied optima; the canonical cycle must still win
    rng = np.random.default_rng(3)
    for _ in range(40):
        p = int(rng.integers(4, 8))
        W = np.triu(rng.integers(0, 3, (p, p)).astype(float), 1)
        W = W + W.T
        best, canon = brute_force_cycle(W)
        cycle, wt = exact_cycle(W)
        assert wt == best
        assert cycle == canon


def test_exact_p12_against_random_restarts():
    rng = np.random.default_rng(7)
    W = random_symmetric(rng, 12)
    _, wt = exact_cycle(W)
    assert sorted(exact_cycle(W)[0]) == list(range(12))
    for _ in range(2000):
        perm = rng.permutation(12)
        assert cycle_weight(perm, W) <= wt + 1e-12


# -- cutting --------------------------------------------------------------------

def test_cut_triangle():
    o = cut_cycle([0, 1, 2], TRIANGLE)
    assert o.total == 5.0
    assert sorted(o.edge_values) == [2.0, 3.0]
    assert o.method == "exact-cycle-cut"


def test_cut_four_cycle():
    o = exact_order(P4)
    assert o.sequence == (0, 1, 3, 2)
    assert o.total == 21.0
    assert o.total == cycle_weight([0, 1, 3, 2], P4) - 1.0


def test_cut_equal_edges_uses_tie_rule():
    W = np.ones((5, 5)) - np.eye(5)
    o = cut_cycle([0, 3, 1, 4, 2], W)
    assert o.total == 4.0
    # candidate paths read in their smaller direction; the smallest wins
    assert o.sequence == (0, 2, 4, 1, 3)


# -- greedy -----------------------------------------------------------------------

def test_greedy_example():
    o = greedy_order(GREEDY_EX, 4)
    assert o.sequence == (1, 0, 2, 3)
    assert o.total == 12.0
    assert o.edge_values == (5.0, 3.0, 4.0)


def test_greedy_q2_is_argmax_pair():
    o = greedy_order(GREEDY_EX, 2)
    assert set(o.sequence) == {0, 1}
    assert o.total == 5.0


def test_greedy_all_equal():
    W = 2.0 * (np.ones((6, 6)) - np.eye(6))
    assert greedy_order(W, 4).sequence == (0, 1, 2, 3)
    assert greedy_order(W).sequence == (0, 1, 2, 3, 4, 5)


def test_greedy_q_range():
    for q in (1, 5):
        with pytest.raises(ValueError):
            greedy_order(GREEDY_EX, q)


def test_fixed_start():
    row = matrix_oracle(GREEDY_EX)
    o = greedy_fixed_start(row, 2, 1)
    assert o.sequence == (2,)
    assert o.total == 0.0
    o = greedy_fixed_start(row, 2, 4)
    # from 2: w23=4 beats w02=3; then from 3: w03=2 beats w13=0
    assert o.sequence == (2, 3, 0, 1)
    assert o.total == 11.0
    with pytest.raises(ValueError):
        greedy_fixed_start(row, 4, 2)
    with pytest.raises(ValueError):
        greedy_fixed_start(row, 0, 5)


def test_fixed_start_counts_evaluations():
    rng = np.random.default_rng(1)
    W = random_symmetric(rng, 30)
    calls = []

    def row(current, candidates):
        calls.append(len(candidates))
        return W[current, candidates]

    o = greedy_fixed_start(row, 5, 10, p=30)
    assert len(calls) == 9
    assert sum(calls) <= 9 * 29
    assert o.q == 10


def test_totals_of_examples():
    assert total_information(exact_order(P4), P4) == 21.0
    assert total_information(greedy_order(GREEDY_EX, 4), GREEDY_EX) == 12.0
    assert total_information(greedy_fixed_start(matrix_oracle(P4), 1, 1)) == 0.0


def test_total_information_detects_stale_ordering():
    o = greedy_order(GREEDY_EX, 4)
    with pytest.raises(ValueError):
        total_information(o, np.zeros((3, 3)))
    with pytest.raises(ValueError):
        total_information(o, GREEDY_EX * 2)


def test_ordering_invariants():
    with pytest.raises(ValueError):
        Ordering((0, 0), (1.0,), "greedy")
    with pytest.raises(ValueError):
        Ordering((0, 1, 2), (1.0,), "greedy")


def test_ordering_json_roundtrip():
    names = ["a", "b", "c", "d"]
    o = greedy_order(GREEDY_EX, 4)
    text = o.to_json(names, "pearson", "dependence")
    rec = json.loads(text)
    assert rec["sequence"] == ["b", "a", "c", "d"]
    assert rec["total"] == 12.0
    assert set(rec) == {"method", "statistic", "concept", "sequence", "edge_values", "total"}
    back, raw = ordering_from_json(text, names)
    assert back == o
    assert raw["statistic"] == "pearson"
    assert o.to_text(names) == "b,a,c,d"
    with pytest.raises(ValueError):
        ordering_from_json(text, ["a", "b", "c"])


def test_weight_matrix_input_accepted():
    wm = WeightMatrix(GREEDY_EX, ("a", "b", "c", "d"))
    assert greedy_order(wm).sequence == greedy_order(GREEDY_EX).sequence


# -- properties -------------------------------------------------------------------

matrices = st.integers(3, 7).flatmap(
    lambda p: st.lists(st.floats(0, 10, allow_nan=False), min_size=p * (p - 1) // 2,
                       max_size=p * (p - 1) // 2).map(lambda v, p=p: _from_upper(p, v)))


def _from_upper(p, vals):
    W = np.zeros((p, p))
    W[np.triu_indices(p, 1)] = vals
    return W + W.T


@settings(max_examples=60, deadline=None)
@given(matrices, st.floats(0.1, 100))
def test_ordering_properties(W, c):
    p = W.shape[0]
    best_path = brute_force_path(W)
    ex = exact_order(W)
    gr = greedy_order(W)
    tol = 1e-9 * max(1.0, W.sum())
    assert ex.total <= best_path + tol
    assert gr.total <= best_path + tol
    assert sorted(gr.sequence) == list(range(p))
    assert sorted(ex.sequence) == list(range(p))
    assert gr.edge_values[0] == W.max()
    for o in (ex, gr):
        assert o.total == pytest.approx(sum(W[a, b] for a, b in zip(o.sequence, o.sequence[1:])), abs=1e-12)
    # fixed start from greedy's first axis replays greedy's extension steps
    fs = greedy_fixed_start(matrix_oracle(W), gr.sequence[0], p)
    if fs.sequence[1] == gr.sequence[1]:
        assert fs.sequence == gr.sequence
    # uniform scaling keeps sequences and scales totals
    assert greedy_order(c * W).sequence == gr.sequence
    assert greedy_order(c * W).total == pytest.approx(c * gr.total, rel=1e-12, abs=1e-12)


def test_scaling_invariance_exact():
    rng = np.random.default_rng(11)
    for _ in range(20):
        W = random_symmetric(rng, 7)
        o = exact_order(W)
        scaled = exact_order(3.5 * W)
        assert scaled.sequence == o.sequence
        assert scaled.total == pytest.approx(3.5 * o.total, rel=1e-12)


def test_fixed_start_reproduces_greedy_on_random_matrices():
    rng = np.random.default_rng(12)
    for _ in range(50):
        W = random_symmetric(rng, 9)
        g = greedy_order(W)
        f = greedy_fixed_start(matrix_oracle(W), g.sequence[0], 9)
        assert f.sequence == g.sequence
        assert f.total == pytest.approx(g.total, abs=1e-12)
