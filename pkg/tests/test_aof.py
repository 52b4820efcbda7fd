import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from moflow.aof import enumerate_optimal_flows, zero_residual
from moflow.network import outcome
from moflow.oracle import brute_force_minimum
from moflow.scalar import NotOptimalError, certify, solve, weighted
from moflow.instances import star

from conftest import sweep_instance, unique_flow_network

F = Fraction


def test_unique_optimum_has_acyclic_zero_residual():
    net = unique_flow_network()
    sol = solve(net, (1, 1, 1))
    assert not zero_residual(net, (1, 1, 1), sol).has_cycle()
    assert list(enumerate_optimal_flows(net, (1, 1, 1), sol)) == [(2, 2)]


def test_star_zero_residual_has_cycles():
    net = star(2)
    sol = solve(net, (1, 1))
    zr = zero_residual(net, (1, 1), sol)
    # every arc has reduced cost zero, so all bounds stay open
    assert list(zr.lower) == list(net.lower) and list(zr.upper) == list(net.upper)
    assert zr.has_cycle()


def test_star_three_gives_ten_flows():
    net = star(3)
    sol = solve(net, (2, 5))
    flows = list(enumerate_optimal_flows(net, (2, 5), sol))
    assert len(flows) == 10 == len(set(flows))


def test_fig2_preimages_on_weighted_face(fig2_net):
    lam = (F(1, 4), F(1, 2), F(1, 4))
    sol = certify(fig2_net, lam, (0, 0, 3, 3, 1, 1))
    ys = {outcome(fig2_net, f) for f in enumerate_optimal_flows(fig2_net, lam, sol)}
    assert ys == {(12, 12, 6), (13, 11, 7), (14, 10, 8), (15, 9, 9), (16, 8, 10)}


def test_fig2_zero_third_weight(fig2_net):
    lam = (F(1, 2), F(1, 2), 0)
    sol = solve(fig2_net, lam)
    flows = list(enumerate_optimal_flows(fig2_net, lam, sol))
    ys = {outcome(fig2_net, f) for f in flows}
    assert ys == {(8, 16, 6), (9, 15, 7), (10, 14, 8), (11, 13, 9), (12, 12, 6), (12, 12, 10),
                  (13, 11, 7), (14, 10, 8), (15, 9, 9), (16, 8, 10)}
    assert all(y[0] + y[1] == 24 for y in ys)


def test_non_optimal_seed_rejected(fig2_net):
    lam = (F(1, 4), F(1, 2), F(1, 4))
    good = solve(fig2_net, lam)
    bad = type(good)((1, 1, 4, 4, 0, 0), good.potentials, good.objective_value, good.weights)
    with pytest.raises(NotOptimalError):
        zero_residual(fig2_net, lam, bad)


def test_keep_filter_applies_at_emission(fig2_net):
    lam = (F(1, 2), F(1, 2), 0)
    sol = solve(fig2_net, lam)
    kept = list(enumerate_optimal_flows(fig2_net, lam, sol, lambda f: outcome(fig2_net, f)[2] == 6))
    assert {outcome(fig2_net, f) for f in kept} == {(8, 16, 6), (12, 12, 6)}


def _brute(net, lam):
    best, argmin = brute_force_minimum(net, lam)
    assert all(weighted(lam, outcome(net, f)) == best for f in argmin)
    return set(argmin)


positive = st.lists(st.integers(1, 6), min_size=3, max_size=3)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), positive)
def test_emission_equals_brute_force(seed, lam):
    net = sweep_instance(seed, 3)
    flows = list(enumerate_optimal_flows(net, lam, solve(net, lam)))
    assert len(flows) == len(set(flows))
    assert set(flows) == _brute(net, lam)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), positive)
def test_differences_are_zero_residual_circulations(seed, lam):
    net = sweep_instance(seed, 3)
    sol = solve(net, lam)
    zr = zero_residual(net, lam, sol)
    for f in enumerate_optimal_flows(net, lam, sol):
        delta = [a - b for a, b in zip(f, sol.flow)]
        excess = [0] * net.n
        for t, h, x in zip(net.tails, net.heads, delta):
            excess[t] -= x
            excess[h] += x
        assert not any(excess)
        # moves stay inside the zero-residual bounds
        assert all(lo <= v <= hi for v, lo, hi in zip(f, zr.lower, zr.upper))


@pytest.mark.parametrize("seed", range(15))
def test_count_independent_of_seed(seed):
    net = sweep_instance(seed, 2)
    lam = (1, 1)
    optimal = sorted(_brute(net, lam))
    picks = random.Random(seed).sample(optimal, min(3, len(optimal)))
    counts = {len(list(enumerate_optimal_flows(net, lam, certify(net, lam, f)))) for f in picks}
    assert counts == {len(optimal)}


def test_lexicographic_emission_order(fig2_net):
    lam = (F(1, 2), F(1, 2), 0)
    flows = list(enumerate_optimal_flows(fig2_net, lam, solve(fig2_net, lam)))
    assert flows == sorted(flows)
