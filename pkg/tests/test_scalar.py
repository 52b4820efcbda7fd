from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from moflow.instances import fig2, star
from moflow.network import Dominance, dominates, is_feasible_flow, outcome
from moflow.oracle import brute_force_minimum, enumerate_all_flows, lexicographic_minimum
from moflow.scalar import (
    as_weights, check_optimal, reduced_cost, residual_arcs, scalarize, solve,
    solve_lexicographic, verify_optimal, weighted,
)

from conftest import sweep_instance, unique_flow_network

F = Fraction


def test_scalarized_cost_of_first_arc(fig2_net):
    costs = scalarize(fig2_net, (F(1, 2), F(1, 2), 0))
    assert costs[0] == 2


def test_unit_weight_gives_first_objective(fig2_net):
    assert scalarize(fig2_net, (1, 0, 0)) == [a.cost[0] for a in fig2_net.arcs]


def test_scaled_weights_scale_costs(fig2_net):
    lam = (F(1, 3), F(2, 7), 1)
    one = scalarize(fig2_net, lam)
    three = scalarize(fig2_net, [3 * x for x in lam])
    assert three == [3 * c for c in one]


@pytest.mark.parametrize("bad", [(0, 0, 0), (1, -1, 1), (1, 1)])
def test_invalid_weights_rejected(bad):
    with pytest.raises(ValueError):
        as_weights(bad, 3)


def test_fig2_weighted_optimum(fig2_net):
    lam = (F(1, 4), F(1, 2), F(1, 4))
    sol = solve(fig2_net, lam)
    # (13, 11, 7) and the rest of the edge (12,12,6)-(16,8,10) tie at 21/2
    assert sol.objective_value == F(21, 2)
    assert sol.objective_value == brute_force_minimum(fig2_net, lam)[0]
    assert weighted(lam, (13, 11, 7)) == F(21, 2)
    assert is_feasible_flow(fig2_net, sol.flow)


def test_unique_flow_solution():
    net = unique_flow_network()
    for lam in [(1, 1, 1), (5, 0, 1)]:
        assert solve(net, lam).flow == (2, 2)


def test_scaling_keeps_argmin(fig2_net):
    lam = (F(1, 4), F(1, 2), F(1, 4))
    optimal = {f for f in enumerate_all_flows(fig2_net) if verify_optimal(fig2_net, lam, f).optimal}
    doubled = {f for f in enumerate_all_flows(fig2_net)
               if verify_optimal(fig2_net, [2 * x for x in lam], f).optimal}
    assert optimal == doubled and len(optimal) == 5


@pytest.mark.parametrize("order, expected", [((1, 2, 3), (8, 16, 6)), ((2, 1, 3), (16, 8, 10))])
def test_fig2_lexicographic(fig2_net, order, expected):
    y = outcome(fig2_net, solve_lexicographic(fig2_net, order).flow)
    assert y == expected
    assert y == lexicographic_minimum(fig2_net, order)


def test_single_objective_lex_is_plain_solve():
    net = sweep_instance(3, 1)
    assert solve_lexicographic(net, (1,)).objective_value == solve(net, (1,)).objective_value


def test_solution_verifies(fig2_net):
    sol = solve(fig2_net, (1, 2, 3))
    assert verify_optimal(fig2_net, (1, 2, 3), sol.flow).optimal


def test_dominated_flow_not_optimal(fig2_net):
    lam = (F(1, 4), F(1, 2), F(1, 4))
    flow = next(f for f in enumerate_all_flows(fig2_net) if outcome(fig2_net, f) == (12, 12, 10))
    assert weighted(lam, (12, 12, 10)) == F(23, 2)
    check = verify_optimal(fig2_net, lam, flow)
    assert not check.optimal
    # the witness is a negative residual cycle
    costs = scalarize(fig2_net, lam)
    assert check.cycle and sum(s * costs[a] for a, s in check.cycle) < 0


def test_unique_flow_verifies_for_any_weight():
    net = unique_flow_network()
    assert verify_optimal(net, (3, 0, 1), (2, 2)).optimal


def test_infeasible_flow_rejected(fig2_net):
    with pytest.raises(ValueError):
        verify_optimal(fig2_net, (1, 1, 1), (0, 0, 0, 0, 0, 0))


def _check_slackness(net, lam, sol):
    costs = scalarize(net, lam)
    lo, hi = net.lower, net.upper
    for a, sign, _, _ in residual_arcs(net.tails, net.heads, lo, hi, sol.flow):
        rc = reduced_cost(costs[a], sol.potentials, net.tails[a], net.heads[a])
        assert sign * rc >= 0


weights = st.lists(st.fractions(min_value=0, max_value=5, max_denominator=4), min_size=3, max_size=3)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), weights)
def test_solve_matches_brute_force(seed, lam):
    if not any(lam):
        lam[0] = F(1)
    net = sweep_instance(seed, 3)
    sol = solve(net, lam)
    assert sol.objective_value == brute_force_minimum(net, lam)[0]
    _check_slackness(net, lam, sol)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), weights, st.fractions(min_value=F(1, 10), max_value=10))
def test_exchanged_certificates(seed, lam, t):
    if not any(lam):
        lam[1] = F(1)
    net = sweep_instance(seed, 3)
    scaled = [t * x for x in lam]
    a, b = solve(net, lam), solve(net, scaled)
    assert verify_optimal(net, scaled, a.flow).optimal
    assert verify_optimal(net, lam, b.flow).optimal


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.permutations([1, 2, 3]))
def test_lexicographic_is_efficient(seed, order):
    net = sweep_instance(seed, 3)
    y = outcome(net, solve_lexicographic(net, order).flow)
    for f in enumerate_all_flows(net):
        assert dominates(outcome(net, f), y) not in (Dominance.STRICTLY_LESS, Dominance.LEQ_DOMINATES)


def test_check_optimal_on_star():
    net = star(3)
    sol = solve(net, (1, 1))
    costs = scalarize(net, (1, 1))
    res = check_optimal(net.n, net.tails, net.heads, net.lower, net.upper, costs, sol.flow)
    assert res.optimal and sol.objective_value == 12
