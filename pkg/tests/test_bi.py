import pytest

from moflow.bi import all_supported_flows_bi, edge_weights, extreme_supported_points
from moflow.instances import star
from moflow.multi import all_supported_flows
from moflow.oracle import WEAKLY_ONLY, classify
from moflow.scalar import verify_optimal

from conftest import sweep_instance, three_choice_network, unique_flow_network


def test_three_choice_extremes():
    pts = [p.outcome for p in extreme_supported_points(three_choice_network())]
    assert pts == [(0, 4), (1, 1), (4, 0)]


def test_unique_flow_single_extreme():
    net = unique_flow_network(2)
    ext = extreme_supported_points(net)
    assert len(ext) == 1
    assert [s.flow for s in all_supported_flows_bi(net)] == [(2, 2)]


def test_star_single_extreme():
    ext = extreme_supported_points(star(2))
    assert [p.outcome for p in ext] == [(4, 4)]


def test_star_three_flows():
    out = list(all_supported_flows_bi(star(3)))
    assert len(out) == 10 == len({s.flow for s in out})
    assert {s.outcome for s in out} == {(6, 6)}


def test_edge_weights_positive_between_extremes():
    ext = extreme_supported_points(three_choice_network())
    for a, b in zip(ext, ext[1:]):
        lam = edge_weights(a.outcome, b.outcome)
        assert lam[0] > 0 and lam[1] > 0
        assert b.outcome[0] > a.outcome[0] and a.outcome[1] > b.outcome[1]


def test_three_choice_supported():
    out = list(all_supported_flows_bi(three_choice_network()))
    assert sorted(s.outcome for s in out) == [(0, 4), (1, 1), (4, 0)]


@pytest.mark.parametrize("seed", range(40))
def test_matches_oracle(seed):
    net = sweep_instance(seed, 2)
    c = classify(net)
    out = list(all_supported_flows_bi(net))
    flows = [s.flow for s in out]
    assert len(flows) == len(set(flows))
    assert set(flows) == c.supported_flows
    assert not c.outcome_set(WEAKLY_ONLY)
    for s in out:
        assert all(x > 0 for x in s.weights)
        assert verify_optimal(net, s.weights, s.flow).optimal
    assert set(flows) == {s.flow for s in all_supported_flows(net)}


@pytest.mark.parametrize("seed", range(10))
def test_parallel_jobs_same_output(seed):
    net = sweep_instance(seed, 2)
    assert list(all_supported_flows_bi(net, jobs=3)) == list(all_supported_flows_bi(net))
