"""Bi-objective pipeline: extreme supported points, then one AOF sweep per edge."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .aof import enumerate_optimal_flows
from .network import Flow, Network, Outcome, outcome
from .scalar import certify, lexicographic_order, staged_flow, unit_vector, weighted


@dataclass(frozen=True)
class ExtremePoint:
    outcome: Outcome
    flow: Flow


@dataclass(frozen=True)
class SupportedFlow:
    flow: Flow
    outcome: Outcome
    weights: tuple[Fraction, ...]   # witness: the flow is optimal for these (strictly positive) weights
    face: str


def _require_biobjective(network: Network):
    if network.d != 2:
        raise ValueError(f"bi-objective pipeline needs d = 2, got d = {network.d}")


def edge_weights(a: Outcome, b: Outcome) -> tuple[Fraction, Fraction]:
    """Normal of the segment between consecutive extremes ``a`` (left) and ``b``."""
    return (a[1] - b[1], b[0] - a[0])


def extreme_supported_points(network: Network) -> list[ExtremePoint]:
    """Vertices of the upper image sorted by the first objective (dichotomic scheme)."""
    _require_biobjective(network)
    first = staged_flow(network, lexicographic_order(network, (1, 2)))
    last = staged_flow(network, lexicographic_order(network, (2, 1)))
    left = ExtremePoint(outcome(network, first), first)
    right = ExtremePoint(outcome(network, last), last)
    if left.outcome == right.outcome:
        return [left]
    found = [left, right]
    pending = [(left, right)]
    e1 = unit_vector(2, 0)
    while pending:
        a, b = pending.pop()
        lam = edge_weights(a.outcome, b.outcome)
        # the first-objective tie-break lands on a vertex of the optimal face
        flow = staged_flow(network, [lam, e1])
        y = outcome(network, flow)
        if weighted(lam, y) < weighted(lam, a.outcome):
            mid = ExtremePoint(y, flow)
            found.append(mid)
            pending += [(a, mid), (mid, b)]
    found.sort(key=lambda p: p.outcome)
    return found


def _sweep(network: Network, extremes: list[ExtremePoint], i: int) -> Iterator[SupportedFlow]:
    a, b = extremes[i], extremes[i + 1]
    lam = edge_weights(a.outcome, b.outcome)
    assert lam[0] > 0 and lam[1] > 0, "consecutive extremes must give a positive edge normal"
    seed = certify(network, lam, a.flow)
    # preimages of the left endpoint were emitted with the previous edge
    skip = a.outcome[0] if i > 0 else None
    for f in enumerate_optimal_flows(network, lam, seed):
        y = outcome(network, f)
        if y[0] != skip:
            yield SupportedFlow(f, y, lam, f"edge {i + 1}")


def all_supported_flows_bi(network: Network, jobs: int = 1) -> Iterator[SupportedFlow]:
    """Every supported efficient flow of a bi-objective instance, each once.

    With ``jobs > 1`` the edge sweeps run in a thread pool; output order is
    the same as the sequential run.
    """
    extremes = extreme_supported_points(network)
    if len(extremes) == 1:
        lam = (Fraction(1), Fraction(1))
        seed = certify(network, lam, extremes[0].flow)
        for f in enumerate_optimal_flows(network, lam, seed):
            yield SupportedFlow(f, outcome(network, f), lam, "point 1")
        return
    edges = range(len(extremes) - 1)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for batch in pool.map(lambda i: list(_sweep(network, extremes, i)), edges):
                yield from batch
        return
    for i in edges:
        yield from _sweep(network, extremes, i)
