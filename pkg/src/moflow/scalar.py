"""Weighted-sum scalarization and exact single-objective min-cost flow.

The solver is successive shortest paths with node potentials on the
lower-bound-shifted network. Every returned solution carries node
potentials ``pi`` with reduced costs ``c_ij - pi_i + pi_j >= 0`` on all
residual arcs, which certifies optimality.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .network import Flow, Network, is_feasible_flow, outcome

Weights = tuple[Fraction, ...]


class InfeasibleError(ValueError):
    """No feasible flow exists."""


class NotOptimalError(ValueError):
    """A flow offered as optimal fails the optimality check."""


def as_weights(values: Sequence, d: int | None = None) -> Weights:
    w = tuple(v if type(v) is Fraction else Fraction(v) for v in values)
    if d is not None and len(w) != d:
        raise ValueError(f"weight vector has {len(w)} components, expected {d}")
    if any(x < 0 for x in w):
        raise ValueError("weights must be non-negative")
    if not any(w):
        raise ValueError("weight vector must not be zero")
    return w


def strictly_positive(weights: Sequence) -> bool:
    return all(x > 0 for x in weights)


def normalized(weights: Sequence) -> Weights:
    """Scale to unit 1-norm; for display only, argmin does not depend on it."""
    total = sum(Fraction(x) for x in weights)
    return tuple(Fraction(x) / total for x in weights)


def integer_scaled(weights: Sequence) -> Weights:
    """Smallest positive multiple with coprime integer components."""
    from math import gcd, lcm

    w = [Fraction(x) for x in weights]
    den = lcm(*(x.denominator for x in w))
    ints = [int(x * den) for x in w]
    g = gcd(*ints)
    return tuple(Fraction(v // g) for v in ints)


def weighted(weights: Sequence, y: Sequence) -> Fraction:
    ws, vs = _integral(weights), _integral(y)
    if ws[1] == 1 and vs[1] == 1:
        return Fraction(sum(w * v for w, v in zip(ws[0], vs[0])))
    return sum((Fraction(w) * v for w, v in zip(weights, y)), Fraction(0))


def _integral(values: Sequence) -> tuple[list[int], int]:
    """``(ints, den)`` with ``values[i] == ints[i] / den`` and ``den`` minimal."""
    den = 1
    for v in values:
        d = getattr(v, "denominator", 1)
        if d != 1:
            den = lcm(den, d)
    if den == 1:
        return [int(v) for v in values], 1
    return [v.numerator * (den // v.denominator) for v in (Fraction(x) for x in values)], den


def scalarize(network: Network, weights: Sequence) -> list:
    """Scalar arc costs ``lambda^T c_arc``; plain ints when they are integral."""
    try:
        # hashing Fractions is slow; their parts identify them just as well
        key = tuple((v.numerator, v.denominator) for v in weights)
    except AttributeError:
        key = tuple(weights)
    cache = network.scalar_cache
    hit = cache.get(key)
    if hit is None:
        hit = cache[key] = _scalarize(network, as_weights(weights, network.d))
    return list(hit)


def _scalarize(network: Network, w: Weights) -> tuple:
    rows, den = network.integer_costs
    if all(x.denominator == 1 for x in w) and all(q == 1 for q in den):
        ws, wden = [int(x) for x in w], 1
    else:
        # weight each objective by w_k / den_k, then clear the remaining denominators
        ws, wden = _integral([wk / dk for wk, dk in zip(w, den)])
    costs = [sum(a * b for a, b in zip(ws, row)) for row in rows]
    if wden == 1:
        return tuple(costs)
    return tuple(Fraction(c, wden) for c in costs)


@dataclass(frozen=True)
class ScalarSolution:
    flow: Flow
    potentials: tuple[Fraction, ...]
    objective_value: Fraction
    weights: Weights


@dataclass(frozen=True)
class OptimalityCheck:
    optimal: bool
    potentials: tuple[Fraction, ...] | None = None
    # (arc index, +1 forward / -1 backward) pairs forming a negative residual cycle
    cycle: tuple[tuple[int, int], ...] | None = None

    def __bool__(self):
        return self.optimal


# -- array-level kernels ----------------------------------------------------

def min_cost_flow(n, tails, heads, lower, upper, costs, balances) -> list[int]:
    """Optimal integer flow for one cost vector; raises InfeasibleError."""
    # scaling by a common denominator keeps the shortest-path work in integers
    costs, _ = _integral(costs)
    m = len(tails)
    x = [0] * m
    excess = list(balances)
    for k in range(m):
        excess[tails[k]] -= lower[k]
        excess[heads[k]] += lower[k]
    # residual graph, edge e and its reverse e ^ 1
    to, cap, cost, arc_of = [], [], [], []
    adj: list[list[int]] = [[] for _ in range(n + 2)]

    def add_edge(u, v, c, w, k):
        e = len(to)
        adj[u].append(e)
        adj[v].append(e + 1)
        to.extend((v, u))
        cap.extend((c, 0))
        cost.extend((w, -w))
        arc_of.extend((k, k))

    for k in range(m):
        c = costs[k]
        width = upper[k] - lower[k]
        if width < 0:
            raise InfeasibleError(f"arc {k + 1} has lower bound above upper bound")
        if c < 0:
            # saturate so that every residual arc starts with non-negative cost
            x[k] = width
            excess[tails[k]] -= width
            excess[heads[k]] += width
            add_edge(heads[k], tails[k], width, -c, ~k)
        else:
            add_edge(tails[k], heads[k], width, c, k)
    source, sink = n, n + 1
    need = 0
    for v in range(n):
        if excess[v] > 0:
            add_edge(source, v, excess[v], 0, None)
            need += excess[v]
        elif excess[v] < 0:
            add_edge(v, sink, -excess[v], 0, None)
    if sum(excess) != 0:
        raise InfeasibleError("balances do not sum to zero")

    heappush, heappop = heapq.heappush, heapq.heappop
    size = n + 2
    pot = [0] * size
    sent = 0
    while sent < need:
        dist: list = [None] * size
        prev = [-1] * size
        dist[source] = 0
        # ties between equal distances fall back to the node id
        heap = [(0, source)]
        done = [False] * size
        while heap:
            du, u = heappop(heap)
            if done[u]:
                continue
            done[u] = True
            pu = pot[u] + du
            for e in adj[u]:
                if cap[e] <= 0:
                    continue
                v = to[e]
                nd = pu + cost[e] - pot[v]
                dv = dist[v]
                if dv is None or nd < dv:
                    dist[v] = nd
                    prev[v] = e
                    heappush(heap, (nd, v))
        if dist[sink] is None:
            raise InfeasibleError("no feasible flow satisfies the balances and bounds")
        cutoff = dist[sink]
        for v in range(size):
            dv = dist[v]
            pot[v] += cutoff if dv is None or dv > cutoff else dv
        push = need - sent
        v = sink
        while v != source:
            e = prev[v]
            if cap[e] < push:
                push = cap[e]
            v = to[e ^ 1]
        v = sink
        while v != source:
            e = prev[v]
            cap[e] -= push
            cap[e ^ 1] += push
            v = to[e ^ 1]
        sent += push

    for e in range(0, len(to), 2):
        k = arc_of[e]
        if k is None:
            continue
        moved = cap[e ^ 1]
        if k >= 0:
            x[k] += moved
        else:
            x[~k] -= moved
    return [lo + v for lo, v in zip(lower, x)]


def residual_arcs(tails, heads, lower, upper, flow):
    """Yield ``(arc, direction, from, to)`` for every residual arc."""
    for k, f in enumerate(flow):
        if f < upper[k]:
            yield k, 1, tails[k], heads[k]
        if f > lower[k]:
            yield k, -1, heads[k], tails[k]


def _bellman_ford(n, tails, heads, lower, upper, costs, flow):
    """Integer-cost kernel: ``(dist, None)`` when optimal, else ``(None, cycle)``."""
    res = [(k, s, u, v, costs[k] if s > 0 else -costs[k])
           for k, s, u, v in residual_arcs(tails, heads, lower, upper, flow)]
    dist = [0] * n
    pred: list = [None] * n
    last = -1
    for _ in range(n):
        last = -1
        for k, s, u, v, c in res:
            if dist[u] + c < dist[v]:
                dist[v] = dist[u] + c
                pred[v] = (k, s, u)
                last = v
        if last < 0:
            return dist, None
    # a relaxation in round n means a negative cycle reachable through pred
    v = last
    for _ in range(n):
        v = pred[v][2]
    cycle = []
    u = v
    while True:
        k, s, p = pred[u]
        cycle.append((k, s))
        u = p
        if u == v:
            break
    cycle.reverse()
    return None, tuple(cycle)


def check_optimal(n, tails, heads, lower, upper, costs, flow) -> OptimalityCheck:
    """Bellman-Ford on the residual graph of ``flow``."""
    icosts, den = _integral(costs)
    dist, cycle = _bellman_ford(n, tails, heads, lower, upper, icosts, flow)
    if cycle is not None:
        return OptimalityCheck(False, cycle=cycle)
    return OptimalityCheck(True, potentials=tuple(Fraction(-x, den) for x in dist))


def reduced_cost(cost, potentials, tail, head) -> Fraction:
    return cost - potentials[tail] + potentials[head]


# -- network-level API ------------------------------------------------------

def _solve_costs(network: Network, cost_vectors) -> list[int]:
    """Lexicographic staged solve over a sequence of scalar cost vectors.

    After each stage, arcs with non-zero reduced cost are pinned to the bound
    complementary slackness dictates, so later stages only move flow along
    zero-reduced-cost arcs.
    """
    n, tails, heads = network.n, network.tails, network.heads
    lower, upper = list(network.lower), list(network.upper)
    flow = None
    last = len(cost_vectors) - 1
    for stage, costs in enumerate(cost_vectors):
        icosts, _ = _integral(costs)
        flow = min_cost_flow(n, tails, heads, lower, upper, icosts, network.balances)
        if stage == last:
            break
        dist, _ = _bellman_ford(n, tails, heads, lower, upper, icosts, flow)
        assert dist is not None, "solver produced a non-optimal flow"
        for k in range(network.m):
            # reduced cost with potentials -dist
            rc = icosts[k] + dist[tails[k]] - dist[heads[k]]
            if rc > 0:
                upper[k] = flow[k]
            elif rc < 0:
                lower[k] = flow[k]
    return flow


def certify(network: Network, weights: Sequence, flow: Sequence[int]) -> ScalarSolution:
    """Wrap a flow known to be optimal for ``weights`` with its certificate."""
    w = as_weights(weights, network.d)
    check = verify_optimal(network, w, flow)
    if not check.optimal:
        raise NotOptimalError(f"flow is not optimal for weights {w}")
    return ScalarSolution(tuple(flow), check.potentials, weighted(w, outcome(network, flow)), w)


def solve(network: Network, weights: Sequence) -> ScalarSolution:
    """Optimal flow of the weighted-sum problem ``min lambda^T C f``."""
    costs = scalarize(network, weights)
    flow = min_cost_flow(network.n, network.tails, network.heads,
                         network.lower, network.upper, costs, network.balances)
    return certify(network, weights, flow)


def solve_staged(network: Network, weight_sequence: Sequence[Sequence]) -> ScalarSolution:
    """Lexicographic minimum over a sequence of weight vectors.

    The certificate returned is for the first weight vector.
    """
    return certify(network, weight_sequence[0], staged_flow(network, weight_sequence))


def staged_flow(network: Network, weight_sequence: Sequence[Sequence]) -> list[int]:
    """The flow of ``solve_staged`` without building its certificate."""
    return _solve_costs(network, [scalarize(network, w) for w in weight_sequence])


def lexicographic_order(network: Network, objective_order: Sequence[int]) -> list[Weights]:
    """Unit weight vectors for a 1-based objective order, validated."""
    order = list(objective_order)
    if sorted(order) != list(range(1, network.d + 1)):
        raise ValueError(f"objective order must be a permutation of 1..{network.d}")
    return [unit_vector(network.d, k - 1) for k in order]


def unit_vector(d: int, k: int) -> Weights:
    return tuple(Fraction(int(i == k)) for i in range(d))


def solve_lexicographic(network: Network, objective_order: Sequence[int]) -> ScalarSolution:
    """Lexicographically minimal flow; ``objective_order`` is 1-based."""
    return solve_staged(network, lexicographic_order(network, objective_order))


def verify_optimal(network: Network, weights: Sequence, flow: Sequence[int]) -> OptimalityCheck:
    if not is_feasible_flow(network, flow):
        raise ValueError("flow is not feasible for the network")
    costs = scalarize(network, weights)
    return check_optimal(network.n, network.tails, network.heads,
                         network.lower, network.upper, costs, list(flow))
