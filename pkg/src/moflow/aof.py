"""Enumeration of every optimal integer flow of a weighted-sum problem.

Given an optimal seed with its potentials, complementary slackness pins each
arc with non-zero reduced cost to its seed value; the remaining arcs form the
zero-residual network, and the optimal flows are exactly the feasible flows
that differ from the seed by a circulation on it.

The enumeration fixes arcs in canonical order. For the current arc it walks
its value up and down one unit at a time, each step being a unit augmenting
cycle through the arc in the zero-residual network of the current witness
flow, restricted to arcs not yet fixed. The reachable values form an integer
interval, and every branch carries a witness flow, so no branch is a dead end
and distinct branches differ in a fixed coordinate.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .network import Flow, Network, is_feasible_flow
from .scalar import NotOptimalError, ScalarSolution, _integral, scalarize, verify_optimal


@dataclass(frozen=True)
class ZeroResidualArc:
    arc: int
    direction: int  # +1 forward residual, -1 backward residual
    tail: int
    head: int
    capacity: int


@dataclass(frozen=True)
class ZeroResidualNetwork:
    n: int
    arcs: tuple[ZeroResidualArc, ...]
    # per-arc bounds of the optimal face: [l, u] on zero-reduced-cost arcs, pinned otherwise
    lower: tuple[int, ...]
    upper: tuple[int, ...]

    def has_cycle(self) -> bool:
        """Directed cycle test (a cycle means more than one optimal flow)."""
        out: list[list[int]] = [[] for _ in range(self.n)]
        indeg = [0] * self.n
        for a in self.arcs:
            out[a.tail].append(a.head)
            indeg[a.head] += 1
        queue = deque(v for v in range(self.n) if indeg[v] == 0)
        seen = 0
        while queue:
            v = queue.popleft()
            seen += 1
            for w in out[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        return seen < self.n


def _reduced_signs(network, costs, pi) -> list[int] | None:
    """Sign of each arc's reduced cost, or None when ``pi`` has the wrong length."""
    if len(pi) != network.n:
        return None
    # over a common denominator the signs come out of integer arithmetic
    ic, cden = _integral(costs)
    ip, pden = _integral(pi)
    out = []
    for c, t, h in zip(ic, network.tails, network.heads):
        rc = c * pden + (ip[h] - ip[t]) * cden
        out.append((rc > 0) - (rc < 0))
    return out


def _certifies(network, signs, flow) -> bool:
    if signs is None:
        return False
    for a, s, f in zip(network.arcs, signs, flow):
        if s > 0 and f > a.lower or s < 0 and f < a.upper:
            return False
    return True


def zero_residual(network: Network, weights: Sequence, sol: ScalarSolution) -> ZeroResidualNetwork:
    costs = scalarize(network, weights)
    pi = sol.potentials
    # a feasible flow with slack-complementary potentials is optimal; only
    # fall back to a shortest-path check when the seed's potentials do not fit
    signs = _reduced_signs(network, costs, pi)
    if not (is_feasible_flow(network, sol.flow) and _certifies(network, signs, sol.flow)):
        check = verify_optimal(network, weights, sol.flow)
        if not check.optimal:
            raise NotOptimalError("seed flow is not optimal for the given weights")
        signs = _reduced_signs(network, costs, check.potentials)
    arcs, lower, upper = [], [], []
    for k, (a, f) in enumerate(zip(network.arcs, sol.flow)):
        if signs[k] == 0:
            lower.append(a.lower)
            upper.append(a.upper)
            if f < a.upper:
                arcs.append(ZeroResidualArc(k, 1, a.tail, a.head, a.upper - f))
            if f > a.lower:
                arcs.append(ZeroResidualArc(k, -1, a.head, a.tail, f - a.lower))
        else:
            lower.append(f)
            upper.append(f)
    return ZeroResidualNetwork(network.n, tuple(arcs), tuple(lower), tuple(upper))


def enumerate_bounded_flows(n: int, tails: Sequence[int], heads: Sequence[int],
                            lower: Sequence[int], upper: Sequence[int],
                            start: Sequence[int]) -> Iterator[Flow]:
    """All integer flows with the same node balances as ``start`` within bounds.

    Emitted in lexicographic order of the arc-value vector.
    """
    m = len(tails)
    incident: list[list[int]] = [[] for _ in range(n)]
    for k in range(m):
        if lower[k] < upper[k]:
            incident[tails[k]].append(k)
            incident[heads[k]].append(k)
    free = [k for k in range(m) if lower[k] < upper[k]]
    fixed = [False] * m

    def unit_path(flow, src, dst, skip):
        # BFS from src to dst over residual arcs of unfixed arcs, excluding `skip`
        prev = {src: None}
        queue = deque([src])
        while queue:
            u = queue.popleft()
            if u == dst:
                break
            for k in incident[u]:
                if fixed[k] or k == skip:
                    continue
                if tails[k] == u and flow[k] < upper[k]:
                    v, step = heads[k], 1
                elif heads[k] == u and flow[k] > lower[k]:
                    v, step = tails[k], -1
                else:
                    continue
                if v not in prev:
                    prev[v] = (u, k, step)
                    queue.append(v)
        if dst not in prev:
            return None
        path = []
        v = dst
        while prev[v] is not None:
            u, k, step = prev[v]
            path.append((k, step))
            v = u
        return path

    def shifted(flow, a, delta):
        # unit change on arc a closed by a residual path through the rest
        if delta > 0:
            if flow[a] >= upper[a]:
                return None
            path = unit_path(flow, heads[a], tails[a], a)
        else:
            if flow[a] <= lower[a]:
                return None
            path = unit_path(flow, tails[a], heads[a], a)
        if path is None:
            return None
        new = list(flow)
        new[a] += delta
        for k, step in path:
            new[k] += step
        return new

    def recurse(idx, flow):
        if idx == len(free):
            yield tuple(flow)
            return
        a = free[idx]
        below = []
        cur = flow
        while (cur := shifted(cur, a, -1)) is not None:
            below.append(cur)
        above = []
        cur = flow
        while (cur := shifted(cur, a, 1)) is not None:
            above.append(cur)
        fixed[a] = True
        try:
            for witness in [*reversed(below), flow, *above]:
                yield from recurse(idx + 1, witness)
        finally:
            fixed[a] = False

    yield from recurse(0, list(start))


def enumerate_optimal_flows(network: Network, weights: Sequence, seed: ScalarSolution,
                            keep: Callable[[Flow], bool] | None = None) -> Iterator[Flow]:
    """Every optimal flow of ``min weights^T C f`` exactly once.

    ``keep`` filters what is emitted; it never prunes the search.
    """
    zrn = zero_residual(network, weights, seed)
    for flow in enumerate_bounded_flows(network.n, network.tails, network.heads,
                                        zrn.lower, zrn.upper, seed.flow):
        if keep is None or keep(flow):
            yield flow
