"""Brute-force ground truth for small instances.

Enumerates every feasible integer flow and labels each distinct outcome as
supported, weakly supported only, unsupported or dominated. The support test
is an exact rational LP over all enumerated outcomes:

    max t  s.t.  sum(lam) = 1,  lam_i >= t,  lam . (y' - y) >= 0  for all y'

``t > 0`` means ``y`` is optimal for a strictly positive weight, ``t = 0``
only for a weight with zero components, infeasible for none at all.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .network import Flow, Network, Outcome, is_dominated_by, outcome
from .scalar import weighted

DEFAULT_CAP = 200_000

SUPPORTED = "supported"
WEAKLY_ONLY = "weakly-supported-only"
UNSUPPORTED = "unsupported"
DOMINATED = "dominated"
LABELS = (SUPPORTED, WEAKLY_ONLY, UNSUPPORTED, DOMINATED)


class OracleCapExceeded(RuntimeError):
    def __init__(self, cap: int):
        super().__init__(f"instance too large for oracle: more than {cap} feasible flows")
        self.cap = cap


def default_cap() -> int:
    return int(os.environ.get("MOFLOW_ORACLE_CAP", DEFAULT_CAP))


# -- feasibility by max flow --------------------------------------------------

def _max_flow(n: int, edges: list[tuple[int, int, int]], s: int, t: int, limit: int) -> int:
    """Dinic's algorithm; stops once ``limit`` units are routed."""
    to, cap = [], []
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v, c in edges:
        adj[u].append(len(to)); to.append(v); cap.append(c)
        adj[v].append(len(to)); to.append(u); cap.append(0)
    total = 0
    while total < limit:
        level = [-1] * n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in adj[u]:
                if cap[e] > 0 and level[to[e]] < 0:
                    level[to[e]] = level[u] + 1
                    queue.append(to[e])
        if level[t] < 0:
            break
        it = [0] * n

        def dfs(u, pushed):
            if u == t:
                return pushed
            while it[u] < len(adj[u]):
                e = adj[u][it[u]]
                v = to[e]
                if cap[e] > 0 and level[v] == level[u] + 1:
                    got = dfs(v, min(pushed, cap[e]))
                    if got:
                        cap[e] -= got
                        cap[e ^ 1] += got
                        return got
                it[u] += 1
            return 0

        while total < limit and (got := dfs(s, limit - total)):
            total += got
    return total


def bounds_feasible(n: int, tails, heads, lower, upper, balances) -> bool:
    """Is there a flow with ``lower <= f <= upper`` meeting ``balances``?"""
    excess = list(balances)
    edges = []
    for u, v, lo, hi in zip(tails, heads, lower, upper):
        if lo > hi:
            return False
        excess[u] -= lo
        excess[v] += lo
        if hi > lo:
            edges.append((u, v, hi - lo))
    s, t = n, n + 1
    need = 0
    for v, e in enumerate(excess):
        if e > 0:
            edges.append((s, v, e))
            need += e
        elif e < 0:
            edges.append((v, t, -e))
    if need == 0:
        return True
    return _max_flow(n + 2, edges, s, t, need) == need


def enumerate_all_flows(network: Network, cap: int | None = None) -> list[Flow]:
    """Every feasible integer flow, in lexicographic order of arc values.

    Arcs are fixed one at a time; each tentative value is kept only if the
    remaining arcs can still complete a feasible flow.
    """
    if cap is None:
        cap = default_cap()
    n, m = network.n, network.m
    tails, heads = network.tails, network.heads
    lower, upper = network.lower, network.upper
    if not bounds_feasible(n, tails, heads, lower, upper, network.balances):
        return []
    lo, hi = list(lower), list(upper)
    out: list[Flow] = []

    def recurse(k):
        if k == m:
            out.append(tuple(lo))
            if len(out) > cap:
                raise OracleCapExceeded(cap)
            return
        for value in range(lower[k], upper[k] + 1):
            lo[k] = hi[k] = value
            if bounds_feasible(n, tails, heads, lo, hi, network.balances):
                recurse(k + 1)
        lo[k], hi[k] = lower[k], upper[k]

    recurse(0)
    return out


# -- exact simplex --------------------------------------------------------------

@dataclass
class LPResult:
    status: str                 # "optimal" | "infeasible" | "unbounded"
    x: tuple[Fraction, ...] = ()
    value: Fraction | None = None
    duals: tuple[Fraction, ...] = ()    # shadow prices of the <= rows


def linprog_max(c: Sequence, A_ub: Sequence[Sequence] = (), b_ub: Sequence = (),
                A_eq: Sequence[Sequence] = (), b_eq: Sequence = ()) -> LPResult:
    """``max c.x`` s.t. ``A_ub x <= b_ub``, ``A_eq x = b_eq``, ``x >= 0``.

    Dense two-phase tableau simplex in exact rationals with Bland's rule.
    """
    nvar = len(c)
    nslack = len(A_ub)
    rows: list[list[Fraction]] = []
    flipped: list[bool] = []
    needs_art: list[bool] = []
    for i, (a, b) in enumerate(zip(A_ub, b_ub)):
        row = [Fraction(x) for x in a] + [Fraction(int(j == i)) for j in range(nslack)] + [Fraction(b)]
        flip = row[-1] < 0
        rows.append([-x for x in row] if flip else row)
        flipped.append(flip)
        needs_art.append(flip)
    for a, b in zip(A_eq, b_eq):
        row = [Fraction(x) for x in a] + [Fraction(0)] * nslack + [Fraction(b)]
        rows.append([-x for x in row] if row[-1] < 0 else row)
        needs_art.append(True)
    art_rows = [i for i, flag in enumerate(needs_art) if flag]
    nreal = nvar + nslack
    ncol = nreal + len(art_rows)
    T = []
    basis = []
    for i, row in enumerate(rows):
        art = [Fraction(0)] * len(art_rows)
        if needs_art[i]:
            art[art_rows.index(i)] = Fraction(1)
            basis.append(nreal + art_rows.index(i))
        else:
            basis.append(nvar + i)
        T.append(row[:-1] + art + row[-1:])

    def objective_row(obj):
        # reduced costs z_j - c_j and the objective value in the last slot
        z = [-x for x in obj] + [Fraction(0)]
        for i, b in enumerate(basis):
            cb = obj[b]
            if cb:
                z = [zj + cb * tij for zj, tij in zip(z, T[i])]
        return z

    def pivot(r, col, Z):
        p = T[r][col]
        T[r] = [x / p for x in T[r]]
        Tr = T[r]
        for i in range(len(T)):
            f = T[i][col]
            if i != r and f:
                T[i] = [x - f * y for x, y in zip(T[i], Tr)]
        f = Z[col]
        if f:
            Z[:] = [x - f * y for x, y in zip(Z, Tr)]
        basis[r] = col

    def run(Z, allowed):
        while True:
            entering = next((j for j in allowed if Z[j] < 0), None)
            if entering is None:
                return "optimal"
            best, leave = None, None
            for i, row in enumerate(T):
                a = row[entering]
                if a > 0:
                    ratio = row[-1] / a
                    if best is None or ratio < best or ratio == best and basis[i] < basis[leave]:
                        best, leave = ratio, i
            if leave is None:
                return "unbounded"
            pivot(leave, entering, Z)

    if art_rows:
        Z = objective_row([Fraction(0)] * nreal + [Fraction(-1)] * len(art_rows))
        run(Z, range(ncol))
        if Z[-1] < 0:
            return LPResult("infeasible")
        for r in range(len(T)):
            if basis[r] >= nreal:
                col = next((j for j in range(nreal) if T[r][j] != 0), None)
                if col is not None:
                    pivot(r, col, Z)
        keep = [r for r in range(len(T)) if basis[r] < nreal]
        T[:] = [T[r] for r in keep]
        basis[:] = [basis[r] for r in keep]
    obj = [Fraction(x) for x in c] + [Fraction(0)] * (ncol - nvar)
    Z = objective_row(obj)
    status = run(Z, range(nreal))
    if status != "optimal":
        return LPResult(status)
    x = [Fraction(0)] * ncol
    for i, b in enumerate(basis):
        x[b] = T[i][-1]
    duals = tuple(-Z[nvar + i] if flipped[i] else Z[nvar + i] for i in range(nslack))
    return LPResult("optimal", tuple(x[:nvar]), Z[-1], duals)


# -- classification -------------------------------------------------------------

@dataclass
class OutcomeLabel:
    outcome: Outcome
    label: str
    flows: list[Flow] = field(default_factory=list)
    weights: tuple[Fraction, ...] | None = None       # witness for (weakly) supported
    dominated_by: Outcome | None = None               # witness for dominated


@dataclass
class Classification:
    outcomes: dict[Outcome, OutcomeLabel]
    flows: list[Flow]

    def outcome_set(self, label: str) -> set[Outcome]:
        return {y for y, c in self.outcomes.items() if c.label == label}

    def flow_set(self, label: str) -> set[Flow]:
        return {f for c in self.outcomes.values() if c.label == label for f in c.flows}

    def label_of(self, flow: Flow) -> str:
        for c in self.outcomes.values():
            if flow in c.flows:
                return c.label
        raise KeyError(flow)

    @property
    def supported_flows(self) -> set[Flow]:
        return self.flow_set(SUPPORTED)

    @property
    def weakly_supported_outcomes(self) -> set[Outcome]:
        return self.outcome_set(SUPPORTED) | self.outcome_set(WEAKLY_ONLY)

    def counts(self) -> dict[str, int]:
        return {label: len(self.outcome_set(label)) for label in LABELS}


def nondominated(points: Sequence[Outcome]) -> tuple[list[Outcome], dict[Outcome, Outcome]]:
    """Split distinct points into the nondominated ones and a dominator map."""
    ordered = sorted(set(points))
    front: list[Outcome] = []
    dominated: dict[Outcome, Outcome] = {}
    # a dominator precedes its victim in lexicographic order
    for y in ordered:
        by = next((z for z in front if is_dominated_by(y, z)), None)
        if by is None:
            front.append(y)
        else:
            dominated[y] = by
    return front, dominated


def support_lp(y: Outcome, others: Sequence[Outcome]) -> LPResult:
    """Primal form of the support LP; one row per comparison outcome."""
    d = len(y)
    # variables: lam_1..lam_d, t
    c = [0] * d + [1]
    A_ub, b_ub = [], []
    for i in range(d):
        A_ub.append([-int(j == i) for j in range(d)] + [1])
        b_ub.append(0)
    for z in others:
        if z != y:
            A_ub.append([y[j] - z[j] for j in range(d)] + [0])
            b_ub.append(0)
    return linprog_max(c, A_ub, b_ub, [[1] * d + [0]], [1])


def support_weight(y: Outcome, others: Sequence[Outcome]) -> tuple[Fraction, tuple[Fraction, ...]] | None:
    """Best ``(t, lam)`` for the support LP, or None when it is infeasible.

    Solved through its dual, which has only d + 1 rows:

        min mu  s.t.  mu - a_j + sum_z b_z (y_j - z_j) >= 0  (j = 1..d)
                      sum_j a_j >= 1,   a, b >= 0,  mu free

    The weights are the shadow prices of the first d rows.
    """
    d = len(y)
    zs = [z for z in others if z != y]
    # columns: mu+, mu-, a_1..a_d, b_z...
    c = [-1, 1] + [0] * d + [0] * len(zs)
    A_ub, b_ub = [], []
    for j in range(d):
        A_ub.append([-1, 1] + [int(i == j) for i in range(d)] + [-(y[j] - z[j]) for z in zs])
        b_ub.append(0)
    A_ub.append([0, 0] + [-1] * d + [0] * len(zs))
    b_ub.append(-1)
    res = linprog_max(c, A_ub, b_ub)
    if res.status == "unbounded":
        return None
    assert res.status == "optimal", res.status
    t = -res.value
    lam = res.duals[:d]
    return t, lam


def _certifies_support(y, others, t, lam) -> bool:
    if sum(lam) != 1 or any(x < t for x in lam) or t < 0:
        return False
    base = weighted(lam, y)
    return all(weighted(lam, z) >= base for z in others)


def classify_outcomes(points: Sequence[Outcome]) -> dict[Outcome, OutcomeLabel]:
    front, dominated = nondominated(points)
    labels = {}
    # a dominated outcome's constraint is implied by its dominator's, so the
    # nondominated outcomes suffice as the LP's comparison set
    for y in front:
        found = support_weight(y, front)
        if found is not None and not _certifies_support(y, front, *found):
            # fall back to the primal when the dual's prices do not check out
            res = support_lp(y, front)
            found = None if res.status == "infeasible" else (res.value, res.x[:len(y)])
        if found is None:
            labels[y] = OutcomeLabel(y, UNSUPPORTED)
            continue
        t, lam = found
        labels[y] = OutcomeLabel(y, SUPPORTED if t > 0 else WEAKLY_ONLY, weights=lam)
    for y, by in dominated.items():
        labels[y] = OutcomeLabel(y, DOMINATED, dominated_by=by)
    return labels


def classify(network: Network, cap: int | None = None) -> Classification:
    flows = enumerate_all_flows(network, cap)
    images = [outcome(network, f) for f in flows]
    labels = classify_outcomes(images)
    for f, y in zip(flows, images):
        labels[y].flows.append(f)
    ordered = {y: labels[y] for y in sorted(labels)}
    return Classification(ordered, flows)


def brute_force_minimum(network: Network, weights: Sequence, cap: int | None = None):
    """Minimum of ``weights . C f`` over all feasible flows and its argmin set."""
    best, argmin = None, []
    for f in enumerate_all_flows(network, cap):
        v = weighted(weights, outcome(network, f))
        if best is None or v < best:
            best, argmin = v, [f]
        elif v == best:
            argmin.append(f)
    return best, argmin


def lexicographic_minimum(network: Network, order: Sequence[int], cap: int | None = None) -> Outcome:
    """Lexicographically smallest outcome for a 1-based objective order."""
    images = {outcome(network, f) for f in enumerate_all_flows(network, cap)}
    return min(images, key=lambda y: tuple(y[k - 1] for k in order))
