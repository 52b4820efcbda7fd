"""Instance model for multi-objective integer min-cost flow problems.

Holds the network description, flow evaluation, the componentwise
dominance test and the line-oriented ``momcf`` instance format::

    c comment
    p momcf <n> <m> <d>
    n <id> <balance>
    a <tail> <head> <lower> <upper> <cost_1> ... <cost_d>

Node ids are 1-based in the file and 0-based in memory. Arc order in the
file is the canonical arc index used for every flow vector.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Flow = tuple[int, ...]
Outcome = tuple[Fraction, ...]


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class InvalidNetworkError(ValueError):
    """Raised when an operation needs a network that passes :func:`validate`."""

    def __init__(self, violations: Sequence[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    lower: int
    upper: int
    cost: tuple[Fraction, ...]


@dataclass(frozen=True)
class Network:
    n: int
    balances: tuple[int, ...]
    arcs: tuple[Arc, ...]
    d: int

    def __post_init__(self):
        object.__setattr__(self, "balances", tuple(int(b) for b in self.balances))
        arcs = []
        for arc in self.arcs:
            if not isinstance(arc, Arc):
                arc = Arc(*arc)
            cost = tuple(Fraction(c) for c in arc.cost)
            if len(cost) != self.d:
                raise ValueError(f"arc {arc.tail}->{arc.head} has {len(cost)} costs, expected {self.d}")
            arcs.append(Arc(int(arc.tail), int(arc.head), int(arc.lower), int(arc.upper), cost))
        object.__setattr__(self, "arcs", tuple(arcs))
        if len(self.balances) != self.n:
            raise ValueError(f"expected {self.n} balances, got {len(self.balances)}")
        for arc in self.arcs:
            if not (0 <= arc.tail < self.n and 0 <= arc.head < self.n):
                raise ValueError(f"arc endpoint out of range: {arc.tail}->{arc.head}")
        self._derive()

    def _derive(self):
        # per-arc columns and integer costs, built once; the network is immutable
        arcs, d = self.arcs, self.d
        set_ = object.__setattr__
        set_(self, "tails", tuple(a.tail for a in arcs))
        set_(self, "heads", tuple(a.head for a in arcs))
        set_(self, "lower", tuple(a.lower for a in arcs))
        set_(self, "upper", tuple(a.upper for a in arcs))
        # arcs[i].cost[k] == rows[i][k] / den[k], so flow evaluation runs in integers
        den = tuple(lcm(1, *(a.cost[k].denominator for a in arcs)) for k in range(d))
        rows = tuple(tuple(c.numerator * (den[k] // c.denominator) for k, c in enumerate(a.cost))
                     for a in arcs)
        set_(self, "integer_costs", (rows, den))
        # scalarized arc costs by weight vector, filled by scalarize
        set_(self, "scalar_cache", {})

    @property
    def m(self) -> int:
        return len(self.arcs)

    def objective(self, k: int) -> list[Fraction]:
        """Cost column of objective ``k`` (0-based)."""
        return [a.cost[k] for a in self.arcs]

    def scaled(self, factor: int) -> "Network":
        return Network(self.n, self.balances,
                       tuple(Arc(a.tail, a.head, a.lower, a.upper, tuple(c * factor for c in a.cost))
                             for a in self.arcs),
                       self.d)

    def with_bounds(self, lower: Sequence[int], upper: Sequence[int]) -> "Network":
        return Network(self.n, self.balances,
                       tuple(Arc(a.tail, a.head, lo, hi, a.cost)
                             for a, lo, hi in zip(self.arcs, lower, upper)),
                       self.d)

    def digest(self) -> str:
        return hashlib.sha256(format_instance(self).encode()).hexdigest()[:16]


def _connected(n: int, arcs: Iterable[Arc]) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in arcs:
        parent[find(a.tail)] = find(a.head)
    return len({find(v) for v in range(n)}) <= 1


def validate(network: Network) -> list[str]:
    """Return the list of violated modelling assumptions (empty when valid)."""
    problems = []
    if network.n < 1:
        problems.append("network must have at least one node")
    if network.d < 1:
        problems.append("objective count must be at least 1")
    for k, a in enumerate(network.arcs, 1):
        if a.tail == a.head:
            problems.append(f"arc {k}: self-loop at node {a.tail + 1}")
        if a.lower < 0:
            problems.append(f"arc {k}: negative lower bound {a.lower}")
        if a.lower > a.upper:
            problems.append(f"arc {k}: lower bound {a.lower} exceeds upper bound {a.upper}")
    total = sum(network.balances)
    if total != 0:
        problems.append(f"balances sum to {total}, expected 0")
    if network.n >= 1 and not _connected(network.n, network.arcs):
        problems.append("underlying undirected graph is disconnected")
    return problems


def require_valid(network: Network) -> None:
    problems = validate(network)
    if problems:
        raise InvalidNetworkError(problems)


def is_feasible_flow(network: Network, flow: Sequence[int]) -> bool:
    if len(flow) != network.m:
        return False
    net = [0] * network.n
    for a, x in zip(network.arcs, flow):
        if not a.lower <= x <= a.upper:
            return False
        net[a.tail] += x
        net[a.head] -= x
    return tuple(net) == network.balances


def outcome(network: Network, flow: Sequence[int]) -> Outcome:
    """Image ``C f`` of a flow, computed exactly."""
    if len(flow) != network.m:
        raise ValueError(f"flow has {len(flow)} entries, network has {network.m} arcs")
    rows, den = network.integer_costs
    totals = [0] * network.d
    for row, x in zip(rows, flow):
        if x:
            for k, c in enumerate(row):
                totals[k] += c * x
    return tuple(Fraction(t, q) for t, q in zip(totals, den))


class Dominance(enum.Enum):
    STRICTLY_LESS = "strictly-less"
    LEQ_DOMINATES = "leq-dominates"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def dominates(y: Sequence, y2: Sequence) -> Dominance:
    """Compare ``y`` against ``y2`` in the componentwise (Pareto) order."""
    if len(y) != len(y2):
        raise ValueError(f"dimension mismatch: {len(y)} vs {len(y2)}")
    if all(a == b for a, b in zip(y, y2)):
        return Dominance.EQUAL
    if all(a < b for a, b in zip(y, y2)):
        return Dominance.STRICTLY_LESS
    if all(a <= b for a, b in zip(y, y2)):
        return Dominance.LEQ_DOMINATES
    return Dominance.INCOMPARABLE


def is_dominated_by(y: Sequence, y2: Sequence) -> bool:
    """True when ``y2`` dominates ``y`` (``y2 <= y`` and ``y2 != y``)."""
    return dominates(y2, y) in (Dominance.STRICTLY_LESS, Dominance.LEQ_DOMINATES)


# -- instance file format ---------------------------------------------------

def _parse_int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(lineno, f"{what} must be an integer, got {token!r}") from None


def parse_rational(token: str, lineno: int = 0) -> Fraction:
    num, sep, den = token.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ParseError(lineno, f"malformed rational {token!r}") from None
    if q <= 0:
        raise ParseError(lineno, f"denominator must be positive in {token!r}")
    return Fraction(p, q)


def parse_instance(text: str) -> Network:
    header = None
    balances: list[int] = []
    seen_nodes: set[int] = set()
    arcs: list[Arc] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split()
        if not tokens:
            continue
        kind = tokens[0]
        if kind == "c":
            continue
        if kind == "p":
            if header is not None:
                raise ParseError(lineno, "duplicate problem line")
            if len(tokens) != 5 or tokens[1] != "momcf":
                raise ParseError(lineno, "expected 'p momcf <n> <m> <d>'")
            n, m, d = (_parse_int(t, lineno, "problem size") for t in tokens[2:])
            if n < 1 or m < 0 or d < 1:
                raise ParseError(lineno, "problem line needs n >= 1, m >= 0, d >= 1")
            header = (n, m, d)
            header_line = lineno
            balances = [0] * n
        elif kind == "n":
            if header is None:
                raise ParseError(lineno, "node line before problem line")
            if len(tokens) != 3:
                raise ParseError(lineno, "expected 'n <id> <balance>'")
            node = _parse_int(tokens[1], lineno, "node id")
            if not 1 <= node <= header[0]:
                raise ParseError(lineno, f"node id {node} out of range 1..{header[0]}")
            if node in seen_nodes:
                raise ParseError(lineno, f"duplicate node line for node {node}")
            seen_nodes.add(node)
            balances[node - 1] = _parse_int(tokens[2], lineno, "balance")
        elif kind == "a":
            if header is None:
                raise ParseError(lineno, "arc line before problem line")
            n, m, d = header
            if len(tokens) != 5 + d:
                raise ParseError(lineno, f"arc line needs {5 + d} fields, got {len(tokens)}")
            tail, head, lo, hi = (_parse_int(t, lineno, "arc field") for t in tokens[1:5])
            for node in (tail, head):
                if not 1 <= node <= n:
                    raise ParseError(lineno, f"node id {node} out of range 1..{n}")
            if len(arcs) == m:
                raise ParseError(lineno, f"more than {m} arc lines")
            cost = tuple(parse_rational(t, lineno) for t in tokens[5:])
            arcs.append(Arc(tail - 1, head - 1, lo, hi, cost))
        else:
            raise ParseError(lineno, f"unknown line type {kind!r}")
    if header is None:
        raise ParseError(0, "missing problem line")
    n, m, d = header
    if len(arcs) != m:
        raise ParseError(header_line, f"problem line declares {m} arcs, found {len(arcs)}")
    return Network(n, tuple(balances), tuple(arcs), d)


def format_instance(network: Network, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" if c else "c" for c in comments]
    lines.append(f"p momcf {network.n} {network.m} {network.d}")
    lines += [f"n {v + 1} {b}" for v, b in enumerate(network.balances)]
    for a in network.arcs:
        costs = " ".join(str(c) for c in a.cost)
        lines.append(f"a {a.tail + 1} {a.head + 1} {a.lower} {a.upper} {costs}")
    return "\n".join(lines) + "\n"


def read_instance(path) -> Network:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())
