"""Named instances: the tri-objective example network, star networks, random networks."""

from __future__ import annotations

import random
from fractions import Fraction

from .network import Arc, Network

F = Fraction


def fig2() -> Network:
    """Tri-objective 5-node example; all arcs have bounds [0, 4]."""
    arcs = (
        Arc(0, 1, 0, 4, (F(0), F(4), F(5, 2))),
        Arc(1, 2, 0, 4, (F(0), F(4), F(5, 2))),
        Arc(2, 3, 0, 4, (F(1), F(1), F(1, 8))),
        Arc(3, 4, 0, 4, (F(1), F(1), F(1, 8))),
        Arc(0, 2, 0, 4, (F(4), F(4), F(5))),
        Arc(2, 4, 0, 4, (F(3), F(1), F(5, 4))),
    )
    return Network(5, (1, 0, 3, 0, -4), arcs, 3)


FIG2_COMMENTS = (
    "tri-objective example network (5 nodes, 6 arcs, bounds [0,4])",
)


def star(k: int, d: int = 2) -> Network:
    """Source, ``k`` transshipment nodes, sink; every arc costs one per objective.

    Node 1 is the source with supply ``k``, nodes 2..k+1 are transshipment
    nodes, node k+2 is the sink. Arcs (s,i) come first, then (i,t).
    """
    if k < 1 or d < 1:
        raise ValueError("star instance needs k >= 1 and d >= 1")
    ones = tuple(F(1) for _ in range(d))
    s, t = 0, k + 1
    arcs = [Arc(s, i, 0, k, ones) for i in range(1, k + 1)]
    arcs += [Arc(i, t, 0, k, ones) for i in range(1, k + 1)]
    balances = [k] + [0] * k + [-k]
    return Network(k + 2, tuple(balances), tuple(arcs), d)


def random_network(n: int, m: int, d: int, maxcost: int = 5, maxcap: int = 3,
                   seed: int = 0) -> Network:
    """Connected random network with a guaranteed feasible flow.

    A random spanning tree gives connectivity; balances are read off a random
    flow within the bounds, so the instance is always feasible.
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    if n > 1 and m < n - 1:
        raise ValueError(f"need at least {n - 1} arcs to connect {n} nodes")
    rng = random.Random(seed)
    pairs = []
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        pairs.append((u, v) if rng.random() < 0.5 else (v, u))
    while len(pairs) < m:
        if n < 2:
            raise ValueError("cannot place arcs without self-loops on a single node")
        u, v = rng.sample(range(n), 2)
        pairs.append((u, v))
    rng.shuffle(pairs)
    arcs = []
    balances = [0] * n
    for u, v in pairs:
        upper = rng.randint(1, maxcap) if maxcap > 0 else 0
        cost = tuple(F(rng.randint(0, maxcost)) for _ in range(d))
        x = rng.randint(0, upper)
        balances[u] += x
        balances[v] -= x
        arcs.append(Arc(u, v, 0, upper, cost))
    return Network(n, tuple(balances), tuple(arcs), d)
