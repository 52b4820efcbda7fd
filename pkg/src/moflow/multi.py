"""General-d pipeline: upper image, facet adjacency, and the face sweep.

The upper image ``conv(Y) + R^d_>=`` is built by outer approximation in
outcome space: start from the lexicographic optima, compute the exact facets
of the current inner hull, and for every facet solve the weighted-sum problem
with the facet normal. A strictly better optimum is a new vertex; when no
facet improves, the inner hull is the upper image.

Supported flows are then the optimal flows of ``P_lam`` for each facet with a
strictly positive normal, plus, for faces cut out by facets whose normals have
zero components, the optimal flows of strictly positive combinations of those
normals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .aof import enumerate_optimal_flows
from .bi import ExtremePoint, SupportedFlow
from .hull import face_dimension, upper_image_facets, vertex_indices
from .network import Flow, Network, outcome
from .scalar import (
    Weights, certify, integer_scaled, lexicographic_order, solve, staged_flow,
    strictly_positive, unit_vector, weighted,
)


@dataclass(frozen=True)
class Facet:
    normal: Weights                  # integer-valued, gcd-reduced, >= 0
    offset: Fraction                 # min of normal . y over the upper image
    incident_vertices: frozenset[int]
    incident_rays: frozenset[int]    # coordinate directions contained in the facet

    @property
    def positive(self) -> bool:
        return strictly_positive(self.normal)


@dataclass(frozen=True)
class UpperImage:
    d: int
    vertices: tuple[ExtremePoint, ...]
    facets: tuple[Facet, ...]

    def contains(self, y) -> bool:
        return all(weighted(f.normal, y) >= f.offset for f in self.facets)


FaceKey = tuple[frozenset[int], frozenset[int]]     # (vertex ids, ray ids)


@dataclass
class FaceContext:
    adjacency: list[frozenset[int]]                         # Q_u
    processed_neighbors: list[set[int]] = field(default_factory=list)   # delta_u
    visited: set[FaceKey] = field(default_factory=set)      # faces already expanded
    swept: list[FaceKey] = field(default_factory=list)      # faces whose optimal flows were emitted
    stack: list[int] = field(default_factory=list)          # facets cutting out the current face


def _lex_orders(d: int) -> list[tuple[int, ...]]:
    return [tuple((k + j) % d + 1 for j in range(d)) for k in range(d)]


def compute_upper_image(network: Network) -> UpperImage:
    d = network.d
    if d < 2:
        raise ValueError(f"upper image construction needs d >= 2, got d = {d}")
    points: dict[tuple[Fraction, ...], Flow] = {}
    for order in _lex_orders(d):
        flow = staged_flow(network, lexicographic_order(network, order))
        points.setdefault(outcome(network, flow), flow)
    tie_break = [unit_vector(d, k) for k in range(d)]
    confirmed = set()
    while True:
        pts = list(points)
        improved = False
        for facet in upper_image_facets(pts, d):
            key = (facet.normal, facet.offset)
            if key in confirmed:
                continue
            lam = tuple(Fraction(x) for x in facet.normal)
            # tie-breaking by the objectives in order lands on a vertex of the optimal face
            flow = staged_flow(network, [lam, *tie_break])
            y = outcome(network, flow)
            if weighted(lam, y) < facet.offset:
                points.setdefault(y, flow)
                improved = True
            else:
                confirmed.add(key)
        if not improved:
            break
    pts = list(points)
    keep = vertex_indices(pts, upper_image_facets(pts, d), d)
    vertices = tuple(ExtremePoint(pts[i], points[pts[i]]) for i in keep)
    vpts = [v.outcome for v in vertices]
    facets = tuple(
        Facet(tuple(Fraction(x) for x in f.normal), f.offset, f.points, f.rays)
        for f in upper_image_facets(vpts, d)
    )
    return UpperImage(d, vertices, facets)


def facet_adjacency(ui: UpperImage) -> FaceContext:
    """Facets are adjacent when their intersection has dimension d - 2."""
    pts = [v.outcome for v in ui.vertices]
    k = len(ui.facets)
    adj: list[set[int]] = [set() for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            a, b = ui.facets[i], ui.facets[j]
            dim = face_dimension(pts, a.incident_vertices & b.incident_vertices,
                                 a.incident_rays & b.incident_rays, ui.d)
            if dim == ui.d - 2:
                adj[i].add(j)
                adj[j].add(i)
    return FaceContext(
        adjacency=[frozenset(s) for s in adj],
        processed_neighbors=[set() for _ in range(k)],
    )


class _Filter:
    """Weights already swept, with their optimal values.

    A flow optimal for an earlier weight was emitted there, so it is skipped.
    """

    def __init__(self, network: Network):
        self.network = network
        self.done: list[tuple[Weights, Fraction]] = []

    def keep(self, flow: Flow) -> bool:
        y = outcome(self.network, flow)
        return all(weighted(w, y) != v for w, v in self.done)


def _sweep(network: Network, lam: Weights, seed_flow: Flow, filt: _Filter,
           face: str) -> Iterator[SupportedFlow]:
    seed = certify(network, lam, seed_flow)
    for f in enumerate_optimal_flows(network, lam, seed, filt.keep):
        yield SupportedFlow(f, outcome(network, f), lam, face)
    filt.done.append((lam, seed.objective_value))


def _face_of(ui: UpperImage, facets) -> FaceKey:
    verts = frozenset.intersection(*(ui.facets[u].incident_vertices for u in facets))
    rays = frozenset.intersection(*(ui.facets[u].incident_rays for u in facets))
    return verts, rays


def _containing(ui: UpperImage, key: FaceKey) -> list[int]:
    verts, rays = key
    return [u for u, f in enumerate(ui.facets)
            if verts <= f.incident_vertices and rays <= f.incident_rays]


def face_weight(ui: UpperImage, key: FaceKey) -> Weights:
    """Uniform combination of all facet normals through the face.

    It lies in the relative interior of the face's normal cone, so it is
    strictly positive exactly when the face is nondominated.
    """
    facets = _containing(ui, key)
    total = [sum(ui.facets[u].normal[i] for u in facets) for i in range(ui.d)]
    return integer_scaled([x / len(facets) for x in total])


def consider_subfaces(network: Network, ui: UpperImage, ctx: FaceContext, filt: _Filter,
                      roots: list[int]) -> Iterator[SupportedFlow]:
    """Walk down from weakly nondominated facets to their nondominated sub-faces.

    Faces are refined one dimension at a time: a facet ``u`` refines the face
    ``F`` when ``F`` cut with ``F_u`` has dimension ``dim F - 1``. On a simple
    polyhedron this is the same as ``u`` being adjacent to every facet through
    ``F``. Each level is finished before the next one starts, so a swept face
    is never contained in a face swept earlier, and every face is visited once.
    """
    pts = [v.outcome for v in ui.vertices]
    d = ui.d
    level = []
    for u in roots:
        key = _face_of(ui, [u])
        if key not in ctx.visited:
            ctx.visited.add(key)
            level.append((key, d - 1))
    while level:
        children = []
        for (verts, rays), dim in level:
            if dim <= 0:
                continue
            for u, facet in enumerate(ui.facets):
                if facet.positive:
                    continue
                key = (verts & facet.incident_vertices, rays & facet.incident_rays)
                if not key[0] or key in ctx.visited:
                    continue
                if face_dimension(pts, key[0], key[1], d) != dim - 1:
                    continue
                ctx.visited.add(key)
                children.append((key, dim - 1))
        level = []
        for key, dim in children:
            if _covered(ui, ctx, key):
                continue
            lam = face_weight(ui, key)
            if not strictly_positive(lam):
                level.append((key, dim))
                continue
            ctx.stack = _containing(ui, key)
            seed_flow = ui.vertices[min(key[0])].flow
            label = "sub-face " + ",".join(str(s + 1) for s in ctx.stack)
            yield from _sweep(network, lam, seed_flow, filt, label)
            ctx.swept.append(key)


def _covered(ui: UpperImage, ctx: FaceContext, key: FaceKey) -> bool:
    # inside a nondominated facet or an already swept face: nothing new there
    if any(ui.facets[u].positive for u in _containing(ui, key)):
        return True
    return any(key[0] <= v and key[1] <= r for v, r in ctx.swept)


def all_supported_flows(network: Network, ui: UpperImage | None = None) -> Iterator[SupportedFlow]:
    """Every supported efficient flow for ``d >= 2``, each exactly once."""
    if ui is None:
        ui = compute_upper_image(network)
    filt = _Filter(network)
    if len(ui.vertices) == 1:
        # the ideal point is attainable: every positive weight has the same optimal face
        lam = tuple(Fraction(1) for _ in range(network.d))
        yield from _sweep(network, lam, ui.vertices[0].flow, filt, "point 1")
        return
    ctx = facet_adjacency(ui)
    for u, facet in enumerate(ui.facets):
        if not facet.positive:
            continue
        seed_flow = ui.vertices[min(facet.incident_vertices)].flow
        yield from _sweep(network, facet.normal, seed_flow, filt, f"facet {u + 1}")
        for v in ctx.adjacency[u]:
            ctx.processed_neighbors[v].add(u)
    yield from consider_subfaces(network, ui, ctx, filt,
                                 [u for u, f in enumerate(ui.facets) if not f.positive])
