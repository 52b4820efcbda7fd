"""Exact facets of ``conv(points) + R^d_>=`` by double description.

A facet ``lam . y >= beta`` of the upper image is an extreme ray of the cone

    { (lam, beta) : lam . p - beta >= 0 for every point p,  lam_i >= 0 }

so the facets are found by running the double description method on that
cone in ``R^(d+1)``. Everything is done in Python integers: point rows are
scaled by the lcm of their denominators and rays are kept primitive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


@dataclass(frozen=True)
class HullFacet:
    normal: tuple[int, ...]        # primitive, non-negative, non-zero
    offset: Fraction               # min over the hull of normal . y
    points: frozenset[int]         # indices of input points on the facet
    rays: frozenset[int]           # coordinate directions e_i lying in the facet


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def rank(vectors: Sequence[Sequence]) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    r = 0
    ncols = len(rows[0])
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def _initial_rays(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Extreme rays of the simplicial cone {x : rows x >= 0} (rows invertible)."""
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(rows)]
    for c in range(n):
        pivot = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[pivot] = aug[pivot], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    inverse = [row[n:] for row in aug]
    rays = []
    for j in range(n):
        col = [inverse[i][j] for i in range(n)]
        den = lcm(*(x.denominator for x in col))
        rays.append(_primitive([int(x * den) for x in col]))
    return rays


def cone_extreme_rays(rows: Sequence[Sequence[int]], initial: Sequence[int]) -> list[tuple[tuple[int, ...], frozenset[int]]]:
    """Double description for the pointed cone ``{x : row . x >= 0}``.

    ``initial`` indexes ``len(x)`` linearly independent rows to start from.
    Returns each extreme ray with the set of rows it makes tight.
    """
    dim = len(rows[0])
    rays = _initial_rays([rows[i] for i in initial])
    zero = []
    for r in rays:
        zero.append(frozenset(i for i in initial if _dot(rows[i], r) == 0))
    for i, row in enumerate(rows):
        if i in initial:
            continue
        vals = [_dot(row, r) for r in rays]
        pos = [j for j, v in enumerate(vals) if v > 0]
        neg = [j for j, v in enumerate(vals) if v < 0]
        zer = [j for j, v in enumerate(vals) if v == 0]
        new_rays, new_zero = [], []
        for p in pos:
            for q in neg:
                common = zero[p] & zero[q]
                if len(common) < dim - 2:
                    continue
                # combinatorial adjacency: no third ray is tight on all of `common`
                if any(k != p and k != q and common <= zero[k] for k in range(len(rays))):
                    continue
                ray = _primitive([vals[p] * b - vals[q] * a for a, b in zip(rays[p], rays[q])])
                new_rays.append(ray)
                new_zero.append(common | {i})
        keep = pos + zer
        rays = [rays[j] for j in keep] + new_rays
        zero = [zero[j] | ({i} if vals[j] == 0 else set()) for j in keep] + new_zero
    return list(zip(rays, zero))


def upper_image_facets(points: Sequence[Sequence], d: int) -> list[HullFacet]:
    """Facets of the upper image of a non-empty point set, sorted by normal."""
    if not points:
        raise ValueError("need at least one point")
    rows: list[tuple[int, ...]] = [tuple(int(k == i) for k in range(d)) + (0,) for i in range(d)]
    for p in points:
        fr = [Fraction(x) for x in p]
        den = lcm(*(x.denominator for x in fr))
        rows.append(tuple(int(x * den) for x in fr) + (-den,))
    facets = {}
    for ray, tight in cone_extreme_rays(rows, list(range(d + 1))):
        normal = ray[:d]
        if not any(normal):
            continue
        g = 0
        for x in normal:
            g = gcd(g, x)
        normal = tuple(x // g for x in normal)
        offset = Fraction(ray[d], g)
        pts = frozenset(i - d for i in tight if i >= d)
        rays_in = frozenset(i for i in range(d) if normal[i] == 0)
        facets[normal] = HullFacet(normal, offset, pts, rays_in)
    return [facets[k] for k in sorted(facets)]


def vertex_indices(points: Sequence[Sequence], facets: Sequence[HullFacet], d: int) -> list[int]:
    """Points that are vertices: the facet normals tight there span ``R^d``.

    Duplicated points are reported once (first index).
    """
    seen = set()
    out = []
    for i, p in enumerate(points):
        key = tuple(Fraction(x) for x in p)
        if key in seen:
            continue
        seen.add(key)
        normals = [f.normal for f in facets if i in f.points]
        if rank(normals) == d:
            out.append(i)
    return out


def face_dimension(points: Sequence[Sequence], point_ids, ray_ids, d: int) -> int:
    """Dimension of the face spanned by the given points and coordinate rays."""
    ids = sorted(point_ids)
    if not ids:
        return -1
    base = [Fraction(x) for x in points[ids[0]]]
    vecs = [[Fraction(x) - b for x, b in zip(points[i], base)] for i in ids[1:]]
    vecs += [[Fraction(int(k == r)) for k in range(d)] for r in ray_ids]
    return rank(vecs)
