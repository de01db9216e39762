"""Exact convex hulls in dimensions 1..5 by incremental (beneath-beyond) insertion.

The engine works on integer points only; rational inputs are scaled by a
common denominator first (a dilation, so the face structure is unchanged).
Because the arithmetic is exact there are no robustness tolerances anywhere:
a point is on a hyperplane iff the integer dot product says so.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .linalg import det, dot, norm_scalar, rank, vsub


def hyperplane_normal(points):
    """Normal of the hyperplane through d affinely independent d-points.

    Generalized cross product of the difference vectors: entry j is
    (-1)^j times the minor with column j removed.  Returns an unreduced
    integer vector (zero iff the points are affinely dependent).
    """
    d = len(points[0])
    diffs = [vsub(p, points[0]) for p in points[1:]]
    if d == 2:
        (a, b), = diffs
        return (b, -a)
    if d == 3:
        u, v = diffs
        return (
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        )
    normal = []
    for j in range(d):
        minor = [[row[k] for k in range(d) if k != j] for row in diffs]
        normal.append((-1) ** j * det(minor))
    return tuple(normal)


def _reduce_facet(normal, offset):
    g = 0
    for x in normal:
        g = gcd(g, abs(x))
    if g > 1:
        normal = tuple(x // g for x in normal)
        offset = _exact_div(offset, g)
    return normal, offset


def _exact_div(a, g):
    q, r = divmod(a, g)
    if r:
        raise ArithmeticError("facet offset not divisible by normal gcd")
    return q


def _affinely_independent_subset(points, need):
    """Greedy selection of `need` affinely independent points (or None)."""
    chosen = [points[0]]
    if need == 1:
        return chosen
    diffs = []
    for p in points[1:]:
        cand = diffs + [vsub(p, chosen[0])]
        if rank(cand) == len(cand):
            diffs = cand
            chosen.append(p)
            if len(chosen) == need:
                return chosen
    return None


class _Facet:
    __slots__ = ("normal", "offset", "inc")

    def __init__(self, normal, offset, inc):
        self.normal = normal
        self.offset = offset
        self.inc = inc


def hull_full_dim(points):
    """Facets and vertex indices of the hull of full-dimensional integer points.

    `points` is a deduplicated list of int tuples whose affine span is the
    whole space.  Returns (vertex_indices, facets) with facets as reduced
    (inward primitive normal, integer offset) pairs: the hull satisfies
    <x, n> >= c with equality exactly on the facet.
    """
    d = len(points[0])
    n_pts = len(points)
    if d == 1:
        lo = min(range(n_pts), key=lambda i: points[i][0])
        hi = max(range(n_pts), key=lambda i: points[i][0])
        facets = [((1,), points[lo][0]), ((-1,), -points[hi][0])]
        return sorted({lo, hi}), facets

    simplex = _initial_simplex(points)
    center = tuple(sum(points[i][k] for i in simplex) for k in range(d))  # (d+1) * centroid
    scale = d + 1

    facets = {}

    def orient_and_key(normal, base_point):
        offset = dot(base_point, normal)
        side = dot(center, normal) - scale * offset
        if side == 0:
            raise ArithmeticError("degenerate orientation: centroid on facet")
        if side < 0:
            normal = tuple(-x for x in normal)
            offset = -offset
        return _reduce_facet(normal, offset)

    def add_facet(span_points, seen_indices):
        normal = hyperplane_normal(span_points)
        if all(x == 0 for x in normal):
            return
        key = orient_and_key(normal, span_points[0])
        if key in facets:
            return
        normal, offset = key
        inc = {i for i in seen_indices if dot(points[i], normal) == offset}
        facets[key] = _Facet(normal, offset, inc)

    # initial simplex facets
    simplex_set = set(simplex)
    for leave in simplex:
        subset = [i for i in simplex if i != leave]
        add_facet([points[i] for i in subset], simplex_set)

    processed = list(simplex)
    for idx in range(n_pts):
        if idx in simplex_set:
            continue
        p = points[idx]
        viol = []
        keep = []
        on = []
        for f in facets.values():
            v = dot(p, f.normal) - f.offset
            if v < 0:
                viol.append(f)
            else:
                keep.append(f)
                if v == 0:
                    on.append(f)
        if not viol:
            for f in on:
                f.inc.add(idx)
            processed.append(idx)
            continue
        processed.append(idx)
        for f in viol:
            del facets[(f.normal, f.offset)]
        for f in viol:
            for g in keep:
                ridge = f.inc & g.inc
                if len(ridge) < d - 1:
                    continue
                base = _affinely_independent_subset([points[i] for i in sorted(ridge)], d - 1)
                if base is None:
                    continue
                normal = hyperplane_normal(base + [p])
                if all(x == 0 for x in normal):
                    continue
                key = orient_and_key(normal, p)
                if key in facets:
                    continue
                normal, offset = key
                inc = {i for i in processed if dot(points[i], normal) == offset}
                facets[key] = _Facet(normal, offset, inc)
        for f in on:
            f.inc.add(idx)

    # vertices: points whose tight facet normals span the space
    by_point = {}
    for f in facets.values():
        for i in f.inc:
            by_point.setdefault(i, []).append(f.normal)
    vertex_indices = []
    for i, normals in by_point.items():
        if len(normals) >= d and rank(normals) == d:
            vertex_indices.append(i)
    facet_list = sorted((f.normal, f.offset) for f in facets.values())
    return sorted(vertex_indices), facet_list


def _initial_simplex(points):
    d = len(points[0])
    chosen = [0]
    diffs = []
    for i in range(1, len(points)):
        cand = diffs + [vsub(points[i], points[0])]
        if rank(cand) == len(cand):
            diffs = cand
            chosen.append(i)
            if len(chosen) == d + 1:
                return chosen
    raise ValueError("points do not affinely span the space")


def scale_to_int(points):
    """Common positive scaling factor making all coordinates integral."""
    mult = 1
    for p in points:
        for x in p:
            if type(x) is not int and isinstance(x, Fraction):
                mult = lcm(mult, x.denominator)
    if mult == 1:
        return [p if all(type(x) is int for x in p) else tuple(int(x) for x in p)
                for p in points], 1
    return [tuple(int(x * mult) for x in p) for p in points], mult


def hull_of_points(points):
    """Hull of exact rational points, full-dimensional in their ambient space.

    Returns (vertex_indices, facets) where facets carry primitive integer
    normals and exact rational offsets in the ORIGINAL coordinates.
    """
    scaled, mult = scale_to_int(points)
    vidx, facets = hull_full_dim(scaled)
    if mult != 1:
        facets = [(n, norm_scalar(Fraction(c, mult))) for n, c in facets]
    return vidx, facets
