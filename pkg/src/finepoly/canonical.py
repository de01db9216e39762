"""Canonical-refinement ray sets: the finite dual-vector collection that makes
Fine-interior computation of every dilation a finite intersection.

For each vertex cone of the normal fan we take the vertices of the convex
hull of its nonzero lattice points, obtained as conv(Hilbert basis) plus the
cone itself.  Hilbert bases are computed per simplicial piece of a pulling
triangulation; the candidate superset is triangulation-independent because
the hull vertices are intrinsic to the cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .hull import hull_full_dim
from .linalg import dot, norm_scalar, rank, solve_square, vsub
from .polytope import InvariantViolation


@dataclass(frozen=True)
class CanonicalRaySet:
    rays: tuple  # sorted primitive integer vectors
    offsets: tuple  # Min_P(ray) per ray, same order

    def __iter__(self):
        return iter(zip(self.rays, self.offsets))

    def __len__(self):
        return len(self.rays)

    def max_norm(self):
        return max(max(abs(x) for x in r) for r in self.rays)


def hilbert_basis_simplicial(rays):
    """Minimal generating set of cone(rays) ∩ N for linearly independent rays.

    Enumerates the half-open parallelepiped, adds the ray generators and
    removes elements that are a sum of two nonzero members.
    """
    rays = [tuple(r) for r in rays]
    d = len(rays[0])
    if rank(rays) != len(rays):
        raise ValueError("triangulate first")
    if len(rays) != d:
        raise ValueError("full-dimensional simplicial cone required")
    box = _parallelepiped_points(rays)
    coeffs = {}
    for x in box:
        coeffs[x] = solve_square([[r[i] for r in rays] for i in range(d)], x)
    basis = set(rays)
    for x in box:
        lx = coeffs[x]
        reducible = False
        for y in box:
            if y == x:
                continue
            ly = coeffs[y]
            if all(lx[i] - ly[i] >= 0 for i in range(d)):
                reducible = True
                break
        if not reducible:
            basis.add(x)
    return sorted(basis)


def _parallelepiped_points(rays):
    """Nonzero lattice points of {sum l_i r_i : 0 <= l_i < 1}."""
    d = len(rays[0])
    cols = [[r[i] for r in rays] for i in range(d)]  # matrix with rays as columns
    from .linalg import column_hermite_normal_form

    h, _ = column_hermite_normal_form(tuple(tuple(row) for row in cols))
    diag = [h[i][i] for i in range(d)]
    if any(x == 0 for x in diag):
        raise ValueError("triangulate first")
    import itertools

    pts = []
    for rep in itertools.product(*(range(x) for x in diag)):
        lam = solve_square(cols, rep)
        shifted = tuple(
            rep[i] - sum(_floor_frac(lam[j]) * rays[j][i] for j in range(d))
            for i in range(d)
        )
        if any(x != 0 for x in shifted):
            pts.append(shifted)
    return pts


def _floor_frac(x):
    if isinstance(x, int):
        return x
    return x.numerator // x.denominator


def triangulate_cone(rays):
    """Pulling triangulation of a pointed cone, as tuples of ray indices.

    Deterministic: always pulls the lexicographically least ray and recurses
    into the facets not containing it.
    """
    rays = [tuple(r) for r in rays]
    r = rank(rays)
    if len(rays) == r:
        return [tuple(range(len(rays)))]
    pull = min(range(len(rays)), key=lambda i: rays[i])
    pieces = set()
    for members in _cone_facets(rays):
        if pull in members:
            continue
        sub = sorted(members)
        for piece in triangulate_cone([rays[i] for i in sub]):
            pieces.add(tuple(sorted([sub[i] for i in piece] + [pull])))
    return sorted(pieces)


def _cone_facets(rays):
    """Facets of cone(rays) as frozensets of ray indices (within the span)."""
    import itertools

    from .linalg import kernel_basis

    r = rank(rays)
    cols = _spanning_cols(rays, r)
    proj = [tuple(v[j] for j in cols) for v in rays]
    facets = set()
    for subset in itertools.combinations(range(len(rays)), r - 1):
        sub = [proj[i] for i in subset]
        if rank(sub) != r - 1:
            continue
        kb = kernel_basis(sub)
        if len(kb) != 1:
            continue
        u = kb[0]
        vals = [dot(p, u) for p in proj]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            facets.add(frozenset(i for i, v in enumerate(vals) if v == 0))
    return sorted(facets, key=sorted)


def _spanning_cols(vectors, r):
    cols = []
    chosen = []
    for j in range(len(vectors[0])):
        cand = chosen + [[v[j] for v in vectors]]
        if rank([tuple(c) for c in zip(*cand)]) == len(cand):
            chosen = cand
            cols.append(j)
            if len(cols) == r:
                break
    return cols


def vertex_cone_hull_vertices(rays):
    """Vertices of conv(cone ∩ N \\ {0}) for a pointed full-dimensional cone.

    Uses conv(HB) + cone = conv(cone ∩ N \\ 0): the Hilbert bases of a
    triangulation give a candidate superset, and candidates are kept when
    their tight constraints in the H-representation of the polyhedron span.
    """
    rays = [tuple(r) for r in rays]
    d = len(rays[0])
    if d == 1:
        return set(rays)
    candidates = set()
    for piece in triangulate_cone(rays):
        candidates.update(hilbert_basis_simplicial([rays[i] for i in piece]))
    gens = [(1,) + c for c in sorted(candidates)] + [(0,) + r for r in rays]
    pts = [(0,) * (d + 1)] + gens
    _, facets = hull_full_dim(pts)
    constraints = [(n[1:], -n[0]) for n, c in facets if c == 0]
    result = set()
    for cand in candidates:
        tight = [a for a, rhs in constraints if dot(cand, a) == rhs]
        if len(tight) >= d and rank(tight) == d:
            result.add(cand)
    return result


def canonical_rays(p):
    """The canonical-refinement ray set of a full-dimensional rational polytope,
    with the support offsets Min_P(ray)."""
    if p.is_empty or not p.is_full_dim:
        raise ValueError("canonical rays require a full-dimensional polytope")
    facets = p.facets()
    rays = set()
    for v in p.vertices:
        normals = [h.normal for h in facets if h.value(v) == h.offset]
        rays.update(vertex_cone_hull_vertices(normals))
    for h in facets:
        if h.normal not in rays:
            raise InvariantViolation(
                f"facet normal {h.normal} missing from the canonical refinement"
            )
    rays = sorted(rays)
    offsets = tuple(p.min_support(r) for r in rays)
    return CanonicalRaySet(tuple(rays), offsets)
