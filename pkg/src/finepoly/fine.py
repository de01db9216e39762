"""Fine interiors of a rational polytope and all its dilations.

The central object is the dilation polyhedron in R x M_R cut out by
<(x0, x), (-Min_P(v), v)> >= 1 over the canonical-refinement rays v: its slice
at x0 = lam is {lam} x F(lam P), its vertices carry the special multipliers,
and its recession cone is the cone over P.  Everything downstream (minimal
multiplier, F-hollowness, canonical closedness, Gorenstein data) is read off
this one exact resolution.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .canonical import CanonicalRaySet, canonical_rays
from .linalg import det, dot, norm_scalar, rank, solve_square, vneg, vsub
from .polytope import (
    HalfSpace,
    HPolyhedron,
    InvariantViolation,
    Polytope,
    cone_over,
    make_halfspace,
    resolve_hpolyhedron,
)


@dataclass(frozen=True)
class FineResult:
    polytope: Polytope  # empty (intrinsic_dim -1) when the Fine interior is empty
    defining_rays: CanonicalRaySet


@dataclass(frozen=True)
class GorensteinData:
    index: int
    center: tuple


@dataclass(frozen=True)
class MultiplierProfile:
    polytope: Polytope
    rays: CanonicalRaySet
    fan_polyhedron: HPolyhedron
    vertices: tuple  # ((mu_i, p_i), ...) sorted
    mu: object
    mu_max: object
    mu_cc: object
    special_multipliers: tuple

    def fine_at(self, lam):
        """F(lam P) as a polytope in M coordinates (V-side slice of the fan)."""
        lam = norm_scalar(lam if isinstance(lam, (int, Fraction)) else Fraction(lam))
        if lam < 0:
            raise ValueError("dilation factor must be nonnegative")
        d = self.polytope.ambient_dim
        res = self.fan_polyhedron.resolve()
        on, above, below = [], [], []
        for mu_i, p_i in self.vertices:
            if mu_i == lam:
                on.append(p_i)
            elif mu_i < lam:
                below.append((mu_i,) + p_i)
            else:
                above.append((mu_i,) + p_i)
        pts = list(on)
        for v in below:
            for w in above:
                t = Fraction(lam - v[0], w[0] - v[0])
                pts.append(tuple(norm_scalar(v[i] + t * (w[i] - v[i])) for i in range(1, d + 1)))
        # recession rays all have positive first coordinate, so they cross
        # every level above a vertex
        for v in below:
            for r in res.rays:
                t = Fraction(lam - v[0], r[0])
                pts.append(tuple(norm_scalar(v[i] + t * r[i]) for i in range(1, d + 1)))
        if not pts:
            return Polytope.empty(d)
        return Polytope(pts)


@lru_cache(maxsize=4096)
def multiplier_profile(p):
    """Resolve the dilation polyhedron of a full-dimensional rational polytope.

    Verifies the structural facts along the way: every canonical ray yields a
    facet, and the recession cone equals the cone over P.
    """
    if p.is_empty or not p.is_full_dim:
        raise ValueError("multiplier profile requires a full-dimensional polytope")
    rays = canonical_rays(p)
    d = p.ambient_dim
    halfspaces = []
    for ray, offset in rays:
        halfspaces.append(make_halfspace((-offset,) + ray, 1))
    fan = HPolyhedron(d + 1, tuple(halfspaces))
    interior = _fan_interior_point(p, rays)
    res = fan.resolve(interior_point=interior)
    if res is None or not res.vertices:
        raise InvariantViolation("dilation polyhedron must be pointed and nonempty")
    # structural checks from the dilation theorem
    cone = cone_over(p)
    if set(res.rays) != set(cone.rays):
        raise InvariantViolation("recession cone differs from the cone over P")
    redundant = _redundant_constraints(halfspaces, res)
    if redundant:
        raise InvariantViolation(
            f"{redundant} canonical rays give no facet of the dilation polyhedron"
        )
    verts = tuple(sorted((norm_scalar(v[0]), v[1:]) for v in res.vertices))
    mus = sorted({v[0] for v in verts})
    mu_cc = max(
        _contact_multiplier(p, verts, res.rays, h.normal) for h in p.facets()
    )
    return MultiplierProfile(
        polytope=p,
        rays=rays,
        fan_polyhedron=fan,
        vertices=verts,
        mu=mus[0],
        mu_max=mus[-1],
        mu_cc=mu_cc,
        special_multipliers=tuple(mus),
    )


def _fan_interior_point(p, rays):
    b = p.barycenter()
    slack = min(dot(b, ray) - offset for ray, offset in rays)
    lam = Fraction(2, slack) if slack < 2 else Fraction(2)
    while any(lam * (dot(b, ray) - offset) <= 1 for ray, offset in rays):
        lam *= 2
    return (norm_scalar(lam),) + tuple(norm_scalar(lam * x) for x in b)


def _redundant_constraints(halfspaces, res):
    count = 0
    for h in halfspaces:
        tight = [v for v in res.vertices if h.value(v) == h.offset]
        tight_rays = [r for r in res.rays if dot(r, h.normal) == 0]
        pts = list(tight) + [tuple(v + r_ for v, r_ in zip(tight[0], r)) for r in tight_rays] if tight else []
        if not tight:
            count += 1
            continue
        base = pts[0]
        if rank([vsub(q, base) for q in pts[1:]]) < len(h.normal) - 1:
            count += 1
    return count


def _contact_multiplier(p, verts, rays, n):
    """Smallest dilation at which n supports the Fine interior: the least first
    coordinate on the contact face of <(x0,x),(-Min_P(n),n)> >= 1."""
    a = (-p.min_support(n),) + tuple(n)
    if any(dot(r, a) < 0 for r in rays):
        raise InvariantViolation("fan polyhedron unbounded below a support form")
    values = [(dot((mu,) + x, a), mu) for mu, x in verts]
    if min(v for v, _ in values) != 1:
        raise ValueError("not a support vector at any dilation")
    return min(mu for v, mu in values if v == 1)


def mu_of_support_vector(p, n):
    profile = multiplier_profile(p)
    res = profile.fan_polyhedron.resolve()
    return _contact_multiplier(p, profile.vertices, res.rays, tuple(n))


def fine_of_dilation(p, lam):
    """F(lam P), computed as the x0 = lam slice of the dilation polyhedron."""
    return multiplier_profile(p).fine_at(lam)


def fine_interior(p):
    """The Fine interior F(P) with the ray set that defines it."""
    profile = multiplier_profile(p)
    return FineResult(profile.fine_at(1), profile.rays)


def fine_interior_bruteforce(p, bound):
    """Oracle: intersect over ALL nonzero integer n with |n|_inf <= bound.

    Independent of the canonical refinement; a superset of F(P) that matches
    it once the bound covers the canonical rays.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    if p.is_empty or not p.is_full_dim:
        raise ValueError("brute-force Fine interior requires a full-dimensional polytope")
    d = p.ambient_dim
    # start from the coordinate box, then cut with every remaining half-space
    lo = [p.min_support(tuple(1 if j == i else 0 for j in range(d))) + 1 for i in range(d)]
    hi = [-p.min_support(tuple(-1 if j == i else 0 for j in range(d))) - 1 for i in range(d)]
    if any(a > b for a, b in zip(lo, hi)):
        return Polytope.empty(d)
    current = Polytope(list(itertools.product(*(
        sorted({a, b}) for a, b in zip(lo, hi)
    ))))
    for n in itertools.product(range(-bound, bound + 1), repeat=d):
        if all(x == 0 for x in n):
            continue
        h = HalfSpace(n, p.min_support(n) + 1) if _is_primitive(n) else None
        if h is None:
            continue
        current = _cut(current, h)
        if current.is_empty:
            return current
    return current


def _is_primitive(n):
    from math import gcd

    g = 0
    for x in n:
        g = gcd(g, abs(x))
    return g == 1


def _cut(p, h):
    """P intersected with a half-space, staying on the V-side."""
    if p.is_empty:
        return p
    inside, outside = [], []
    for v in p.vertices:
        (inside if h.contains(v) else outside).append(v)
    if not outside:
        return p
    if not inside:
        return Polytope.empty(p.ambient_dim)
    pts = list(inside)
    c = h.offset
    for v in inside:
        hv = h.value(v)
        if hv == c:
            continue
        for w in outside:
            hw = h.value(w)
            t = Fraction(c - hw, hv - hw)
            pts.append(tuple(norm_scalar(w[i] + t * (v[i] - w[i])) for i in range(p.ambient_dim)))
    return Polytope(pts)


def is_support_vector(p, n):
    """Whether Min over F(P) of <., n> exceeds Min_P(n) by exactly one."""
    n = tuple(n)
    if all(x == 0 for x in n):
        raise ValueError("support of the zero vector is undefined")
    f = fine_interior(p).polytope
    if f.is_empty:
        raise ValueError("support undefined")
    return f.min_support(n) == p.min_support(n) + 1


def canonical_hull(p):
    """Intersection of the original half-spaces of the candidate support set."""
    f = fine_interior(p).polytope
    if f.is_empty:
        raise ValueError("support undefined")
    profile = multiplier_profile(p)
    kept = []
    for ray, offset in profile.rays:
        if f.min_support(ray) == offset + 1:
            kept.append(HalfSpace(ray, offset))
    res = resolve_hpolyhedron(kept, p.ambient_dim)
    if res is None or res.rays:
        raise InvariantViolation("canonical hull is not a polytope for the candidate set")
    hull = Polytope(list(res.vertices))
    if not all(p.contains(v) for v in hull.vertices):
        raise InvariantViolation("canonical hull escapes the polytope")
    return hull


def is_canonically_closed(p):
    f = fine_interior(p).polytope
    if f.is_empty:
        raise ValueError("support undefined")
    return all(f.min_support(h.normal) == h.offset + 1 for h in p.facets())


def is_f_hollow(p):
    """Empty Fine interior, equivalently minimal multiplier above one."""
    if not p.is_lattice:
        raise ValueError("F-hollowness is defined for lattice polytopes")
    return multiplier_profile(p).mu > 1


def is_weakly_sporadic(p):
    if not is_f_hollow(p):
        return False
    profile = multiplier_profile(p)
    return profile.fine_at(profile.mu).intrinsic_dim == 0


def reflexive_check(p):
    """Unique interior lattice point with every facet at lattice distance one."""
    if not p.is_lattice:
        raise ValueError("reflexivity is defined for lattice polytopes")
    if not p.is_full_dim:
        raise ValueError("reflexivity requires a full-dimensional polytope")
    interior = p.lattice_points(interior_only=True)
    if len(interior) != 1:
        return False
    x = interior[0]
    return all(h.offset == dot(x, h.normal) - 1 for h in p.facets())


def gorenstein_data(p):
    """Index and center when some integer dilate is a translated reflexive polytope.

    Detected on the dilation polyhedron: a single lattice vertex (k, x) means
    the polyhedron is the shifted cone over P, i.e. kP - x is reflexive.
    """
    if not p.is_lattice:
        raise ValueError("Gorenstein data is defined for lattice polytopes")
    profile = multiplier_profile(p)
    if len(profile.vertices) != 1:
        return None
    mu, x = profile.vertices[0]
    if not isinstance(mu, int) or mu < 1:
        return None
    if not all(isinstance(c, int) for c in x):
        return None
    check = p.dilate(mu).translate(vneg(x))
    if not reflexive_check(check):
        raise InvariantViolation("shifted-cone dilation polyhedron without reflexive dilate")
    return GorensteinData(mu, x)


def cramer_multiplier(nus, offsets):
    """First coordinate of the fan-polyhedron vertex cut out by d+1 support
    forms, via the explicit determinant ratio (Laplace expansion of Cramer)."""
    dp1 = len(nus)
    d = dp1 - 1
    num = 0
    den = 0
    for j in range(dp1):
        rows = [nus[i] for i in range(dp1) if i != j]
        minor = det(rows)
        num += (-1) ** (j + d) * minor
        den += (-1) ** (j + d + 1) * offsets[j] * minor
    if den == 0:
        return None
    return norm_scalar(Fraction(num, den))
