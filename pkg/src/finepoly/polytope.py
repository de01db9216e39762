"""Exact V- and H-representation geometry for rational polytopes.

Polytopes are immutable; every derived quantity (facets, lattice points,
lower-dimensional data) is cached write-once, so values can be shared freely
between threads.  The empty polytope is a first-class value with intrinsic
dimension -1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd, lcm

from .hull import hull_full_dim, hull_of_points, scale_to_int
from .linalg import (
    MAX_DIM,
    clear_denominators,
    column_hermite_normal_form,
    dot,
    inverse_unimodular,
    kernel_basis,
    norm_scalar,
    norm_vector,
    primitive_vector,
    rank,
    solve_square,
    vadd,
    vneg,
    vsub,
)


class InvariantViolation(RuntimeError):
    """A consequence of the theory failed to hold; never swallowed."""


@dataclass(frozen=True)
class HalfSpace:
    """Closed half-space {x : <x, normal> >= offset} with primitive integer normal."""

    normal: tuple
    offset: object  # int | Fraction

    def __post_init__(self):
        if all(x == 0 for x in self.normal):
            raise ValueError("half-space normal must be nonzero")
        g = 0
        for x in self.normal:
            g = gcd(g, abs(x))
        if g != 1:
            raise ValueError("half-space normal must be primitive")

    def value(self, point):
        return dot(point, self.normal)

    def contains(self, point, strict=False):
        v = dot(point, self.normal)
        return v > self.offset if strict else v >= self.offset


def make_halfspace(normal, offset):
    """HalfSpace from an arbitrary nonzero rational normal (reduces to primitive)."""
    mult = 1
    for x in normal:
        if type(x) is not int and isinstance(x, Fraction):
            mult = lcm(mult, x.denominator)
    if mult != 1:
        normal = tuple(int(x * mult) for x in normal)
        offset = offset * mult
    g = 0
    for x in normal:
        g = gcd(g, abs(x))
    if g == 0:
        raise ValueError("half-space normal must be nonzero")
    if g > 1:
        normal = tuple(x // g for x in normal)
        offset = Fraction(offset, g)
    return HalfSpace(tuple(normal), norm_scalar(offset))


@dataclass(frozen=True)
class LatticeCone:
    """Rational polyhedral cone given by primitive, pairwise non-parallel rays."""

    ambient_dim: int
    rays: tuple


class Polytope:
    """Convex hull of finitely many exact rational points, dimensions 1..5."""

    def __init__(self, points):
        pts = sorted({norm_vector(p) for p in points})
        if not pts:
            raise ValueError("convex hull of an empty point set")
        d = len(pts[0])
        if not 1 <= d <= MAX_DIM:
            raise ValueError(f"ambient dimension must be in 1..{MAX_DIM}, got {d}")
        if any(len(p) != d for p in pts):
            raise ValueError("points of mixed dimension")
        self.ambient_dim = d
        self._facets = None
        self._lower = None
        self._lattice_all = None
        self._lattice_interior = None
        if len(pts) == 1:
            self.vertices = tuple(pts)
            self._intrinsic_dim = 0
            return
        r = rank([vsub(p, pts[0]) for p in pts[1:]])
        self._intrinsic_dim = r
        if r == d:
            vidx, facets = hull_of_points(pts)
            self.vertices = tuple(pts[i] for i in vidx)
            self._facets = tuple(make_halfspace(n, c) for n, c in facets)
        elif r == 0:
            self.vertices = (pts[0],)
        else:
            proj_cols = _spanning_columns(pts, r)
            proj = [tuple(p[j] for j in proj_cols) for p in pts]
            vidx = _hull_vertices_lower(proj, r)
            self.vertices = tuple(pts[i] for i in vidx)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def empty(cls, ambient_dim):
        p = cls.__new__(cls)
        p.ambient_dim = ambient_dim
        p.vertices = ()
        p._intrinsic_dim = -1
        p._facets = None
        p._lower = None
        p._lattice_all = []
        p._lattice_interior = []
        return p

    @classmethod
    def _trusted(cls, ambient_dim, vertices, facets=None, intrinsic_dim=None):
        """Wrap a vertex set that is already known to be irredundant."""
        p = cls.__new__(cls)
        p.ambient_dim = ambient_dim
        p.vertices = tuple(sorted(norm_vector(v) for v in vertices))
        p._facets = facets
        p._intrinsic_dim = intrinsic_dim
        p._lower = None
        p._lattice_all = None
        p._lattice_interior = None
        return p

    # -- basic queries ---------------------------------------------------------

    @property
    def is_empty(self):
        return not self.vertices

    @property
    def intrinsic_dim(self):
        if self._intrinsic_dim is None:
            if len(self.vertices) == 1:
                self._intrinsic_dim = 0
            else:
                v0 = self.vertices[0]
                self._intrinsic_dim = rank([vsub(v, v0) for v in self.vertices[1:]])
        return self._intrinsic_dim

    @property
    def is_full_dim(self):
        return self.intrinsic_dim == self.ambient_dim

    @property
    def is_lattice(self):
        return all(isinstance(x, int) for v in self.vertices for x in v)

    def facets(self):
        if self.is_empty or not self.is_full_dim:
            raise ValueError("facet description requires full dimension")
        if self._facets is None:
            _, facets = hull_of_points(list(self.vertices))
            self._facets = tuple(make_halfspace(n, c) for n, c in facets)
        return self._facets

    def min_support(self, y):
        """Exact minimum of <., y> over the polytope."""
        if all(x == 0 for x in y):
            raise ValueError("support of the zero vector is undefined")
        if self.is_empty:
            raise ValueError("support of the empty polytope is undefined")
        return norm_scalar(min(dot(v, y) for v in self.vertices))

    def barycenter(self):
        if self.is_empty:
            raise ValueError("empty polytope has no barycenter")
        n = len(self.vertices)
        return tuple(
            norm_scalar(Fraction(sum(v[i] for v in self.vertices), n))
            for i in range(self.ambient_dim)
        )

    def __eq__(self, other):
        return (
            isinstance(other, Polytope)
            and self.ambient_dim == other.ambient_dim
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.vertices))

    def __repr__(self):
        if self.is_empty:
            return f"Polytope.empty({self.ambient_dim})"
        return f"Polytope(dim {self.intrinsic_dim} in R^{self.ambient_dim}, {len(self.vertices)} vertices)"

    # -- transforms -------------------------------------------------------------

    def dilate(self, lam):
        lam = norm_scalar(Fraction(lam) if not isinstance(lam, (int, Fraction)) else lam)
        if lam < 0:
            raise ValueError("dilation factor must be nonnegative")
        if self.is_empty:
            return Polytope.empty(self.ambient_dim)
        if lam == 0:
            return Polytope._trusted(
                self.ambient_dim, ((0,) * self.ambient_dim,), intrinsic_dim=0
            )
        facets = None
        if self._facets is not None:
            facets = tuple(
                HalfSpace(h.normal, norm_scalar(lam * h.offset)) for h in self._facets
            )
        verts = [tuple(norm_scalar(lam * x) for x in v) for v in self.vertices]
        return Polytope._trusted(self.ambient_dim, verts, facets, self._intrinsic_dim)

    def translate(self, t):
        if self.is_empty:
            return Polytope.empty(self.ambient_dim)
        facets = None
        if self._facets is not None:
            facets = tuple(
                HalfSpace(h.normal, norm_scalar(h.offset + dot(t, h.normal)))
                for h in self._facets
            )
        verts = [vadd(v, t) for v in self.vertices]
        return Polytope._trusted(self.ambient_dim, verts, facets, self._intrinsic_dim)

    def apply_affine(self, matrix, shift=None):
        """Image under x -> M x + s.  M must be invertible (e.g. unimodular)."""
        verts = []
        for v in self.vertices:
            w = tuple(dot(row, v) for row in matrix)
            if shift is not None:
                w = vadd(w, shift)
            verts.append(w)
        if self.is_empty:
            return Polytope.empty(self.ambient_dim)
        return Polytope._trusted(self.ambient_dim, verts, None, self._intrinsic_dim)

    # -- membership and lattice points -------------------------------------------

    def _lower_data(self):
        """Affine-hull equations and a projected full-dimensional copy."""
        if self._lower is None:
            v0 = self.vertices[0]
            diffs = [vsub(v, v0) for v in self.vertices[1:]]
            r = self.intrinsic_dim
            cols = _spanning_columns(self.vertices, r)
            proj = Polytope([tuple(v[j] for j in cols) for v in self.vertices])
            eqs = []
            if diffs:
                for a in _rational_kernel(diffs):
                    eqs.append((a, dot(v0, a)))
            else:
                for j in range(self.ambient_dim):
                    a = tuple(1 if k == j else 0 for k in range(self.ambient_dim))
                    eqs.append((a, v0[j]))
            self._lower = (eqs, cols, proj)
        return self._lower

    def contains(self, point, strict=False):
        """Membership; strict means interior (relative interior if lower-dim)."""
        if self.is_empty:
            return False
        point = norm_vector(point)
        if self.is_full_dim:
            return all(h.contains(point, strict) for h in self.facets())
        if self.intrinsic_dim == 0:
            # the relative interior of a point is the point itself
            return point == self.vertices[0]
        eqs, cols, proj = self._lower_data()
        if any(dot(point, a) != b for a, b in eqs):
            return False
        return proj.contains(tuple(point[j] for j in cols), strict)

    def lattice_points(self, interior_only=False):
        """All lattice points (lexicographically sorted); strict filtering when interior."""
        cache = self._lattice_interior if interior_only else self._lattice_all
        if cache is not None:
            return list(cache)
        pts = []
        if not self.is_empty:
            lo = [ceil(min(v[i] for v in self.vertices)) for i in range(self.ambient_dim)]
            hi = [floor(max(v[i] for v in self.vertices)) for i in range(self.ambient_dim)]
            if self.is_full_dim:
                hs = self.facets()
                for p in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
                    if all(h.contains(p, interior_only) for h in hs):
                        pts.append(p)
            else:
                for p in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
                    if self.contains(p, strict=interior_only):
                        pts.append(p)
        if interior_only:
            self._lattice_interior = pts
        else:
            self._lattice_all = pts
        return list(pts)


def _spanning_columns(points, r):
    """Coordinate subset on which the difference vectors keep full rank."""
    v0 = points[0]
    diffs = [vsub(p, v0) for p in points[1:]]
    cols = []
    chosen = []
    for j in range(len(v0)):
        cand = chosen + [[row[j] for row in diffs]]
        if rank([tuple(c) for c in zip(*cand)]) == len(cand):
            chosen = cand
            cols.append(j)
            if len(cols) == r:
                break
    return cols


def _hull_vertices_lower(proj_points, r):
    """Indices of extreme points of a rank-r point set given in r coordinates."""
    uniq = {}
    for i, p in enumerate(proj_points):
        uniq.setdefault(p, i)
    pts = sorted(uniq)
    if r == 0:
        return [uniq[pts[0]]]
    scaled, _ = scale_to_int(pts)
    vidx, _ = hull_full_dim(scaled)
    return sorted(uniq[pts[i]] for i in vidx)


def _rational_kernel(rows):
    """Primitive integer basis of {a : rows . a = 0} (kernel of the transpose pairing)."""
    cols = [tuple(r[j] for r in rows) for j in range(len(rows[0]))]
    scaled_rows, _ = scale_to_int(rows)
    return kernel_basis(scaled_rows)


# -- spec-level operations -----------------------------------------------------


def convex_hull(points):
    """Polytope from exact rational points; interior points are dropped."""
    return Polytope(points)


def facets(p):
    return list(p.facets())


def min_support(p, y):
    return p.min_support(y)


def dilate(p, lam):
    return p.dilate(lam)


def lattice_points(p, interior_only=False):
    return p.lattice_points(interior_only)


def minkowski_sum(p, q):
    if p.ambient_dim != q.ambient_dim:
        raise ValueError("Minkowski sum requires equal ambient dimension")
    if p.is_empty or q.is_empty:
        return Polytope.empty(p.ambient_dim)
    return Polytope([vadd(v, w) for v in p.vertices for w in q.vertices])


def pyramid(p):
    """conv({1} x P, 0) one dimension up."""
    if not p.is_lattice:
        raise ValueError("pyramid requires a lattice polytope")
    if p.is_empty:
        raise ValueError("pyramid over the empty polytope is undefined")
    apex = (0,) * (p.ambient_dim + 1)
    return Polytope([apex] + [(1,) + v for v in p.vertices])


def cone_over(p):
    """Primitive ray generators of R>=0({1} x P)."""
    if p.is_empty:
        raise ValueError("cone over the empty polytope is undefined")
    rays = sorted({clear_denominators((1,) + v) for v in p.vertices})
    return LatticeCone(p.ambient_dim + 1, tuple(rays))


def slice_polytope(p, normal, c, intrinsic=False):
    """P intersected with the hyperplane <x, normal> = c.

    Embedded in ambient coordinates by default; with intrinsic=True the result
    is expressed in lattice coordinates of the hyperplane, using the basis
    completion fixed by the Hermite normal form.
    """
    normal = tuple(normal)
    g = 0
    for x in normal:
        g = gcd(g, abs(x))
    if g != 1:
        raise ValueError("slice normal must be primitive")
    c = norm_scalar(c if isinstance(c, (int, Fraction)) else Fraction(c))
    on, above, below = [], [], []
    for v in p.vertices:
        val = dot(v, normal)
        if val == c:
            on.append(v)
        elif val > c:
            above.append((v, val))
        else:
            below.append((v, val))
    pts = list(on)
    for v, val in above:
        for w, wal in below:
            t = Fraction(c - wal, val - wal)
            pts.append(tuple(norm_scalar(w[i] + t * (v[i] - w[i])) for i in range(len(v))))
    if intrinsic:
        basis = hyperplane_basis(normal)
        pts = [_intrinsic_coords(basis, pt)[1:] for pt in pts]
        if not pts:
            return Polytope.empty(p.ambient_dim - 1)
        return Polytope(pts)
    if not pts:
        return Polytope.empty(p.ambient_dim)
    return Polytope(pts)


def hyperplane_basis(normal):
    """Unimodular V with normal . V = e1; columns 2..d span the normal's kernel."""
    _, v = column_hermite_normal_form((tuple(normal),))
    vinv = inverse_unimodular(v)
    return v, vinv


def _intrinsic_coords(basis, point):
    _, vinv = basis
    return tuple(norm_scalar(dot(row, point)) for row in vinv)


# -- H-polyhedra -----------------------------------------------------------------


@dataclass(frozen=True)
class Resolution:
    vertices: tuple
    rays: tuple


class HPolyhedron:
    """Finite intersection of half-spaces with lazy exact vertex/ray resolution."""

    def __init__(self, ambient_dim, halfspaces):
        self.ambient_dim = ambient_dim
        self.halfspaces = tuple(halfspaces)
        self._resolution = None
        self._resolved = False

    def resolve(self, interior_point=None):
        if not self._resolved:
            self._resolution = resolve_hpolyhedron(
                self.halfspaces, self.ambient_dim, interior_point
            )
            self._resolved = True
        return self._resolution

    @property
    def is_feasible(self):
        return self.resolve() is not None


def _dedupe_halfspaces(halfspaces):
    best = {}
    for h in halfspaces:
        prev = best.get(h.normal)
        if prev is None or h.offset > prev:
            best[h.normal] = h.offset
    return [HalfSpace(n, c) for n, c in sorted(best.items())]


def resolve_hpolyhedron(halfspaces, ambient_dim, interior_point=None):
    """Exact vertices and primitive recession rays, or None when infeasible.

    With a strictly feasible interior point the conversion runs through one
    polar hull; otherwise it enumerates d-subsets of constraints exactly as
    vertices are defined (unique solution of d tight constraints, feasible
    for the rest).
    """
    hs = _dedupe_halfspaces(halfspaces)
    d = ambient_dim
    if interior_point is not None:
        if all(h.contains(interior_point, strict=True) for h in hs):
            res = _polar_resolve(hs, d, interior_point)
            if res is not None:
                return Resolution(res[0], res[1])
    vertices = set()
    for subset in itertools.combinations(hs, d):
        rows = [h.normal for h in subset]
        rhs = [h.offset for h in subset]
        x = solve_square(rows, rhs)
        if x is None:
            continue
        if x in vertices:
            continue
        if all(h.contains(x) for h in hs):
            vertices.add(x)
    rays = _recession_rays(hs, d)
    if vertices:
        return Resolution(tuple(sorted(vertices)), rays)
    if _fm_feasible([(h.normal, h.offset, False) for h in hs], d):
        return Resolution((), rays)
    return None


def _recession_rays(hs, d):
    """Extreme rays of the homogeneous system {<x, n> >= 0}."""
    rays = set()
    if d == 1:
        for r in ((1,), (-1,)):
            if all(dot(r, h.normal) >= 0 for h in hs):
                rays.add(r)
        return tuple(sorted(rays))
    normals = [h.normal for h in hs]
    for subset in itertools.combinations(normals, d - 1):
        if rank(list(subset)) != d - 1:
            continue
        kb = kernel_basis(list(subset))
        if len(kb) != 1:
            continue
        r = primitive_vector(kb[0])
        for cand in (r, vneg(r)):
            if all(dot(cand, n) >= 0 for n in normals):
                rays.add(cand)
    return tuple(sorted(rays))


def _polar_resolve(hs, d, w):
    """Vertex/ray resolution through the polar dual around interior point w.

    Returns (vertices, rays, facet_flags) where facet_flags[i] says whether
    constraint i is irredundant, or None if the polar hull degenerates.
    """
    b_points = []
    for h in hs:
        s = dot(w, h.normal) - h.offset  # > 0
        b_points.append(tuple(norm_scalar(Fraction(-n, s)) for n in h.normal))
    origin = (0,) * d
    pts = b_points + [origin]
    uniq = sorted(set(pts))
    if len(uniq) <= d:
        return None
    v0 = uniq[0]
    if rank([vsub(p, v0) for p in uniq[1:]]) != d:
        return None
    scaled, mult = scale_to_int(uniq)
    vidx, facets_scaled = hull_full_dim(scaled)
    vertex_set = {uniq[i] for i in vidx}
    vertices = []
    rays = []
    for n, c_scaled in facets_scaled:
        c = Fraction(c_scaled, mult)
        if c == 0:
            rays.append(primitive_vector(vneg(n)))
        else:
            # facet {<x, n> = c} of the polar, 0 strictly beneath (c < 0)
            vert = tuple(norm_scalar(w[i] + Fraction(n[i], c)) for i in range(d))
            vertices.append(vert)
    facet_flags = [bp in vertex_set for bp in b_points]
    return tuple(sorted(set(vertices))), tuple(sorted(set(rays))), facet_flags


def _fm_feasible(constraints, d):
    """Fourier-Motzkin feasibility of {<x,a> >= c (or > c when strict)}.

    constraints: list of (coeffs, rhs, strict).  Small systems only; used to
    distinguish infeasible from vertex-free nonempty polyhedra and to test
    constraint irredundancy in low dimension.
    """
    rows = [([Fraction(x) for x in a], Fraction(c), strict) for a, c, strict in constraints]
    for var in range(d - 1, -1, -1):
        pos, neg, rest = [], [], []
        for a, c, strict in rows:
            if a[var] > 0:
                pos.append((a, c, strict))
            elif a[var] < 0:
                neg.append((a, c, strict))
            else:
                rest.append((a, c, strict))
        new_rows = list(rest)
        for ap, cp, sp in pos:
            for an, cn, sn in neg:
                # <x,ap> >= cp gives lower bound, <x,an> >= cn gives upper bound
                coeff = [ap[j] / ap[var] - an[j] / an[var] for j in range(d)]
                rhs = cp / ap[var] - cn / an[var]
                coeff[var] = Fraction(0)
                new_rows.append((coeff, rhs, sp or sn))
        rows = []
        seen = set()
        for a, c, strict in new_rows:
            key = (tuple(a), c, strict)
            if key not in seen:
                seen.add(key)
                rows.append((a, c, strict))
        if len(rows) > 4000:
            raise RuntimeError("Fourier-Motzkin blow-up; system too large")
    for a, c, strict in rows:
        # all coefficients zero now
        if strict:
            if not 0 > c:
                return False
        else:
            if not 0 >= c:
                return False
    return True
