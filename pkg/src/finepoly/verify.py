"""Oracle harness: brute-force and identity cross-checks of the Fine-interior
machinery on a corpus of polytopes.

Each check recomputes a theorem-backed identity through an independent route
(exhaustive dual vectors, Cramer determinants, direct dilation) and reports
pass/fail; any failure is a bug, not a tolerance issue, because all paths are
exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .catalog import named_corpus
from .ehrhart import hstar
from .fine import (
    cramer_multiplier,
    fine_interior,
    fine_interior_bruteforce,
    fine_of_dilation,
    multiplier_profile,
)
from .linalg import dot, norm_scalar, rank, solve_square, vsub
from .polytope import Polytope, cone_over, minkowski_sum
from .width import lattice_width


@dataclass(frozen=True)
class CheckResult:
    polytope: str
    name: str
    ok: bool
    detail: str = ""


def check_fine_oracle(name, p, bound=None):
    """F(P) from canonical rays equals the exhaustive-dual-vector oracle."""
    profile = multiplier_profile(p)
    bstar = profile.rays.max_norm()
    f = profile.fine_at(1)
    results = []
    for b in ([bound] if bound is not None else [bstar, bstar + 1]):
        oracle = fine_interior_bruteforce(p, b)
        if b < bstar:
            ok = all(oracle.contains(v) for v in f.vertices) if not f.is_empty else True
            results.append(CheckResult(name, f"fine-oracle(B={b})", ok,
                                       "oracle superset only (bound below B*)"))
        else:
            ok = oracle.vertices == f.vertices
            results.append(CheckResult(name, f"fine-oracle(B={b})", ok,
                                       "" if ok else f"{oracle.vertices} != {f.vertices}"))
    return results


def check_cramer(name, p, corrupt=False):
    """Every fan-polyhedron vertex re-solves from its tight constraints, and the
    first coordinate matches the explicit determinant ratio."""
    profile = multiplier_profile(p)
    d = p.ambient_dim
    ok = True
    detail = ""
    for mu, x in profile.vertices:
        vert = (mu,) + x
        tight = []
        for ray, offset in profile.rays:
            a = (-offset,) + ray
            if corrupt:
                a = (-offset + 1,) + ray
            if dot(vert, a) == 1:
                tight.append(a)
        chosen = _independent_subset(tight, d + 1)
        if chosen is None:
            ok = False
            detail = f"vertex {vert} lacks d+1 independent tight constraints"
            break
        solved = solve_square(chosen, [1] * (d + 1))
        if solved != tuple(norm_scalar(v) for v in vert):
            ok = False
            detail = f"resolve mismatch at {vert}"
            break
        mu_cramer = cramer_multiplier([a[1:] for a in chosen], [-a[0] for a in chosen])
        if mu_cramer != mu:
            ok = False
            detail = f"Cramer ratio {mu_cramer} != {mu}"
            break
    return [CheckResult(name, "cramer-vertices", ok, detail)]


def _independent_subset(rows, need):
    chosen = []
    for r in rows:
        if rank(chosen + [r]) == len(chosen) + 1:
            chosen.append(r)
            if len(chosen) == need:
                return chosen
    return None


def check_structure(name, p):
    """Recession cone, facet count and slice identity of the dilation polyhedron."""
    profile = multiplier_profile(p)
    res = profile.fan_polyhedron.resolve()
    cone = cone_over(p)
    ok = set(res.rays) == set(cone.rays)
    results = [CheckResult(name, "recession-cone", ok)]
    ok = len(profile.fan_polyhedron.halfspaces) == len(profile.rays)
    results.append(CheckResult(name, "facet-count", ok))
    return results


def check_slices(name, p, rng, samples=10):
    """F(lam P) through the fan polyhedron equals a fresh computation on lam P."""
    profile = multiplier_profile(p)
    mu = profile.mu
    for _ in range(samples):
        num = rng.randrange(1, 13)
        den = rng.randrange(1, 13)
        lam = norm_scalar(Fraction(num, den) * mu)
        direct = fine_interior(p.dilate(lam)).polytope
        via_fan = profile.fine_at(lam)
        if direct.vertices != via_fan.vertices:
            return [CheckResult(name, "dilation-slices", False,
                                f"lambda={lam}: {via_fan.vertices} != {direct.vertices}")]
    return [CheckResult(name, "dilation-slices", True)]


def check_dilation_lemma(name, p, rng, samples=8):
    """Min_{lam P}(y) = lam Min_P(y) and the facet normals do not move."""
    for _ in range(samples):
        lam = Fraction(rng.randrange(1, 20), rng.randrange(1, 20))
        q = p.dilate(lam)
        y = tuple(rng.randrange(-4, 5) for _ in range(p.ambient_dim))
        if all(v == 0 for v in y):
            y = (1,) * p.ambient_dim
        if q.min_support(y) != norm_scalar(lam * p.min_support(y)):
            return [CheckResult(name, "dilation-lemma", False, f"support broke at {lam}")]
        if {h.normal for h in q.facets()} != {h.normal for h in p.facets()}:
            return [CheckResult(name, "dilation-lemma", False, f"normal fan moved at {lam}")]
    return [CheckResult(name, "dilation-lemma", True)]


def check_pyramid(name, p):
    """F(2 Pyr(P)) = {1} x F(P), and mu(Pyr(P)) = mu(P) + 1 when mu >= 1."""
    from .polytope import pyramid

    if not p.is_lattice or p.ambient_dim > 3:
        return []
    pyr = pyramid(p)
    lhs = fine_of_dilation(pyr, 2)
    rhs = fine_interior(p).polytope
    expect = tuple(sorted((1,) + v for v in rhs.vertices))
    ok = lhs.vertices == expect
    results = [CheckResult(name, "pyramid-slice", ok)]
    mu = multiplier_profile(p).mu
    if mu >= 1:
        ok = multiplier_profile(pyr).mu == mu + 1
        results.append(CheckResult(name, "pyramid-multiplier", ok))
    return results


def check_minkowski(name, p):
    """F(lam mu_max P) decomposes as F(mu_max P) + (lam - 1) mu_max P."""
    profile = multiplier_profile(p)
    mu_max = profile.mu_max
    base = fine_of_dilation(p, mu_max)
    results = []
    for lam in (2, 3):
        lhs = fine_of_dilation(p, lam * mu_max)
        rhs = minkowski_sum(base, p.dilate((lam - 1) * mu_max))
        ok = lhs.vertices == rhs.vertices
        results.append(CheckResult(name, f"minkowski-decomposition(lam={lam})", ok))
    return results


def check_width_bounds(name, p):
    """2/lw <= mu <= codegree <= d+1 for F-hollow lattice polytopes."""
    if not p.is_lattice:
        return []
    profile = multiplier_profile(p)
    if profile.mu <= 1:
        return []
    cert = lattice_width(p)
    hs = hstar(p)
    ok = (
        Fraction(2, cert.width) <= profile.mu <= hs.codegree <= p.ambient_dim + 1
    )
    return [CheckResult(name, "multiplier-bounds", ok,
                        f"2/lw={Fraction(2, cert.width)} mu={profile.mu} codeg={hs.codegree}")]


def check_width1_identity(name, p):
    """F(2P) is the hull of the interior lattice points for width-1 3-polytopes."""
    if not p.is_lattice or p.ambient_dim != 3:
        return []
    if lattice_width(p).width != 1:
        return []
    q = p.dilate(2)
    interior = q.lattice_points(interior_only=True)
    f = fine_of_dilation(p, 2)
    if not interior:
        ok = f.is_empty
    else:
        ok = f.vertices == Polytope(interior).vertices
    return [CheckResult(name, "width1-identity", ok)]


def run_verify(polytopes=None, bound=None, seed=0, corrupt=None):
    """Run every check over the corpus; returns CheckResults (all exact)."""
    rng = random.Random(seed)
    if polytopes is None:
        polytopes = named_corpus()
    results = []
    for name, p in sorted(polytopes.items()):
        if not p.is_full_dim:
            continue
        results.extend(check_fine_oracle(name, p, bound))
        results.extend(check_cramer(name, p, corrupt=(corrupt == "offset")))
        results.extend(check_structure(name, p))
        results.extend(check_slices(name, p, rng))
        results.extend(check_dilation_lemma(name, p, rng))
        results.extend(check_pyramid(name, p))
        results.extend(check_minkowski(name, p))
        results.extend(check_width_bounds(name, p))
        results.extend(check_width1_identity(name, p))
    return results
