"""Lattice-point counting, h*-polynomials, degree and codegree."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .polytope import InvariantViolation


@dataclass(frozen=True)
class HStar:
    coefficients: tuple  # h*_0 .. trailing zeros trimmed
    degree: int
    codegree: int


def ehrhart_count(p, k):
    """|kP ∩ M| by exact enumeration."""
    if not p.is_lattice:
        raise ValueError("Ehrhart counts are defined for lattice polytopes")
    if k < 0:
        raise ValueError("dilation factor must be nonnegative")
    if k == 0:
        return 1
    return len(p.dilate(k).lattice_points())


def hstar(p):
    """h*-polynomial of a lattice d-polytope from the counts at 0..d."""
    if not p.is_lattice:
        raise ValueError("h* is defined for lattice polytopes")
    if not p.is_full_dim:
        raise ValueError("h* requires a full-dimensional polytope")
    d = p.ambient_dim
    counts = [ehrhart_count(p, k) for k in range(d + 1)]
    coeffs = []
    for j in range(d + 1):
        c = sum((-1) ** i * comb(d + 1, i) * counts[j - i] for i in range(j + 1))
        coeffs.append(c)
    if coeffs[0] != 1 or any(c < 0 for c in coeffs):
        raise InvariantViolation(f"invalid h* coefficients {coeffs}")
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    degree = len(coeffs) - 1
    codegree = d + 1 - degree
    for k in range(1, codegree + 1):
        has_interior = bool(p.dilate(k).lattice_points(interior_only=True))
        if has_interior != (k == codegree):
            raise InvariantViolation("codegree disagrees with interior-point search")
    return HStar(tuple(coeffs), degree, codegree)


def normalized_volume_simplex(p):
    """d! times the Euclidean volume of a lattice simplex (an independent check
    for the h* coefficient sum)."""
    from .linalg import det, vsub

    verts = p.vertices
    if len(verts) != p.ambient_dim + 1:
        raise ValueError("not a simplex")
    v0 = verts[0]
    return abs(det([vsub(v, v0) for v in verts[1:]]))
