"""Canonical forms for affine unimodular equivalence of lattice polytopes.

The pairing-matrix strategy: maximize the vertex-facet pairing matrix
lexicographically over row and column permutations, then reduce the vertex
matrix of every maximizing vertex order to Hermite normal form and keep the
lexicographically largest result.  Equal canonical matrices mean equivalent
polytopes, and conversely.
"""

from __future__ import annotations

import hashlib
import itertools
import struct
from dataclasses import dataclass

from .linalg import dot, hermite_normal_form, vsub
from .polytope import Polytope


@dataclass(frozen=True)
class NormalForm:
    canonical_vertices: tuple  # d rows, one column per vertex
    digest: str


def serialize_matrix(matrix):
    """Little-endian 64-bit row/column counts, then 64-bit entries row-major."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    out = [struct.pack("<QQ", rows, cols)]
    for row in matrix:
        for x in row:
            if not -(2**63) <= x < 2**63:
                raise OverflowError("matrix entry out of 64-bit range")
            out.append(struct.pack("<q", x))
    return b"".join(out)


def matrix_digest(matrix):
    return hashlib.blake2b(serialize_matrix(matrix), digest_size=16).hexdigest()


def pairing_matrix(p):
    """Rows indexed by facets, columns by vertices: <v, n> - Min_P(n) >= 0."""
    verts = p.vertices
    return tuple(
        tuple(h.value(v) - h.offset for v in verts) for h in p.facets()
    )


def _maximal_column_orders(pm):
    """All column orders achieving the row/column-permutation maximum of pm."""
    m = len(pm)
    n = len(pm[0])
    states = [((), (tuple(range(n)),))]
    for _ in range(m):
        best = None
        nxt = []
        for used, blocks in states:
            for r in range(m):
                if r in used:
                    continue
                vec = []
                refined = []
                for block in blocks:
                    vals = sorted((pm[r][j] for j in block), reverse=True)
                    vec.extend(vals)
                    groups = {}
                    for j in block:
                        groups.setdefault(pm[r][j], []).append(j)
                    for val in sorted(groups, reverse=True):
                        refined.append(tuple(groups[val]))
                vec = tuple(vec)
                if best is None or vec > best:
                    best = vec
                    nxt = [(used + (r,), tuple(refined))]
                elif vec == best:
                    nxt.append((used + (r,), tuple(refined)))
        seen = set()
        states = []
        for used, blocks in nxt:
            key = (frozenset(used), blocks)
            if key not in seen:
                seen.add(key)
                states.append((used, blocks))
    orders = set()
    for _, blocks in states:
        for perm in itertools.product(*(itertools.permutations(b) for b in blocks)):
            orders.add(tuple(j for block in perm for j in block))
    return orders


def affine_normal_form(p):
    """Deterministic canonical vertex matrix of the affine equivalence class."""
    if not p.is_lattice:
        raise ValueError("normal form is defined for lattice polytopes")
    if not p.is_full_dim:
        raise ValueError("normal form requires a full-dimensional polytope")
    pm = pairing_matrix(p)
    verts = p.vertices
    d = p.ambient_dim
    best = None
    for order in _maximal_column_orders(pm):
        first = verts[order[0]]
        matrix = tuple(
            tuple(verts[j][i] - first[i] for j in order) for i in range(d)
        )
        h, _ = hermite_normal_form(matrix)
        if best is None or h > best:
            best = h
    return NormalForm(best, matrix_digest(best))


def polytope_from_normal_form(matrix):
    """Rebuild the canonical representative polytope from its vertex matrix."""
    cols = list(zip(*matrix))
    return Polytope(cols)


def are_equivalent(p, q):
    if p.ambient_dim != q.ambient_dim or p.intrinsic_dim != q.intrinsic_dim:
        return False
    return affine_normal_form(p).canonical_vertices == affine_normal_form(q).canonical_vertices


def random_unimodular(dim, rng, steps=8):
    """Random element of GL(d, Z) as a product of elementary operations."""
    m = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    for _ in range(steps):
        kind = rng.randrange(3)
        i = rng.randrange(dim)
        j = rng.randrange(dim)
        if kind == 0 and i != j:
            k = rng.choice([-2, -1, 1, 2])
            m[i] = [a + k * b for a, b in zip(m[i], m[j])]
        elif kind == 1 and i != j:
            m[i], m[j] = m[j], m[i]
        else:
            m[i] = [-a for a in m[i]]
    return tuple(tuple(row) for row in m)


def random_affine_image(p, rng, max_shift=5):
    t = random_unimodular(p.ambient_dim, rng)
    shift = tuple(rng.randrange(-max_shift, max_shift + 1) for _ in range(p.ambient_dim))
    return p.apply_affine(t, shift)
