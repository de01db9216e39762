from fractions import Fraction

import pytest

from finepoly.canonical import (
    canonical_rays,
    hilbert_basis_simplicial,
    triangulate_cone,
    vertex_cone_hull_vertices,
)
from finepoly.catalog import delta2, unit_fraction_simplex
from finepoly.fine import fine_interior, fine_interior_bruteforce, multiplier_profile
from finepoly.polytope import Polytope


def test_hilbert_basis_smooth_cone():
    assert hilbert_basis_simplicial([(1, 0), (0, 1)]) == [(0, 1), (1, 0)]


def test_hilbert_basis_index_two():
    assert hilbert_basis_simplicial([(1, 0), (1, 2)]) == [(1, 0), (1, 1), (1, 2)]


def test_hilbert_basis_with_reducible_box_point():
    # parallelepiped holds (1,0) and (2,0); (2,0) = (1,0)+(1,0) is reducible
    assert hilbert_basis_simplicial([(0, 1), (3, -1)]) == [(0, 1), (1, 0), (3, -1)]


def test_hilbert_basis_rejects_dependent_rays():
    with pytest.raises(ValueError, match="triangulate first"):
        hilbert_basis_simplicial([(1, 0), (2, 0)])


def test_triangulation_covers_and_is_deterministic():
    rays = [(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)]
    pieces = triangulate_cone(rays)
    assert pieces == triangulate_cone(rays)
    assert all(len(piece) == 3 for piece in pieces)
    assert len(pieces) == 2


def test_canonical_rays_delta2():
    assert canonical_rays(delta2()).rays == ((-1, -1), (0, 1), (1, 0))


def test_canonical_rays_invariant_under_dilation():
    r1 = canonical_rays(delta2())
    r2 = canonical_rays(delta2(2))
    assert r1.rays == r2.rays
    lam = Fraction(7, 2)
    r3 = canonical_rays(delta2().dilate(lam))
    assert r3.rays == r1.rays
    assert r3.offsets == tuple(lam * c for c in r1.offsets)


def test_canonical_rays_with_index_six_cone():
    p = Polytope([(0, 0), (2, 0), (1, 3)])
    assert canonical_rays(p).rays == ((-3, -1), (-1, 0), (0, 1), (1, 0), (3, -1))


def test_vertex_cone_hull_vertices_extra_generator():
    # cone((0,1),(3,-1)) needs (1,0) as a hull vertex of its nonzero lattice points
    assert vertex_cone_hull_vertices([(0, 1), (3, -1)]) == {(0, 1), (1, 0), (3, -1)}


def test_facet_normals_always_included():
    for p in [delta2(3), unit_fraction_simplex(2, 3, 6), Polytope([(0, 0), (2, 0), (1, 3)])]:
        rays = set(canonical_rays(p).rays)
        assert {h.normal for h in p.facets()} <= rays


def test_rays_are_primitive():
    from math import gcd

    for p in [delta2(2), unit_fraction_simplex(3, 3, 3)]:
        for ray in canonical_rays(p).rays:
            g = 0
            for x in ray:
                g = gcd(g, abs(x))
            assert g == 1


def test_fine_interior_stable_at_bound_and_beyond():
    # the oracle with the canonical norm bound (and one more) matches F(P)
    for p in [delta2(3), delta2(2), unit_fraction_simplex(2, 4, 4)]:
        rays = canonical_rays(p)
        bstar = rays.max_norm()
        f = fine_interior(p).polytope
        for b in (bstar, bstar + 1):
            oracle = fine_interior_bruteforce(p, b)
            assert oracle.vertices == f.vertices
