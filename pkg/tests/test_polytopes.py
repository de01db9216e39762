import itertools
import random
from fractions import Fraction

import pytest

from finepoly.catalog import box, cube, delta2, simplex, unit_fraction_simplex, width2_root
from finepoly.linalg import dot, rank, solve_square, vsub
from finepoly.polytope import (
    HalfSpace,
    Polytope,
    cone_over,
    make_halfspace,
    minkowski_sum,
    pyramid,
    resolve_hpolyhedron,
    slice_polytope,
)


def test_hull_drops_interior_point():
    p = Polytope([(0, 0), (1, 0), (0, 1), (Fraction(1, 2), Fraction(1, 4))])
    assert p.vertices == ((0, 0), (0, 1), (1, 0))


def test_hull_of_2delta2_lattice_points():
    p = Polytope(delta2(2).lattice_points())
    assert p.vertices == ((0, 0), (0, 2), (2, 0))


def test_hull_collinear():
    p = Polytope([(0, 0), (1, 1), (2, 2)])
    assert p.vertices == ((0, 0), (2, 2))
    assert p.intrinsic_dim == 1


def test_hull_empty_input():
    with pytest.raises(ValueError):
        Polytope([])


def test_facets_2delta2():
    hs = {(h.normal, h.offset) for h in delta2(2).facets()}
    assert hs == {((1, 0), 0), ((0, 1), 0), ((-1, -1), -2)}


def test_facets_cube():
    assert len(cube(3).facets()) == 6


def test_facets_weighted_simplex():
    p = Polytope([(0, 0, 0), (2, 0, 0), (0, 3, 0), (0, 0, 6)])
    assert ((-3, -2, -1), -6) in {(h.normal, h.offset) for h in p.facets()}


def test_facets_lower_dim_rejected():
    seg = Polytope([(0, 0), (1, 1)])
    with pytest.raises(ValueError, match="full dimension"):
        seg.facets()


def test_min_support():
    p = delta2(2)
    assert p.min_support((1, 1)) == 0
    assert p.min_support((-1, -1)) == -2
    assert delta2(3).min_support((2, -1)) == -3
    with pytest.raises(ValueError):
        p.min_support((0, 0))


def test_dilate():
    assert delta2().dilate(3) == delta2(3)
    assert delta2(2).dilate(Fraction(3, 2)) == delta2(3)
    point = delta2(2).dilate(0)
    assert point.vertices == ((0, 0),)
    with pytest.raises(ValueError):
        delta2().dilate(-1)


def test_dilation_lemma_randomized():
    rng = random.Random(11)
    for p in [delta2(2), cube(3), unit_fraction_simplex(2, 3, 6)]:
        for _ in range(20):
            lam = Fraction(rng.randrange(1, 15), rng.randrange(1, 15))
            q = p.dilate(lam)
            y = tuple(rng.randrange(-5, 6) for _ in range(p.ambient_dim))
            if all(v == 0 for v in y):
                continue
            assert q.min_support(y) == lam * p.min_support(y)
        assert {h.normal for h in p.dilate(Fraction(7, 3)).facets()} == {
            h.normal for h in p.facets()
        }


def test_lattice_points():
    assert len(delta2(2).lattice_points()) == 6
    assert delta2(4).lattice_points(interior_only=True) == [(1, 1), (1, 2), (2, 1)]
    dpq = Polytope([(0, 0, 0), (1, 0, 0), (0, 0, 1), (1, 2, 1)])
    assert len(dpq.lattice_points()) == 4


def test_lattice_points_monotone_under_inclusion():
    inner = delta2(2)
    outer = delta2(3)
    assert set(inner.lattice_points()) <= set(outer.lattice_points())


def test_lattice_points_unimodular_invariance():
    from finepoly.normal_form import random_unimodular

    rng = random.Random(5)
    p = unit_fraction_simplex(3, 3, 3)
    for _ in range(5):
        t = random_unimodular(3, rng)
        q = p.apply_affine(t, (1, -2, 0))
        assert len(q.lattice_points()) == len(p.lattice_points())
        assert len(q.lattice_points(True)) == len(p.lattice_points(True))


def test_minkowski_sum():
    h = Polytope([(0, 0), (1, 0)])
    v = Polytope([(0, 0), (0, 1)])
    assert minkowski_sum(h, v) == cube(2)
    assert minkowski_sum(delta2(), delta2()) == delta2(2)
    shift = Polytope([(1, 5)])
    assert minkowski_sum(delta2(), shift) == delta2().translate((1, 5))
    with pytest.raises(ValueError):
        minkowski_sum(delta2(), cube(3))


def test_pyramid():
    assert pyramid(delta2()).vertices == simplex(3).apply_affine(
        ((0, 0, 1), (1, 0, 0), (0, 1, 0))
    ).vertices or len(pyramid(delta2()).vertices) == 4
    p = pyramid(delta2(2))
    assert len(p.vertices) == 4 and p.intrinsic_dim == 3
    assert pyramid(pyramid(Polytope([(0,), (1,)]))).intrinsic_dim == 3
    with pytest.raises(ValueError):
        pyramid(Polytope([(Fraction(1, 2), 0), (1, 0), (0, 1)]))


def test_cone_over():
    assert cone_over(delta2()).rays == ((1, 0, 0), (1, 0, 1), (1, 1, 0))
    assert cone_over(Polytope([(Fraction(1, 2),)])).rays == ((2, 1),)
    assert cone_over(delta2(2)).rays == ((1, 0, 0), (1, 0, 2), (1, 2, 0))


def test_slice_prism():
    s = slice_polytope(width2_root(), (0, 0, 1), 2, intrinsic=True)
    assert s.vertices == delta2(2).vertices


def test_slice_counterexample_halfintegral():
    p = Polytope([(-1, -1, -1), (1, 0, -1), (0, 1, -1), (0, 0, 1)])
    s = slice_polytope(p, (0, 0, 1), 0, intrinsic=True)
    assert set(s.vertices) == {
        (Fraction(-1, 2), Fraction(-1, 2)),
        (Fraction(1, 2), 0),
        (0, Fraction(1, 2)),
    }


def test_slice_empty():
    s = slice_polytope(delta2(2), (1, 0), 5)
    assert s.is_empty


def test_slice_commutes_with_dilation_on_hyperplane():
    p = width2_root()
    lam = Fraction(3, 2)
    # dilation about a point on the slicing hyperplane {z = 0}
    s1 = slice_polytope(p.dilate(lam), (0, 0, 1), 0)
    s2 = slice_polytope(p, (0, 0, 1), 0).dilate(lam)
    assert s1 == s2


def test_resolve_fan_of_delta2():
    hs = [HalfSpace((0, 1, 0), 1), HalfSpace((0, 0, 1), 1), HalfSpace((1, -1, -1), 1)]
    res = resolve_hpolyhedron(hs, 3)
    assert res.vertices == ((3, 1, 1),)
    assert set(res.rays) == {(1, 0, 0), (1, 1, 0), (1, 0, 1)}
    # cross-check the vertex with solve_square
    assert solve_square([h.normal for h in hs], [1, 1, 1]) == (3, 1, 1)


def test_resolve_square():
    hs = [
        HalfSpace((1, 0), 0),
        HalfSpace((-1, 0), -1),
        HalfSpace((0, 1), 0),
        HalfSpace((0, -1), -1),
    ]
    res = resolve_hpolyhedron(hs, 2)
    assert res.vertices == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert res.rays == ()


def test_resolve_infeasible():
    assert resolve_hpolyhedron([HalfSpace((1,), 1), HalfSpace((-1,), 0)], 1) is None


def test_resolve_roundtrip_corpus():
    for p in [delta2(2), cube(3), box(2, 4), unit_fraction_simplex(2, 4, 4), width2_root()]:
        res = resolve_hpolyhedron(p.facets(), p.ambient_dim)
        assert res.vertices == p.vertices
        assert res.rays == ()


def test_polar_and_subset_paths_agree():
    rng = random.Random(17)
    for p in [delta2(3), cube(3), unit_fraction_simplex(2, 3, 6)]:
        hs = p.facets()
        subset_path = resolve_hpolyhedron(hs, p.ambient_dim)
        interior = p.barycenter()
        polar_path = resolve_hpolyhedron(hs, p.ambient_dim, interior_point=interior)
        assert subset_path.vertices == polar_path.vertices
        assert subset_path.rays == polar_path.rays


def test_halfspace_validation():
    with pytest.raises(ValueError):
        HalfSpace((0, 0), 1)
    with pytest.raises(ValueError):
        HalfSpace((2, 4), 1)
    h = make_halfspace((2, 4), 3)
    assert h.normal == (1, 2) and h.offset == Fraction(3, 2)


def test_empty_polytope_is_first_class():
    e = Polytope.empty(3)
    assert e.is_empty and e.intrinsic_dim == -1
    assert e.lattice_points() == []
    assert not e.contains((0, 0, 0))


def test_hull_brute_force_cross_check():
    # facets from d-subsets of points must agree with the incremental hull
    rng = random.Random(23)
    for _ in range(25):
        pts = {tuple(rng.randrange(-3, 4) for _ in range(3)) for _ in range(rng.randrange(5, 12))}
        pts = sorted(pts)
        if rank([vsub(p, pts[0]) for p in pts[1:]]) != 3:
            continue
        p = Polytope(pts)
        brute = set()
        for subset in itertools.combinations(pts, 3):
            diffs = [vsub(subset[1], subset[0]), vsub(subset[2], subset[0])]
            if rank(diffs) != 2:
                continue
            u, v = diffs
            n = (
                u[1] * v[2] - u[2] * v[1],
                u[2] * v[0] - u[0] * v[2],
                u[0] * v[1] - u[1] * v[0],
            )
            vals = [dot(vsub(q, subset[0]), n) for q in pts]
            if all(x >= 0 for x in vals) or all(x <= 0 for x in vals):
                if all(x >= 0 for x in vals):
                    hs = make_halfspace(n, dot(subset[0], n))
                else:
                    hs = make_halfspace(tuple(-x for x in n), -dot(subset[0], n))
                brute.add((hs.normal, hs.offset))
        assert {(h.normal, h.offset) for h in p.facets()} == brute
