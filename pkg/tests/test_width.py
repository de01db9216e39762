import random
from fractions import Fraction

import pytest

from finepoly.catalog import box, cube, delta2, empty_simplex_pq, unit_fraction_simplex
from finepoly.linalg import dot
from finepoly.normal_form import random_unimodular
from finepoly.polytope import Polytope
from finepoly.width import direction_width, inscribed_box_radius, lattice_width


def test_box_radius_2delta2():
    center, t = inscribed_box_radius(delta2(2))
    assert t == Fraction(1, 2)
    assert center == (Fraction(1, 2), Fraction(1, 2))


def test_box_radius_cube():
    center, t = inscribed_box_radius(cube(3))
    assert t == Fraction(1, 2)
    assert center == (Fraction(1, 2),) * 3


def test_box_radius_rectangle_tiebreak():
    center, t = inscribed_box_radius(box(2, 4))
    assert t == 1
    assert center == (1, 1)  # lexicographically least optimal vertex


def test_box_radius_lower_dim_rejected():
    with pytest.raises(ValueError):
        inscribed_box_radius(Polytope([(0, 0), (1, 1)]))


def test_width_cube():
    cert = lattice_width(cube(3))
    assert cert.width == 1
    assert set(cert.directions) == {
        (1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1),
    }


def test_width_2delta2():
    cert = lattice_width(delta2(2))
    assert cert.width == 2
    assert set(cert.directions) == {
        (1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1),
    }


def test_width_empty_simplices_is_one():
    for p, q in [(1, 2), (1, 3), (2, 5), (3, 7)]:
        assert lattice_width(empty_simplex_pq(p, q)).width == 1


def test_certificate_closed_under_negation():
    for p in [delta2(2), cube(3), unit_fraction_simplex(2, 3, 6)]:
        cert = lattice_width(p)
        dirs = set(cert.directions)
        assert dirs == {tuple(-x for x in n) for n in dirs}
        for n in dirs:
            assert direction_width(p, n) == cert.width


def test_width_unimodular_invariance():
    rng = random.Random(9)
    for p in [delta2(2), unit_fraction_simplex(3, 3, 3), cube(3)]:
        cert = lattice_width(p)
        for _ in range(5):
            t = random_unimodular(p.ambient_dim, rng)
            q = p.apply_affine(t, tuple(rng.randrange(-3, 4) for _ in range(p.ambient_dim)))
            cert_q = lattice_width(q)
            assert cert_q.width == cert.width
            assert len(cert_q.directions) == len(cert.directions)
