"""Named polytopes used throughout the tests, the verifier and the pipelines."""

from __future__ import annotations

import itertools
from math import gcd, lcm

from .polytope import Polytope, pyramid


def simplex(d, scale=1):
    """scale * standard simplex."""
    pts = [(0,) * d] + [
        tuple(scale if j == i else 0 for j in range(d)) for i in range(d)
    ]
    return Polytope(pts)


def delta2(scale=1):
    return simplex(2, scale)


def cube(d, side=1):
    return Polytope(list(itertools.product(range(side + 1), repeat=d)))


def box(*sides):
    return Polytope(list(itertools.product(*(range(s + 1) for s in sides))))


def prism(polygon, height):
    """polygon x [0, height] one dimension up."""
    pts = [v + (0,) for v in polygon.vertices] + [v + (height,) for v in polygon.vertices]
    return Polytope(pts)


def lawrence_prism(*heights):
    """Prism over the standard simplex with vertical edge heights h_i."""
    d = len(heights)
    base = [(0,) * d] + [
        tuple(1 if j == i else 0 for j in range(d - 1)) + (0,) for i in range(d - 1)
    ]
    tops = []
    for i, h in enumerate(heights):
        if i == 0:
            v = (0,) * (d - 1)
        else:
            v = tuple(1 if j == i - 1 else 0 for j in range(d - 1))
        tops.append(v + (h,))
    return Polytope(base + tops)


def unit_fraction_simplex(*ks):
    """conv(0, k_1 e_1, ..., k_d e_d) for a unit-fraction partition (k_i >= 2)."""
    d = len(ks)
    k = lcm(*ks)
    if sum(k // ki for ki in ks) != k:
        raise ValueError("not a unit fraction partition of 1")
    pts = [(0,) * d] + [tuple(ks[i] if j == i else 0 for j in range(d)) for i in range(d)]
    return Polytope(pts)


def empty_simplex_pq(p, q):
    """The empty 3-simplex conv(0, e1, e3, (p, q, 1)) of normalized volume q."""
    if gcd(p, q) != 1:
        raise ValueError("p and q must be coprime")
    return Polytope([(0, 0, 0), (1, 0, 0), (0, 0, 1), (p, q, 1)])


def counterexample_simplex():
    """The width-2 simplex whose half-integral middle slice breaks slicing."""
    return Polytope([(-1, -1, -1), (1, 0, -1), (0, 1, -1), (0, 0, 1)])


def hollow_4simplex():
    """Maximal hollow 4-simplex with minimal multiplier 1 but mu_max = 4/3."""
    return Polytope([(-4, -7, -9, -5), (0, 1, 0, 0), (1, 0, 0, 0), (2, 5, 9, 5), (0, 1, 0, 3)])


def sporadic_roots():
    """The three maximal sporadic simplices with their provenance labels."""
    return (
        ("delta_3_3_3", unit_fraction_simplex(3, 3, 3)),
        ("delta_2_4_4", unit_fraction_simplex(2, 4, 4)),
        ("delta_2_3_6", unit_fraction_simplex(2, 3, 6)),
    )


def width2_root():
    """The prism 2 Delta_2 x [0,4] containing every weakly sporadic width-2 class."""
    return prism(delta2(2), 4)


def pyr_2delta2():
    return pyramid(delta2(2))


def named_corpus():
    """Small zoo of named polytopes exercised by the property harness."""
    out = {
        "delta2": delta2(),
        "2delta2": delta2(2),
        "3delta2": delta2(3),
        "4delta2": delta2(4),
        "delta3": simplex(3),
        "2delta3": simplex(3, 2),
        "4delta3": simplex(3, 4),
        "unit_square": cube(2),
        "unit_cube": cube(3),
        "box_2_4": box(2, 4),
        "p11": lawrence_prism(1, 1),
        "p20": lawrence_prism(2, 0),
        "p110": lawrence_prism(1, 1, 0),
        "p200": lawrence_prism(2, 0, 0),
        "2p200": lawrence_prism(2, 0, 0).dilate(2),
        "pyr_2delta2": pyr_2delta2(),
        "width2_root": width2_root(),
        "delta_3_3_3": unit_fraction_simplex(3, 3, 3),
        "delta_2_4_4": unit_fraction_simplex(2, 4, 4),
        "delta_2_3_6": unit_fraction_simplex(2, 3, 6),
        "counterexample": counterexample_simplex(),
    }
    for q in range(1, 8):
        for p in range(1, q + 1):
            if gcd(p, q) == 1:
                out[f"delta_pq_{p}_{q}"] = empty_simplex_pq(p, q)
    return out
