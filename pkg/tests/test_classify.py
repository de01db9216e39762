import itertools

import pytest

from finepoly.catalog import cube, delta2, simplex, unit_fraction_simplex, width2_root
from finepoly.classify import (
    DedupStore,
    classify_polygons,
    classify_weakly_sporadic_width1,
    is_sporadic,
    minkowski_summand_pairs,
    projects_to_2delta2,
    reflexive_polygons,
    subpolytope_classes,
)
from finepoly.normal_form import affine_normal_form, are_equivalent
from finepoly.polytope import Polytope, minkowski_sum


def test_subpolytopes_of_delta2():
    assert len(subpolytope_classes(delta2())) == 1


def test_subpolytopes_of_unit_square():
    classes = subpolytope_classes(cube(2))
    assert len(classes) == 2


def test_subpolytopes_of_2delta2_against_subset_oracle():
    # oracle: hulls of all subsets of the 6 lattice points, up to equivalence
    pts = delta2(2).lattice_points()
    oracle = {}
    for size in range(3, len(pts) + 1):
        for subset in itertools.combinations(pts, size):
            p = Polytope(subset)
            if p.intrinsic_dim != 2:
                continue
            nf = affine_normal_form(p)
            oracle[nf.digest] = p
    classes = subpolytope_classes(delta2(2))
    assert {affine_normal_form(c).digest for c in classes} == set(oracle)


def test_dedup_store_idempotent_and_logged(tmp_path):
    log = tmp_path / "classes.log"
    store = DedupStore(log_path=str(log))
    store.open_log()
    classes = subpolytope_classes(delta2(2), store=store)
    store.close()
    # replay gives the same class set and no pending work
    store2 = DedupStore(log_path=str(log))
    store2.open_log(resume=True)
    assert set(store2.matrices()) == {affine_normal_form(c).digest for c in classes}
    classes2 = subpolytope_classes(delta2(2), store=store2)
    store2.close()
    assert {c.vertices for c in classes2} == {c.vertices for c in classes}


def test_digest_collision_detection():
    store = DedupStore()
    store.insert("abc", ((1,),))
    with pytest.raises(Exception):
        store.insert("abc", ((2,),))


def test_classify_polygons():
    records = classify_polygons()
    assert len(records) == 4
    mus = sorted(str(r.mu) for r in records)
    assert mus == ["2", "2", "3", "3/2"]
    reps = [Polytope(list(zip(*r.vertices))) for r in records]
    assert any(are_equivalent(p, Polytope([(0, 0), (2, 0), (0, 1)])) for p in reps)
    assert any(are_equivalent(p, delta2(2)) for p in reps)


def test_projects_to_2delta2():
    assert projects_to_2delta2(width2_root())
    assert projects_to_2delta2(simplex(3, 2))
    assert not projects_to_2delta2(unit_fraction_simplex(3, 3, 3))
    with pytest.raises(ValueError, match="width-1"):
        projects_to_2delta2(cube(3))


def test_is_sporadic():
    assert is_sporadic(unit_fraction_simplex(2, 3, 6))
    assert not is_sporadic(cube(3))  # width 1
    assert not is_sporadic(simplex(3, 2))  # projects to 2*Delta_2


def test_reflexive_polygons_count():
    polys = reflexive_polygons()
    assert len(polys) == 16
    from finepoly.fine import reflexive_check

    for p in polys:
        assert reflexive_check(p)
        assert len(p.lattice_points(interior_only=True)) == 1


def test_minkowski_summand_pairs_3delta2():
    pairs = minkowski_summand_pairs(delta2(3))
    keys = {(a.vertices, b.vertices) for a, b in pairs}
    point = Polytope([(0, 0)])
    assert (delta2().vertices, delta2(2).vertices) in keys
    assert (delta2(3).vertices, point.vertices) in keys
    for a, b in pairs:
        assert minkowski_sum(a, b) == delta2(3)


def test_minkowski_summand_pairs_square():
    pairs = minkowski_summand_pairs(cube(2))
    seg_pairs = [
        (a, b) for a, b in pairs if a.intrinsic_dim == 1 and b.intrinsic_dim == 1
    ]
    assert len(seg_pairs) == 2  # horizontal x vertical, both orders


def test_width1_pipeline_breakdown():
    records = classify_weakly_sporadic_width1()
    assert len(records) == 34
    by_index = {}
    for r in records:
        key = r.gorenstein.index if r.gorenstein else None
        by_index[key] = by_index.get(key, 0) + 1
    assert by_index == {2: 30, 3: 2, 4: 1, None: 1}
    exceptional = [r for r in records if r.gorenstein is None]
    assert str(exceptional[0].mu) == "5/2"
    assert all(r.width == 1 for r in records)
    assert all(r.weakly_sporadic and not r.sporadic for r in records)
