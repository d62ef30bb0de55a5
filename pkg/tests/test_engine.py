import numpy as np
import pytest

from markoff_lab import engine as eng
from markoff_lab.conics import slice_orbit_partition, TWO_VIETA
from markoff_lab.small_orbits import expected_small_orbits
from markoff_lab.surface import (
    GAMMA,
    GAMMA_H,
    GAMMA_PRIME,
    Params,
    on_surface,
    params_mod,
)


def build(a, b, c, d, p, selector=GAMMA, workers=1):
    pm = params_mod(a, b, c, d, p)
    index = eng.enumerate_points(pm, workers=workers)
    labeling = eng.components(index, selector)
    return pm, index, labeling


def test_enumeration_matches_triple_loop():
    pm = params_mod(0, 0, 0, 0, 5)
    index = eng.enumerate_points(pm)
    brute = sorted(
        (x, y, z)
        for x in range(5) for y in range(5) for z in range(5)
        if on_surface((x, y, z), pm)
    )
    got = sorted(zip(index.xs.tolist(), index.ys.tolist(), index.zs.tolist()))
    assert got == brute
    assert index.total == len(brute) == 41


def test_every_enumerated_point_on_surface():
    for (a, b, c, d, p) in [(1, 2, 3, 5, 11), (2, 2, 0, 3, 13), (0, 0, 0, 3, 17)]:
        pm = params_mod(a, b, c, d, p)
        index = eng.enumerate_points(pm)
        for i in range(index.total):
            assert on_surface(index.point_of(i), pm)


def test_cell_counts_sum_identity():
    pm = params_mod(3, 1, 4, 1, 23)
    index = eng.enumerate_points(pm)
    assert int(index.counts.astype(np.int64).sum()) == index.total


def test_ids_are_lex_ordered():
    pm = params_mod(1, 2, 3, 5, 13)
    index = eng.enumerate_points(pm)
    pts = list(zip(index.xs.tolist(), index.ys.tolist(), index.zs.tolist()))
    assert pts == sorted(pts)
    for i, pt in enumerate(pts):
        assert index.lookup_point(pt) == i


def test_prime_cap():
    with pytest.raises(ValueError):
        eng.enumerate_points(params_mod(0, 0, 0, 0, 46349))


def test_figure_two_component():
    # the 5-point exceptional orbit of (0,-1,-1,0), present for every p
    for p in (7, 11, 13):
        pm, index, labeling = build(0, -1, -1, 0, p)
        cens = eng.census(index, labeling, threshold=10)
        fig2 = {(1, p - 1, p - 1), (0, p - 1, p - 1), (0, 0, p - 1), (0, 0, 0),
                (0, p - 1, 0)}
        five = [c for c in cens.components if c.size == 5]
        assert len(five) == 1
        label = labeling.labels[index.lookup_point((0, 0, 0))]
        ids = np.where(labeling.labels == label)[0]
        pts = {index.point_of(int(i)) for i in ids}
        assert pts == fig2
        assert five[0].tag == eng.EXCEPTIONAL


def test_markoff_census_shape():
    pm, index, labeling = build(0, 0, 0, 0, 5)
    cens = eng.census(index, labeling, threshold=10)
    assert [c.tag for c in cens.components] == [eng.GIANT, "type1"]
    assert cens.components[1].rep == (0, 0, 0)
    assert cens.verdict == "main-theorem-shape"


def test_component_count_monotone_in_group():
    for (a, b, c, d, p) in [(0, 0, 0, 0, 11), (2, 2, 2, 7, 13), (0, 0, 0, 3, 17)]:
        pm = params_mod(a, b, c, d, p)
        index = eng.enumerate_points(pm)
        n_gamma = eng.components(index, GAMMA).n_components
        n_h = eng.components(index, GAMMA_H).n_components
        n_prime = eng.components(index, GAMMA_PRIME).n_components
        assert n_prime <= n_h <= n_gamma


def test_census_small_components_match_expected_orbits():
    pm, index, labeling = build(1, 1, 1, 7, 13)
    cens = eng.census(index, labeling, threshold=10)
    expected = {o.point_set(): o.kind for o in expected_small_orbits(pm)}
    for comp in cens.components:
        if comp.size <= 10 and comp.tag not in (eng.EXCEPTIONAL,):
            label = labeling.labels[index.lookup_point(comp.rep)]
            ids = np.where(labeling.labels == label)[0]
            pts = frozenset(index.point_of(int(i)) for i in ids)
            assert expected[pts] == comp.tag


def test_census_sizes_sum_to_total():
    for (a, b, c, d, p) in [(0, 0, 0, 0, 29), (2, 2, 0, 3, 31), (0, 0, 0, 4, 13)]:
        pm, index, labeling = build(a, b, c, d, p)
        cens = eng.census(index, labeling)
        assert sum(c.size for c in cens.components) == index.total


def test_components_contain_their_slice_blocks():
    # every two-involution slice block through a point stays inside the
    # point's component
    pm, index, labeling = build(1, 2, 3, 5, 11)
    rng = np.random.default_rng(5)
    ids = rng.choice(index.total, size=min(25, index.total), replace=False)
    for i in ids:
        pt = index.point_of(int(i))
        for axis in (1, 2, 3):
            v = pt[axis - 1]
            for block in slice_orbit_partition(axis, v, pm, TWO_VIETA):
                if pt in block:
                    labels = {int(labeling.labels[index.lookup_point(q)]) for q in block}
                    assert labels == {int(labeling.labels[i])}


def test_point_count_sane():
    for (a, b, c, d, p) in [(0, 0, 0, 0, 101), (1, 2, 3, 5, 97), (2, 2, 2, 7, 89)]:
        pm = params_mod(a, b, c, d, p)
        index = eng.enumerate_points(pm)
        assert eng.point_count_sane(index)
        assert abs(index.total - p * p) <= 10 * p


def test_worker_determinism():
    for workers in (1, 2, 8):
        pm, index, labeling = build(0, 0, 0, 0, 101, workers=workers)
        cens = eng.census(index, labeling, threshold=50)
        if workers == 1:
            baseline = cens.to_json()
        else:
            assert cens.to_json() == baseline


def test_gamma_prime_comparison_consistency():
    for (a, b, c, d, p) in [(0, 0, 0, 0, 13), (2, 2, 2, 7, 13), (0, 0, 0, 3, 17)]:
        pm = params_mod(a, b, c, d, p)
        index = eng.enumerate_points(pm)
        gamma = eng.components(index, GAMMA)
        gprime = eng.components(index, GAMMA_PRIME)
        rec = eng.gamma_prime_comparison(index, gamma, gprime, threshold=10)
        if rec["gamma_transitive_on_bulk"]:
            assert rec["gamma_prime_transitive_on_bulk"]


def test_equal_triple_merges_under_gamma_prime():
    # three of the four large invariant sets join under the full group
    pm = params_mod(2, 2, 2, 7, 13)
    index = eng.enumerate_points(pm)
    gamma = eng.components(index, GAMMA)
    gprime = eng.components(index, GAMMA_PRIME)
    big_gamma = int((gamma.sizes > 4).sum())
    big_gprime = int((gprime.sizes > 4).sum())
    assert big_gamma >= 4
    assert big_gprime < big_gamma


def test_min_order_check_markoff():
    pm, index, labeling = build(0, 0, 0, 0, 101)
    rec = eng.min_order_check(index, labeling, Params(0, 0, 0, 0), threshold=100)
    assert rec["passed"]
    assert rec["min_order"] >= rec["bound"]
    assert rec["bound"] == pytest.approx((np.log(101) / np.log(20)) ** (1 / 3))


def test_min_order_trivial_when_bound_small():
    pm, index, labeling = build(1, 2, 3, 5, 7)
    rec = eng.min_order_check(index, labeling, Params(1, 2, 3, 5), threshold=100)
    assert rec["bound"] < 2
    assert rec["passed"]


def test_exceptional_orbit_of_0003():
    # for p = +/-1 mod 8 the surface with D = 3 carries a 12-point orbit
    # whose coordinates live in {+/-1, 0, +/-sqrt(2)}; observed size is 12
    # (two hexagons joined by four cross edges)
    for p in (7, 17, 23):
        pm = params_mod(0, 0, 0, 3, p)
        s = pm.field.sqrt(2)
        assert s is not None
        index = eng.enumerate_points(pm)
        labeling = eng.components(index, GAMMA)
        label = labeling.labels[index.lookup_point((1, s, s))]
        ids = np.where(labeling.labels == label)[0]
        pts = {index.point_of(int(i)) for i in ids}
        m1 = p - 1
        expected = {
            (1, s, s), (1, 0, s), (1, 0, p - s), (1, p - s, p - s), (1, p - s, 0),
            (1, s, 0), (m1, s, p - s), (m1, 0, p - s), (m1, 0, s),
            (m1, p - s, s), (m1, p - s, 0), (m1, s, 0),
        }
        assert pts == expected
        assert len(pts) == 12


def test_cayley_cubic_shape_is_not_main_theorem():
    # the excluded surface: many middling orbits, no giant
    pm = params_mod(0, 0, 0, 4, 7)
    index = eng.enumerate_points(pm)
    labeling = eng.components(index, GAMMA)
    assert sorted(labeling.sizes.tolist(), reverse=True) == \
        [8, 8, 8, 4, 4, 4, 4, 2, 2, 2, 1, 1, 1, 1]
    assert eng.census(index, labeling, threshold=12).verdict == "other"
    assert eng.census(index, labeling, threshold=4).verdict == "multi-giant"


def test_workers_env_default(monkeypatch):
    monkeypatch.setenv("MARKOFF_LAB_WORKERS", "3")
    assert eng.default_workers() == 3
    monkeypatch.setenv("MARKOFF_LAB_WORKERS", "bogus")
    assert eng.default_workers() == 1
    monkeypatch.delenv("MARKOFF_LAB_WORKERS")
    assert eng.default_workers() == 1
