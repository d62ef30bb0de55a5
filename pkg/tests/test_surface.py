import random

import pytest

from markoff_lab.surface import (
    ALL_TRANSFORMS,
    GAMMA,
    GAMMA_H,
    GAMMA_PRIME,
    Params,
    UnavailableMove,
    apply_move,
    canonical_params,
    cluster_lift,
    degeneracy_class,
    degeneracy_class_mod,
    equivalents,
    generators,
    move_available,
    on_surface,
    params_mod,
    quartic_discriminant,
    slice_invariant,
    slice_quartic,
)


def all_points(pm):
    p = pm.p
    return [
        (x, y, z)
        for x in range(p) for y in range(p) for z in range(p)
        if on_surface((x, y, z), pm)
    ]


def test_on_surface_examples():
    assert on_surface((0, 0, 0), params_mod(1, 2, 3, 0, 7))
    assert not on_surface((0, 0, 0), params_mod(1, 2, 3, 5, 7))
    assert on_surface((3, 3, 3), params_mod(0, 0, 0, 0, 101))
    assert on_surface((1, 0, 2), params_mod(2, 2, 0, 3, 101))


def test_apply_move_examples():
    pm = params_mod(0, 0, 0, 0, 101)
    assert apply_move("v1", (3, 3, 3), pm) == (6, 3, 3)
    pm2 = params_mod(2, 2, 0, 3, 101)
    assert apply_move("v3", (1, 0, 2), pm2) == (1, 0, 99)


def test_neg_yz_formula():
    pm = params_mod(4, 0, 0, 1, 13)
    for pt in all_points(pm)[:40]:
        x, y, z = pt
        assert apply_move("neg_yz", pt, pm) == (x, (-y) % 13, (-z) % 13)


def test_unavailable_move_raises():
    pm = params_mod(1, 2, 3, 0, 11)
    with pytest.raises(UnavailableMove):
        apply_move("neg_xy", (0, 0, 0), pm)
    with pytest.raises(UnavailableMove):
        apply_move("tau_xy", (0, 0, 0), pm)


def test_moves_are_involutions_and_preserve_surface():
    # exhaustive over all points for several parameter sets, p <= 50
    cases = [(0, 0, 0, 0, 5), (2, 2, 0, 3, 7), (1, 2, 3, 5, 11),
             (0, -1, -1, 0, 13), (2, 2, 2, 7, 17), (0, 0, 0, 3, 23)]
    for a, b, c, d, p in cases:
        pm = params_mod(a, b, c, d, p)
        gens = generators(pm, GAMMA_PRIME)
        for pt in all_points(pm):
            for m in gens:
                img = apply_move(m, pt, pm)
                assert on_surface(img, pm), (m, pt)
                assert apply_move(m, img, pm) == pt, (m, pt)


def test_generators_examples():
    pm = params_mod(0, 0, 0, 5, 11)
    assert set(generators(pm, GAMMA_PRIME)) == {
        "v1", "v2", "v3", "neg_xy", "neg_xz", "neg_yz",
        "tau_xy", "tau_xz", "tau_yz",
    }
    pm2 = params_mod(2, 2, 0, 3, 11)
    assert set(generators(pm2, GAMMA_PRIME)) == {"v1", "v2", "v3", "tau_xy"}
    assert generators(pm2, GAMMA) == ("v1", "v2", "v3")
    assert set(generators(params_mod(0, 0, 7, 3, 11), GAMMA_H)) == {"v1", "v2", "v3", "neg_xy"}
    # opposite pair enables the negated transposition
    pm3 = params_mod(3, -3, 1, 0, 11)
    assert "negtau_xy" in generators(pm3, GAMMA_PRIME)
    assert "tau_xy" not in generators(pm3, GAMMA_PRIME)


def test_generator_sets_nested():
    random.seed(0)
    for _ in range(50):
        pm = params_mod(*(random.randrange(11) for _ in range(4)), 11)
        g = set(generators(pm, GAMMA))
        gh = set(generators(pm, GAMMA_H))
        gp = set(generators(pm, GAMMA_PRIME))
        assert g <= gh <= gp


def test_equivalents_examples():
    assert all(q == Params(0, 0, 0, 4) for q, _ in equivalents(Params(0, 0, 0, 4)))
    qs = {q for q, _ in equivalents(Params(1, 2, 3, 5))}
    assert len(qs) == 24
    assert Params(2, 1, 3, 5) in qs
    assert Params(-1, -2, 3, 5) in qs
    assert all(q.D == 5 for q in qs)
    assert Params(0, 2, 2, 3) in {q for q, _ in equivalents(Params(2, 2, 0, 3))}


def test_transform_point_commutes_with_vieta():
    # T . V_{perm(i)} = V_i . T as maps between the two surfaces, p <= 31
    for (a, b, c, d, p) in [(1, 2, 3, 5, 11), (2, 2, 0, 3, 13), (0, -1, -1, 0, 31)]:
        pm = params_mod(a, b, c, d, p)
        pts = all_points(pm)[:25]
        for t in ALL_TRANSFORMS:
            target = t.apply_params_mod(pm)
            for i in range(3):
                src_move = f"v{t.perm[i] + 1}"
                dst_move = f"v{i + 1}"
                for pt in pts:
                    lhs = t.apply_point(apply_move(src_move, pt, pm), p)
                    rhs = apply_move(dst_move, t.apply_point(pt, p), target)
                    assert lhs == rhs, (t, src_move, dst_move, pt)


def test_transform_carries_points_between_surfaces():
    pm = params_mod(1, 2, 3, 5, 13)
    for t in ALL_TRANSFORMS:
        target = t.apply_params_mod(pm)
        for pt in all_points(pm)[:30]:
            assert on_surface(t.apply_point(pt, 13), target)


def test_transform_inverse_and_compose():
    random.seed(1)
    for t in ALL_TRANSFORMS:
        inv = t.inverse()
        for _ in range(5):
            v = tuple(random.randrange(17) for _ in range(3))
            assert inv.apply_point(t.apply_point(v, 17), 17) == v
    a, b = random.choice(ALL_TRANSFORMS), random.choice(ALL_TRANSFORMS)
    v = (3, 5, 7)
    assert a.compose(b).apply_point(v, 17) == a.apply_point(b.apply_point(v, 17), 17)


def test_canonical_params_idempotent_and_invariant():
    random.seed(2)
    for _ in range(1000):
        q = Params(*(random.randrange(-10, 11) for _ in range(4)))
        canon, t = canonical_params(q)
        assert t.apply_params(q) == canon
        assert canonical_params(canon)[0] == canon
        # all equivalents share the canonical form
        q2, _ = random.choice(equivalents(q))
        assert canonical_params(q2)[0] == canon
    assert canonical_params(Params(0, 0, 0, 4))[0] == Params(0, 0, 0, 4)


def test_degeneracy_examples():
    d = degeneracy_class(Params(0, 0, 0, 4))
    assert d.degenerate and d.equal_triple
    assert not degeneracy_class(Params(0, 0, 0, 0)).degenerate
    d2 = degeneracy_class(Params(2, 2, 0, 3))
    assert d2.degenerate and not d2.equal_triple
    assert degeneracy_class(Params(4, 4, -2, -4)).degenerate


def test_degeneracy_invariant_under_equivalence():
    random.seed(3)
    for _ in range(300):
        q = Params(*(random.randrange(-8, 9) for _ in range(4)))
        d = degeneracy_class(q).degenerate
        for q2, _ in equivalents(q):
            assert degeneracy_class(q2).degenerate == d


def test_degenerate_implies_discriminant_zero():
    # random degenerate quadruples: A = 2a, B = A, D = 2C + 4 - a^2, then
    # scrambled through a random equivalence
    random.seed(4)
    for _ in range(10_000):
        a = random.randrange(-15, 16)
        c = random.randrange(-15, 16)
        q = Params(2 * a, 2 * a, c, 2 * c + 4 - a * a)
        q = random.choice(equivalents(q))[0]
        assert quartic_discriminant(q) == 0


def test_degeneracy_mod_p_differs_from_integral():
    # (2,0,0,3) is nondegenerate over Z but degenerate mod 5
    q = Params(2, 0, 0, 3)
    assert not degeneracy_class(q).degenerate
    assert degeneracy_class_mod(params_mod(2, 0, 0, 3, 5)).degenerate
    assert not degeneracy_class_mod(params_mod(2, 0, 0, 3, 7)).degenerate


def test_discriminant_formula_on_axis():
    for k in range(12):
        assert quartic_discriminant(Params(0, 0, 0, k)) == 64 * k * (k - 4) ** 4
    assert quartic_discriminant(Params(0, 0, 0, 4)) == 0
    assert quartic_discriminant(Params(0, 0, 0, 1)) == 5184


def test_slice_quartic_examples():
    pm = params_mod(0, 0, 0, 0, 101)
    assert slice_quartic(1, 3, pm) == 45    # 81 - 36
    random.seed(5)
    for _ in range(50):
        pmr = params_mod(*(random.randrange(101) for _ in range(4)), 101)
        for t in range(101):
            if (t * t - 4) % 101 == 0:
                continue
            f = slice_quartic(1, t, pmr)
            k = slice_invariant(1, t, pmr)
            assert f == k * pow((t * t - 4) % 101, 2, 101) % 101
            assert pmr.field.legendre(f) == pmr.field.legendre(k)


def test_cluster_lift_examples():
    assert cluster_lift(0, 0, 0) == Params(0, 0, 0, 0)
    assert cluster_lift(1, 1, 1) == Params(-3, -3, -3, -5)
    assert quartic_discriminant(Params(-3, -3, -3, -5)) == 0


def test_cluster_lift_degeneracy_iff_some_ai_squared_is_4():
    for a1 in range(-6, 7):
        for a2 in range(-6, 7):
            for a3 in range(-6, 7):
                q = cluster_lift(a1, a2, a3)
                want = 4 in (a1 * a1, a2 * a2, a3 * a3)
                assert degeneracy_class(q).degenerate == want, (a1, a2, a3)


def test_cluster_lift_discriminant_vanishes_numerically():
    random.seed(6)
    for _ in range(1000):
        a1, a2, a3 = (random.randrange(-30, 31) for _ in range(3))
        assert quartic_discriminant(cluster_lift(a1, a2, a3)) == 0


def test_moves_involutions_exhaustive_p47():
    # one larger exhaustive pass near the p <= 50 mark
    pm = params_mod(3, 1, -1, 2, 47)
    gens = generators(pm, GAMMA_PRIME)
    count = 0
    for pt in all_points(pm):
        for m in gens:
            img = apply_move(m, pt, pm)
            assert on_surface(img, pm)
            assert apply_move(m, img, pm) == pt
        count += 1
    assert abs(count - 47 * 47) <= 10 * 47
