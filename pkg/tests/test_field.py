import pytest
from hypothesis import given, settings, strategies as st

from markoff_lab.field import (
    Fp2,
    PrimeField,
    ZeroElement,
    get_field,
    is_prime,
    legendre_reciprocity,
)

SMALL_PRIMES = [5, 7, 11, 13, 17, 19, 23, 29, 31, 101]


def test_construction_rejects_bad_moduli():
    for bad in (0, 1, 2, 3, 4, 9, 15, 46349 * 3):
        with pytest.raises(ValueError):
            PrimeField(bad)
    assert PrimeField(5).p == 5


def test_legendre_examples():
    assert get_field(7).legendre(2) == 1      # squares mod 7 are {1, 2, 4}
    assert get_field(13).legendre(0) == 0
    assert get_field(7).legendre(3) == -1


def test_legendre_multiplicative():
    for p in SMALL_PRIMES:
        f = get_field(p)
        for a in range(1, p):
            for b in range(1, min(p, 40)):
                assert f.legendre(a * b) == f.legendre(a) * f.legendre(b)


@settings(max_examples=300)
@given(st.sampled_from(SMALL_PRIMES), st.integers(min_value=0, max_value=10**6))
def test_legendre_agrees_with_reciprocity(p, a):
    assert get_field(p).legendre(a) == legendre_reciprocity(a, p)


def test_sqrt_examples():
    assert get_field(7).sqrt(4) == 2
    assert get_field(11).sqrt(0) == 0
    assert get_field(7).sqrt(3) is None


def test_sqrt_exhaustive_small():
    for p in SMALL_PRIMES:
        f = get_field(p)
        for a in range(p):
            r = f.sqrt(a)
            if f.legendre(a) == -1:
                assert r is None
            else:
                assert r is not None
                assert r * r % p == a
                assert r <= (p - 1) // 2


def test_char_root_parabolic():
    f = get_field(11)
    r = f.char_root(2)
    assert r.kind == "parabolic" and r.order == 11 and r.sign == 1
    r = f.char_root(-2)
    assert r.kind == "parabolic" and r.order == 11 and r.sign == -1


def test_char_root_hyperbolic_mod5():
    # x = 0 mod 5: lambda^2 + 1 = 0 has roots +/-2, each of order 4
    r = get_field(5).char_root(0)
    assert r.kind == "hyperbolic"
    assert r.chi in (2, 3)
    assert r.order == 4


def test_char_root_x1_p7_against_scan():
    # oracle: scan F_7^* for roots of lambda^2 - lambda + 1 and their orders
    p = 7
    f = get_field(p)
    roots = [u for u in range(1, p) if (u * u - u + 1) % p == 0]
    assert roots, "discriminant -3 = 4 is a square mod 7"
    r = f.char_root(1)
    assert r.kind == "hyperbolic"
    assert r.chi in roots
    orders = set()
    for u in roots:
        k, acc = 1, u
        while acc != 1:
            acc = acc * u % p
            k += 1
        orders.add(k)
    assert r.order in orders
    assert 6 % r.order == 0


def test_char_root_consistency_exhaustive():
    for p in (5, 7, 11, 13, 29):
        f = get_field(p)
        for x in range(p):
            r = f.char_root(x)
            if r.kind == "hyperbolic":
                chi = r.chi
                assert (chi + pow(chi, -1, p)) % p == x
                assert pow(chi, r.order, p) == 1
                for d in range(1, r.order):
                    if r.order % d == 0 and d < r.order:
                        assert pow(chi, d, p) != 1 or d == r.order
            elif r.kind == "elliptic":
                chi = r.chi2
                assert chi.norm() == 1
                assert (chi + chi.inv()).a == x and (chi + chi.inv()).b == 0
                assert (chi ** r.order) == Fp2(1, 0, f)
                assert (p + 1) % r.order == 0


def test_hyperbolic_elliptic_counts():
    # excluding +/-2: (p-3)/2 hyperbolic and (p-1)/2 elliptic values
    for p in [q for q in range(5, 201) if is_prime(q)]:
        f = get_field(p)
        kinds = [f.char_root(x).kind for x in range(p)]
        assert kinds.count("parabolic") == 2
        assert kinds.count("hyperbolic") == (p - 3) // 2
        assert kinds.count("elliptic") == (p - 1) // 2


def test_elem_order_examples():
    f = get_field(11)
    assert f.order(1) == 1
    assert f.order(10) == 2      # -1
    # oracle: repeated multiplication
    acc, k = 2, 1
    while acc != 1:
        acc = acc * 2 % 11
        k += 1
    assert f.order(2) == k == 10


def test_order_of_zero_raises():
    f = get_field(7)
    with pytest.raises(ZeroElement):
        f.order(0)
    with pytest.raises(ZeroElement):
        f.norm_one_order(Fp2(0, 0, f))


def test_fp2_norm_trace_properties():
    for p in (5, 7, 13):
        f = get_field(p)
        vals = [Fp2(a, b, f) for a in range(p) for b in range(p)]
        for u in vals[:: max(1, len(vals) // 60)]:
            for v in vals[:: max(1, len(vals) // 60)]:
                assert (u * v).norm() == u.norm() * v.norm() % p
                assert (u + v).trace() == (u.trace() + v.trace()) % p
            if not u.is_zero():
                assert (u * u.inv()) == Fp2(1, 0, f)


def test_omega_is_least_nonresidue():
    for p in SMALL_PRIMES:
        f = get_field(p)
        for a in range(2, f.omega):
            assert f.legendre(a) == 1
        assert f.legendre(f.omega) == -1
