"""Exact verification of the polynomial identities behind the orbit theory.

Six independent checks, all over Z with no floating point:

1. the three slice quartics share a single discriminant;
2. that discriminant matches the shipped golden coefficient list
   term for term;
3. the discriminant vanishes identically on the image of the
   generalized-cluster-algebra parameter map;
4. with A = B, the discriminant is divisible by A^2 - 8C + 4D - 16;
5. the product identity that makes the two-class quadratic obstruction
   invariant under the second Vieta involution holds exactly;
6. the two square identities ((z+2)(z'+2) and (x+2)(y+2)(z+2) are
   perfect squares on the degenerate surface) reduce to zero modulo the
   surface polynomial, denominators cleared by 4.

Checks 5 and 6 involve A/2, so they are run with A = 2*alpha; the
substitution is injective on polynomials, so zero in alpha proves the
identity for all A.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import polynomials as mp
from .polynomials import MultiPoly, discriminant, divide_exact, reduce_mod_monic, variables
from .surface import discriminant_terms

_QUARTIC_RING = ("T", "A", "B", "C", "D")


def _quartic(axis: int) -> MultiPoly:
    """The axis quartic as a polynomial in T over Z[A, B, C, D]."""
    t, a, b, c, d = variables(*_QUARTIC_RING)
    r, u, v = {1: (a, b, c), 2: (b, a, c), 3: (c, a, b)}[axis]
    return t ** 4 - r * t ** 3 - (d + 4) * t ** 2 + (4 * r + u * v) * t + (4 * d + u * u + v * v)


def quartic_discriminant_poly(axis: int = 1) -> MultiPoly:
    """Discriminant of the axis quartic, computed by Sylvester resultant."""
    return discriminant(_quartic(axis), "T")


def golden_poly() -> MultiPoly:
    """The shipped coefficient list as a polynomial in the quartic ring."""
    acc = {}
    for (ea, eb, ec, ed), coeff in discriminant_terms():
        acc[(0, ea, eb, ec, ed)] = coeff
    return MultiPoly.make(_QUARTIC_RING, acc)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def check_discriminants_equal() -> CheckResult:
    d1 = quartic_discriminant_poly(1)
    d2 = quartic_discriminant_poly(2)
    d3 = quartic_discriminant_poly(3)
    ok = d1 == d2 == d3
    return CheckResult(
        "common-discriminant",
        ok,
        "the three slice quartics have equal discriminants" if ok
        else "discriminants differ between axes",
    )


def check_golden_match(golden: MultiPoly | None = None) -> CheckResult:
    computed = quartic_discriminant_poly(1)
    golden = golden_poly() if golden is None else golden
    ok = computed == golden
    return CheckResult(
        "golden-coefficients",
        ok,
        f"{len(golden.terms)} terms match the computed discriminant" if ok
        else "shipped coefficient list disagrees with the computed discriminant",
    )


def check_cluster_vanishing() -> CheckResult:
    ring = ("a1", "a2", "a3")
    a1, a2, a3 = variables(*ring)
    asub = -2 * a1 - a2 * a3
    bsub = -2 * a2 - a1 * a3
    csub = -2 * a3 - a1 * a2
    dsub = -2 * a1 * a2 * a3 - a1 * a1 - a2 * a2 - a3 * a3
    total = MultiPoly.constant(ring, 0)
    for (ea, eb, ec, ed), coeff in discriminant_terms():
        total = total + coeff * asub ** ea * bsub ** eb * csub ** ec * dsub ** ed
    ok = total.is_zero()
    return CheckResult(
        "cluster-image-vanishing",
        ok,
        "discriminant vanishes identically on the cluster parameter image" if ok
        else f"nonzero remainder with {len(total.terms)} terms",
    )


def check_degenerate_divisibility() -> CheckResult:
    ring = ("A", "C", "D")
    a, c, d = variables(*ring)
    acc = {}
    for (ea, eb, ec, ed), coeff in discriminant_terms():
        e = (ea + eb, ec, ed)          # substitute B -> A
        acc[e] = acc.get(e, 0) + coeff
    delta_aa = MultiPoly.make(ring, acc)
    divisor = a * a - 8 * c + 4 * d - 16
    q = divide_exact(delta_aa, divisor)
    ok = q is not None
    return CheckResult(
        "degenerate-divisibility",
        ok,
        "A^2 - 8C + 4D - 16 divides the discriminant at B = A" if ok
        else "exact division failed",
    )


def check_obstruction_congruence() -> CheckResult:
    """The two-class invariant is preserved by the second Vieta involution.

    4*g - f - (x^2+4x+4)*h must be the zero polynomial, where f is the
    square side, g the product of the invariant with its Vieta image, and
    h is -4 times the degenerate surface polynomial.
    """
    ring = ("x", "y", "z", "A", "C")
    x, y, z, a, c = variables(*ring)
    f = (a * x - 2 * x * x - 2 * x * z + 2 * c - 4 * x - 4 * z) ** 2
    g = (x * y + 2 * x + 2 * y + c - a + 4) * (
        x * x * z + 2 * x * z - x * y + a * x + 2 * x - 2 * y + c + a + 4
    )
    h = (
        4 * x * y * z + 4 * a * x + 4 * a * y + 4 * c * z - a * a + 8 * c + 16
        - 4 * x * x - 4 * y * y - 4 * z * z
    )
    expr = 4 * g - f - (x * x + 4 * x + 4) * h
    ok = expr.is_zero()
    return CheckResult(
        "obstruction-congruence",
        ok,
        "4g - f - (x^2+4x+4)h is identically zero" if ok
        else f"nonzero combination with {len(expr.terms)} terms",
    )


def check_square_identities() -> CheckResult:
    """Both obstruction quantities are squares modulo the degenerate surface.

    Degenerate normal form: A = B and D = -A^2/4 + 2C + 4, with A = 2*alpha
    to clear the half.  z' is eliminated via z' = C + xy - z and both
    identities are multiplied through by 4.
    """
    ring = ("x", "y", "z", "alpha", "C")
    x, y, z, al, c = variables(*ring)
    # surface polynomial, monic in z, at A = B = 2*alpha, D = -alpha^2 + 2C + 4
    surf = z * z - (x * y + c) * z + (
        x * x + y * y - 2 * al * x - 2 * al * y + al * al - 2 * c - 4
    )
    zp = c + x * y - z
    first = 4 * (z + 2) * (zp + 2) - (2 * x + 2 * y - 2 * al) ** 2
    ok1 = reduce_mod_monic(first, surf, "z").is_zero()

    # all-equal form: A = B = C = 2*alpha, D = -alpha^2 + 4*alpha + 4
    ring2 = ("x", "y", "z", "alpha")
    x2, y2, z2, al2 = variables(*ring2)
    surf2 = z2 * z2 - (x2 * y2 + 2 * al2) * z2 + (
        x2 * x2 + y2 * y2 - 2 * al2 * x2 - 2 * al2 * y2 + al2 * al2 - 4 * al2 - 4
    )
    second = 4 * (x2 + 2) * (y2 + 2) * (z2 + 2) - (2 * x2 + 2 * y2 + 2 * z2 + 4 - 2 * al2) ** 2
    ok2 = reduce_mod_monic(second, surf2, "z").is_zero()

    ok = ok1 and ok2
    return CheckResult(
        "square-identities",
        ok,
        "both shifted products reduce to squares on the degenerate surface" if ok
        else f"pair-identity {'ok' if ok1 else 'FAILED'}, triple-identity {'ok' if ok2 else 'FAILED'}",
    )


def identity_suite() -> list[CheckResult]:
    """Run all six checks; failures are entries, not exceptions."""
    return [
        check_discriminants_equal(),
        check_golden_match(),
        check_cluster_vanishing(),
        check_degenerate_divisibility(),
        check_obstruction_congruence(),
        check_square_identities(),
    ]
