"""Dynamics on the conic slices cut from the surface by coordinate planes.

Fixing one coordinate t turns the surface equation into a conic in the
other two.  The composition of the two Vieta involutions that move the
free coordinates (a twist) acts on that conic as an affine map whose
linearization has characteristic polynomial lambda^2 - t*lambda + 1, so
slices are hyperbolic, elliptic, or parabolic according to where the
roots chi live.  Hyperbolic and elliptic slices diagonalize to
(xi, eta) -> (chi^2 xi, chi^(-2) eta) with xi*eta an invariant of the
slice; parabolic slices are handled through the Jordan form of the twist
matrix.  Everything here is exact and the brute-force orbit partition is
kept available as the oracle the closed forms are tested against.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import Fp2, RootInfo
from .surface import (
    ParamsMod,
    Point,
    apply_move,
    on_surface,
    slice_quartic,
    slice_invariant,
)

HYPERBOLIC = "hyperbolic"
ELLIPTIC = "elliptic"
PARABOLIC_GENERIC = "parabolic-generic"
PARABOLIC_SPECIAL = "parabolic-special"

# subgroup selectors for the orbit partition
TWIST_ONLY = "twist"
TWO_VIETA = "two-vieta"
STABILIZER = "stabilizer"


class OffSlice(ValueError):
    """The point does not lie on the requested slice."""


def axis_coeffs(axis: int, pm: ParamsMod) -> tuple[int, int, int]:
    """(R, P, Q): coefficient of the fixed coordinate, then of the two free
    coordinates in coordinate order."""
    if axis == 1:
        return pm.A, pm.B, pm.C
    if axis == 2:
        return pm.B, pm.A, pm.C
    if axis == 3:
        return pm.C, pm.A, pm.B
    raise ValueError("axis must be 1, 2, or 3")


def _free_coords(axis: int, pt: Point) -> tuple[int, int]:
    if axis == 1:
        return pt[1], pt[2]
    if axis == 2:
        return pt[0], pt[2]
    return pt[0], pt[1]


def _assemble(axis: int, t: int, u: int, w: int) -> Point:
    if axis == 1:
        return (t, u, w)
    if axis == 2:
        return (u, t, w)
    return (u, w, t)


_VIETA_OF_AXIS = {1: ("v2", "v3"), 2: ("v1", "v3"), 3: ("v1", "v2")}
_TAU_OF_AXIS = {1: "yz", 2: "xz", 3: "xy"}


def slice_points(axis: int, value: int, pm: ParamsMod) -> list[Point]:
    """All surface points with the axis coordinate fixed, in lex order."""
    p = pm.p
    f = pm.field
    v = value % p
    r_, pc, qc = axis_coeffs(axis, pm)
    half = f.half
    pts = []
    for u in range(p):
        b = (u * v + qc) % p
        c = (u * u + v * v - r_ * v - pc * u - pm.D) % p
        disc = (b * b - 4 * c) % p
        s = f.sqrt(disc)
        if s is None:
            continue
        w1 = (b - s) * half % p
        w2 = (b + s) * half % p
        if w2 < w1:
            w1, w2 = w2, w1
        pts.append(_assemble(axis, v, u, w1))
        if w2 != w1:
            pts.append(_assemble(axis, v, u, w2))
    return pts


def slice_size_formula(axis: int, value: int, pm: ParamsMod) -> int:
    """Exact closed-form point count for the slice.

    Hyperbolic: p-1, or 2p-1 when the slice invariant vanishes.
    Elliptic: p+1, or 1 when the invariant vanishes.
    Parabolic: p generically; when the free-coordinate coefficients align
    (P = -eQ for value 2e) the count is (1 + legendre(K)) * p with
    K = 8eR + Q^2 + 4D - 16.
    """
    p = pm.p
    f = pm.field
    v = value % p
    r_, pc, qc = axis_coeffs(axis, pm)
    root = f.char_root(v)
    if root.kind == "parabolic":
        e = root.sign
        if (4 * pc + 4 * e * qc) % p != 0:
            return p
        k = (8 * e * r_ + qc * qc + 4 * pm.D - 16) % p
        return (1 + f.legendre(k)) * p
    fval = slice_quartic(axis, v, pm)
    if root.kind == "hyperbolic":
        return p - 1 if fval != 0 else 2 * p - 1
    return p + 1 if fval != 0 else 1


@dataclass(frozen=True)
class SliceReport:
    axis: int
    value: int
    kind: str
    root: RootInfo
    kappa: int | None
    f_value: int
    size: int
    predicted_transitive: bool | None


def classify_slice(axis: int, value: int, pm: ParamsMod) -> SliceReport:
    p = pm.p
    v = value % p
    r_, pc, qc = axis_coeffs(axis, pm)
    root = pm.field.char_root(v)
    fval = slice_quartic(axis, v, pm)
    if root.kind == "parabolic":
        e = root.sign
        special = (4 * pc + 4 * e * qc) % p == 0
        kind = PARABOLIC_SPECIAL if special else PARABOLIC_GENERIC
        kappa = None
    else:
        kind = root.kind
        kappa = slice_invariant(axis, v, pm)
    return SliceReport(
        axis=axis,
        value=v,
        kind=kind,
        root=root,
        kappa=kappa,
        f_value=fval,
        size=len(slice_points(axis, v, pm)),
        predicted_transitive=transitivity_predicted(axis, v, pm),
    )


# ---------------------------------------------------------------------------
# Twists
# ---------------------------------------------------------------------------

def dehn_apply(axis: int, value: int, pt: Point, pm: ParamsMod) -> Point:
    """One twist step: the two free-coordinate Vieta involutions in
    coordinate order (first involution toggles the first free coordinate)."""
    p = pm.p
    if pt[axis - 1] % p != value % p:
        raise OffSlice(f"{pt} is not on slice {axis}={value}")
    m1, m2 = _VIETA_OF_AXIS[axis]
    return apply_move(m2, apply_move(m1, pt, pm), pm)


def dehn_unapply(axis: int, value: int, pt: Point, pm: ParamsMod) -> Point:
    p = pm.p
    if pt[axis - 1] % p != value % p:
        raise OffSlice(f"{pt} is not on slice {axis}={value}")
    m1, m2 = _VIETA_OF_AXIS[axis]
    return apply_move(m1, apply_move(m2, pt, pm), pm)


def twist_coordinates(axis: int, value: int, pt: Point, pm: ParamsMod):
    """Diagonalizing coordinates (xi, eta) of a point on a non-parabolic
    slice; ints for hyperbolic slices, norm-conjugate Fp2 pairs for
    elliptic ones.  Their product equals the slice invariant, and both
    vanish exactly at the double fixed points."""
    p = pm.p
    f = pm.field
    v = value % p
    if pt[axis - 1] % p != v:
        raise OffSlice(f"{pt} is not on slice {axis}={value}")
    _, pc, qc = axis_coeffs(axis, pm)
    u, w = _free_coords(axis, pt)
    root = f.char_root(v)
    if root.kind == "parabolic":
        raise ValueError("parabolic slices do not diagonalize")
    if root.kind == "hyperbolic":
        chi = root.chi
        chi_inv = f.inv(chi)
        m = f.inv((chi_inv - chi) % p)
        xi = m * (chi_inv * u - w + m * (pc + qc * chi_inv)) % p
        eta = m * (-chi * u + w + m * (pc + qc * chi)) % p
        return xi, eta
    chi = root.chi2
    chi_inv = chi.conj()                       # norm one
    m = (chi_inv - chi).inv()
    uu = Fp2(u % p, 0, f)
    ww = Fp2(w % p, 0, f)
    pcc = Fp2(pc, 0, f)
    qcc = Fp2(qc, 0, f)
    xi = m * (chi_inv * uu - ww + m * (pcc + qcc * chi_inv))
    eta = m * ((Fp2(0, 0, f) - chi) * uu + ww + m * (pcc + qcc * chi))
    return xi, eta


def _mat_mul3(a, b, p):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) % p for j in range(3))
        for i in range(3)
    )


def dehn_power(axis: int, value: int, t: int, pt: Point, pm: ParamsMod) -> Point:
    """The t-th twist iterate in closed form (t may be any integer).

    Hyperbolic and elliptic slices scale the diagonalizing coordinates by
    chi^(2t) and chi^(-2t).  Parabolic slices use the Jordan powers of the
    twist matrix; the generic branch carries the binomial(t, 2) entry, the
    aligned branch (P = -eQ at value 2e) is a translation.
    """
    p = pm.p
    f = pm.field
    v = value % p
    if pt[axis - 1] % p != v:
        raise OffSlice(f"{pt} is not on slice {axis}={value}")
    _, pc, qc = axis_coeffs(axis, pm)
    u, w = _free_coords(axis, pt)
    root = f.char_root(v)

    if root.kind == "hyperbolic":
        chi = root.chi
        xi, eta = twist_coordinates(axis, v, pt, pm)
        s = pow(chi, (2 * t) % (p - 1), p)
        sinv = f.inv(s)
        xi2 = xi * s % p
        eta2 = eta * sinv % p
        d = f.inv((v * v - 4) % p)
        u2 = (xi2 + eta2 + d * (-2 * pc - qc * v)) % p
        w2 = (chi * xi2 + f.inv(chi) * eta2 + d * (-pc * v - 2 * qc)) % p
        out = _assemble(axis, v, u2, w2)
    elif root.kind == "elliptic":
        chi = root.chi2
        xi, _ = twist_coordinates(axis, v, pt, pm)
        s = chi ** ((2 * t) % (p + 1))
        xi2 = xi * s
        eta2 = xi2.conj()
        d = f.inv((v * v - 4) % p)
        u2 = ((xi2 + eta2).a + d * (-2 * pc - qc * v)) % p
        w2 = ((chi * xi2 + chi.conj() * eta2).a + d * (-pc * v - 2 * qc)) % p
        out = _assemble(axis, v, u2, w2)
    else:
        e = root.sign
        tm = t % p
        half = f.half
        lsum = (pc + e * qc) % p
        if lsum != 0:
            inv4 = f.inv(4 * lsum % p)
            inv2 = f.inv(2 * lsum % p)
            um = ((1, 0, pc * inv4 % p), (e % p, e * half % p, 0), (0, 0, inv2))
            jt = ((1, tm, tm * ((t - 1) % p) * half % p), (0, 1, tm), (0, 0, 1))
            wm = ((1, 0, -pc * half % p), ((-2) % p, 2 * e % p, pc), (0, 0, 2 * lsum % p))
        else:
            um = ((1, 0, pc * half % p), (e % p, e * half % p, 0), (0, 0, 1))
            jt = ((1, tm, 0), (0, 1, 0), (0, 0, 1))
            wm = ((1, 0, -pc * half % p), ((-2) % p, 2 * e % p, pc), (0, 0, 1))
        m = _mat_mul3(_mat_mul3(um, jt, p), wm, p)
        u2 = (m[0][0] * u + m[0][1] * w + m[0][2]) % p
        w2 = (m[1][0] * u + m[1][1] * w + m[1][2]) % p
        out = _assemble(axis, v, u2, w2)
    assert on_surface(out, pm), "twist left the surface"
    return out


# ---------------------------------------------------------------------------
# Orbit partitions (the oracle)
# ---------------------------------------------------------------------------

def _slice_generators(axis: int, pm: ParamsMod, subgroup: str):
    if subgroup == TWIST_ONLY:
        return (
            lambda q: dehn_apply(axis, q[axis - 1], q, pm),
            lambda q: dehn_unapply(axis, q[axis - 1], q, pm),
        )
    m1, m2 = _VIETA_OF_AXIS[axis]
    gens = [lambda q, m=m1: apply_move(m, q, pm), lambda q, m=m2: apply_move(m, q, pm)]
    if subgroup == TWO_VIETA:
        return tuple(gens)
    if subgroup != STABILIZER:
        raise ValueError(f"unknown subgroup {subgroup!r}")
    tag = _TAU_OF_AXIS[axis]
    _, pc, qc = axis_coeffs(axis, pm)
    p = pm.p
    if pc == qc == 0:
        gens.append(lambda q, m=f"neg_{tag}": apply_move(m, q, pm))
        gens.append(lambda q, m=f"tau_{tag}": apply_move(m, q, pm))
    elif pc == qc:
        gens.append(lambda q, m=f"tau_{tag}": apply_move(m, q, pm))
    elif pc == (-qc) % p:
        gens.append(lambda q, m=f"negtau_{tag}": apply_move(m, q, pm))
    return tuple(gens)


def slice_orbit_partition(
    axis: int, value: int, pm: ParamsMod, subgroup: str = TWO_VIETA
) -> list[list[Point]]:
    """Connected components of the slice by direct traversal.

    No closed forms are assumed here; this is the oracle that the
    predictions (slice sizes, transitivity criterion, twist powers) are
    tested against.
    """
    pts = slice_points(axis, value, pm)
    gens = _slice_generators(axis, pm, subgroup)
    seen: set[Point] = set()
    blocks = []
    for start in pts:
        if start in seen:
            continue
        block = [start]
        seen.add(start)
        stack = [start]
        while stack:
            cur = stack.pop()
            for g in gens:
                nxt = g(cur)
                if nxt not in seen:
                    seen.add(nxt)
                    block.append(nxt)
                    stack.append(nxt)
        blocks.append(sorted(block))
    return sorted(blocks, key=lambda b: b[0])


def transitivity_predicted(axis: int, value: int, pm: ParamsMod) -> bool | None:
    """The square-class criterion for the two Vieta involutions to act
    transitively on the slice.

    Defined only for non-parabolic values of maximal order (p-1 or p+1)
    with nonvanishing slice invariant; there the action is transitive iff
    the slice quartic is a nonresidue.
    """
    p = pm.p
    f = pm.field
    v = value % p
    root = f.char_root(v)
    if root.kind == "parabolic":
        return None
    fval = slice_quartic(axis, v, pm)
    if fval == 0:
        return None
    maximal = root.order == (p - 1 if root.kind == "hyperbolic" else p + 1)
    if not maximal:
        return None
    return f.legendre(fval) == -1


# ---------------------------------------------------------------------------
# Orders, connecting slices, the cage
# ---------------------------------------------------------------------------

def point_order(pt: Point, pm: ParamsMod) -> int:
    """Max over coordinates of the order of chi with chi + 1/chi = coord
    (order p at +/-2)."""
    f = pm.field
    return max(f.value_order(c) for c in pt)


def _negated_root_order(root: RootInfo, pm: ParamsMod) -> int:
    """Order of -chi, the eigenvalue of the negated-transposition square
    root of the twist."""
    f = pm.field
    if root.kind == "hyperbolic":
        return f.order((-root.chi) % pm.p)
    c = root.chi2
    return f.norm_one_order(Fp2((-c.a) % pm.p, (-c.b) % pm.p, f))


def is_connecting(pt: Point, axis: int, pm: ParamsMod) -> bool:
    """The slice-connectivity criterion behind the cage construction.

    True when the axis coordinate is parabolic on a generic slice (the
    twist is a translation of order p acting transitively on p points),
    or hyperbolic/elliptic with nonvanishing quartic and one of:

      * maximal order (p-1 resp. p+1) with the quartic a nonresidue
        (the two-involution action is then a single even cycle);
      * free-coordinate coefficients equal mod p and chi of maximal
        order (the transposition square root of the twist is transitive);
      * free-coordinate coefficients opposite mod p and -chi of maximal
        order (the negated-transposition square root is transitive; its
        eigenvalue is -chi, so the order condition shifts by the sign).

    These conditions are sufficient, not exhaustive: the partition oracle
    shows a few extra connected slices (singleton slices, 2p-point
    parabolic slices whose two twist lines are swapped by either
    involution, and some half-maximal-order slices).  Tests verify the
    sufficiency direction exhaustively: criterion-positive slices are
    always connected under the slice stabilizer.
    """
    p = pm.p
    f = pm.field
    v = pt[axis - 1] % p
    _, pc, qc = axis_coeffs(axis, pm)
    root = f.char_root(v)
    if root.kind == "parabolic":
        return (4 * pc + 4 * root.sign * qc) % p != 0
    fval = slice_quartic(axis, v, pm)
    if fval == 0:
        return False
    top = p - 1 if root.kind == "hyperbolic" else p + 1
    if root.order == top and f.legendre(fval) == -1:
        return True
    if pc == qc and root.order == top:
        return True
    if pc == (-qc) % p and _negated_root_order(root, pm) == top:
        return True
    return False


def in_cage(pt: Point, pm: ParamsMod) -> bool:
    """Whether some coordinate slice through the point is connected."""
    return any(is_connecting(pt, axis, pm) for axis in (1, 2, 3))
