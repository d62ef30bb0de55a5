"""The predicted catalog of finite orbits on the surface mod p.

Four infinite families exist: fixed points of all three Vieta involutions
(size 1), root-pair orbits over quadruples equivalent to (A, 0, 0, D)
(size 2), the (-2, k, k, -1) family (size 3), and the (k, k, k, 4+3k)
family (size 4).  Anything else small found by the orbit engine is
reported as an empirical exceptional orbit rather than silently matched:
the classification of those lives outside this codebase.
"""

from __future__ import annotations

from dataclasses import dataclass

from .surface import (
    ParamsMod,
    Point,
    Transform,
    VIETA_MOVES,
    apply_move,
    equivalents_mod,
    on_surface,
    slice_quartic,
)

TYPE1, TYPE2, TYPE3, TYPE4 = "type1", "type2", "type3", "type4"
EXCEPTIONAL = "exceptional"


@dataclass(frozen=True)
class SmallOrbit:
    kind: str
    points: tuple[Point, ...]
    provenance: Transform | None = None

    def point_set(self) -> frozenset[Point]:
        return frozenset(self.points)


class OrbitNotClosed(RuntimeError):
    """A constructed orbit failed its closure check (should never happen)."""


def _check_closed(points: tuple[Point, ...], pm: ParamsMod, what: str) -> None:
    s = set(points)
    for pt in points:
        if not on_surface(pt, pm):
            raise OrbitNotClosed(f"{what}: {pt} is off the surface")
        for m in VIETA_MOVES:
            if apply_move(m, pt, pm) not in s:
                raise OrbitNotClosed(f"{what}: {m} leaves the point set at {pt}")


def type1_points(pm: ParamsMod) -> list[Point]:
    """All points fixed by every Vieta involution.

    Solving 2y - xz = B, 2z - xy = C for (y, z) is linear with determinant
    4 - x^2; x = +/-2 degenerates to a quadratic in z.  The remaining two
    fixed-point equations are then checked directly, so correctness does
    not depend on the search strategy.
    """
    p = pm.p
    f = pm.field
    out = []
    half = f.half
    for x in range(p):
        d = (4 - x * x) % p
        if d != 0:
            dinv = f.inv(d)
            y = (2 * pm.B + pm.C * x) * dinv % p
            z = (2 * pm.C + pm.B * x) * dinv % p
            if (2 * x - y * z - pm.A) % p == 0 and \
               (2 * x * y * z - x * x - y * y - z * z - pm.D) % p == 0:
                out.append((x, y, z))
        else:
            e = 1 if x == 2 % p else -1
            if (pm.B + e * pm.C) % p != 0:
                continue
            # y = e*z + B/2 with e*z^2 + (B/2) z + (A - 4e) = 0
            bb = e * pm.B * half % p
            cc = e * (pm.A - 4 * e) % p
            disc = (bb * bb - 4 * cc) % p
            r = f.sqrt(disc)
            if r is None:
                continue
            for z in {(-bb + r) * half % p, (-bb - r) * half % p}:
                y = (e * z + pm.B * half) % p
                if (2 * x - y * z - pm.A) % p == 0 and \
                   (2 * y - x * z - pm.B) % p == 0 and \
                   (2 * z - x * y - pm.C) % p == 0 and \
                   (2 * x * y * z - x * x - y * y - z * z - pm.D) % p == 0:
                    out.append((x, y, z))
    return sorted(set(out))


def typed_orbits(pm: ParamsMod) -> list[SmallOrbit]:
    """Size-2, 3, and 4 orbits, found through every equivalent quadruple
    matching one of the three templates, then transported back."""
    p = pm.p
    f = pm.field
    half = f.half
    found: dict[frozenset, SmallOrbit] = {}

    def emit(kind: str, pts_there: list[Point], t: Transform) -> None:
        back = t.inverse()
        pts = tuple(sorted(back.apply_point(q, p) for q in pts_there))
        _check_closed(pts, pm, kind)
        key = frozenset(pts)
        if key not in found:
            found[key] = SmallOrbit(kind, pts, t)

    for q, t in equivalents_mod(pm):
        # (A', 0, 0, D): swap-pair orbit on the x-axis
        if q.B == 0 and q.C == 0:
            disc = (q.A * q.A + 4 * q.D) % p
            if disc != 0 and f.legendre(disc) == 1:
                s = f.sqrt(disc)
                r1 = (q.A + s) * half % p
                r2 = (q.A - s) * half % p
                emit(TYPE2, [(r1, 0, 0), (r2, 0, 0)], t)
        # (-2, k, k, -1): three points on the x = -1 plane
        if q.A == (-2) % p and q.B == q.C and q.D == (-1) % p and q.B != 0:
            k = q.B
            m1 = (-1) % p
            emit(TYPE3, [(m1, 0, 0), (m1, k, 0), (m1, 0, k)], t)
        # (k, k, k, 4 + 3k): the four-point orbit around (-1, -1, -1)
        if q.A == q.B == q.C and q.D == (4 + 3 * q.A) % p and q.A != (-3) % p:
            k = q.A
            m1 = (-1) % p
            k2 = (k + 2) % p
            emit(TYPE4, [(m1, m1, m1), (k2, m1, m1), (m1, k2, m1), (m1, m1, k2)], t)

    return sorted(found.values(), key=lambda o: (len(o.points), o.points))


_PAIR_TO_AXIS = {(2, 3): 1, (1, 3): 2, (1, 2): 3}


def _assemble(axis: int, t: int, u: int, w: int) -> Point:
    if axis == 1:
        return (t, u, w)
    if axis == 2:
        return (u, t, w)
    return (u, w, t)


def double_fixed_points(pm: ParamsMod, pair: tuple[int, int]) -> list[Point]:
    """Points fixed by both Vieta involutions of the given pair.

    Away from the parabolic slices these are carried by the roots of the
    slice quartic on the complementary axis, with the free coordinates
    determined linearly; on the slices t = +/-2 a whole line of such
    points can appear when the free-coordinate coefficients align, so the
    slices are scanned directly.
    """
    axis = _PAIR_TO_AXIS[tuple(sorted(pair))]
    p = pm.p
    f = pm.field
    coeffs = {1: (pm.A, pm.B, pm.C), 2: (pm.B, pm.A, pm.C), 3: (pm.C, pm.A, pm.B)}
    r_, pc, qc = coeffs[axis]
    out = []
    for t in range(p):
        d = (t * t - 4) % p
        if d == 0:
            continue
        if slice_quartic(axis, t, pm) != 0:
            continue
        dinv = f.inv(d)
        u = (-2 * pc - qc * t) * dinv % p
        w = (-2 * qc - pc * t) * dinv % p
        pt = _assemble(axis, t, u, w)
        if on_surface(pt, pm):
            out.append(pt)
    for e in (1, -1):
        t = (2 * e) % p
        if (pc + e * qc) % p != 0:
            continue
        # whole-slice check: u a free parameter, w pinned by the half-sum rule
        const = (16 - pc * pc - 8 * e * r_ - 4 * pm.D) % p  # 4x the on-surface residual
        if const != 0:
            continue
        for u in range(p):
            w = (qc + 2 * e * u) * f.half % p
            pt = _assemble(axis, t, u, w)
            if on_surface(pt, pm):
                out.append(pt)
    return sorted(set(out))


def expected_small_orbits(pm: ParamsMod) -> list[SmallOrbit]:
    """The computable part of the predicted finite-orbit catalog."""
    orbits: dict[frozenset, SmallOrbit] = {}
    for pt in type1_points(pm):
        o = SmallOrbit(TYPE1, (pt,))
        orbits.setdefault(o.point_set(), o)
    for o in typed_orbits(pm):
        orbits.setdefault(o.point_set(), o)
    return sorted(orbits.values(), key=lambda o: (len(o.points), o.points))
