"""The cubic surface x^2 + y^2 + z^2 = xyz + A*x + B*y + C*z + D and its
symmetries.

The symmetry group is generated by the three Vieta involutions (swap the
two roots of the equation read as a quadratic in one coordinate), plus,
when the coefficients allow them, double sign flips, transpositions, and
negated transpositions.  Parameter quadruples related by permuting
(A, B, C) and negating an even number of them give surfaces with identical
orbit structure; that equivalence drives both the canonical form and the
degeneracy classifier here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from importlib import resources

from .field import PrimeField, get_field

Point = tuple[int, int, int]

# Group selectors
GAMMA = "gamma"                 # Vieta involutions only
GAMMA_H = "gamma-h"             # plus available double sign flips
GAMMA_PRIME = "gamma-prime"     # plus available (negated) transpositions

VIETA_MOVES = ("v1", "v2", "v3")
NEG_MOVES = ("neg_xy", "neg_xz", "neg_yz")
TAU_MOVES = ("tau_xy", "tau_xz", "tau_yz")
NEGTAU_MOVES = ("negtau_xy", "negtau_xz", "negtau_yz")

# coordinate index pairs touched by neg/tau/negtau moves, in move order
_PAIR = {"xy": (0, 1), "xz": (0, 2), "yz": (1, 2)}


class UnavailableMove(ValueError):
    """The requested move is not an automorphism for these parameters."""


class OffSurface(ValueError):
    """A point failed the surface equation check."""


@dataclass(frozen=True)
class Params:
    """Integer coefficient quadruple (A, B, C, D)."""

    A: int
    B: int
    C: int
    D: int

    def abc(self) -> tuple[int, int, int]:
        return (self.A, self.B, self.C)

    def reduce(self, field: PrimeField) -> "ParamsMod":
        p = field.p
        return ParamsMod(self.A % p, self.B % p, self.C % p, self.D % p, field)


@dataclass(frozen=True)
class ParamsMod:
    """Coefficient quadruple reduced mod p, tied to its field."""

    A: int
    B: int
    C: int
    D: int
    field: PrimeField

    def abc(self) -> tuple[int, int, int]:
        return (self.A, self.B, self.C)

    @property
    def p(self) -> int:
        return self.field.p


def params_mod(a: int, b: int, c: int, d: int, p: int) -> ParamsMod:
    f = get_field(p)
    return ParamsMod(a % p, b % p, c % p, d % p, f)


def on_surface(point: Point, pm: ParamsMod) -> bool:
    x, y, z = point
    p = pm.p
    lhs = (x * x + y * y + z * z) % p
    rhs = (x * y * z + pm.A * x + pm.B * y + pm.C * z + pm.D) % p
    return lhs == rhs


def check_point(point: Point, pm: ParamsMod) -> Point:
    point = tuple(v % pm.p for v in point)  # type: ignore[assignment]
    if not on_surface(point, pm):
        raise OffSurface(f"{point} is not on the surface for {pm.abc()}, D={pm.D}")
    return point


# ---------------------------------------------------------------------------
# Moves
# ---------------------------------------------------------------------------

def move_available(move: str, pm: ParamsMod) -> bool:
    """Availability of a move as an automorphism, read mod p."""
    if move in VIETA_MOVES:
        return True
    coeffs = pm.abc()
    tag = move.split("_")[1]
    i, j = _PAIR[tag]
    a, b = coeffs[i], coeffs[j]
    if move in NEG_MOVES:
        return a == 0 and b == 0
    if move in TAU_MOVES:
        return a == b
    if move in NEGTAU_MOVES:
        return a == (-b) % pm.p
    raise ValueError(f"unknown move {move!r}")


def apply_move(move: str, point: Point, pm: ParamsMod) -> Point:
    """Apply one generator; raises UnavailableMove if it is not one here."""
    if not move_available(move, pm):
        raise UnavailableMove(f"{move} is not available for {pm.abc()} mod {pm.p}")
    p = pm.p
    x, y, z = point
    if move == "v1":
        return ((pm.A + y * z - x) % p, y, z)
    if move == "v2":
        return (x, (pm.B + x * z - y) % p, z)
    if move == "v3":
        return (x, y, (pm.C + x * y - z) % p)
    if move == "neg_xy":
        return ((-x) % p, (-y) % p, z)
    if move == "neg_xz":
        return ((-x) % p, y, (-z) % p)
    if move == "neg_yz":
        return (x, (-y) % p, (-z) % p)
    if move == "tau_xy":
        return (y, x, z)
    if move == "tau_xz":
        return (z, y, x)
    if move == "tau_yz":
        return (x, z, y)
    if move == "negtau_xy":
        return ((-y) % p, (-x) % p, z)
    if move == "negtau_xz":
        return ((-z) % p, y, (-x) % p)
    if move == "negtau_yz":
        return (x, (-z) % p, (-y) % p)
    raise ValueError(f"unknown move {move!r}")


def generators(pm: ParamsMod, selector: str) -> tuple[str, ...]:
    """Generator set for the chosen group, read mod p.

    For a coefficient pair that is zero the transposition is included but
    the negated transposition is not (the sign flip is already a generator,
    so the composite would be a redundant edge).
    """
    gens = list(VIETA_MOVES)
    if selector == GAMMA:
        return tuple(gens)
    coeffs = pm.abc()
    pairs = [("xy", 0, 1), ("xz", 0, 2), ("yz", 1, 2)]
    for tag, i, j in pairs:
        if coeffs[i] == 0 and coeffs[j] == 0:
            gens.append(f"neg_{tag}")
    if selector == GAMMA_H:
        return tuple(gens)
    if selector != GAMMA_PRIME:
        raise ValueError(f"unknown group selector {selector!r}")
    for tag, i, j in pairs:
        a, b = coeffs[i], coeffs[j]
        if a == b:
            gens.append(f"tau_{tag}")
        elif a == (-b) % pm.p:
            gens.append(f"negtau_{tag}")
    return tuple(gens)


# ---------------------------------------------------------------------------
# Parameter equivalence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Transform:
    """Signed permutation with an even number of sign flips.

    Acts on triples by v -> (s1*v[perm[0]], s2*v[perm[1]], s3*v[perm[2]]);
    applied both to the coefficient triple (A, B, C) and to surface points,
    it carries the surface for one quadruple onto the surface for the
    transformed quadruple, conjugating the Vieta action accordingly.
    D is untouched.
    """

    perm: tuple[int, int, int]
    signs: tuple[int, int, int]

    def apply_triple(self, v: tuple[int, int, int]) -> tuple[int, int, int]:
        return tuple(s * v[i] for i, s in zip(self.perm, self.signs))  # type: ignore[return-value]

    def apply_point(self, point: Point, p: int) -> Point:
        return tuple((s * point[i]) % p for i, s in zip(self.perm, self.signs))  # type: ignore[return-value]

    def apply_params(self, q: Params) -> Params:
        a, b, c = self.apply_triple(q.abc())
        return Params(a, b, c, q.D)

    def apply_params_mod(self, pm: ParamsMod) -> ParamsMod:
        p = pm.p
        a, b, c = self.apply_triple(pm.abc())
        return ParamsMod(a % p, b % p, c % p, pm.D, pm.field)

    def inverse(self) -> "Transform":
        inv_perm = [0, 0, 0]
        inv_signs = [0, 0, 0]
        for slot, src in enumerate(self.perm):
            inv_perm[src] = slot
            inv_signs[src] = self.signs[slot]
        return Transform(tuple(inv_perm), tuple(inv_signs))

    def compose(self, other: "Transform") -> "Transform":
        """self after other: (self.compose(other))(v) = self(other(v))."""
        perm = tuple(other.perm[i] for i in self.perm)
        signs = tuple(self.signs[k] * other.signs[self.perm[k]] for k in range(3))
        return Transform(perm, signs)  # type: ignore[arg-type]

    def vieta_relabel(self) -> dict[str, str]:
        """Which Vieta move on the target corresponds to each source move."""
        return {f"v{self.perm[i] + 1}": f"v{i + 1}" for i in range(3)}


_EVEN_SIGNS = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))

ALL_TRANSFORMS: tuple[Transform, ...] = tuple(
    Transform(perm, signs)
    for perm in itertools.permutations((0, 1, 2))
    for signs in _EVEN_SIGNS
)

IDENTITY_TRANSFORM = ALL_TRANSFORMS[0]


def equivalents(q: Params) -> list[tuple[Params, Transform]]:
    """All 24 equivalent quadruples with the transforms realizing them."""
    return [(t.apply_params(q), t) for t in ALL_TRANSFORMS]


def equivalents_mod(pm: ParamsMod) -> list[tuple[ParamsMod, Transform]]:
    return [(t.apply_params_mod(pm), t) for t in ALL_TRANSFORMS]


def canonical_params(q: Params) -> tuple[Params, Transform]:
    """Lexicographically least equivalent quadruple (compare A, B, C; D fixed)."""
    best = None
    for cand, t in equivalents(q):
        key = cand.abc()
        if best is None or key < best[0]:
            best = (key, cand, t)
    return best[1], best[2]


# ---------------------------------------------------------------------------
# Degeneracy
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Degeneracy:
    """Outcome of the degeneracy test.

    degenerate quadruples are those equivalent to (A, B, C, D) with A = B
    and 4D + A^2 = 8C + 16; witness is the lexicographically least such
    equivalent together with the transform reaching it.  equal_triple marks
    the stronger coincidence |A| = |B| = |C| (A^2 = B^2 = C^2 mod p).
    """

    degenerate: bool
    witness: Params | ParamsMod | None = None
    transform: Transform | None = None
    equal_triple: bool = False


def degeneracy_class(q: Params) -> Degeneracy:
    """Degeneracy over the integers."""
    hits = []
    for cand, t in equivalents(q):
        if cand.A == cand.B and 4 * cand.D + cand.A ** 2 == 8 * cand.C + 16:
            hits.append((cand.abc(), cand, t))
    if not hits:
        return Degeneracy(False)
    _, w, t = min(hits, key=lambda h: h[0])
    eq3 = abs(q.A) == abs(q.B) == abs(q.C)
    return Degeneracy(True, w, t, eq3)


def degeneracy_class_mod(pm: ParamsMod) -> Degeneracy:
    """Degeneracy mod p; all comparisons on canonical residues."""
    p = pm.p
    hits = []
    for cand, t in equivalents_mod(pm):
        if cand.A == cand.B and (4 * cand.D + cand.A ** 2) % p == (8 * cand.C + 16) % p:
            hits.append((cand.abc(), cand, t))
    if not hits:
        return Degeneracy(False)
    _, w, t = min(hits, key=lambda h: h[0])
    sq = {(pm.A * pm.A) % p, (pm.B * pm.B) % p, (pm.C * pm.C) % p}
    return Degeneracy(True, w, t, len(sq) == 1)


# ---------------------------------------------------------------------------
# The common quartic discriminant (golden data)
# ---------------------------------------------------------------------------

def _load_discriminant_terms() -> tuple[tuple[tuple[int, int, int, int], int], ...]:
    text = resources.files("markoff_lab.data").joinpath("quartic_discriminant.txt").read_text()
    terms = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        ea, eb, ec, ed, coeff = line.split()
        terms.append(((int(ea), int(eb), int(ec), int(ed)), int(coeff)))
    return tuple(terms)


_DISC_TERMS: tuple[tuple[tuple[int, int, int, int], int], ...] | None = None


def discriminant_terms() -> tuple[tuple[tuple[int, int, int, int], int], ...]:
    global _DISC_TERMS
    if _DISC_TERMS is None:
        _DISC_TERMS = _load_discriminant_terms()
    return _DISC_TERMS


def quartic_discriminant(q: Params) -> int:
    """Exact value of the common discriminant of the three slice quartics.

    Evaluated from the shipped coefficient list; the symbolic identity
    suite cross-validates that list against a from-scratch resultant
    computation, so it is never hand-typed in two places.
    """
    total = 0
    for (ea, eb, ec, ed), coeff in discriminant_terms():
        total += coeff * q.A ** ea * q.B ** eb * q.C ** ec * q.D ** ed
    return total


# ---------------------------------------------------------------------------
# Slice quartics
# ---------------------------------------------------------------------------

def _axis_coeffs(axis: int, pm: ParamsMod) -> tuple[int, int, int]:
    """(R, P, Q): coefficient on the fixed coordinate, then on the two free
    coordinates in coordinate order."""
    if axis == 1:
        return pm.A, pm.B, pm.C
    if axis == 2:
        return pm.B, pm.A, pm.C
    if axis == 3:
        return pm.C, pm.A, pm.B
    raise ValueError("axis must be 1, 2, or 3")


class ParabolicValue(ValueError):
    """The slice invariant is undefined at t = +/-2."""


def slice_quartic(axis: int, t: int, pm: ParamsMod) -> int:
    """The monic quartic controlling two-involution transitivity on the slice.

    For axis 1 it is
    t^4 - A t^3 - (D+4) t^2 + (4A + BC) t + (4D + B^2 + C^2);
    axes 2 and 3 permute the coefficients accordingly.
    """
    p = pm.p
    r, a, b = _axis_coeffs(axis, pm)
    t %= p
    return (
        t ** 4 - r * t ** 3 - (pm.D + 4) * t ** 2 + (4 * r + a * b) * t
        + (4 * pm.D + a * a + b * b)
    ) % p


def slice_invariant(axis: int, t: int, pm: ParamsMod) -> int:
    """slice_quartic / (t^2 - 4)^2; its square class decides transitivity."""
    p = pm.p
    t %= p
    d = (t * t - 4) % p
    if d == 0:
        raise ParabolicValue(f"slice invariant undefined at t = {t} mod {p}")
    return slice_quartic(axis, t, pm) * pm.field.inv(d * d % p) % p


# ---------------------------------------------------------------------------
# The generalized-cluster-algebra parameter family
# ---------------------------------------------------------------------------

def cluster_lift(a1: int, a2: int, a3: int) -> Params:
    """Coefficient quadruple of the surface attached to the three-parameter
    generalized cluster algebra family."""
    return Params(
        -2 * a1 - a2 * a3,
        -2 * a2 - a1 * a3,
        -2 * a3 - a1 * a2,
        -2 * a1 * a2 * a3 - a1 * a1 - a2 * a2 - a3 * a3,
    )
