"""Exact arithmetic in F_p and its quadratic extension F_p^2.

Everything downstream (surface moves, conic dynamics, orbit enumeration)
runs on the primitives here: Legendre symbols, deterministic square roots,
multiplicative orders, and the classification of t in F_p by the roots of
lambda^2 - t*lambda + 1.

Elements of F_p are plain ints reduced to [0, p).  Elements of F_p^2 are
``Fp2`` values a + b*sqrt(omega) for a fixed quadratic nonresidue omega
(the least positive one, so representations are reproducible across runs).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


class ZeroElement(ValueError):
    """Raised when a multiplicative order of zero is requested."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for any n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (n stays below ~2^34 here)."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def legendre_reciprocity(a: int, p: int) -> int:
    """Legendre symbol (a/p) by quadratic reciprocity (Jacobi-style descent).

    Independent of :meth:`PrimeField.legendre`; the two are property-tested
    against each other.
    """
    a %= p
    if a == 0:
        return 0
    result = 1
    n = p
    while a != 1:
        if a == 0:
            return 0
        t = 0
        while a % 2 == 0:
            a //= 2
            t += 1
        if t % 2 == 1 and n % 8 in (3, 5):
            result = -result
        if a == 1:
            break
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a, n = n % a, a
    return result


@dataclass(frozen=True)
class Fp2:
    """a + b*sqrt(omega) in F_p^2, omega the field's fixed nonresidue."""

    a: int
    b: int
    field: "PrimeField"

    def __mul__(self, other: "Fp2") -> "Fp2":
        p, w = self.field.p, self.field.omega
        return Fp2(
            (self.a * other.a + w * self.b * other.b) % p,
            (self.a * other.b + self.b * other.a) % p,
            self.field,
        )

    def __add__(self, other: "Fp2") -> "Fp2":
        p = self.field.p
        return Fp2((self.a + other.a) % p, (self.b + other.b) % p, self.field)

    def __sub__(self, other: "Fp2") -> "Fp2":
        p = self.field.p
        return Fp2((self.a - other.a) % p, (self.b - other.b) % p, self.field)

    def conj(self) -> "Fp2":
        """Frobenius conjugate a - b*sqrt(omega), i.e. the p-th power."""
        return Fp2(self.a, (-self.b) % self.field.p, self.field)

    def norm(self) -> int:
        p, w = self.field.p, self.field.omega
        return (self.a * self.a - w * self.b * self.b) % p

    def trace(self) -> int:
        return 2 * self.a % self.field.p

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def inv(self) -> "Fp2":
        n = self.norm()
        if n == 0:
            raise ZeroElement("inverse of zero in F_p^2")
        ninv = pow(n, -1, self.field.p)
        c = self.conj()
        return Fp2(c.a * ninv % self.field.p, c.b * ninv % self.field.p, self.field)

    def __pow__(self, e: int) -> "Fp2":
        base = self if e >= 0 else self.inv()
        e = abs(e)
        acc = Fp2(1, 0, self.field)
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def in_base_field(self) -> bool:
        return self.b == 0


@dataclass(frozen=True)
class RootInfo:
    """Root data for lambda^2 - t*lambda + 1 at a value t of F_p.

    kind is "hyperbolic" (root chi in F_p*), "elliptic" (chi in F_p^2 of
    norm 1, outside F_p), or "parabolic" (t = +/-2, double root sign*1).
    order is the multiplicative order of chi, with the convention that a
    parabolic value has order p.
    """

    kind: str
    order: int
    chi: int | None = None      # hyperbolic root
    chi2: Fp2 | None = None     # elliptic root
    sign: int | None = None     # parabolic: t = sign * 2


class PrimeField:
    """F_p for an odd prime p >= 5, with cached number-theoretic data.

    p = 2 and p = 3 are rejected: the surface formulas divide by 2, 4 and
    t^2 - 4, none of which are meaningful there.
    """

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p < 5:
            raise ValueError("p must be at least 5")
        self.p = p
        self.half = (p + 1) // 2            # inverse of 2
        self.omega = self._least_nonresidue()
        self._fact_pm1 = factorize(p - 1)
        self._fact_pp1 = factorize(p + 1)

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def _least_nonresidue(self) -> int:
        a = 2
        while pow(a, (self.p - 1) // 2, self.p) != self.p - 1:
            a += 1
        return a

    # -- basic arithmetic ---------------------------------------------------

    def inv(self, a: int) -> int:
        return pow(a % self.p, -1, self.p)

    def legendre(self, a: int) -> int:
        """(a/p) via Euler's criterion: 0, 1, or -1."""
        a %= self.p
        if a == 0:
            return 0
        e = pow(a, (self.p - 1) // 2, self.p)
        return 1 if e == 1 else -1

    def sqrt(self, a: int) -> int | None:
        """Deterministic square root, or None for a nonresidue.

        Returns the representative in [0, (p-1)/2] so that slice
        parameterizations are reproducible.
        """
        p = self.p
        a %= p
        if a == 0:
            return 0
        if self.legendre(a) == -1:
            return None
        if p % 4 == 3:
            r = pow(a, (p + 1) // 4, p)
        else:
            r = self._tonelli_shanks(a)
        return min(r, p - r)

    def _tonelli_shanks(self, a: int) -> int:
        p = self.p
        q = p - 1
        s = 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = self.omega                      # any nonresidue works
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            t2, i = t * t % p, 1
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
        return r

    # -- multiplicative orders ----------------------------------------------

    def order(self, u: int) -> int:
        """Order of u in F_p*, by peeling prime factors of p - 1."""
        u %= self.p
        if u == 0:
            raise ZeroElement("order of zero")
        n = self.p - 1
        for q, e in self._fact_pm1.items():
            for _ in range(e):
                if pow(u, n // q, self.p) == 1:
                    n //= q
                else:
                    break
        return n

    def norm_one_order(self, u: Fp2) -> int:
        """Order of u in the norm-one subgroup of F_p^2 (divides p + 1)."""
        if u.is_zero():
            raise ZeroElement("order of zero")
        if u.norm() != 1:
            raise ValueError("element is not of norm 1")
        n = self.p + 1
        one = Fp2(1, 0, self)
        for q, e in self._fact_pp1.items():
            for _ in range(e):
                if (u ** (n // q)) == one:
                    n //= q
                else:
                    break
        return n

    # -- characteristic roots ------------------------------------------------

    def char_root(self, t: int) -> RootInfo:
        """Solve lambda^2 - t*lambda + 1 = 0 and classify t.

        t = +/-2 is parabolic with order p by convention.  Otherwise the
        root chi = (t + sqrt(t^2-4)) / 2 is taken with the deterministic
        square root; hyperbolic roots live in F_p*, elliptic ones in the
        norm-one subgroup of F_p^2.
        """
        p = self.p
        t %= p
        if t == 2:
            return RootInfo(kind="parabolic", order=p, sign=1)
        if t == p - 2:
            return RootInfo(kind="parabolic", order=p, sign=-1)
        disc = (t * t - 4) % p
        r = self.sqrt(disc)
        if r is not None:
            chi = (t + r) * self.half % p
            return RootInfo(kind="hyperbolic", order=self.order(chi), chi=chi)
        # disc is a nonresidue: chi = (t + sqrt(disc))/2 with
        # sqrt(disc) = s*sqrt(omega) where s^2 = disc/omega.
        s = self.sqrt(disc * self.inv(self.omega) % p)
        assert s is not None
        chi2 = Fp2(t * self.half % p, s * self.half % p, self)
        assert chi2.norm() == 1
        return RootInfo(kind="elliptic", order=self.norm_one_order(chi2), chi2=chi2)

    def value_order(self, t: int) -> int:
        """Order of a value t of F_p: ord(chi) with chi + 1/chi = t, p at +/-2."""
        return self.char_root(t).order


@lru_cache(maxsize=64)
def get_field(p: int) -> PrimeField:
    """Shared, cached PrimeField instances (immutable, thread-safe)."""
    return PrimeField(p)
