"""Sparse multivariate polynomials over arbitrary-precision integers.

Just enough exact commutative algebra to re-verify the polynomial
identities behind the orbit analysis from scratch: ring arithmetic,
substitution, Sylvester resultants via fraction-free (Bareiss)
elimination, exact division, and reduction modulo a polynomial that is
monic in one variable.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass


class ZeroPolynomial(ValueError):
    """An operation required a nonzero polynomial (or positive degree)."""


class UnknownVariable(KeyError):
    """A variable name is not part of the polynomial's ring."""


def _grlex_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), exps)


@dataclass(frozen=True)
class MultiPoly:
    """Immutable sparse polynomial: map from exponent vectors to nonzero
    integer coefficients, over an ordered tuple of variable names."""

    vars: tuple[str, ...]
    terms: tuple[tuple[tuple[int, ...], int], ...]

    # -- construction --------------------------------------------------------

    @staticmethod
    def make(vars: tuple[str, ...], raw: dict[tuple[int, ...], int]) -> "MultiPoly":
        clean = {e: c for e, c in raw.items() if c != 0}
        ordered = tuple(sorted(clean.items(), key=lambda t: _grlex_key(t[0]), reverse=True))
        return MultiPoly(vars, ordered)

    @staticmethod
    def constant(vars: tuple[str, ...], c: int) -> "MultiPoly":
        if c == 0:
            return MultiPoly(vars, ())
        return MultiPoly(vars, (((0,) * len(vars), c),))

    @staticmethod
    def variable(vars: tuple[str, ...], name: str) -> "MultiPoly":
        if name not in vars:
            raise UnknownVariable(name)
        e = tuple(1 if v == name else 0 for v in vars)
        return MultiPoly(vars, ((e, 1),))

    def _dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.terms)

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- ring operations -----------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, int):
            return MultiPoly.constant(self.vars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented  # type: ignore[return-value]
        if other.vars != self.vars:
            raise ValueError(f"mixed rings: {self.vars} vs {other.vars}")
        return other

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        acc = self._dict()
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return MultiPoly.make(self.vars, acc)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.vars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + self._coerce(other)

    def __mul__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        acc: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return MultiPoly.make(self.vars, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- structure -----------------------------------------------------------

    def _var_index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise UnknownVariable(name) from None

    def degree(self, name: str) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        i = self._var_index(name)
        if not self.terms:
            return -1
        return max(e[i] for e, _ in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e, _ in self.terms)

    def coeff_of(self, name: str, k: int) -> "MultiPoly":
        """Coefficient of name^k, a polynomial in the same ring (name-free)."""
        i = self._var_index(name)
        acc: dict[tuple[int, ...], int] = {}
        for e, c in self.terms:
            if e[i] == k:
                e0 = e[:i] + (0,) + e[i + 1:]
                acc[e0] = acc.get(e0, 0) + c
        return MultiPoly.make(self.vars, acc)

    def leading_term(self) -> tuple[tuple[int, ...], int]:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        return self.terms[0]

    def derivative(self, name: str) -> "MultiPoly":
        i = self._var_index(name)
        acc: dict[tuple[int, ...], int] = {}
        for e, c in self.terms:
            if e[i] == 0:
                continue
            e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
            acc[e2] = acc.get(e2, 0) + c * e[i]
        return MultiPoly.make(self.vars, acc)

    # -- substitution and evaluation ------------------------------------------

    def subst(self, name: str, replacement: "MultiPoly") -> "MultiPoly":
        """Replace one variable by a polynomial of the same ring."""
        i = self._var_index(name)
        if replacement.vars != self.vars:
            raise ValueError("replacement must live in the same ring")
        powers: list[MultiPoly] = [MultiPoly.constant(self.vars, 1)]
        deg = self.degree(name)
        for _ in range(max(deg, 0)):
            powers.append(powers[-1] * replacement)
        total = MultiPoly.constant(self.vars, 0)
        for e, c in self.terms:
            e0 = e[:i] + (0,) + e[i + 1:]
            mono = MultiPoly(self.vars, ((e0, c),))
            total = total + mono * powers[e[i]]
        return total

    def eval(self, assignment: dict[str, int]) -> int:
        for v in self.vars:
            if v not in assignment:
                raise UnknownVariable(f"no value for {v}")
        total = 0
        vals = [assignment[v] for v in self.vars]
        for e, c in self.terms:
            t = c
            for base, exp in zip(vals, e):
                if exp:
                    t *= base ** exp
            total += t
        return total

    # -- display ---------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v
                for v, k in zip(self.vars, e) if k
            )
            if mono:
                parts.append(f"{c}*{mono}" if abs(c) != 1 else ("-" + mono if c == -1 else mono))
            else:
                parts.append(str(c))
        return " + ".join(parts).replace("+ -", "- ")


def variables(*names: str) -> tuple[MultiPoly, ...]:
    """Generators of the ring Z[names...]."""
    vs = tuple(names)
    return tuple(MultiPoly.variable(vs, n) for n in names)


def constant(like: MultiPoly, c: int) -> MultiPoly:
    return MultiPoly.constant(like.vars, c)


# ---------------------------------------------------------------------------
# Exact division
# ---------------------------------------------------------------------------

def divide_exact(f: MultiPoly, g: MultiPoly) -> MultiPoly | None:
    """Quotient f/g when g divides f exactly over Z, else None.

    Greedy leading-term division in graded-lex order; when g | f the
    leading term of the running remainder is always divisible by g's, so
    the loop reconstructs the quotient exactly.
    """
    if g.is_zero():
        raise ZeroPolynomial("division by zero polynomial")
    if f.vars != g.vars:
        raise ValueError("mixed rings")
    quotient: dict[tuple[int, ...], int] = {}
    ge, gc = g.leading_term()
    rem = f
    while not rem.is_zero():
        fe, fc = rem.leading_term()
        qe = tuple(a - b for a, b in zip(fe, ge))
        if any(k < 0 for k in qe) or fc % gc != 0:
            return None
        qc = fc // gc
        quotient[qe] = quotient.get(qe, 0) + qc
        rem = rem - MultiPoly(f.vars, ((qe, qc),)) * g
    return MultiPoly.make(f.vars, quotient)


def reduce_mod_monic(f: MultiPoly, g: MultiPoly, name: str) -> MultiPoly:
    """Remainder of f under univariate division by g in `name`.

    g must be monic in `name` (leading coefficient the constant 1), which
    keeps the division exact over Z; the remainder is zero iff f lies in
    the ideal generated by g.
    """
    dg = g.degree(name)
    if dg < 1:
        raise ZeroPolynomial("divisor must have positive degree in the variable")
    lead = g.coeff_of(name, dg)
    if lead.terms != (((0,) * len(g.vars), 1),):
        raise ValueError(f"divisor is not monic in {name}")
    i = f._var_index(name)
    xv = MultiPoly.variable(f.vars, name)
    rem = f
    while True:
        df = rem.degree(name)
        if df < dg:
            return rem
        top = rem.coeff_of(name, df)
        rem = rem - top * xv ** (df - dg) * g


# ---------------------------------------------------------------------------
# Resultants
# ---------------------------------------------------------------------------

def _bareiss_det(matrix: list[list[MultiPoly]], vars: tuple[str, ...]) -> MultiPoly:
    """Determinant by fraction-free elimination; every division is exact."""
    n = len(matrix)
    m = [row[:] for row in matrix]
    sign = 1
    prev = MultiPoly.constant(vars, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot_row = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if pivot_row is None:
                return MultiPoly.constant(vars, 0)
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                q = divide_exact(num, prev)
                assert q is not None, "Bareiss division was not exact"
                m[i][j] = q
            m[i][k] = MultiPoly.constant(vars, 0)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(f: MultiPoly, g: MultiPoly, name: str) -> MultiPoly:
    """Sylvester resultant of f and g with respect to one variable."""
    df, dg = f.degree(name), g.degree(name)
    if df < 1 or dg < 1:
        raise ZeroPolynomial("resultant needs positive degree in the variable")
    fc = [f.coeff_of(name, df - k) for k in range(df + 1)]
    gc = [g.coeff_of(name, dg - k) for k in range(dg + 1)]
    n = df + dg
    zero = MultiPoly.constant(f.vars, 0)
    rows: list[list[MultiPoly]] = []
    for shift in range(dg):
        rows.append([zero] * shift + fc + [zero] * (n - df - 1 - shift))
    for shift in range(df):
        rows.append([zero] * shift + gc + [zero] * (n - dg - 1 - shift))
    return _bareiss_det(rows, f.vars)


def discriminant(f: MultiPoly, name: str) -> MultiPoly:
    """disc(f) = (-1)^(n(n-1)/2) * res(f, f') / lc(f), computed exactly."""
    n = f.degree(name)
    if n < 1:
        raise ZeroPolynomial("discriminant needs positive degree")
    res = resultant(f, f.derivative(name), name)
    lead = f.coeff_of(name, n)
    q = divide_exact(res, lead)
    if q is None:
        raise ArithmeticError("leading coefficient does not divide the resultant")
    return q if (n * (n - 1) // 2) % 2 == 0 else -q
