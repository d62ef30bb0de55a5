"""Quadratic obstructions to transitivity on degenerate surfaces.

On a surface whose parameters are equivalent mod p to (A, A, C, D) with
4D + A^2 = 8C + 16, the square class of z + 2 (with a fallback quantity
for the boundary) is constant along every Vieta move, splitting the bulk
into two invariant halves.  When the parameters are further equivalent to
an all-equal quadruple (k, k, k, D), each coordinate carries such a label
and exactly four of the eight sign patterns occur; transpositions in the
full symmetry group merge the three mixed patterns and leave the
all-residue class alone.

Points are transported to the normal form before classification, so only
one set of formulas exists here.
"""

from __future__ import annotations

import numpy as np

from .surface import (
    Degeneracy,
    ParamsMod,
    Point,
    Transform,
    degeneracy_class_mod,
    equivalents_mod,
)

S1, S2 = "S1", "S2"


class NotDegenerate(ValueError):
    """The parameters are not degenerate mod p."""


class NotEqualTriple(ValueError):
    """No all-equal degenerate normal form exists for these parameters."""


class BothZero(ValueError):
    """Both classifying quantities vanish: the point is a triple fixed
    point, which belongs to the predicted small orbits, not the bulk."""


def normal_form(pm: ParamsMod) -> tuple[Transform, ParamsMod]:
    """Transform carrying the surface onto its degenerate normal form
    (A' = B', 4D + A'^2 = 8C' + 16), plus the transformed parameters."""
    deg: Degeneracy = degeneracy_class_mod(pm)
    if not deg.degenerate:
        raise NotDegenerate(f"{pm.abc()}, D={pm.D} is not degenerate mod {pm.p}")
    return deg.transform, deg.witness  # type: ignore[return-value]


def equal_triple_form(pm: ParamsMod) -> tuple[Transform, ParamsMod]:
    """Transform onto an all-equal degenerate form (k, k, k, D), when one
    exists; which of (k,k,k) or (-k,-k,-k) is reachable depends on the
    witness and is simply reported, not assumed."""
    p = pm.p
    hits = []
    for q, t in equivalents_mod(pm):
        if q.A == q.B == q.C and (4 * q.D + q.A * q.A) % p == (8 * q.C + 16) % p:
            hits.append((q.abc(), q, t))
    if not hits:
        raise NotEqualTriple(f"{pm.abc()}, D={pm.D} has no all-equal degenerate form mod {pm.p}")
    _, q, t = min(hits, key=lambda h: h[0])
    return t, q


def obstruction_class(pt: Point, pm: ParamsMod) -> str:
    """Two-class label of a point: S1 for the residue side, S2 for the
    nonresidue side, deciding by z + 2 and falling back to the paired
    quantity when that vanishes."""
    f = pm.field
    p = pm.p
    t, w = normal_form(pm)
    x, y, z = t.apply_point(pt, p)
    s1 = f.legendre((z + 2) % p)
    if s1 != 0:
        return S1 if s1 > 0 else S2
    s2 = f.legendre((x * y + 2 * x + 2 * y + w.C - w.A + 4) % p)
    if s2 != 0:
        return S1 if s2 > 0 else S2
    raise BothZero(f"{pt} is a triple fixed point")


def triple_class(pt: Point, pm: ParamsMod) -> tuple[int, int, int]:
    """Raw Legendre triple (chi(x+2), chi(y+2), chi(z+2)) after transport
    to the all-equal normal form; entries may be zero on the boundary."""
    f = pm.field
    p = pm.p
    t, _ = equal_triple_form(pm)
    x, y, z = t.apply_point(pt, p)
    return (f.legendre((x + 2) % p), f.legendre((y + 2) % p), f.legendre((z + 2) % p))


# ---------------------------------------------------------------------------
# Vectorized classification over a whole point index
# ---------------------------------------------------------------------------

def _legendre_array(v: np.ndarray, p: int) -> np.ndarray:
    e = (p - 1) // 2
    result = np.ones_like(v, dtype=np.int64)
    base = v % p
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    out = np.zeros(v.shape, dtype=np.int8)
    out[result == 1] = 1
    out[result == p - 1] = -1
    return out


def _transport(index, t: Transform) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    p = index.pm.p
    coords = (index.xs.astype(np.int64), index.ys.astype(np.int64), index.zs.astype(np.int64))
    return tuple((t.signs[i] * coords[t.perm[i]]) % p for i in range(3))  # type: ignore[return-value]


def two_class_labels(index, pm: ParamsMod) -> np.ndarray:
    """Vector of +1 (S1) / -1 (S2) / 0 (triple fixed point) per point id."""
    p = pm.p
    t, w = normal_form(pm)
    x, y, z = _transport(index, t)
    s1 = _legendre_array((z + 2) % p, p)
    s2 = _legendre_array((x * y + 2 * x + 2 * y + w.C - w.A + 4) % p, p)
    return np.where(s1 != 0, s1, s2)


def sign_triple_labels(index, pm: ParamsMod) -> np.ndarray:
    """(n, 3) array of per-axis two-class labels in the all-equal form.

    Each axis decides by the shifted coordinate and falls back to the
    complementary product quantity, so entries are +/-1 except at triple
    fixed points where a zero survives.
    """
    p = pm.p
    t, _ = equal_triple_form(pm)
    x, y, z = _transport(index, t)
    out = np.empty((index.total, 3), dtype=np.int8)
    for col, (main, other1, other2) in enumerate(((x, y, z), (y, x, z), (z, x, y))):
        s1 = _legendre_array((main + 2) % p, p)
        fb = _legendre_array((other1 * other2 + 2 * other1 + 2 * other2 + 4) % p, p)
        out[:, col] = np.where(s1 != 0, s1, fb)
    return out


def partition_report(index, gamma, gamma_prime, threshold: int = 100) -> dict:
    """Cross-tabulate obstruction classes against connected components.

    Verifies: no Vieta edge crosses classes (every component is pure),
    both halves are nonempty, the zero-labelled points are exactly triple
    fixed points (hence outside the bulk); in the all-equal case, that
    exactly the four even sign patterns occur, and that the full symmetry
    group merges the three mixed patterns but not the all-residue one.
    """
    pm = index.pm
    p = pm.p
    deg = degeneracy_class_mod(pm)
    if not deg.degenerate:
        raise NotDegenerate(f"{pm.abc()}, D={pm.D} is not degenerate mod {p}")

    labels2 = two_class_labels(index, pm)
    zero = labels2 == 0
    comp = gamma.labels
    n_comp = gamma.n_components

    # per-component purity: a component is impure if it holds both signs
    has_pos = np.zeros(n_comp, dtype=bool)
    has_neg = np.zeros(n_comp, dtype=bool)
    has_pos[comp[labels2 == 1]] = True
    has_neg[comp[labels2 == -1]] = True
    impure = has_pos & has_neg
    pure = not bool(impure.any())
    crossing = int(impure.sum())

    counts = {S1: int((labels2 == 1).sum()), S2: int((labels2 == -1).sum())}
    big = gamma.sizes > threshold
    comp_sign = np.zeros(n_comp, dtype=np.int8)
    comp_sign[comp[labels2 == 1]] = 1
    comp_sign[comp[labels2 == -1]] = -1      # safe: components are pure
    big_per_class = {
        S1: int((big & (comp_sign == 1)).sum()),
        S2: int((big & (comp_sign == -1)).sum()),
    }

    report = {
        "params": [pm.A, pm.B, pm.C, pm.D],
        "p": p,
        "threshold": threshold,
        "normal_form": list(normal_form(pm)[1].abc()) + [normal_form(pm)[1].D],
        "equal_triple": deg.equal_triple,
        "two_class": {
            "counts": counts,
            "zero_points": int(zero.sum()),
            "both_nonempty": counts[S1] > 0 and counts[S2] > 0,
            "invariance_holds": pure,
            "components_crossing": crossing,
            "big_components_per_class": big_per_class,
        },
    }

    if deg.equal_triple:
        triples = sign_triple_labels(index, pm)
        full = (triples != 0).all(axis=1)
        pats, pat_counts = np.unique(triples[full], axis=0, return_counts=True)
        pat_keys = ["".join("+" if s > 0 else "-" for s in row) for row in pats]
        # component purity for the four-class partition
        pat_code = (triples[:, 0].astype(np.int16) + 1) * 9 \
            + (triples[:, 1].astype(np.int16) + 1) * 3 + (triples[:, 2] + 1)
        four_pure = True
        order = np.argsort(comp, kind="stable")
        bounds = np.searchsorted(comp[order], np.arange(n_comp + 1))
        comp_pattern = np.full(n_comp, -1, dtype=np.int16)
        for cid in range(n_comp):
            ids = order[bounds[cid]:bounds[cid + 1]]
            codes = set(pat_code[i] for i in ids if full[i])
            if len(codes) > 1:
                four_pure = False
            if codes:
                comp_pattern[cid] = codes.pop() if len(codes) == 1 else -2
        # merge behaviour under the full group
        gp = gamma_prime.labels
        all_plus_code = 2 * 9 + 2 * 3 + 2
        mixed_mask = full & (pat_code != all_plus_code)
        plus_mask = full & (pat_code == all_plus_code)
        merged = False
        if mixed_mask.any():
            gp_comps_mixed = {}
            for i in np.where(mixed_mask)[0]:
                gp_comps_mixed.setdefault(int(gp[i]), set()).add(int(pat_code[i]))
            merged = any(len(s) >= 2 for s in gp_comps_mixed.values())
            three_joined = any(len(s) == 3 for s in gp_comps_mixed.values())
        else:
            three_joined = False
        plus_isolated = True
        if plus_mask.any() and mixed_mask.any():
            gp_plus = set(np.unique(gp[plus_mask]).tolist())
            gp_mixed = set(np.unique(gp[mixed_mask]).tolist())
            plus_isolated = not (gp_plus & gp_mixed)
        big_four = {}
        for cid in np.where(big)[0]:
            code = comp_pattern[cid]
            key = "mixed/unknown"
            if code >= 0:
                s = [(code // 9) - 1, ((code // 3) % 3) - 1, (code % 3) - 1]
                key = "".join("+" if v > 0 else "-" for v in s)
            big_four[key] = big_four.get(key, 0) + 1
        report["four_class"] = {
            "patterns": dict(zip(pat_keys, pat_counts.astype(int).tolist())),
            "n_patterns": int(len(pat_keys)),
            "invariance_holds": four_pure,
            "big_components_per_pattern": big_four,
            "gamma_prime_merges_mixed": bool(merged),
            "gamma_prime_joins_all_three_mixed": bool(three_joined),
            "all_plus_stays_separate": bool(plus_isolated),
        }
    return report
