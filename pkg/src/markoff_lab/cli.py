"""Command-line front end.

Subcommands:
  classify          degeneracy class, discriminant, canonical form,
                    generator availability for one parameter quadruple
  census            orbit census for one prime
  sweep             censuses over a prime range + summary CSV + manifest
  conic             one slice: classification, partition, prediction
  obstruction       degenerate-case partition report
  verify-identities the exact symbolic identity suite

Exit codes: 0 success, 1 usage error, 2 verdict failure (an assertion the
theory makes failed empirically, or an identity check failed).

Examples:
  markoff-lab classify --params 2,2,0,3 --prime 11
  markoff-lab census --params 0,0,0,0 --prime 101 --group gamma --out census.json
  markoff-lab sweep --params 0,0,0,0 --primes 5..101 --out sweep_out/
  markoff-lab conic --params 0,0,0,0 --prime 101 --axis 1 --value 3
  markoff-lab obstruction --params 2,2,2,7 --prime 13
  markoff-lab verify-identities
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from . import engine as eng
from . import obstruction as ob
from .conics import (
    STABILIZER,
    TWO_VIETA,
    classify_slice,
    slice_orbit_partition,
    slice_size_formula,
)
from .field import is_prime
from .identities import identity_suite
from .surface import (
    GAMMA,
    GAMMA_H,
    GAMMA_PRIME,
    Params,
    canonical_params,
    degeneracy_class,
    degeneracy_class_mod,
    generators,
    params_mod,
    quartic_discriminant,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERDICT = 2

_GROUPS = {"gamma": GAMMA, "gamma-h": GAMMA_H, "gamma-prime": GAMMA_PRIME}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _parse_params(text: str) -> Params:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError("--params needs four comma-separated integers A,B,C,D")
    return Params(*(int(s.strip()) for s in parts))


def _parse_prime(value: int) -> int:
    if value < 5 or not is_prime(value):
        raise ValueError(f"--prime must be a prime >= 5, got {value}")
    return value


def _parse_prime_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition("..")
    if not _:
        raise ValueError("--primes must look like LO..HI")
    return int(lo), int(hi)


def _primes_in(lo: int, hi: int) -> list[int]:
    return [n for n in range(max(lo, 5), hi + 1) if is_prime(n)]


def _atomic_write(path: str, payload: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(payload: dict, out: str | None) -> str:
    text = json.dumps(payload, indent=2) + "\n"
    if out:
        _atomic_write(out, text)
    else:
        sys.stdout.write(text)
    return text


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------

def cmd_classify(args) -> int:
    q = args.params
    integral = degeneracy_class(q)
    canon, _ = canonical_params(q)
    payload = {
        "params": [q.A, q.B, q.C, q.D],
        "discriminant": quartic_discriminant(q),
        "canonical": [canon.A, canon.B, canon.C, canon.D],
        "integral": {
            "degenerate": integral.degenerate,
            "witness": None if not integral.degenerate else
            [integral.witness.A, integral.witness.B, integral.witness.C, integral.witness.D],
            "equal_triple": integral.equal_triple,
        },
    }
    if args.prime:
        pm = params_mod(q.A, q.B, q.C, q.D, args.prime)
        modp = degeneracy_class_mod(pm)
        payload["mod_p"] = {
            "p": args.prime,
            "degenerate": modp.degenerate,
            "witness": None if not modp.degenerate else
            [modp.witness.A, modp.witness.B, modp.witness.C, modp.witness.D],
            "equal_triple": modp.equal_triple,
            "generators": {name: list(generators(pm, sel)) for name, sel in _GROUPS.items()},
        }
    _emit(payload, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# census
# ---------------------------------------------------------------------------

def _census_payload(q: Params, p: int, group: str, threshold: int, workers: int) -> tuple[dict, bool]:
    pm = params_mod(q.A, q.B, q.C, q.D, p)
    index = eng.enumerate_points(pm, workers=workers)
    labeling = eng.components(index, group)
    cens = eng.census(index, labeling, threshold)
    payload = cens.to_json()
    payload["point_count_sane"] = eng.point_count_sane(index)
    return payload, bool(payload["point_count_sane"])


def cmd_census(args) -> int:
    payload, sane = _census_payload(
        args.params, args.prime, args.group, args.threshold, args.workers
    )
    _emit(payload, args.out)
    return EXIT_OK if sane else EXIT_VERDICT


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def _sweep_one(q: Params, p: int, group: str, threshold: int) -> dict:
    t0 = time.perf_counter()
    pm = params_mod(q.A, q.B, q.C, q.D, p)
    index = eng.enumerate_points(pm, workers=1)
    gamma = eng.components(index, GAMMA)
    gprime = eng.components(index, GAMMA_PRIME)
    if group == GAMMA:
        labeling = gamma
    elif group == GAMMA_PRIME:
        labeling = gprime
    else:
        labeling = eng.components(index, group)
    cens = eng.census(index, labeling, threshold)
    comparison = eng.gamma_prime_comparison(index, gamma, gprime, threshold)
    deg = degeneracy_class_mod(pm)

    failures = []
    if not eng.point_count_sane(index):
        failures.append("point-count out of p^2 + O(p) range")
    if comparison["gamma_prime_transitive_on_bulk"] and not comparison["gamma_transitive_on_bulk"]:
        failures.append("full group transitive but Vieta group is not")

    obstruction_classes = "-"
    min_order = None
    bound = None
    if deg.degenerate:
        report = ob.partition_report(index, gamma, gprime, threshold)
        obstruction_classes = 4 if deg.equal_triple else 2
        if not report["two_class"]["invariance_holds"]:
            failures.append("obstruction class crossed by an edge")
        if not report["two_class"]["both_nonempty"]:
            failures.append("an obstruction class is empty")
    else:
        check = eng.min_order_check(index, gamma, q, threshold)
        min_order = check["min_order"]
        bound = check["bound"]
        if not check["passed"]:
            failures.append("a bulk point falls below the order lower bound")

    payload = cens.to_json()
    payload["point_count_sane"] = eng.point_count_sane(index)
    payload["group_comparison"] = comparison
    n_giant = sum(1 for c in payload["components"] if c["tag"] == eng.GIANT)

    return {
        "prime": p,
        "payload": payload,
        "wall_time_s": time.perf_counter() - t0,
        "failures": failures,
        "csv_row": {
            "prime": p,
            "total_points": payload["total_points"],
            "n_components": len(payload["components"]),
            "n_giant": n_giant,
            "shape_verdict": payload["verdict"],
            "min_order": min_order if min_order is not None else "-",
            "bound": f"{bound:.6f}" if bound is not None else "-",
            "obstruction_classes": obstruction_classes,
        },
    }


def cmd_sweep(args) -> int:
    lo, hi = args.primes
    primes = _primes_in(lo, hi)
    if not primes:
        print(f"no usable primes in {lo}..{hi}", file=sys.stderr)
        return EXIT_USAGE
    outdir = args.out or "."
    os.makedirs(outdir, exist_ok=True)
    q = args.params
    started = time.strftime("%Y-%m-%dT%H:%M:%S%z")

    results: dict[int, dict] = {}
    if args.workers > 1:
        with ThreadPoolExecutor(max_workers=args.workers) as pool:
            for r in pool.map(lambda p: _sweep_one(q, p, args.group, args.threshold), primes):
                results[r["prime"]] = r
    else:
        for p in primes:
            results[p] = _sweep_one(q, p, args.group, args.threshold)

    manifest_entries = []
    all_failures = []
    rows = []
    for p in primes:
        r = results[p]
        text = json.dumps(r["payload"], indent=2) + "\n"
        fname = f"census_p{p}.json"
        _atomic_write(os.path.join(outdir, fname), text)
        manifest_entries.append({
            "prime": p,
            "report": fname,
            "sha256": _digest(text),
            "wall_time_s": round(r["wall_time_s"], 6),
        })
        rows.append(r["csv_row"])
        for fail in r["failures"]:
            all_failures.append(f"p={p}: {fail}")

    fieldnames = ["prime", "total_points", "n_components", "n_giant",
                  "shape_verdict", "min_order", "bound", "obstruction_classes"]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    _atomic_write(os.path.join(outdir, "summary.csv"), buf.getvalue())

    manifest = {
        "tool_version": __version__,
        "params": [q.A, q.B, q.C, q.D],
        "primes": primes,
        "group": args.group,
        "threshold": args.threshold,
        "workers": args.workers,
        "started_at": started,
        "finished_at": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        "reports": manifest_entries,
        "failures": all_failures,
    }
    _atomic_write(os.path.join(outdir, "manifest.json"),
                  json.dumps(manifest, indent=2) + "\n")

    if all_failures:
        for f in all_failures:
            print(f"VERDICT FAILURE {f}", file=sys.stderr)
        return EXIT_VERDICT
    return EXIT_OK


# ---------------------------------------------------------------------------
# conic
# ---------------------------------------------------------------------------

def cmd_conic(args) -> int:
    q = args.params
    pm = params_mod(q.A, q.B, q.C, q.D, args.prime)
    report = classify_slice(args.axis, args.value, pm)
    partition = slice_orbit_partition(args.axis, args.value, pm, TWO_VIETA)
    stab = slice_orbit_partition(args.axis, args.value, pm, STABILIZER)
    blocks = sorted((len(b) for b in partition), reverse=True)
    actual_transitive = len(partition) == 1 if partition else None
    root = report.root
    payload = {
        "params": [q.A, q.B, q.C, q.D],
        "p": args.prime,
        "axis": args.axis,
        "value": args.value % args.prime,
        "class": report.kind,
        "root": {
            "kind": root.kind,
            "order": root.order,
            "chi": root.chi if root.kind == "hyperbolic" else (
                [root.chi2.a, root.chi2.b] if root.kind == "elliptic" else None),
            "sign": root.sign,
        },
        "kappa": report.kappa,
        "quartic_value": report.f_value,
        "size": report.size,
        "size_formula": slice_size_formula(args.axis, args.value, pm),
        "two_vieta_blocks": blocks,
        "stabilizer_blocks": sorted((len(b) for b in stab), reverse=True),
        "predicted_transitive": report.predicted_transitive,
        "actual_transitive": actual_transitive,
    }
    _emit(payload, args.out)
    bad = payload["size"] != payload["size_formula"]
    if report.predicted_transitive is not None and actual_transitive is not None:
        bad = bad or (report.predicted_transitive != actual_transitive)
    return EXIT_VERDICT if bad else EXIT_OK


# ---------------------------------------------------------------------------
# obstruction
# ---------------------------------------------------------------------------

def cmd_obstruction(args) -> int:
    q = args.params
    pm = params_mod(q.A, q.B, q.C, q.D, args.prime)
    deg = degeneracy_class_mod(pm)
    if not deg.degenerate:
        print(f"{q.A},{q.B},{q.C},{q.D} is not degenerate mod {args.prime}",
              file=sys.stderr)
        return EXIT_USAGE
    index = eng.enumerate_points(pm, workers=args.workers)
    gamma = eng.components(index, GAMMA)
    gprime = eng.components(index, GAMMA_PRIME)
    report = ob.partition_report(index, gamma, gprime, args.threshold)
    _emit(report, args.out)
    ok = report["two_class"]["invariance_holds"] and report["two_class"]["both_nonempty"]
    if "four_class" in report:
        fc = report["four_class"]
        ok = ok and fc["invariance_holds"] and fc["n_patterns"] == 4 \
            and fc["gamma_prime_merges_mixed"] and fc["all_plus_stays_separate"]
    return EXIT_OK if ok else EXIT_VERDICT


# ---------------------------------------------------------------------------
# verify-identities
# ---------------------------------------------------------------------------

def cmd_verify_identities(args) -> int:
    results = identity_suite()
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERDICT


# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="markoff-lab",
                     description="Orbit structure of Markoff-type surfaces over prime fields")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, prime_required=True):
        sp.add_argument("--params", type=_parse_params, required=True,
                        metavar="A,B,C,D", help="integer coefficients")
        if prime_required:
            sp.add_argument("--prime", type=int, required=True)
        sp.add_argument("--out", default=None, help="write JSON here (atomic)")

    sp = sub.add_parser("classify", help="degeneracy and symmetry data for a quadruple")
    sp.add_argument("--params", type=_parse_params, required=True, metavar="A,B,C,D")
    sp.add_argument("--prime", type=int, default=None)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("census", help="orbit census for one prime")
    add_common(sp)
    sp.add_argument("--group", choices=sorted(_GROUPS), default="gamma")
    sp.add_argument("--threshold", type=int, default=eng.DEFAULT_THRESHOLD)
    sp.add_argument("--workers", type=int, default=eng.default_workers())
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("sweep", help="censuses over a prime range")
    sp.add_argument("--params", type=_parse_params, required=True, metavar="A,B,C,D")
    sp.add_argument("--primes", type=_parse_prime_range, required=True, metavar="LO..HI")
    sp.add_argument("--group", choices=sorted(_GROUPS), default="gamma")
    sp.add_argument("--threshold", type=int, default=eng.DEFAULT_THRESHOLD)
    sp.add_argument("--workers", type=int, default=eng.default_workers())
    sp.add_argument("--out", default=None, help="output directory")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("conic", help="slice report for one axis value")
    add_common(sp)
    sp.add_argument("--axis", type=int, choices=(1, 2, 3), required=True)
    sp.add_argument("--value", type=int, required=True)
    sp.set_defaults(func=cmd_conic)

    sp = sub.add_parser("obstruction", help="degenerate-case partition report")
    add_common(sp)
    sp.add_argument("--threshold", type=int, default=eng.DEFAULT_THRESHOLD)
    sp.add_argument("--workers", type=int, default=eng.default_workers())
    sp.set_defaults(func=cmd_obstruction)

    sp = sub.add_parser("verify-identities", help="run the exact identity suite")
    sp.set_defaults(func=cmd_verify_identities)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if hasattr(args, "prime") and args.prime is not None:
            args.prime = _parse_prime(args.prime)
    except ValueError as exc:
        print(f"markoff-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"markoff-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
