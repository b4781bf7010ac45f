"""Command line surface: classify single integers, dump local certificates,
list exceptional integers, emit per-n reports, and run the three-way
verification (enumeration vs squareclass spec vs general criterion) over
the whole catalog.

stdout is deterministic; wall-clock timings go to stderr.  Exit status is
0 when everything passed, 1 when a verification found mismatches, 2 for
usage and I/O failures.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from functools import partial
from multiprocessing import Pool
from pathlib import Path
from time import perf_counter

import numpy as np

from .arith import is_padic_square
from .catalog import CatalogError, CatalogFile, GenusRecord, dumps, load_catalog, load_default_catalog
from .forms_core import BoundOverflowError, RepresentedSet, enumerate_represented
from .local_solver import (
    genus_mask,
    lemma71_excluded,
    lemma72_excluded,
    lemma73_excluded,
    local_mask,
    local_represents,
    unramified_shortcut,
)
from .spinor_theory import (
    EXCEPTIONAL,
    LOCALLY_EXCLUDED,
    REPRESENTED,
    spinor_exceptional_general,
    squareclass_match,
)

DEFAULT_BOUND = 50000

__all__ = [
    "VerificationReport",
    "mt_mask",
    "squareclass_mask",
    "exceptional_general_mask",
    "closed_form_missed_mask",
    "verify_record",
    "verify_records",
    "write_report",
    "main",
]


@dataclass
class VerificationReport:
    rid: str
    bound: int
    represented: int
    exceptional: int
    locally_excluded: int
    mismatches: list[int] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{self.rid} bound={self.bound} represented={self.represented} "
            f"exceptional={self.exceptional} locally_excluded={self.locally_excluded} "
            f"mismatches={len(self.mismatches)} {status}"
        )


# ------------------------------------------------------------- bulk masks

def mt_mask(t: int, wmax: int) -> np.ndarray:
    """mask[w] == (w in M_t) for 0 <= w <= wmax (index 0 is False)."""
    ok = np.ones(wmax + 1, dtype=bool)
    ok[0] = False
    if wmax < 2:
        return ok
    sieve = np.ones(wmax + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, wmax + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
            if not is_padic_square(p, -t):
                ok[p::p] = False
    return ok


def squareclass_mask(spec, bound: int) -> np.ndarray:
    """mask[n] == (n in some s*Mt^2 squareclass of `spec`) for 0 <= n <= bound."""
    out = np.zeros(bound + 1, dtype=bool)
    for s, t in spec:
        ws = np.flatnonzero(mt_mask(t, math.isqrt(bound // s)))
        out[s * ws * ws] = True
    return out


def exceptional_general_mask(
    rec: GenusRecord, bound: int, genus: np.ndarray | None = None
) -> np.ndarray:
    """Spinor-exceptional verdicts from the general criterion, evaluated
    pointwise on the genus-represented integers."""
    if genus is None:
        genus = genus_mask(rec, bound)
    out = np.zeros(bound + 1, dtype=bool)
    for n in np.flatnonzero(genus[1:]) + 1:
        out[n] = spinor_exceptional_general(rec, int(n))
    return out


def closed_form_missed_mask(rid: str, bound: int) -> np.ndarray | None:
    """For B4 and B11: the non-represented set as congruence classes plus
    squareclasses, assembled from the per-prime exclusion predicates.
    None for every other record."""
    if rid not in ("B4", "B11"):
        return None
    n = np.arange(bound + 1)
    if rid == "B4":
        two_adic = (n % 4 == 2) | (n % 16 == 8)
    else:
        two_adic = (n % 8 == 5) | (n % 4 == 2) | (n % 4 == 3) | (n % 16 == 8) | (n % 16 == 12)
    three_adic = np.fromiter(
        (lemma73_excluded(int(k)) for k in n[1:]), dtype=bool, count=bound
    )
    out = two_adic
    out[1:] |= three_adic
    out |= squareclass_mask(((1, 3), (4, 3)), bound)
    out[0] = False
    return out


# ------------------------------------------------------------ verification

def verify_record(rec: GenusRecord, bound: int) -> VerificationReport:
    """Check, for every n <= bound, that the three routes agree:
    (genus-represented and not enumerated) == squareclass spec ==
    general criterion; for B4 and B11 additionally that the enumerated
    set matches the closed-form characterization of what the form misses.
    """
    t0 = perf_counter()
    rs = enumerate_represented(rec.sgi_forms[0], bound)
    rep = rs.member_mask().copy()
    gen = genus_mask(rec, bound).copy()
    rep[0] = gen[0] = False
    spec = squareclass_mask(rec.exceptional_spec, bound)
    crit = exceptional_general_mask(rec, bound, gen)
    enum_exc = gen & ~rep
    agree = (enum_exc == spec) & (spec == crit)
    bad = set((np.flatnonzero(~agree[1:]) + 1).tolist())
    closed = closed_form_missed_mask(rec.rid, bound)
    if closed is not None:
        bad.update((np.flatnonzero(closed[1:] != ~rep[1:]) + 1).tolist())
    return VerificationReport(
        rid=rec.rid,
        bound=bound,
        represented=int(rep[1:].sum()),
        exceptional=int(enum_exc[1:].sum()),
        locally_excluded=int(bound - gen[1:].sum()),
        mismatches=sorted(bad),
        seconds=perf_counter() - t0,
    )


def verify_records(records, bound: int, jobs: int = 1) -> list[VerificationReport]:
    records = list(records)
    if jobs > 1 and len(records) > 1:
        with Pool(jobs) as pool:
            return pool.map(partial(_verify_job, bound=bound), records)
    return [verify_record(rec, bound) for rec in records]


def _verify_job(rec: GenusRecord, bound: int) -> VerificationReport:
    return verify_record(rec, bound)


# ----------------------------------------------------------------- report

def _classification_rows(rec: GenusRecord, bound: int):
    rs = enumerate_represented(rec.sgi_forms[0], bound)
    spec = squareclass_mask(rec.exceptional_spec, bound)
    locals_ = [
        (p, local_mask(rec.sgi_forms[0], p, bound)) for p in rec.ramified_primes()
    ]
    for n in range(1, bound + 1):
        failing = next((p for p, mask in locals_ if not mask[n]), None)
        if failing is not None:
            yield n, LOCALLY_EXCLUDED, f"p={failing}"
        elif spec[n]:
            s, t = squareclass_match(rec.exceptional_spec, n)
            yield n, EXCEPTIONAL, f"s={s},t={t}"
        else:
            wit = rs.witness(n)
            if wit is None:
                yield n, "INCONSISTENT", "no witness"
            else:
                yield n, REPRESENTED, f"({wit.x},{wit.y},{wit.z})"


def write_report(records, bound: int, stream) -> int:
    """Tab-separated per-n verdicts, one block per record.  Returns the
    number of INCONSISTENT rows (0 in a healthy run)."""
    bad = 0
    for rec in records:
        counts = {REPRESENTED: 0, EXCEPTIONAL: 0, LOCALLY_EXCLUDED: 0, "INCONSISTENT": 0}
        rows = []
        for n, verdict, detail in _classification_rows(rec, bound):
            counts[verdict] += 1
            rows.append(f"{n}\t{verdict}\t{detail}")
        stream.write(
            f"# record {rec.rid} bound={bound}"
            f" represented={counts[REPRESENTED]}"
            f" exceptional={counts[EXCEPTIONAL]}"
            f" locally_excluded={counts[LOCALLY_EXCLUDED]}\n"
        )
        stream.write("\n".join(rows))
        stream.write("\n")
        bad += counts["INCONSISTENT"]
    return bad


# ------------------------------------------------------------ subcommands

def _records_for(catalog: CatalogFile, ident: str) -> list[GenusRecord]:
    if ident == "all":
        return list(catalog.records)
    return [catalog.lookup(ident)]


def cmd_classify(catalog: CatalogFile, args) -> int:
    rec = catalog.lookup(args.record)
    bound = args.bound if args.bound is not None else max(args.n, 16)
    if bound < args.n:
        raise CatalogError(f"--bound {bound} is below n={args.n}")
    from .spinor_theory import classify

    rs = enumerate_represented(rec.sgi_forms[0], bound)
    result = classify(rec, args.n, rs)
    if result.verdict == REPRESENTED:
        w = result.witness
        print(f"{REPRESENTED} ({w.x},{w.y},{w.z})")
    elif result.verdict == EXCEPTIONAL:
        s, t = result.matched
        print(f"{EXCEPTIONAL}, matched (s={s}, t={t})")
    else:
        print(f"{LOCALLY_EXCLUDED}, fails at p={result.failing_prime}")
    return 0


def cmd_verify(catalog: CatalogFile, args) -> int:
    reports = verify_records(_records_for(catalog, args.record), args.bound, args.jobs)
    ok = True
    for rep in reports:
        print(rep.summary())
        for n in rep.mismatches:
            print(f"MISMATCH {rep.rid} n={n}")
        print(f"{rep.rid}: {rep.seconds:.2f}s", file=sys.stderr)
        ok = ok and rep.passed
    return 0 if ok else 1


def cmd_local(catalog: CatalogFile, args) -> int:
    rec = catalog.lookup(args.record)
    form = rec.sgi_forms[0]
    verdict = local_represents(form, args.p, args.n)
    if verdict.representable:
        note = " (unramified shortcut)" if unramified_shortcut(form, args.p) else ""
        x = ",".join(str(c) for c in verdict.residue)
        print(
            f"representable: x=({x}) with F(x) = {args.n} mod "
            f"{args.p}^{2 * verdict.precision + 1}, gradient order "
            f"{verdict.grad_ord}{note}"
        )
    else:
        print(f"non-representable: exhausted mod {args.p}^{verdict.precision}")
    return 0


def cmd_exceptional_list(catalog: CatalogFile, args) -> int:
    rec = catalog.lookup(args.record)
    for n in np.flatnonzero(squareclass_mask(rec.exceptional_spec, args.bound)):
        print(int(n))
    return 0


def cmd_report(catalog: CatalogFile, args) -> int:
    records = _records_for(catalog, args.record)
    if args.output is None:
        bad = write_report(records, args.bound, sys.stdout)
    else:
        with open(args.output, "w") as fh:
            bad = write_report(records, args.bound, fh)
    return 0 if bad == 0 else 1


def cmd_catalog_dump(catalog: CatalogFile, args) -> int:
    text = dumps(catalog)
    if args.output is None:
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text)
    return 0


# ----------------------------------------------------------------- parser

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinor-ternary",
        description="classify and verify integers against the 29 spinor "
        "regular but not regular ternary forms",
    )
    parser.add_argument("--catalog", metavar="PATH", help="catalog file overriding the embedded one")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="verdict for one integer")
    p.add_argument("record")
    p.add_argument("n", type=int)
    p.add_argument("--bound", type=int, default=None, help="enumeration bound (default: n)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="three-way set equality check")
    p.add_argument("record", help="record id or 'all'")
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("local", help="certified p-adic verdict")
    p.add_argument("record")
    p.add_argument("p", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_local)

    p = sub.add_parser("exceptional-list", help="exceptional integers up to a bound")
    p.add_argument("record")
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    p.set_defaults(func=cmd_exceptional_list)

    p = sub.add_parser("report", help="tab-separated verdict per integer")
    p.add_argument("record", help="record id or 'all'")
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    p.add_argument("--output", metavar="PATH", default=None)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("catalog-dump", help="print the catalog in its file format")
    p.add_argument("--output", metavar="PATH", default=None)
    p.set_defaults(func=cmd_catalog_dump)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        catalog = load_catalog(args.catalog) if args.catalog else load_default_catalog()
        return args.func(catalog, args)
    except (CatalogError, BoundOverflowError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
