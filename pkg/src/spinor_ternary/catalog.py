"""Catalog of the 29 genera split into two spinor genera, with per-prime
local data (Jordan splitting, spinor norm group, order cutoffs) and the
closed-form exceptional squareclasses.

The on-disk format is line-oriented text: a `version 1` header, then
blank-line-separated records of `id`/`delta`/`sgi`/`sgii`/`local`/
`exceptional` lines.  `#` lines are comments.
"""

from __future__ import annotations

import importlib.resources
import re
from dataclasses import dataclass, field
from pathlib import Path

from .arith import is_padic_square
from .forms_core import TernaryForm, discriminant, is_positive_definite
from .local_solver import LocalSplitting
from .spinor_theory import OddBoundType, normgroup_is_closed

__all__ = [
    "CatalogError",
    "LocalData",
    "GenusRecord",
    "CatalogFile",
    "loads",
    "dumps",
    "load_catalog",
    "load_default_catalog",
    "lookup",
]

_EXC_TOKEN = re.compile(r"^(\d*)M(\d+)$")
_SUBCASES = {
    "(b)(i)", "(b)(ii)", "(b)(iii)", "(b)(iv)", "(c)(iii)",
    "(i)(alpha)", "(i)(beta)", "(ii)(alpha)", "(ii)(beta)", "(ii)(gamma)",
}


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class LocalData:
    """What the catalog knows about one ramified prime of a record."""

    p: int
    splitting: LocalSplitting
    theta: tuple[int, ...]
    lam: int | None = None          # order cutoff at 2; groups A and B only
    subcase: str | None = None      # label of the tabulated 2-adic structure case
    scaled: bool = False            # splitting describes the 2-scaled lattice

    @property
    def odd_bound(self) -> OddBoundType | None:
        if self.p == 2:
            return None
        return OddBoundType.from_exponents(self.splitting.exponents())


@dataclass(frozen=True)
class GenusRecord:
    rid: str
    delta: int
    sgi_forms: tuple[TernaryForm, ...]
    sgii_forms: tuple[TernaryForm, ...]
    local_data: dict[int, LocalData] = field(compare=True)
    exceptional_spec: tuple[tuple[int, int], ...] = ()

    def ramified_primes(self) -> tuple[int, ...]:
        return tuple(sorted(self.local_data))

    def all_forms(self) -> tuple[TernaryForm, ...]:
        return self.sgi_forms + self.sgii_forms

    @property
    def group(self) -> str:
        return self.rid[0]


@dataclass(frozen=True)
class CatalogFile:
    version: int
    records: tuple[GenusRecord, ...]

    def lookup(self, rid: str) -> GenusRecord:
        for rec in self.records:
            if rec.rid == rid:
                return rec
        raise CatalogError(f"unknown record id {rid!r}")


def lookup(catalog: CatalogFile, rid: str) -> GenusRecord:
    return catalog.lookup(rid)


# ---------------------------------------------------------------- parsing

def _parse_form(text: str, where: str) -> TernaryForm:
    parts = text.split(",")
    if len(parts) != 6:
        raise CatalogError(f"{where}: form needs 6 coefficients, got {text!r}")
    try:
        return TernaryForm(*(int(x) for x in parts))
    except ValueError as exc:
        raise CatalogError(f"{where}: {exc}") from None


def _parse_splitting(p: int, text: str, where: str) -> LocalSplitting:
    comps = []
    for tok in text.split(","):
        head, sep, exp = tok.partition(":")
        if not sep:
            raise CatalogError(f"{where}: bad splitting token {tok!r}")
        try:
            k = int(exp)
        except ValueError:
            raise CatalogError(f"{where}: bad splitting token {tok!r}") from None
        if head in ("H", "A"):
            comps.append((head, k))
        else:
            try:
                comps.append(("diag", int(head), k))
            except ValueError:
                raise CatalogError(f"{where}: bad splitting token {tok!r}") from None
    return LocalSplitting(p, tuple(comps))


def _parse_local(rest: str, where: str) -> LocalData:
    toks = rest.split()
    if not toks:
        raise CatalogError(f"{where}: empty local line")
    try:
        p = int(toks[0])
    except ValueError:
        raise CatalogError(f"{where}: bad prime {toks[0]!r}") from None
    splitting = None
    theta = None
    lam = None
    subcase = None
    scaled = False
    for tok in toks[1:]:
        key, sep, val = tok.partition("=")
        if tok == "scaled":
            scaled = True
        elif key == "splitting" and sep:
            splitting = _parse_splitting(p, val, where)
        elif key == "theta" and sep:
            if not (val.startswith("{") and val.endswith("}")):
                raise CatalogError(f"{where}: theta wants {{..}}, got {val!r}")
            theta = tuple(int(x) for x in val[1:-1].split(","))
        elif key == "lambda" and sep:
            lam = int(val)
        elif key == "subcase" and sep:
            subcase = val
        else:
            raise CatalogError(f"{where}: unknown token {tok!r}")
    if splitting is None or theta is None:
        raise CatalogError(f"{where}: local line needs splitting= and theta=")
    return LocalData(p, splitting, theta, lam, subcase, scaled)


def _parse_exceptional(rest: str, where: str) -> tuple[tuple[int, int], ...]:
    out = []
    for tok in rest.split():
        m = _EXC_TOKEN.match(tok)
        if not m:
            raise CatalogError(f"{where}: bad squareclass token {tok!r}")
        out.append((int(m.group(1) or 1), int(m.group(2))))
    if not out:
        raise CatalogError(f"{where}: empty exceptional line")
    return tuple(out)


def _build_record(lines: list[tuple[int, str]]) -> GenusRecord:
    lineno, first = lines[0]
    if not first.startswith("id "):
        raise CatalogError(f"line {lineno}: record must start with an id line")
    rid = first[3:].strip()
    where = f"record {rid}"
    delta = None
    sgi: list[TernaryForm] = []
    sgii: list[TernaryForm] = []
    local: dict[int, LocalData] = {}
    exceptional = None
    for lineno, line in lines[1:]:
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "delta":
            delta = int(rest)
        elif key == "sgi":
            sgi.append(_parse_form(rest, where))
        elif key == "sgii":
            sgii.append(_parse_form(rest, where))
        elif key == "local":
            data = _parse_local(rest, where)
            if data.p in local:
                raise CatalogError(f"{where}: duplicate local line for p={data.p}")
            local[data.p] = data
        elif key == "exceptional":
            exceptional = _parse_exceptional(rest, where)
        else:
            raise CatalogError(f"line {lineno}: unknown key {key!r}")
    if delta is None or exceptional is None:
        raise CatalogError(f"{where}: missing delta or exceptional line")
    return GenusRecord(rid, delta, tuple(sgi), tuple(sgii), local, exceptional)


def loads(text: str) -> CatalogFile:
    version = None
    blocks: list[list[tuple[int, str]]] = []
    current: list[tuple[int, str]] = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            if current:
                blocks.append(current)
                current = []
            continue
        if version is None:
            if line != "version 1":
                raise CatalogError(f"line {i}: expected 'version 1', got {line!r}")
            version = 1
            continue
        current.append((i, line))
    if current:
        blocks.append(current)
    if version is None:
        raise CatalogError("missing version header")
    records = tuple(_build_record(b) for b in blocks)
    catalog = CatalogFile(version, records)
    _validate(catalog)
    return catalog


# ------------------------------------------------------------- validation

def _validate_local(rec: GenusRecord, data: LocalData) -> None:
    p = data.p
    where = f"record {rec.rid}, p={p}"
    s = data.splitting
    if s.dimension() != 3:
        raise CatalogError(f"{where}: splitting dimension {s.dimension()} != 3")
    exps = s.exponents()
    if list(exps) != sorted(exps):
        raise CatalogError(f"{where}: splitting exponents not nondecreasing")
    for comp in s.components:
        if comp[0] == "diag":
            if comp[1] % p == 0:
                raise CatalogError(f"{where}: non-unit diagonal {comp[1]}")
        elif p != 2:
            raise CatalogError(f"{where}: {comp[0]}-plane only makes sense at p=2")
    if data.scaled and p != 2:
        raise CatalogError(f"{where}: scaled flag only applies at p=2")
    if p == 2:
        classic = all(x % 2 == 0 for x in rec.sgi_forms[0].coeffs()[3:])
        if data.scaled == classic:
            raise CatalogError(f"{where}: scaled flag inconsistent with the form")
    eff = 2 * rec.delta if data.scaled else rec.delta
    if not is_padic_square(p, s.gram_det() * eff):
        raise CatalogError(f"{where}: splitting determinant in the wrong squareclass")
    if 1 not in data.theta or not normgroup_is_closed(p, data.theta):
        raise CatalogError(f"{where}: theta not a group modulo squares")
    if p == 2:
        wants_lam = rec.group in ("A", "B")
        if wants_lam != (data.lam is not None):
            raise CatalogError(f"{where}: lambda presence wrong for group {rec.group}")
        if data.lam is not None and data.lam < 1:
            raise CatalogError(f"{where}: lambda must be >= 1")
        if data.subcase is not None and data.subcase not in _SUBCASES:
            raise CatalogError(f"{where}: unknown subcase {data.subcase!r}")
    else:
        if data.lam is not None or data.subcase is not None:
            raise CatalogError(f"{where}: lambda/subcase only belong on the p=2 line")
        if data.odd_bound is None:
            raise CatalogError(f"{where}: splitting shape {exps} has no order bound")


def _validate(catalog: CatalogFile) -> None:
    if len(catalog.records) != 29:
        raise CatalogError(f"expected 29 records, found {len(catalog.records)}")
    ids = [rec.rid for rec in catalog.records]
    if len(set(ids)) != len(ids):
        raise CatalogError("duplicate record ids")
    counts = {g: sum(1 for r in catalog.records if r.group == g) for g in "ABC"}
    if counts != {"A": 13, "B": 12, "C": 4}:
        raise CatalogError(f"group counts off: {counts}")
    for rec in catalog.records:
        if not rec.sgi_forms or not rec.sgii_forms:
            raise CatalogError(f"record {rec.rid}: both spinor genera need forms")
        for form in rec.all_forms():
            if not is_positive_definite(form):
                raise CatalogError(f"record {rec.rid}: {form} not positive definite")
            if discriminant(form) != rec.delta:
                raise CatalogError(
                    f"record {rec.rid}: {form} has discriminant "
                    f"{discriminant(form)}, expected {rec.delta}"
                )
        ram = {p for p in (2, 3, 5, 7, 11, 13) if (2 * rec.delta) % p == 0}
        leftover = 2 * rec.delta
        for p in ram:
            while leftover % p == 0:
                leftover //= p
        if leftover != 1:
            raise CatalogError(f"record {rec.rid}: delta has large prime factors")
        if set(rec.local_data) != ram:
            raise CatalogError(
                f"record {rec.rid}: local data for {sorted(rec.local_data)}, "
                f"ramified primes are {sorted(ram)}"
            )
        for p, data in rec.local_data.items():
            if data.p != p:
                raise CatalogError(f"record {rec.rid}: local data keyed by wrong prime")
            _validate_local(rec, data)
        for s, t in rec.exceptional_spec:
            if t not in (1, 2, 3, 7):
                raise CatalogError(f"record {rec.rid}: squareclass with t={t}")
            if s < 1 or any(s % q == 0 for q in (5, 7, 11, 13) if q != t):
                raise CatalogError(f"record {rec.rid}: suspicious scale s={s}")


# ---------------------------------------------------------- serialization

def _splitting_str(s: LocalSplitting) -> str:
    toks = []
    for comp in s.components:
        if comp[0] == "diag":
            toks.append(f"{comp[1]}:{comp[2]}")
        else:
            toks.append(f"{comp[0]}:{comp[1]}")
    return ",".join(toks)


def _exc_token(s: int, t: int) -> str:
    return f"M{t}" if s == 1 else f"{s}M{t}"


def dumps(catalog: CatalogFile) -> str:
    out = [f"version {catalog.version}"]
    for rec in catalog.records:
        out.append("")
        out.append(f"id {rec.rid}")
        out.append(f"delta {rec.delta}")
        for form in rec.sgi_forms:
            out.append("sgi " + ",".join(str(c) for c in form.coeffs()))
        for form in rec.sgii_forms:
            out.append("sgii " + ",".join(str(c) for c in form.coeffs()))
        for p in rec.ramified_primes():
            data = rec.local_data[p]
            line = f"local {p} splitting={_splitting_str(data.splitting)}"
            line += " theta={" + ",".join(str(g) for g in data.theta) + "}"
            if data.lam is not None:
                line += f" lambda={data.lam}"
            if data.subcase is not None:
                line += f" subcase={data.subcase}"
            if data.scaled:
                line += " scaled"
            out.append(line)
        out.append(
            "exceptional " + " ".join(_exc_token(s, t) for s, t in rec.exceptional_spec)
        )
    out.append("")
    return "\n".join(out)


# --------------------------------------------------------------- loading

def load_catalog(path) -> CatalogFile:
    return loads(Path(path).read_text())


def load_default_catalog() -> CatalogFile:
    text = (
        importlib.resources.files("spinor_ternary")
        .joinpath("data/catalog.txt")
        .read_text()
    )
    return loads(text)
