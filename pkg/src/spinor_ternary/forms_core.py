"""Exact arithmetic on integral ternary quadratic forms.

A form (a,b,c,d,e,f) means ax^2 + by^2 + cz^2 + dyz + exz + fxy.  All
decisions route through the doubled Gram matrix

    M_F = [[2a, f, e],
           [ f, 2b, d],
           [ e,  d, 2c]]

and the identity x^T M_F x = 2 F(x), so non-classic forms (odd d, e or f)
never require half-integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

__all__ = [
    "TernaryForm",
    "Witness",
    "RepresentedSet",
    "DefinitenessError",
    "BoundOverflowError",
    "evaluate",
    "discriminant",
    "is_positive_definite",
    "enumerate_represented",
]

# Intermediates in enumeration must stay well inside signed 64-bit.
_INT64_GUARD = 1 << 62


class DefinitenessError(ValueError):
    """Operation requires a positive definite form."""


class BoundOverflowError(OverflowError):
    """Enumeration intermediates would exceed the 64-bit width contract."""


class Witness(NamedTuple):
    x: int
    y: int
    z: int


@dataclass(frozen=True)
class TernaryForm:
    a: int
    b: int
    c: int
    d: int
    e: int
    f: int

    def coeffs(self) -> tuple[int, int, int, int, int, int]:
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    def gram_doubled(self) -> list[list[int]]:
        """The integer matrix M_F of second partials."""
        a, b, c, d, e, f = self.coeffs()
        return [[2 * a, f, e], [f, 2 * b, d], [e, d, 2 * c]]

    def gram_adjugate(self) -> list[list[int]]:
        """adj(M_F), satisfying adj(M_F) @ M_F = det(M_F) * I."""
        m = self.gram_doubled()
        return [
            [
                m[(i + 1) % 3][(j + 1) % 3] * m[(i + 2) % 3][(j + 2) % 3]
                - m[(i + 1) % 3][(j + 2) % 3] * m[(i + 2) % 3][(j + 1) % 3]
                for i in range(3)
            ]
            for j in range(3)
        ]

    def gram_det(self) -> int:
        m = self.gram_doubled()
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    def gradient(self, v: tuple[int, int, int]) -> tuple[int, int, int]:
        """(dF/dx, dF/dy, dF/dz) at v, i.e. M_F @ v."""
        m = self.gram_doubled()
        x, y, z = v
        return (
            m[0][0] * x + m[0][1] * y + m[0][2] * z,
            m[1][0] * x + m[1][1] * y + m[1][2] * z,
            m[2][0] * x + m[2][1] * y + m[2][2] * z,
        )

    def __str__(self) -> str:
        return "({},{},{},{},{},{})".format(*self.coeffs())


def evaluate(form: TernaryForm, v: tuple[int, int, int]) -> int:
    x, y, z = v
    a, b, c, d, e, f = form.coeffs()
    return a * x * x + b * y * y + c * z * z + d * y * z + e * x * z + f * x * y


def is_positive_definite(form: TernaryForm) -> bool:
    """Sylvester test on the leading principal minors of M_F."""
    m = form.gram_doubled()
    m1 = m[0][0]
    m2 = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    m3 = form.gram_det()
    return m1 > 0 and m2 > 0 and m3 > 0


def discriminant(form: TernaryForm) -> int:
    """Delta = det(M_F) / 2; an integer for integral sextuples."""
    if not is_positive_definite(form):
        raise DefinitenessError(f"form {form} is not positive definite")
    det = form.gram_det()
    if det % 2:
        raise DefinitenessError(f"form {form} has odd det(M_F)")
    return det // 2


class RepresentedSet:
    """Exhaustive membership of {1..bound} under a form, one witness each."""

    def __init__(self, form: TernaryForm, bound: int, member: np.ndarray, wit: np.ndarray):
        self.form = form
        self.bound = bound
        self._member = member  # bool, indexed by n, size bound+1
        self._wit = wit  # int32 (bound+1, 3)

    def __contains__(self, n: int) -> bool:
        return 1 <= n <= self.bound and bool(self._member[n])

    def members(self) -> Iterator[int]:
        for n in np.flatnonzero(self._member):
            yield int(n)

    def member_mask(self) -> np.ndarray:
        """Read-only bool array indexed by n (index 0 unused)."""
        return self._member

    def witness(self, n: int) -> Witness | None:
        if n not in self:
            return None
        return Witness(*(int(t) for t in self._wit[n]))


def _coordinate_bounds(form: TernaryForm, bound: int) -> tuple[int, int, int]:
    # x_i^2 <= 2 * bound * adj(M_F)_ii / det(M_F), exact integer sqrt
    adj = form.gram_adjugate()
    det = form.gram_det()
    return tuple(math.isqrt(2 * bound * adj[i][i] // det) for i in range(3))


def enumerate_represented(form: TernaryForm, bound: int) -> RepresentedSet:
    """Every n in 1..bound with F(v) = n for some integer v, with witnesses.

    Scans x >= 0 only (F(-v) = F(v)) over the ellipsoid box; each x slice
    is evaluated as one numpy grid over (y, z).
    """
    if not is_positive_definite(form):
        raise DefinitenessError(f"form {form} is not positive definite")
    if bound < 1:
        raise ValueError("bound must be >= 1")
    x1, x2, x3 = _coordinate_bounds(form, bound)
    a, b, c, d, e, f = form.coeffs()
    worst = (
        abs(a) * x1 * x1
        + abs(b) * x2 * x2
        + abs(c) * x3 * x3
        + abs(d) * x2 * x3
        + abs(e) * x1 * x3
        + abs(f) * x1 * x2
    )
    if worst >= _INT64_GUARD or 2 * bound * max(
        form.gram_adjugate()[i][i] for i in range(3)
    ) >= _INT64_GUARD:
        raise BoundOverflowError(f"bound {bound} overflows 64-bit intermediates for {form}")

    member = np.zeros(bound + 1, dtype=bool)
    wit = np.zeros((bound + 1, 3), dtype=np.int32)

    ys = np.arange(-x2, x2 + 1, dtype=np.int64)
    zs = np.arange(-x3, x3 + 1, dtype=np.int64)
    col = (b * ys * ys)[:, None] + d * ys[:, None] * zs[None, :] + (c * zs * zs)[None, :]
    for x in range(x1 + 1):
        vals = col + (a * x * x + (f * x) * ys)[:, None] + ((e * x) * zs)[None, :]
        flat = vals.ravel()
        keep = np.flatnonzero((flat >= 1) & (flat <= bound))
        if keep.size == 0:
            continue
        got = flat[keep]
        uvals, first = np.unique(got, return_index=True)
        fresh = ~member[uvals]
        if not fresh.any():
            continue
        uvals = uvals[fresh]
        pos = keep[first[fresh]]
        member[uvals] = True
        wit[uvals, 0] = x
        wit[uvals, 1] = ys[pos // zs.size]
        wit[uvals, 2] = zs[pos % zs.size]
    return RepresentedSet(form, bound, member, wit)
