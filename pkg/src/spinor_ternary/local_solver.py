"""Representability of integers by a ternary form over Z_p.

The generic decision is a breadth-first refinement of primitive residue
classes.  For a primitive vector v known mod p^d, let g be the minimum
p-order of the gradient M_F v.  Once some gradient entry is nonzero mod
p^d (so g < d is exact for every lift), the value set of F on the whole
class is exactly F(v) + p^(d+g) Z_p: the class either certifies a Hensel
lift or is dead, and the verdict is final.  Classes with gradient still
vanishing mod p^d are split one more level.  Splitting cannot continue
past the largest elementary divisor of M_F, so the tree is finite and the
procedure is complete: a target n is represented iff some scaled class
p^j * v accepts n / p^(2j).

The same class tree, run without a target, yields a congruence table of
every primitively represented value; bulk queries go through that table.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import ord_p, sqrt_mod_p
from .forms_core import TernaryForm, evaluate

__all__ = [
    "LocalSplitting",
    "LocalVerdict",
    "local_represents",
    "locally_represented",
    "local_mask",
    "unramified_shortcut",
    "genus_represents",
    "genus_mask",
    "lemma71_excluded",
    "lemma72_excluded",
    "lemma73_excluded",
    "verify_certificate",
]


@dataclass(frozen=True)
class LocalSplitting:
    """Jordan splitting data for L_p: diagonal components (unit, exponent)
    and, at p = 2, the named binary planes H and A with a scale exponent."""

    p: int
    components: tuple[tuple, ...]  # ("diag", unit, exp) | ("H", exp) | ("A", exp)

    def dimension(self) -> int:
        return sum(1 if c[0] == "diag" else 2 for c in self.components)

    def exponents(self) -> list[int]:
        return [c[-1] for c in self.components]

    def gram_det(self) -> int:
        """Determinant of the splitting's Gram matrix."""
        det = 1
        for c in self.components:
            if c[0] == "diag":
                det *= c[1] * self.p ** c[2]
            elif c[0] == "H":
                det *= -(4**c[1])
            else:  # A
                det *= 3 * 4 ** c[1]
        return det

    def to_form(self) -> TernaryForm:
        """A ternary form whose doubled Gram matrix is twice the splitting's
        Gram matrix, so the form takes exactly the splitting's values."""
        if self.dimension() != 3:
            raise ValueError(f"splitting is not ternary: {self.components}")
        gram = np.zeros((3, 3), dtype=object)
        i = 0
        for c in self.components:
            if c[0] == "diag":
                gram[i, i] = c[1] * self.p ** c[2]
                i += 1
            else:
                s = 2**c[1]
                if c[0] == "H":
                    gram[i, i + 1] = gram[i + 1, i] = s
                else:
                    gram[i, i] = gram[i + 1, i + 1] = 2 * s
                    gram[i, i + 1] = gram[i + 1, i] = s
                i += 2
        return TernaryForm(
            a=int(gram[0, 0]),
            b=int(gram[1, 1]),
            c=int(gram[2, 2]),
            d=2 * int(gram[1, 2]),
            e=2 * int(gram[0, 2]),
            f=2 * int(gram[0, 1]),
        )


@dataclass(frozen=True)
class LocalVerdict:
    """Outcome of a Z_p representability decision.

    Representable: residue holds a vector with F(residue) = n mod
    p^(2*precision+1) and minimum gradient order grad_ord <= precision,
    which Hensel-lifts to an exact solution.  Not representable: no
    certified residue exists mod p^precision_modulus (nor at all).
    """

    p: int
    n: int
    representable: bool
    residue: tuple[int, int, int] | None = None
    precision: int = 0
    grad_ord: int | None = None


def unramified_shortcut(form: TernaryForm, p: int) -> bool:
    """True iff p does not divide det(M_F) = 2*disc; such primes represent
    every n.  Definiteness is irrelevant over Z_p, so nondegenerate
    indefinite forms (e.g. built from a Jordan splitting) are accepted."""
    return form.gram_det() % p != 0


def lemma71_excluded(n: int) -> bool:
    """2-adic exclusions of a hexagonal-plane-plus-<16> structure."""
    return n % 4 == 2 or n % 16 == 8


def lemma72_excluded(n: int) -> bool:
    """2-adic exclusions of the diagonal <1,16,48> structure."""
    return n % 8 == 5 or n % 4 in (2, 3) or n % 16 in (8, 12)


def lemma73_excluded(n: int) -> bool:
    """3-adic exclusions of the diagonal <1,3,9> structure: n = 2 mod 3,
    or n = 9^k * m with m = 6 mod 9."""
    if n % 3 == 2:
        return True
    while n % 9 == 0:
        n //= 9
    return n % 9 == 6


# ---------------------------------------------------------------------------
# class tree


def _vec_min_ord(rows: np.ndarray, p: int, cap: int) -> np.ndarray:
    """Row-wise min p-order over a (N,3) array, capped at cap."""
    n = rows.shape[0]
    out = np.full(n, cap, dtype=np.int64)
    rem = rows.copy()
    for k in range(cap):
        hit = (rem % p != 0).any(axis=1) & (out == cap)
        out[hit] = k
        if k + 1 < cap:
            rem //= p
    return out


def _eval_rows(form: TernaryForm, v: np.ndarray) -> np.ndarray:
    a, b, c, d, e, f = form.coeffs()
    x, y, z = v[:, 0], v[:, 1], v[:, 2]
    return a * x * x + b * y * y + c * z * z + d * y * z + e * x * z + f * x * y


def _smith_exponents(form: TernaryForm, p: int) -> tuple[int, int, int]:
    """p-orders (e1 <= e2 <= e3) of the elementary divisors of M_F."""
    m = form.gram_doubled()
    adj = form.gram_adjugate()
    det = form.gram_det()
    if det == 0:
        raise ValueError(f"degenerate form: {form}")
    d1 = min(ord_p(p, t) for row in m for t in row if t != 0)
    d2 = min(ord_p(p, t) for row in adj for t in row if t != 0)
    d3 = ord_p(p, det)
    return d1, d2 - d1, d3 - d2


@lru_cache(maxsize=None)
def _class_tree(form: TernaryForm, p: int):
    """All determined primitive classes of form over Z_p.

    Returns (levels, e3) where levels is a list of (d, V, g, vals):
    class representatives V mod p^d, exact gradient orders g < d, and
    values F(V); the value set of class row i is vals[i] + p^(d+g[i]) Z_p.
    """
    mat = np.array(form.gram_doubled(), dtype=np.int64)
    e1, e2, e3 = _smith_exponents(form, p)
    offs = np.stack(
        np.meshgrid(np.arange(p), np.arange(p), np.arange(p), indexing="ij"), axis=-1
    ).reshape(-1, 3).astype(np.int64)
    v = offs[1:]  # primitive classes mod p: drop the zero vector
    levels = []
    d = 1
    while v.shape[0]:
        if d > e3 + 1:
            raise AssertionError(f"class splitting past elementary divisor bound at {form}, p={p}")
        g = _vec_min_ord(v @ mat, p, d)
        det_mask = g < d
        if det_mask.any():
            levels.append((d, v[det_mask], g[det_mask], _eval_rows(form, v[det_mask])))
        v = v[~det_mask]
        if v.shape[0]:
            v = (v[:, None, :] + p**d * offs[None, :, :]).reshape(-1, 3)
        d += 1
    return levels, e3


@lru_cache(maxsize=None)
def _prim_table(form: TernaryForm, p: int) -> tuple[int, np.ndarray]:
    """(J, T): m >= 1 is primitively represented over Z_p iff T[m mod p^J]."""
    levels, e3 = _class_tree(form, p)
    j = 2 * e3 + 1
    size = p**j
    table = np.zeros(size, dtype=bool)
    for d, _v, g, vals in levels:
        for k in np.unique(g):
            mod = p ** (d + int(k))
            res = np.unique(vals[g == k] % mod)
            table.reshape(size // mod, mod)[:, res] = True
    table.setflags(write=False)
    return j, table


def _prim_witness(form: TernaryForm, p: int, m: int):
    """First determined class accepting m; (v, d, g) or None."""
    levels, _ = _class_tree(form, p)
    for d, v, g, vals in levels:
        ok = (vals - m) % p ** (d + g.astype(np.int64)) == 0
        idx = np.flatnonzero(ok)
        if idx.size:
            i = int(idx[0])
            return tuple(int(t) for t in v[i]), d, int(g[i])
    return None


def _unramified_witness(form: TernaryForm, p: int, m: int) -> tuple[int, int, int]:
    """Certificate vector for odd p with M_F unimodular: F(v) = m mod p and
    v nonzero mod p, so the gradient is a unit.  Diagonalize mod p, then
    solve a two-square equation by Tonelli-Shanks."""
    mat = form.gram_doubled()
    basis = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]

    def bil(u, w):
        return sum(u[i] * mat[i][j] * w[j] for i in range(3) for j in range(3)) % p

    # Gram-Schmidt over F_p; bil(u,u) = 2 F(u), nondegenerate since p does not divide det
    for i in range(3):
        if bil(basis[i], basis[i]) == 0:
            for j in range(i + 1, 3):
                if bil(basis[j], basis[j]) != 0:
                    basis[i], basis[j] = basis[j], basis[i]
                    break
            else:
                for j in range(i + 1, 3):
                    if bil(basis[i], basis[j]) != 0:
                        basis[i] = [(basis[i][k] + basis[j][k]) % p for k in range(3)]
                        break
        inv = pow(bil(basis[i], basis[i]), -1, p)
        for j in range(i + 1, 3):
            r = bil(basis[i], basis[j]) * inv % p
            basis[j] = [(basis[j][k] - r * basis[i][k]) % p for k in range(3)]
    half = pow(2, -1, p)
    c = [bil(b, b) * half % p for b in basis]

    # c0 t0^2 + c1 t1^2 (+ c2) = m mod p; shift by the c2 term when m = 0
    # so the binary target is nonzero and a nontrivial solution exists
    t2 = 0 if m % p else 1
    target = (m - c[2] * t2 * t2) % p
    inv1 = pow(c[1], -1, p)
    for t0 in range(p):
        t1 = sqrt_mod_p((target - c[0] * t0 * t0) * inv1 % p, p)
        if t1 is not None:
            v = tuple(
                (t0 * basis[0][k] + t1 * basis[1][k] + t2 * basis[2][k]) % p
                for k in range(3)
            )
            return v
    raise AssertionError(f"no conic point mod {p} for {form}")


def local_represents(form: TernaryForm, p: int, n: int) -> LocalVerdict:
    """Decide n -> L_p with a Hensel certificate either way."""
    if n < 1:
        raise ValueError("n must be >= 1")
    det2 = form.gram_det()  # = 2 * disc for any nondegenerate ternary

    if det2 % p != 0:
        v = _unramified_witness(form, p, n)
        return LocalVerdict(p, n, True, residue=v, precision=0, grad_ord=0)

    for j in range(ord_p(p, n) // 2 + 1):
        m = n // p ** (2 * j)
        hit = _prim_witness(form, p, m)
        if hit is not None:
            v, _d, g = hit
            res = (p**j * v[0], p**j * v[1], p**j * v[2])
            return LocalVerdict(p, n, True, residue=res, precision=j + g, grad_ord=j + g)
    exhaust = 2 * (ord_p(p, 2 * n * det2) // 2) + 1
    return LocalVerdict(p, n, False, precision=exhaust)


def verify_certificate(form: TernaryForm, verdict: LocalVerdict) -> bool:
    """Re-check a representable verdict's Hensel inequality as recorded."""
    if not verdict.representable:
        return False
    p, k = verdict.p, verdict.precision
    val = evaluate(form, verdict.residue)
    if (val - verdict.n) % p ** (2 * k + 1) != 0:
        return False
    grad = form.gradient(verdict.residue)
    gord = min((ord_p(p, t) for t in grad if t != 0), default=None)
    if gord is None or gord != verdict.grad_ord:
        return False
    return gord <= k


def locally_represented(form: TernaryForm, p: int, n: int) -> bool:
    """Table-backed n -> L_p membership; equals local_represents(...)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if form.gram_det() % p != 0:
        return True
    j, table = _prim_table(form, p)
    mod = p**j
    while True:
        if table[n % mod]:
            return True
        if n % (p * p):
            return False
        n //= p * p


def local_mask(form: TernaryForm, p: int, bound: int) -> np.ndarray:
    """Bool array over 0..bound: n -> L_p (index 0 unused, False)."""
    if form.gram_det() % p != 0:
        out = np.ones(bound + 1, dtype=bool)
        out[0] = False
        return out
    j, table = _prim_table(form, p)
    mod = p**j
    out = np.zeros(bound + 1, dtype=bool)
    cur = np.arange(bound + 1, dtype=np.int64)
    alive = np.ones(bound + 1, dtype=bool)
    alive[0] = False
    while alive.any():
        idx = np.flatnonzero(alive)
        hits = table[cur[idx] % mod]
        out[idx[hits]] = True
        alive[idx[hits]] = False
        idx = np.flatnonzero(alive)
        divisible = cur[idx] % (p * p) == 0
        alive[idx[~divisible]] = False
        keep = idx[divisible]
        cur[keep] //= p * p
    return out


def genus_represents(record, n: int) -> bool:
    """n -> gen: local representability at every prime dividing 2*disc."""
    form = record.sgi_forms[0]
    return all(locally_represented(form, p, n) for p in record.ramified_primes())


def genus_mask(record, bound: int) -> np.ndarray:
    form = record.sgi_forms[0]
    out = np.ones(bound + 1, dtype=bool)
    out[0] = False
    for p in record.ramified_primes():
        out &= local_mask(form, p, bound)
    return out
