"""Integral ternary forms: evaluation, Gram data, definiteness, and the
exhaustive represented-set enumeration with witnesses.

The enumeration is cross-checked against a brute-force cube scan whose
coordinate box comes from a floating-point eigenvalue bound, so the two
routes share no search logic.
"""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spinor_ternary.forms_core import (
    BoundOverflowError,
    DefinitenessError,
    TernaryForm,
    discriminant,
    enumerate_represented,
    evaluate,
    is_positive_definite,
)

small_int = st.integers(-9, 9)
coord = st.integers(-12, 12)


def brute_member_mask(form: TernaryForm, bound: int) -> np.ndarray:
    """Values of form up to bound by scanning a cube |x_i| <= K, with K
    from F(v) >= lambda_min |v|^2."""
    mat = np.array(form.gram_doubled(), dtype=float) / 2.0
    lam = min(np.linalg.eigvalsh(mat))
    assert lam > 0
    k = math.isqrt(int(bound / lam)) + 1
    rng = np.arange(0, k + 1)  # x >= 0 suffices: F(-v) = F(v)
    full = np.arange(-k, k + 1)
    x, y, z = np.meshgrid(rng, full, full, indexing="ij")
    a, b, c, d, e, f = form.coeffs()
    vals = a * x * x + b * y * y + c * z * z + d * y * z + e * x * z + f * x * y
    out = np.zeros(bound + 1, dtype=bool)
    hit = vals[(vals >= 0) & (vals <= bound)]
    out[hit] = True
    out[0] = False
    return out


class TestEvaluate:
    def test_known_values(self):
        assert evaluate(TernaryForm(3, 7, 7, 5, 3, 3), (1, 0, 0)) == 3
        assert evaluate(TernaryForm(4, 9, 9, 2, 4, 4), (1, 1, 0)) == 17
        assert evaluate(TernaryForm(9, 16, 48, 0, 0, 0), (1, 1, 0)) == 25

    @given(small_int, small_int, small_int, small_int, small_int, small_int,
           coord, coord, coord)
    def test_negation_symmetry(self, a, b, c, d, e, f, x, y, z):
        form = TernaryForm(a, b, c, d, e, f)
        assert evaluate(form, (-x, -y, -z)) == evaluate(form, (x, y, z))

    @given(small_int, small_int, small_int, small_int, small_int, small_int,
           coord, coord, coord)
    def test_matches_gram_matrix(self, a, b, c, d, e, f, x, y, z):
        form = TernaryForm(a, b, c, d, e, f)
        v = np.array([x, y, z])
        m = np.array(form.gram_doubled())
        assert v @ m @ v == 2 * evaluate(form, (x, y, z))


class TestGram:
    @given(small_int, small_int, small_int, small_int, small_int, small_int)
    def test_adjugate_identity(self, a, b, c, d, e, f):
        form = TernaryForm(a, b, c, d, e, f)
        m = np.array(form.gram_doubled(), dtype=object)
        adj = np.array(form.gram_adjugate(), dtype=object)
        det = form.gram_det()
        assert np.array_equal(m @ adj, det * np.eye(3, dtype=object))

    def test_gradient(self):
        form = TernaryForm(2, 2, 5, 2, 2, 0)
        # gradient of F at v is M_F v
        assert form.gradient((1, 0, 0)) == (4, 0, 2)
        assert form.gradient((0, 1, 1)) == (2, 6, 12)


class TestDefiniteness:
    def test_positive_definite(self):
        assert is_positive_definite(TernaryForm(2, 2, 5, 2, 2, 0))
        assert is_positive_definite(TernaryForm(1, 1, 1, 0, 0, 0))
        assert not is_positive_definite(TernaryForm(1, 1, -1, 0, 0, 0))
        assert not is_positive_definite(TernaryForm(1, 1, 1, 3, 0, 0))

    def test_discriminant_values(self):
        assert discriminant(TernaryForm(2, 2, 5, 2, 2, 0)) == 64
        assert discriminant(TernaryForm(1, 1, 1, 0, 0, 0)) == 4
        assert discriminant(TernaryForm(9, 16, 48, 0, 0, 0)) == 27648

    def test_discriminant_rejects_indefinite(self):
        with pytest.raises(DefinitenessError):
            discriminant(TernaryForm(1, 1, -1, 0, 0, 0))


class TestEnumeration:
    def test_a1_members(self):
        rs = enumerate_represented(TernaryForm(2, 2, 5, 2, 2, 0), 30)
        assert 2 in rs
        assert 1 not in rs
        assert 25 not in rs

    def test_b11_members(self):
        rs = enumerate_represented(TernaryForm(9, 16, 48, 0, 0, 0), 100)
        assert 48 in rs
        for n in (2, 3, 5):
            assert n not in rs

    def test_witnesses_evaluate_back(self):
        form = TernaryForm(3, 7, 7, 5, 3, 3)
        rs = enumerate_represented(form, 400)
        hits = 0
        for n in rs.members():
            w = rs.witness(n)
            assert evaluate(form, w) == n
            hits += 1
        assert hits == rs.member_mask()[1:].sum()

    def test_witness_none_outside(self):
        rs = enumerate_represented(TernaryForm(1, 1, 1, 0, 0, 0), 20)
        assert rs.witness(7) is None  # three squares miss 7
        assert 7 not in rs

    def test_member_mask_matches_contains(self):
        rs = enumerate_represented(TernaryForm(1, 4, 9, 4, 0, 0), 120)
        mask = rs.member_mask()
        assert not mask[0]
        for n in range(1, 121):
            assert mask[n] == (n in rs)

    def test_rejects_indefinite(self):
        with pytest.raises(DefinitenessError):
            enumerate_represented(TernaryForm(1, 1, -1, 0, 0, 0), 10)

    def test_rejects_nonpositive_bound(self):
        with pytest.raises(ValueError):
            enumerate_represented(TernaryForm(1, 1, 1, 0, 0, 0), 0)

    def test_bound_overflow_guard(self):
        with pytest.raises(BoundOverflowError):
            enumerate_represented(TernaryForm(1, 1, 1, 0, 0, 0), 2**61)

    def test_matches_brute_force_on_catalog_forms(self, catalog):
        bound = 200
        for rec in catalog.records:
            for form in rec.all_forms():
                got = enumerate_represented(form, bound).member_mask()
                want = brute_member_mask(form, bound)
                assert np.array_equal(got, want), (rec.rid, form)
