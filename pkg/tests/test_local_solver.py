"""Z_p representability: certified single-n decisions, bulk tables, the
congruence shortcuts for the three special local structures, and genus
membership assembled from them."""

import numpy as np
import pytest

from spinor_ternary.forms_core import TernaryForm, evaluate
from spinor_ternary.local_solver import (
    LocalSplitting,
    genus_mask,
    genus_represents,
    lemma71_excluded,
    lemma72_excluded,
    lemma73_excluded,
    local_mask,
    local_represents,
    locally_represented,
    unramified_shortcut,
    verify_certificate,
)

B4 = TernaryForm(3, 7, 7, 5, 3, 3)
B11 = TernaryForm(9, 16, 48, 0, 0, 0)
A1 = TernaryForm(2, 2, 5, 2, 2, 0)

SAMPLE_IDS = ("A1", "A12", "B2", "B4", "B11", "C1", "C4")


class TestShortcut:
    def test_ramified_vs_not(self):
        assert unramified_shortcut(A1, 3)
        assert not unramified_shortcut(A1, 2)
        assert unramified_shortcut(B11, 7)
        assert not unramified_shortcut(B11, 3)

    def test_unramified_prime_represents_everything(self):
        for n in range(1, 60):
            v = local_represents(A1, 3, n)
            assert v.representable and v.grad_ord == 0
            assert verify_certificate(A1, v)


class TestCongruencePredicates:
    def test_lemma71(self):
        assert lemma71_excluded(2)
        assert lemma71_excluded(8)
        assert lemma71_excluded(24)
        assert not lemma71_excluded(16)
        assert not lemma71_excluded(1)
        assert not lemma71_excluded(4)

    def test_lemma72(self):
        for n in (5, 2, 3, 8, 12, 13, 28):
            assert lemma72_excluded(n), n
        for n in (1, 4, 9, 16, 17, 48):
            assert not lemma72_excluded(n), n

    def test_lemma73(self):
        assert lemma73_excluded(2)
        assert lemma73_excluded(6)
        assert lemma73_excluded(15)   # 6 mod 9 despite being 0 mod 3
        assert lemma73_excluded(54)   # 9 * 6
        assert lemma73_excluded(486)  # 81 * 6
        assert not lemma73_excluded(3)
        assert not lemma73_excluded(9)
        assert not lemma73_excluded(12)
        assert not lemma73_excluded(30)


class TestLocalRepresents:
    def test_desk_verdicts(self):
        assert not local_represents(B4, 2, 2).representable
        assert not local_represents(B11, 3, 6).representable
        v = local_represents(B11, 5, 7)
        assert v.representable and verify_certificate(B11, v)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            local_represents(B4, 2, 0)
        with pytest.raises(ValueError):
            locally_represented(B4, 2, -3)

    def test_certificates_hold_and_routes_agree(self, catalog):
        for rid in SAMPLE_IDS:
            rec = catalog.lookup(rid)
            form = rec.sgi_forms[0]
            for p in rec.ramified_primes():
                for n in range(1, 401):
                    v = local_represents(form, p, n)
                    assert v.representable == locally_represented(form, p, n)
                    if v.representable:
                        assert verify_certificate(form, v), (rid, p, n)
                        val = evaluate(form, v.residue)
                        assert (val - n) % p ** (2 * v.precision + 1) == 0

    def test_scaling_by_p_squared(self, catalog):
        for rid in SAMPLE_IDS:
            rec = catalog.lookup(rid)
            form = rec.sgi_forms[0]
            for p in rec.ramified_primes():
                for n in range(1, 201):
                    if locally_represented(form, p, n):
                        assert locally_represented(form, p, p * p * n)

    def test_congruence_predicates_match_solver(self):
        for n in range(1, 1500):
            assert lemma71_excluded(n) == (not locally_represented(B4, 2, n))
            assert lemma72_excluded(n) == (not locally_represented(B11, 2, n))
            assert lemma73_excluded(n) == (not locally_represented(B4, 3, n))
            assert lemma73_excluded(n) == (not locally_represented(B11, 3, n))


class TestBulkMask:
    def test_matches_pointwise(self, catalog):
        for rid in ("A1", "B4", "C1"):
            rec = catalog.lookup(rid)
            form = rec.sgi_forms[0]
            for p in rec.ramified_primes():
                mask = local_mask(form, p, 400)
                assert not mask[0]
                for n in range(1, 401):
                    assert mask[n] == locally_represented(form, p, n), (rid, p, n)

    def test_unramified_mask_is_all_true(self):
        mask = local_mask(A1, 5, 50)
        assert not mask[0] and mask[1:].all()


class TestGenus:
    def test_desk_verdicts(self, catalog):
        assert not genus_represents(catalog.lookup("B4"), 2)
        assert genus_represents(catalog.lookup("B11"), 48)
        assert not genus_represents(catalog.lookup("A11"), 1)

    def test_mask_matches_pointwise(self, catalog):
        for rid in ("A11", "B11"):
            rec = catalog.lookup(rid)
            mask = genus_mask(rec, 300)
            assert not mask[0]
            for n in range(1, 301):
                assert mask[n] == genus_represents(rec, n)


class TestSplittingForms:
    def test_hyperbolic_plane_form(self):
        s = LocalSplitting(2, (("H", 0), ("diag", 1, 1)))
        form = s.to_form()
        assert form == TernaryForm(0, 0, 2, 0, 0, 2)  # 2xy + 2z^2
        assert s.gram_det() == -2
        # indefinite, but the 2-adic decision is still exact: the values
        # are 2*(xy + z^2), i.e. exactly the even part of Z_2
        for n in range(1, 40):
            assert locally_represented(form, 2, n) == (n % 2 == 0)

    def test_a_plane_form(self):
        s = LocalSplitting(2, (("A", 0), ("diag", 1, 0)))
        form = s.to_form()
        assert form == TernaryForm(2, 2, 1, 0, 0, 2)
        assert s.gram_det() == 3
        # 2(x^2+xy+y^2) + z^2 misses exactly 4^a(5+8l): the plane's values
        # are the 4^k-units plus zero, so odd targets need n - z^2 = 2*unit
        # or n a square, which kills only 5 mod 8, and 4 | n recurses
        for n in range(1, 120):
            m = n
            while m % 4 == 0:
                m //= 4
            assert locally_represented(form, 2, n) == (m % 8 != 5), n

    def test_dimension_and_exponents(self):
        s = LocalSplitting(2, (("A", 0), ("diag", 3, 3)))
        assert s.dimension() == 3
        assert s.exponents() == [0, 3]
        with pytest.raises(ValueError):
            LocalSplitting(2, (("diag", 1, 0),)).to_form()

    def test_degenerate_form_rejected(self):
        with pytest.raises(ValueError):
            locally_represented(TernaryForm(1, 1, 0, 0, 0, 2), 2, 4)
