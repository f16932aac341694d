import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from framelets.analysis import FilterBank, det_relation_check, verify_tight
from framelets.catalog import EXAMPLES, initial_bank, lowpass
from framelets.construct import (ConstructParams, derive_shortest_bank, divide_with_window,
                                 factor_candidates, first_bank, sweep, symbols)
from framelets.errors import EmptyNullspace, PreconditionFailed, ZeroDivisor
from framelets.laurent import LaurentPoly

from oracles import coeff_items, symbol, tightness_sampled


def P(coeffs, lo=0):
    return LaurentPoly(coeffs, lo)


def det_identity_residual(bank, n=1024):
    """Max over a grid of | |d_{b1,b2}(z^2)|^2 - (1 - |a(z)|^2 - |a(-z)|^2) |."""
    fa = coeff_items(bank.a)
    f1, f2 = (coeff_items(b) for b in bank.highpass)
    worst = 0.0
    for xi in np.linspace(0, 2 * np.pi, n, endpoint=False):
        z = np.exp(-1j * xi)
        d = z * (symbol(f1, xi) * symbol(f2, xi + np.pi) - symbol(f1, xi + np.pi) * symbol(f2, xi))
        rhs = 1 - abs(symbol(fa, xi)) ** 2 - abs(symbol(fa, xi + np.pi)) ** 2
        worst = max(worst, abs(abs(d) ** 2 - rhs))
    return worst


class TestDivision:
    def test_divisor_itself(self):
        d = P([1, -2, 0.5], -1)
        q, r = divide_with_window(d, d, (0, 1))
        assert q == P([1]) and r.is_zero

    def test_inside_window(self):
        L = P([3, 4], 2)
        q, r = divide_with_window(L, P([1, 1, 1]), (2, 3))
        assert q.is_zero and r == L

    @given(st.lists(st.floats(-3, 3), min_size=1, max_size=9), st.integers(-4, 4),
           st.integers(-3, 3))
    @settings(max_examples=60)
    def test_round_trip(self, coeffs, lo, w_lo):
        divisor = P([1.0, -0.5, 2.0, 0.25], -1)
        L = P(coeffs, lo)
        q, r = divide_with_window(L, divisor, (w_lo, w_lo + 2))
        assert (divisor * q + r - L).max_abs() <= 1e-9 * max(1.0, L.max_abs() * 50)
        if not r.is_zero:
            assert w_lo <= r.lo and r.hi <= w_lo + 2

    def test_zero_divisor(self):
        with pytest.raises(ZeroDivisor):
            divide_with_window(P([1, 2]), LaurentPoly.zero(), (0, 0))

    def test_window_size_checked(self):
        with pytest.raises(ValueError):
            divide_with_window(P([1, 2]), P([1, 1]), (0, 3))


class TestParams:
    def test_flags_validated(self):
        with pytest.raises(ValueError):
            ConstructParams(eps=2)
        with pytest.raises(ValueError):
            ConstructParams(factor_index=-1)

    def test_defaults(self):
        p = ConstructParams()
        assert (p.eps, p.s1, p.s2, p.factor_index, p.solution_index) == (0, 0, 0, 0, 0)


class TestSymbols:
    def test_bspline2(self):
        Am, Bm, D = symbols(lowpass("bspline2"))
        assert Am.lo == -2 and Am.hi == 2
        assert D.allclose(P([-1 / 8, 1 / 4, -1 / 8], -1), 1e-15)
        # B(z) = -a(z) a*(-z)
        assert Bm.allclose(-(lowpass("bspline2") * lowpass("bspline2").alternate()), 1e-15)

    def test_haar_D_vanishes(self):
        assert symbols(lowpass("haar"))[2].trim(1e-12).is_zero


class TestDerive:
    @pytest.mark.parametrize("name", EXAMPLES)
    def test_examples(self, name):
        a = lowpass(name)
        bank = derive_shortest_bank(a)
        assert verify_tight(bank, 1e-9).ok
        b1, b2 = bank.highpass
        assert max(b1.length, b2.length) <= a.length + 1
        assert tightness_sampled(a, bank.highpass, np.linspace(0, np.pi, 9)) < 1e-9

    @pytest.mark.parametrize("name", EXAMPLES)
    def test_determinant_identity(self, name):
        assert det_identity_residual(derive_shortest_bank(lowpass(name))) <= 1e-8

    @pytest.mark.parametrize("name", EXAMPLES)
    def test_real_output(self, name):
        params, bank = first_bank(lowpass(name))
        assert bank.field == "real"
        assert all(b.is_real for b in bank.highpass)

    def test_bspline2_equivalent_to_published(self):
        bank = derive_shortest_bank(lowpass("bspline2"))
        rel = det_relation_check(initial_bank("bspline2"), bank)
        assert rel.ok

    def test_haar(self):
        bank = derive_shortest_bank(lowpass("haar"))
        b1, b2 = bank.highpass
        assert b1.allclose(P([-0.5, 0.5]), 1e-15) or b1.allclose(P([0.5, -0.5]), 1e-15)
        assert b2.is_zero
        assert verify_tight(bank).ok

    def test_explicit_params(self):
        a = lowpass("bspline4")
        params, bank = first_bank(a)
        again = derive_shortest_bank(a, params)
        for u, v in zip(bank.highpass, again.highpass):
            assert u.allclose(v, 1e-14)

    def test_every_sweep_result_valid(self):
        a = lowpass("bspline2")
        count = 0
        for params, bank in sweep(a):
            count += 1
            assert verify_tight(bank, 1e-9).ok
            assert max(b.length for b in bank.highpass) <= a.length + params.eps
        assert count >= 1

    def test_factor_index_out_of_range(self):
        with pytest.raises(EmptyNullspace):
            derive_shortest_bank(lowpass("bspline2"), ConstructParams(0, 1, 0, factor_index=999))

    def test_candidates_in_window(self):
        for d in factor_candidates(lowpass("bspline4"), 1, 1, 1):
            assert 1 <= d.lo and d.hi <= 1 + symbols(lowpass("bspline4"))[0].hi + 1

    def test_precondition(self):
        with pytest.raises(PreconditionFailed):
            derive_shortest_bank(P([1.0, 1.0]))
        with pytest.raises(PreconditionFailed):
            derive_shortest_bank(LaurentPoly.zero())

    def test_complex_lowpass(self):
        # a unimodular rotation of a real low-pass keeps the condition and gives a complex bank
        a = lowpass("bspline2") * complex(math.cos(0.3), math.sin(0.3))
        bank = derive_shortest_bank(a)
        assert bank.field == "complex"
        assert verify_tight(bank, 1e-9).ok
