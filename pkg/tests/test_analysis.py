import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from framelets.analysis import (A_from_xy, A_of, B_of, FilterBank, bspline_lowpass, d_bound,
                                d_real, d_separation, det_relation_check, optimal_pointwise,
                                pointwise_residuals, separation_report, verify_tight)
from framelets.catalog import EXAMPLES, initial_bank, lowpass
from framelets.errors import BadOrder, ConditionViolated, MismatchedLowpass, WrongArity
from framelets.laurent import LaurentPoly

from oracles import A_closed, d_B_quad, d_R_quad, tightness_sampled

ALL_LOWPASS = ("haar", *EXAMPLES)


class TestVerifyTight:
    def test_example_bank(self):
        res = verify_tight(initial_bank("bspline2"), 1e-12)
        assert res.ok and res.residual <= 1e-12

    def test_haar(self):
        bank = FilterBank.of(lowpass("haar"), LaurentPoly([0.5, -0.5]))
        assert verify_tight(bank)

    def test_perturbed_fails(self):
        bank = initial_bank("bspline2")
        b1, b2 = bank.highpass
        bad = FilterBank.of(bank.a, b1, b2 * 1.01)
        res = verify_tight(bad)
        assert not res.ok
        # the diagonal identity changes by (1.01^2 - 1)|b2|^2 coefficient-wise
        assert 1e-3 < res.residual < 1e-1

    @pytest.mark.parametrize("name", EXAMPLES)
    def test_agrees_with_sampled_identities(self, name):
        bank = initial_bank(name)
        xis = np.linspace(0, np.pi, 17)
        assert tightness_sampled(bank.a, bank.highpass, xis) < 1e-12

    def test_field_tag_enforced(self):
        with pytest.raises(ValueError):
            FilterBank(lowpass("haar"), (LaurentPoly([0.5j, -0.5]),), "real")
        with pytest.raises(WrongArity):
            FilterBank(lowpass("haar"), (), "real")


class TestA:
    def test_zero_at_origin(self):
        for name in ALL_LOWPASS:
            assert abs(A_of(lowpass(name), 0.0)) < 1e-15

    def test_haar_half(self):
        assert A_of(lowpass("haar"), np.pi / 2) == pytest.approx(0.5, abs=1e-15)

    def test_bspline2_quarter_turn(self):
        assert A_of(lowpass("bspline2"), np.pi / 2) == pytest.approx((1.5 - math.sqrt(2)) / 2, abs=1e-15)

    def test_matches_closed_form(self):
        a = lowpass("lowpass6")
        for xi in np.linspace(0, np.pi, 33):
            x = abs(a.eval_unit(xi)) ** 2
            y = abs(a.eval_unit(xi + np.pi)) ** 2
            assert A_of(a, xi) == pytest.approx(A_closed(x, y), abs=1e-14)

    def test_condition_violated(self):
        with pytest.raises(ConditionViolated):
            A_of(LaurentPoly([1.0, 1.0]), 0.3)

    def test_radicand_clamp(self):
        # x + y = 1, x = y gives radicand exactly 0
        assert A_from_xy(0.5, 0.5) == pytest.approx(0.5)

    @pytest.mark.parametrize("name", ALL_LOWPASS)
    def test_range(self, name):
        a = lowpass(name)
        xi = np.linspace(0, np.pi, 1024)
        x = np.abs(a.eval_unit(xi)) ** 2
        y = np.abs(a.eval_unit(xi + np.pi)) ** 2
        A = A_of(a, xi)
        assert np.all(A >= -1e-15)
        assert np.all(A <= np.minimum(x, y) + 1e-12)

    def test_orthogonal_identity(self):
        a = lowpass("haar")
        xi = np.linspace(0, np.pi, 1024)
        x = np.abs(a.eval_unit(xi)) ** 2
        y = np.abs(a.eval_unit(xi + np.pi)) ** 2
        assert np.max(np.abs(A_of(a, xi) - np.minimum(x, y))) < 1e-9

    @given(st.floats(0, 1), st.floats(0, 1))
    def test_sandwich_random_xy(self, x, y):
        if x + y > 1:
            return
        A = float(A_from_xy(x, y))
        assert x * y / 2 - 1e-12 <= A <= 2 * x * y + 1e-12


class TestB:
    def test_example_at_zero(self):
        b1, b2 = initial_bank("bspline2").highpass
        assert B_of(b1, b2, 0.0) == pytest.approx(2 / 3, abs=1e-15)

    def test_zero_filters(self):
        z = LaurentPoly.zero()
        assert B_of(z, z, 1.1) == 0.0

    def test_conjugate_mirror(self):
        bp = LaurentPoly([0.1 + 0.3j, -0.2, 0.05j], -1)
        bn = bp.conj()
        for xi in (0.2, 1.0, 2.5):
            want = abs(bp.eval_unit(xi + np.pi)) ** 2 + abs(np.conj(bp.eval_unit(-xi))) ** 2
            assert B_of(bp, bn, xi) == pytest.approx(want, abs=1e-15)


class TestPointwiseOptimum:
    def test_haar_equal_split(self):
        opt = optimal_pointwise(lowpass("haar"), np.pi / 2)
        assert abs(opt.bp_at_xi_pi) == pytest.approx(0.5)
        assert abs(opt.bn_at_xi) == pytest.approx(0.5)

    def test_zero_product_branch(self):
        # at xi = 0, a(pi) = 0 and C = 1, so both separation values vanish
        opt = optimal_pointwise(lowpass("bspline4"), 0.0)
        assert opt.bp_at_xi_pi == 0 and opt.bn_at_xi == 0 and opt.beta == 0.0

    @pytest.mark.parametrize("name", ALL_LOWPASS)
    def test_attains_bound_and_tight(self, name):
        a = lowpass(name)
        for xi in np.linspace(0, np.pi, 257):
            opt = optimal_pointwise(a, xi)
            r = pointwise_residuals(a, opt)
            assert max(r.values()) <= 1e-10, (xi, r)

    def test_third_example_point(self):
        a = lowpass("bspline2")
        r = pointwise_residuals(a, optimal_pointwise(a, np.pi / 3))
        assert max(r.values()) <= 1e-12

    @pytest.mark.parametrize("name", EXAMPLES)
    def test_conjugate_symmetry_real_filter(self, name):
        # for real a, bn at xi equals conj(bp) at -xi == conj(bp at (pi - xi) + pi)
        a = lowpass(name)
        for xi in np.linspace(0.05, np.pi - 0.05, 11):
            opt = optimal_pointwise(a, xi)
            mirror = optimal_pointwise(a, np.pi - xi)
            assert abs(opt.bn_at_xi - np.conj(mirror.bp_at_xi_pi)) < 1e-10
            assert abs(opt.bn_at_xi_pi - np.conj(mirror.bp_at_xi)) < 1e-10

    def test_domain(self):
        with pytest.raises(ValueError):
            optimal_pointwise(lowpass("haar"), 4.0)


class TestReport:
    @pytest.mark.parametrize("name,frac", [("bspline2", (5, 8)), ("bspline4", (93, 128)),
                                           ("interp6", (151, 256)), ("lowpass6", (557, 1024))])
    def test_d_R_exact(self, name, frac):
        want = frac[0] / frac[1] * math.pi
        assert d_real(lowpass(name)) == pytest.approx(want, abs=1e-12)
        assert d_R_quad(lowpass(name)) == pytest.approx(want, abs=1e-9)

    def test_haar_d_A(self):
        assert d_bound(lowpass("haar")) == pytest.approx(math.pi / 2 - 1, abs=1e-6)

    def test_d_B_matches_quadrature(self):
        b1, b2 = initial_bank("interp6").highpass
        assert d_separation(b1, b2) == pytest.approx(d_B_quad(b1, b2), abs=1e-10)

    def test_d_A_grid_doubling(self):
        a = lowpass("lowpass6")
        assert abs(d_bound(a, 2048) - d_bound(a, 4096)) < 1e-6

    def test_report_fields(self):
        rep = separation_report(initial_bank("bspline2"), 256)
        assert rep.grid.size == 257 and len(rep.rows()) == 257
        assert rep.d_A <= rep.d_B + 1e-6
        assert rep.max_bound_violation <= 1e-9

    def test_wrong_arity(self):
        with pytest.raises(WrongArity):
            separation_report(FilterBank.of(lowpass("haar"), LaurentPoly([0.5, -0.5])))


class TestDetRelation:
    def test_identity(self):
        bank = initial_bank("bspline4")
        rel = det_relation_check(bank, bank)
        assert rel.ok and rel.lam == pytest.approx(1) and rel.k == 0

    def test_odd_shift_rejected(self):
        bank = initial_bank("bspline2")
        b1, b2 = bank.highpass
        other = FilterBank.of(bank.a, b1, b2.shift(1))
        assert not det_relation_check(bank, other).ok

    def test_swap_gives_minus_one(self):
        bank = initial_bank("bspline2")
        b1, b2 = bank.highpass
        rel = det_relation_check(bank, FilterBank.of(bank.a, b2, b1))
        assert rel.ok and rel.lam == pytest.approx(-1)

    def test_even_shift_recovered(self):
        bank = initial_bank("bspline2")
        b1, b2 = bank.highpass
        rel = det_relation_check(bank, FilterBank.of(bank.a, b1.shift(2), b2.shift(2)))
        assert rel.ok and rel.k == 2

    def test_orthogonal_zero_case(self):
        a = lowpass("haar")
        bank = FilterBank.of(a, LaurentPoly([0.5, -0.5]), LaurentPoly.zero())
        rel = det_relation_check(bank, bank)
        assert rel.ok and rel.lam == 1 and rel.k == 0

    def test_mismatched(self):
        with pytest.raises(MismatchedLowpass):
            det_relation_check(initial_bank("bspline2"), initial_bank("bspline4"))


class TestBspline:
    def test_orders(self):
        assert bspline_lowpass(2) == lowpass("bspline2")
        assert bspline_lowpass(4) == lowpass("bspline4")
        assert bspline_lowpass(1) == lowpass("haar")

    def test_bad_order(self):
        with pytest.raises(BadOrder):
            bspline_lowpass(0)

    @pytest.mark.parametrize("m", range(1, 7))
    def test_modulus(self, m):
        xi = np.linspace(0, np.pi, 50)
        got = np.abs(bspline_lowpass(m).eval_unit(xi)) ** 2
        np.testing.assert_allclose(got, np.cos(xi / 2) ** (2 * m), atol=1e-14)

    @pytest.mark.parametrize("m", (2, 4, 6))
    def test_even_symmetric(self, m):
        a = bspline_lowpass(m)
        assert a == a.star()
