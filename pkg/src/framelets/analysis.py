"""
Tightness checks and frequency-separation quantities for filter banks.

For a low-pass filter ``a`` write ``x = |a_hat(xi)|**2`` and
``y = |a_hat(xi + pi)|**2``.  The separation lower bound is

    A(xi) = (2 - x - y - sqrt(4*(1 - x - y) + (x - y)**2)) / 2

and the separation achieved by a pair of high-pass filters is

    B(xi) = |bp_hat(xi + pi)|**2 + |bn_hat(xi)|**2.

Every tight bank ``{a; bp, bn}`` satisfies ``B >= A`` on ``[0, pi]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np
from scipy.integrate import simpson

from .errors import BadOrder, ConditionViolated, MismatchedLowpass, WrongArity
from .laurent import LaurentPoly

CONDITION_TOL = 1e-9
RADICAND_CLAMP = 1e-12


@dataclass(frozen=True)
class FilterBank:
    """Low-pass filter ``a`` plus high-pass filters ``b_1, ..., b_s``."""

    a: LaurentPoly
    highpass: tuple
    field: str = "complex"

    def __post_init__(self):
        object.__setattr__(self, "highpass", tuple(self.highpass))
        if not self.highpass:
            raise WrongArity("a filter bank needs at least one high-pass filter")
        if self.field not in ("real", "complex"):
            raise ValueError(f"field must be 'real' or 'complex', got {self.field!r}")
        if self.field == "real":
            for f in (self.a, *self.highpass):
                if not f.is_real:
                    raise ValueError("field=real but a filter has complex coefficients")

    @classmethod
    def of(cls, a: LaurentPoly, *highpass: LaurentPoly) -> "FilterBank":
        """Bank with the field tag inferred from the coefficients."""
        real = all(f.is_real for f in (a, *highpass))
        return cls(a, highpass, "real" if real else "complex")

    @property
    def arity(self) -> int:
        return len(self.highpass)

    @property
    def filters(self) -> tuple:
        return (self.a, *self.highpass)


@dataclass(frozen=True)
class Verification:
    ok: bool
    residual: float

    def __bool__(self):
        return self.ok


@dataclass
class SeparationReport:
    d_R: float
    d_A: float
    d_B: float
    grid: np.ndarray = field(repr=False)
    A: np.ndarray = field(repr=False)
    B: np.ndarray = field(repr=False)
    max_bound_violation: float = 0.0

    def rows(self):
        return list(zip(self.grid.tolist(), self.A.tolist(), self.B.tolist()))


def tightness_residual(bank: FilterBank) -> float:
    """Largest coefficient deviation in the two polyphase identities."""
    a = bank.a
    diag = a * a.star()
    off = a * a.star().alternate()
    for b in bank.highpass:
        diag = diag + b * b.star()
        off = off + b * b.star().alternate()
    return max((diag - 1.0).max_abs(), off.max_abs())


def verify_tight(bank: FilterBank, tol: float = 1e-10) -> Verification:
    """Check ``a a* + sum b b* = 1`` and ``a(z) a*(-z) + sum b(z) b*(-z) = 0`` exactly."""
    r = tightness_residual(bank)
    return Verification(r <= tol, r)


def _xy(a: LaurentPoly, xi):
    xi = np.asarray(xi, dtype=float)
    x = np.abs(a.eval_unit(xi)) ** 2
    y = np.abs(a.eval_unit(xi + np.pi)) ** 2
    return x, y


def A_from_xy(x, y, check: bool = True):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if check and np.any(x + y > 1 + CONDITION_TOL):
        raise ConditionViolated("|a(xi)|^2 + |a(xi+pi)|^2 exceeds 1")
    radicand = 4 * (1 - x - y) + (x - y) ** 2
    if np.any(radicand < -RADICAND_CLAMP):
        raise ConditionViolated("negative radicand in the separation bound")
    radicand = np.maximum(radicand, 0.0)
    # (2 - x - y - sqrt(C)) / 2, rationalized so that small values keep full precision
    return 2 * x * y / (2 - x - y + np.sqrt(radicand))


def A_of(a: LaurentPoly, xi):
    """Sharp separation lower bound ``A(xi)``; vectorized over ``xi``."""
    x, y = _xy(a, xi)
    out = A_from_xy(x, y)
    return out[()] if np.ndim(out) == 0 else out


def B_of(bp: LaurentPoly, bn: LaurentPoly, xi):
    xi = np.asarray(xi, dtype=float)
    out = np.abs(bp.eval_unit(xi + np.pi)) ** 2 + np.abs(bn.eval_unit(xi)) ** 2
    return out[()] if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class PointwiseOptimum:
    """Values of the pointwise-optimal high-pass pair at ``xi`` and ``xi + pi``."""

    xi: float
    bp_at_xi: complex
    bp_at_xi_pi: complex
    bn_at_xi: complex
    bn_at_xi_pi: complex
    A: float
    beta: float


def optimal_pointwise(a: LaurentPoly, xi: float) -> PointwiseOptimum:
    """Pointwise values of the bank attaining ``B = A`` at a single frequency."""
    if not (-1e-12 <= xi <= np.pi + 1e-12):
        raise ValueError("xi must lie in [0, pi]")
    a0 = complex(a.eval_unit(xi))
    a1 = complex(a.eval_unit(xi + np.pi))
    x, y = abs(a0) ** 2, abs(a1) ** 2
    A = float(A_from_xy(x, y))
    u = 1 - x - y
    C = max(4 * u + (x - y) ** 2, 0.0)
    if C <= 1e-24:
        bp1 = bn0 = 0.5
    else:
        # A (1 -+ s) / 2 with s = (x - y) / sqrt(C); the small one of the pair is
        # rewritten through sqrt(C) -+ (x - y) = 4u / (sqrt(C) +- (x - y))
        rc = np.sqrt(C)
        big = 0.5 * A * (1 + abs(x - y) / rc)
        small = 2 * A * max(u, 0.0) / (rc * (rc + abs(x - y)))
        if x >= y:
            bn0, bp1 = np.sqrt(big), np.sqrt(small)
        else:
            bn0, bp1 = np.sqrt(small), np.sqrt(big)
    prod = a0 * np.conj(a1)
    beta = 0.0 if a0 * a1 == 0 else float(np.angle(prod))
    bp0 = -np.exp(1j * beta) * np.sqrt(max(1 - x - bn0 ** 2, 0.0))
    bn1 = -np.exp(-1j * beta) * np.sqrt(max(1 - y - bp1 ** 2, 0.0))
    return PointwiseOptimum(float(xi), complex(bp0), complex(bp1), complex(bn0),
                            complex(bn1), A, beta)


def pointwise_residuals(a: LaurentPoly, opt: PointwiseOptimum) -> dict:
    """Deviations in ``B = A`` and the three tightness equations at ``opt.xi``."""
    a0 = complex(a.eval_unit(opt.xi))
    a1 = complex(a.eval_unit(opt.xi + np.pi))
    return {
        "bound": abs(abs(opt.bp_at_xi_pi) ** 2 + abs(opt.bn_at_xi) ** 2 - opt.A),
        "eq1": abs(abs(a0) ** 2 + abs(opt.bp_at_xi) ** 2 + abs(opt.bn_at_xi) ** 2 - 1),
        "eq2": abs(abs(a1) ** 2 + abs(opt.bp_at_xi_pi) ** 2 + abs(opt.bn_at_xi_pi) ** 2 - 1),
        "eq3": abs(a0 * np.conj(a1) + opt.bp_at_xi * np.conj(opt.bp_at_xi_pi)
                   + opt.bn_at_xi * np.conj(opt.bn_at_xi_pi)),
    }


def d_real(a: LaurentPoly) -> float:
    """``(1/2) int_0^pi [2 - |a(xi)|^2 - |a(xi+pi)|^2]``, exactly."""
    aa = a * a.star()
    return 0.5 * (2.0 - aa - aa.alternate()).integrate_halfcircle().real


def d_bound(a: LaurentPoly, grid_n: int = 2048) -> float:
    xi = np.linspace(0.0, np.pi, grid_n + 1)
    return float(simpson(A_of(a, xi), x=xi))


def d_separation(bp: LaurentPoly, bn: LaurentPoly) -> float:
    """``int_0^pi B(xi) dxi``, exactly."""
    p = bp.alternate()
    return (p * p.star() + bn * bn.star()).integrate_halfcircle().real


def separation_report(bank: FilterBank, grid_n: int = 2048) -> SeparationReport:
    if bank.arity != 2:
        raise WrongArity(f"separation needs exactly two high-pass filters, got {bank.arity}")
    a = bank.a
    bp, bn = bank.highpass
    xi = np.linspace(0.0, np.pi, grid_n + 1)
    A = A_of(a, xi)
    B = B_of(bp, bn, xi)
    return SeparationReport(
        d_R=d_real(a),
        d_A=float(simpson(A, x=xi)),
        d_B=d_separation(bp, bn),
        grid=xi, A=A, B=B,
        max_bound_violation=float(np.max(A - B)),
    )


def det_poly(b1: LaurentPoly, b2: LaurentPoly) -> LaurentPoly:
    """``b1(z) b2(-z) - b1(-z) b2(z)``."""
    return b1 * b2.alternate() - b1.alternate() * b2


@dataclass(frozen=True)
class DetRelation:
    ok: bool
    lam: complex
    k: int


def det_relation_check(bank1: FilterBank, bank2: FilterBank, tol: float = 1e-9) -> DetRelation:
    """Test whether bank2's determinant equals ``lam * z**(2k)`` times bank1's, ``|lam| = 1``."""
    if not bank1.a.allclose(bank2.a, 0.0):
        raise MismatchedLowpass("both banks must share the low-pass filter")
    if bank1.arity != 2 or bank2.arity != 2:
        raise WrongArity("det relation needs two high-pass filters per bank")
    p1 = det_poly(*bank1.highpass).trim(tol)
    p2 = det_poly(*bank2.highpass).trim(tol)
    if p1.is_zero and p2.is_zero:
        return DetRelation(True, 1.0 + 0j, 0)
    if p1.is_zero or p2.is_zero:
        return DetRelation(False, 0j, 0)
    shift = p2.lo - p1.lo
    if shift % 2 or p1.length != p2.length:
        return DetRelation(False, 0j, shift // 2)
    j = int(np.argmax(np.abs(p1.coeffs)))
    lam = p2.coeffs[j] / p1.coeffs[j]
    err = (p2 - lam * p1.shift(shift)).max_abs()
    ok = err <= tol and abs(abs(lam) - 1.0) <= tol
    return DetRelation(bool(ok), complex(lam), shift // 2)


def bspline_lowpass(m: int) -> LaurentPoly:
    """Centered B-spline filter with ``|a_hat(xi)|**2 = cos(xi/2)**(2m)``."""
    if m < 1:
        raise BadOrder(f"B-spline order must be >= 1, got {m}")
    c = np.array([comb(m, k) for k in range(m + 1)], dtype=float) / 2.0 ** m
    return LaurentPoly(c, lo=-(m // 2))
