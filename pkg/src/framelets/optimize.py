"""
Directional optimization of a tight bank ``{a; b1, b2}``.

A paraunitary column ``(u1, u2)`` of degree ``N`` mixes the two high-pass
filters into

    bp(z) = b1(z) u1(z**2) + b2(z) u2(z**2)
    bn(z) = z**(2m) [b2(z) u1*(z**2) - b1(z) u2*(z**2)]

and every such pair is again tight.  The column is written as a lattice of
rotations and delays, so each point of the parameter space is feasible.  The
search minimizes ``d_B``, the integral of ``|bp(xi + pi)|**2 + |bn(xi)|**2``
over ``[0, pi]``.  With real filters the pair is first rotated into
``(bp + i bn)/sqrt(2)``, ``(bp - i bn)/sqrt(2)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from .analysis import FilterBank, d_separation, verify_tight
from .errors import ConstraintViolated, NotTight, WrongArity
from .laurent import DEFAULT_TRIM_TOL, LaurentPoly

TWO_PI = 2.0 * np.pi
INV_SQRT2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class LatticeColumn:
    """
    Degree-``N`` paraunitary column as a product of ``N + 1`` unitary stages.

    Attributes
    ----------
    thetas : tuple of float
        Rotation angle of each stage.
    phis : tuple of float or None
        Phase of each stage (complex lattices only).  ``None`` means real.
    phase : float
        Global phase; it does not change ``d_B``.
    """

    thetas: tuple
    phis: Optional[tuple] = None
    phase: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "thetas", tuple(float(t) for t in self.thetas))
        if not self.thetas:
            raise ValueError("a lattice needs at least one stage")
        if self.phis is not None:
            phis = tuple(float(p) for p in self.phis)
            if len(phis) != len(self.thetas):
                raise ValueError("need one phase per stage")
            object.__setattr__(self, "phis", phis)

    @property
    def order(self) -> int:
        return len(self.thetas) - 1

    @property
    def is_real(self) -> bool:
        return self.phis is None and self.phase == 0.0

    @property
    def stages(self):
        if self.phis is None:
            return [(t,) for t in self.thetas]
        return list(zip(self.thetas, self.phis))

    @classmethod
    def from_vector(cls, x, order: int, real: bool) -> "LatticeColumn":
        x = np.asarray(x, dtype=float)
        if real:
            return cls(tuple(x[:order + 1]))
        return cls(tuple(x[:order + 1]), tuple(x[order + 1:2 * order + 2]))

    def to_vector(self) -> np.ndarray:
        if self.phis is None:
            return np.array(self.thetas)
        return np.array(self.thetas + self.phis)


def _column_arrays(thetas, phis=None, phase=0.0):
    """Coefficients of ``u1, u2`` on ``[0, N]`` as two numpy arrays."""
    n = len(thetas)
    u1 = np.zeros(n, dtype=complex)
    u2 = np.zeros(n, dtype=complex)
    c, s = math.cos(thetas[0]), math.sin(thetas[0])
    u1[0] = c
    u2[0] = s if phis is None else s * complex(math.cos(phis[0]), math.sin(phis[0]))
    for k in range(1, n):
        # delay the second entry, then rotate
        u2[1:k + 1] = u2[0:k].copy()
        u2[0] = 0.0
        c, s = math.cos(thetas[k]), math.sin(thetas[k])
        v1 = c * u1[:k + 1] - s * u2[:k + 1]
        v2 = s * u1[:k + 1] + c * u2[:k + 1]
        if phis is not None:
            v2 = v2 * complex(math.cos(phis[k]), math.sin(phis[k]))
        u1[:k + 1], u2[:k + 1] = v1, v2
    if phase:
        g = complex(math.cos(phase), math.sin(phase))
        u1, u2 = u1 * g, u2 * g
    return u1, u2


def realize_column(lat: LatticeColumn) -> tuple[LaurentPoly, LaurentPoly]:
    """The pair ``(u1, u2)``, supported in ``[0, N]``, with ``|u1|^2 + |u2|^2 = 1``."""
    u1, u2 = _column_arrays(lat.thetas, lat.phis, lat.phase)
    if lat.phis is None and lat.phase == 0.0:
        u1, u2 = u1.real, u2.real
    return LaurentPoly(u1, 0), LaurentPoly(u2, 0)


def column_residual(u1: LaurentPoly, u2: LaurentPoly) -> float:
    return (u1 * u1.star() + u2 * u2.star() - 1.0).max_abs()


def _centre(p: LaurentPoly) -> float:
    return 0.5 * (p.lo + p.hi)


def _best_shift(c_bp: float, c_bn: float) -> int:
    """Integer ``m`` minimizing ``|c_bp - (c_bn + 2m)|``, ties toward smaller ``m``."""
    t = (c_bp - c_bn) / 2.0
    lo = math.floor(t)
    return lo if abs(t - lo) <= abs(lo + 1 - t) else lo + 1


def apply_column(bank: FilterBank, u1: LaurentPoly, u2: LaurentPoly, tol: float = 1e-10):
    """
    Mix ``b1, b2`` by the column ``(u1, u2)``.

    Returns
    -------
    bp, bn : LaurentPoly
    m : int
        Shift applied to ``bn`` so that both supports are centred together.
    """
    if bank.arity != 2:
        raise WrongArity("apply_column needs a bank with two high-pass filters")
    r = column_residual(u1, u2)
    if r > tol:
        raise ConstraintViolated(f"|u1|^2 + |u2|^2 deviates from 1 by {r:.3g}")
    b1, b2 = bank.highpass
    U1, U2 = u1.upsample_two(), u2.upsample_two()
    bp = (b1 * U1 + b2 * U2).trim(DEFAULT_TRIM_TOL)
    bn0 = (b2 * U1.star() - b1 * U2.star()).trim(DEFAULT_TRIM_TOL)
    m = 0 if bp.is_zero or bn0.is_zero else _best_shift(_centre(bp), _centre(bn0))
    return bp, bn0.shift(2 * m), m


def realify(bp: LaurentPoly, bn: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """``((bp + i bn)/sqrt 2, (bp - i bn)/sqrt 2)``; a constant unitary mixing."""
    ibn = bn * 1j
    return (bp + ibn) * INV_SQRT2, (bp - ibn) * INV_SQRT2


def objective_dB(a: LaurentPoly, bp: LaurentPoly, bn: LaurentPoly) -> float:
    """Exact ``d_B`` of the pair; ``a`` is accepted for symmetry with the report."""
    return d_separation(bp, bn)


# -- fast objective on raw coefficient arrays --------------------------------

def _halfcircle_energy(c: np.ndarray, negate_odd: bool) -> float:
    """``int_0^pi |p(xi)|^2`` (or ``|p(xi + pi)|^2``) from coefficients alone."""
    if c.size == 0:
        return 0.0
    r = np.correlate(c, c, mode="full")[c.size:]         # r_k for k = 1..n-1
    odd = r[0::2]                                         # k = 1, 3, 5, ...
    k = np.arange(1, 2 * odd.size, 2)
    tail = 4.0 * np.sum(odd.imag / k)
    base = np.pi * float(np.vdot(c, c).real)
    return base - tail if negate_odd else base + tail


def _trim_bounds(c: np.ndarray):
    nz = np.flatnonzero(np.abs(c) > DEFAULT_TRIM_TOL)
    if nz.size == 0:
        return None
    return int(nz[0]), int(nz[-1])


class _Problem:
    """Precomputed dense form of a bank so the objective costs a few convolutions."""

    def __init__(self, bank: FilterBank, order: int, real_mode: bool):
        b1, b2 = bank.highpass
        lo = min(f.lo for f in (b1, b2) if not f.is_zero) if not (b1.is_zero and b2.is_zero) else 0
        hi = max(f.hi for f in (b1, b2) if not f.is_zero) if not (b1.is_zero and b2.is_zero) else 0
        self.lo = lo
        self.b1 = b1.dense(lo, hi)
        self.b2 = b2.dense(lo, hi)
        self.order = order
        self.real_mode = real_mode

    def pair(self, x):
        """Dense ``bp`` (starting at ``lo``) and shifted ``bn`` with their starts."""
        n = self.order + 1
        thetas = x[:n]
        phis = None if self.real_mode else x[n:2 * n]
        u1, u2 = _column_arrays(thetas, phis)
        U1 = np.zeros(2 * n - 1, dtype=complex)
        U2 = np.zeros(2 * n - 1, dtype=complex)
        U1[0::2], U2[0::2] = u1, u2
        bp = np.convolve(self.b1, U1) + np.convolve(self.b2, U2)
        # u*(z^2) lives on [-2N, 0]
        bn = np.convolve(self.b2, np.conj(U1[::-1])) - np.convolve(self.b1, np.conj(U2[::-1]))
        bp_lo, bn_lo = self.lo, self.lo - 2 * self.order
        tp, tn = _trim_bounds(bp), _trim_bounds(bn)
        m = 0
        if tp is not None and tn is not None:
            cp = bp_lo + 0.5 * (tp[0] + tp[1])
            cn = bn_lo + 0.5 * (tn[0] + tn[1])
            m = _best_shift(cp, cn)
        return bp, bp_lo, bn, bn_lo + 2 * m

    def __call__(self, x) -> float:
        bp, bp_lo, bn, bn_lo = self.pair(x)
        if self.real_mode:
            lo = min(bp_lo, bn_lo)
            size = max(bp_lo + bp.size, bn_lo + bn.size) - lo
            P = np.zeros(size, dtype=complex)
            Q = np.zeros(size, dtype=complex)
            P[bp_lo - lo:bp_lo - lo + bp.size] = bp
            Q[bn_lo - lo:bn_lo - lo + bn.size] = bn
            bp, bn = (P + 1j * Q) * INV_SQRT2, (P - 1j * Q) * INV_SQRT2
        return _halfcircle_energy(bp, True) + _halfcircle_energy(bn, False)


@dataclass
class OptimizeResult:
    a: LaurentPoly
    bp: LaurentPoly
    bn: LaurentPoly
    lattice: LatticeColumn
    d_B: float
    m: int
    start_index: int
    real_mode: bool

    @property
    def bank(self) -> FilterBank:
        return FilterBank.of(self.a, self.bp, self.bn)


def _coordinate_pass(f, x, sweeps: int = 2, scan: int = 16):
    """Per-angle coarse scan over one period, then bounded golden-section refinement."""
    x = np.array(x, dtype=float)
    fx = f(x)
    grid = np.linspace(0.0, TWO_PI, scan, endpoint=False)
    h = TWO_PI / scan
    for _ in range(sweeps):
        for i in range(x.size):
            def g(t, i=i):
                y = x.copy()
                y[i] = t
                return f(y)
            vals = [g(t) for t in grid]
            j = int(np.argmin(vals))
            centre = grid[j]
            res = minimize_scalar(g, bounds=(centre - h, centre + h), method="bounded",
                                  options={"xatol": 1e-10})
            if res.fun < fx:
                x[i] = res.x % TWO_PI
                fx = float(res.fun)
    return x, fx


def _local_search(f, x0):
    x, fx = _coordinate_pass(f, x0)
    res = minimize(f, x, method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 4000 * x.size})
    if res.fun < fx:
        x, fx = res.x % TWO_PI, float(res.fun)
    return x, fx


def optimize_bank(bank: FilterBank, N: int, real_mode: Optional[bool] = None,
                  starts: int = 64, seed: int = 1, tol: float = 1e-9) -> OptimizeResult:
    """
    Multi-start search for the degree-``N`` column minimizing ``d_B``.

    Parameters
    ----------
    bank : FilterBank
        Tight bank ``{a; b1, b2}``.
    N : int
        Degree of the paraunitary column.
    real_mode : bool, optional
        Real lattice followed by :func:`realify`.  Defaults to ``bank.field == "real"``.
    starts : int
        Number of random starting points.  Start ``k`` is the ``k``-th draw of
        one seeded stream, so more starts never give a worse answer.
    seed : int
        Seed of that stream.

    Returns
    -------
    OptimizeResult
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    if starts < 1:
        raise ValueError("starts must be at least 1")
    if bank.arity != 2:
        raise WrongArity("optimize_bank needs a bank with two high-pass filters")
    check = verify_tight(bank, tol)
    if not check.ok:
        raise NotTight(f"input bank is not tight (residual {check.residual:.3g})")
    if real_mode is None:
        real_mode = bank.field == "real"

    f = _Problem(bank, N, real_mode)
    dim = (N + 1) if real_mode else 2 * (N + 1)
    rng = np.random.default_rng(seed)
    best_x, best_f, best_k = None, np.inf, -1
    for k in range(starts):
        x0 = rng.uniform(0.0, TWO_PI, dim)
        x, fx = _local_search(f, x0)
        if fx < best_f:
            best_x, best_f, best_k = x, fx, k

    lat = LatticeColumn.from_vector(best_x, N, real_mode)
    u1, u2 = realize_column(lat)
    bp, bn, m = apply_column(bank, u1, u2)
    if real_mode:
        bp, bn = realify(bp, bn)
    out = FilterBank.of(bank.a, bp, bn)
    check = verify_tight(out, tol)
    if not check.ok:
        raise NotTight(f"optimized bank lost tightness (residual {check.residual:.3g})")
    return OptimizeResult(bank.a, bp, bn, lat, d_separation(bp, bn), m, best_k, real_mode)
