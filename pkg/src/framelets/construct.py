"""
Shortest-support tight framelet filter banks ``{a; b1, b2}`` from a low-pass ``a``.

With ``Am = 1 - a a*``, ``Bm = -a(z) a*(-z)`` and ``D(z**2) = 1 - a a* - a(-z) a*(-z)``
a spectral factor ``d`` of ``D`` fixes the determinant of the high-pass
polyphase matrix.  The first high-pass filter is then found as the nullspace
of a linear system: ``Bm(-z) b1(z) - Am(z) b1(-z)`` must be divisible by
``d(z**2) z`` and the quotient (which is ``b2*``) must have the prescribed
support.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .analysis import FilterBank, det_poly, verify_tight
from .errors import (BadLambda, EmptyNullspace, FrameletError, PreconditionFailed,
                     ZeroDivisor)
from .laurent import LaurentPoly
from .spectral import spectral_factorize

NULLSPACE_RTOL = 1e-10
LAMBDA_TOL = 1e-9
TIGHT_TOL = 1e-9


@dataclass(frozen=True)
class ConstructParams:
    eps: int = 0
    s1: int = 0
    s2: int = 0
    factor_index: int = 0
    solution_index: int = 0

    def __post_init__(self):
        for name in ("eps", "s1", "s2"):
            if getattr(self, name) not in (0, 1):
                raise ValueError(f"{name} must be 0 or 1")
        if self.factor_index < 0 or self.solution_index < 0:
            raise ValueError("indices must be nonnegative")


def divide_with_window(L: LaurentPoly, divisor: LaurentPoly, remainder_window):
    """
    Split ``L = divisor * quotient + remainder`` with the remainder supported in
    ``remainder_window``, an interval with exactly ``divisor.length`` slots.
    """
    if divisor.is_zero:
        raise ZeroDivisor("division by the zero polynomial")
    w_lo, w_hi = remainder_window
    deg = divisor.length
    if w_hi - w_lo + 1 != deg:
        raise ValueError(f"remainder window must have {deg} slots, got {w_hi - w_lo + 1}")
    if L.is_zero:
        return LaurentPoly(), LaurentPoly()
    lo = min(L.lo, w_lo)
    hi = max(L.hi, w_hi)
    r = L.dense(lo, hi)
    q: dict[int, complex] = {}
    dc = divisor.coeffs
    top, bottom = dc[-1], dc[0]
    # clear everything above the window, top down
    for k in range(hi, w_hi, -1):
        c = r[k - lo]
        if c == 0:
            continue
        qk = c / top
        shift = k - divisor.hi
        q[shift] = q.get(shift, 0) + qk
        r[shift + divisor.lo - lo:k - lo + 1] -= qk * dc
        r[k - lo] = 0
    # clear everything below the window, bottom up
    for k in range(lo, w_lo):
        c = r[k - lo]
        if c == 0:
            continue
        qk = c / bottom
        shift = k - divisor.lo
        q[shift] = q.get(shift, 0) + qk
        r[k - lo:shift + divisor.hi - lo + 1] -= qk * dc
        r[k - lo] = 0
    return LaurentPoly.from_dict(q), LaurentPoly(r, lo)


def _check_condition(a: LaurentPoly, n: int = 4096, tol: float = 1e-10):
    xi = np.linspace(0, 2 * np.pi, n, endpoint=False)
    s = np.abs(a.eval_unit(xi)) ** 2 + np.abs(a.eval_unit(xi + np.pi)) ** 2
    if np.max(s) > 1 + tol:
        raise PreconditionFailed(f"|a(z)|^2 + |a(-z)|^2 reaches {np.max(s):.6g} > 1")


def symbols(a: LaurentPoly):
    """``(Am, Bm, D)`` with ``D`` already written in ``w = z**2``."""
    aa = a * a.star()
    Am = 1.0 - aa
    Bm = -(a * a.star().alternate())
    Dz = (1.0 - aa - aa.alternate())
    D, odd = Dz.polyphase_split()
    if not odd.trim(1e-14).is_zero:
        raise FrameletError("internal: D(z) has odd powers")
    return Am, Bm, D.trim(1e-14)


def _d_window(s1, s2, eps, n0):
    lo = -((-(s1 + s2 - 1)) // 2)          # ceil((s1+s2-1)/2)
    hi = (s1 + s2 - 1) // 2 + n0 + eps
    return lo, hi


def factor_candidates(a: LaurentPoly, eps: int, s1: int, s2: int):
    """Every spectral factor ``d`` placed at every admissible shift in the window."""
    Am, _, D = symbols(a)
    n0 = Am.hi
    lo_w, hi_w = _d_window(s1, s2, eps, n0)
    res = spectral_factorize(D, (lo_w, hi_w), enumerate_all=True)
    out = []
    for d in res.factors:
        for start in range(lo_w, hi_w - d.length + 1):
            out.append(d.shift(start - d.lo))
    return out


def _nullspace(M: np.ndarray) -> np.ndarray:
    """Orthonormal nullspace basis as columns, ordered by singular value."""
    if M.shape[0] == 0:
        return np.eye(M.shape[1])
    real = np.all(M.imag == 0)
    M = M.real if real else M
    _, s, vh = np.linalg.svd(M)
    n = M.shape[1]
    full = np.zeros(n)
    full[:len(s)] = s
    thresh = NULLSPACE_RTOL * max(1.0, s[0] if len(s) else 1.0)
    idx = [i for i in np.argsort(full, kind="stable") if full[i] <= thresh]
    basis = np.conj(vh[idx]).T
    # fix the sign so each vector's first sizeable entry is positive real
    for j in range(basis.shape[1]):
        v = basis[:, j]
        k = int(np.argmax(np.abs(v) > 1e-8))
        basis[:, j] = v * (abs(v[k]) / v[k])
    return basis


def _system(a, d, params: ConstructParams):
    Am, Bm, _ = symbols(a)
    n0 = Am.hi
    eps, s1, s2 = params.eps, params.s1, params.s2
    m_d, n_d = d.lo, d.hi
    divisor = d.upsample_two().shift(1)
    window = (2 * m_d, 2 * n_d - 1)
    Bneg = Bm.alternate()
    nt = n0 + eps + 1
    R_cols, Q_cols = [], []
    for j in range(nt):
        e = LaurentPoly.monomial(s1 + j)
        L = Bneg * e - Am * e.alternate()
        q, r = divide_with_window(L, divisor, window)
        R_cols.append(r)
        Q_cols.append(q)

    def stack(cols, lo, hi):
        if hi < lo:
            return np.zeros((0, nt), dtype=complex)
        return np.array([c.dense(lo, hi) for c in cols]).T

    rows = [stack(R_cols, *window)]
    q_lo = s1 - n0 - 2 * m_d - 1
    q_hi = s1 + 2 * n0 - 2 * n_d + eps - 1
    rows.append(stack(Q_cols, q_lo, s2 - 1))
    rows.append(stack(Q_cols, s2 + n0 + eps + 1, q_hi))
    return np.vstack(rows), Q_cols


def solve_for(a: LaurentPoly, d: LaurentPoly, params: ConstructParams) -> FilterBank:
    """Run the linear-system and normalization steps for one fixed factor ``d``."""
    M, Q_cols = _system(a, d, params)
    basis = _nullspace(M)
    if basis.shape[1] == 0:
        raise EmptyNullspace("only the trivial solution for this factor")
    if params.solution_index >= basis.shape[1]:
        raise EmptyNullspace(f"nullspace has dimension {basis.shape[1]}")
    t = basis[:, params.solution_index]
    b1 = LaurentPoly(t, params.s1)
    b2_star = LaurentPoly()
    for tj, q in zip(t, Q_cols):
        b2_star = b2_star + tj * q
    b2 = b2_star.star()

    target = d.upsample_two()
    lhs = det_poly(b1, b2).shift(-1)
    j = int(np.argmax(np.abs(target.coeffs)))
    k = target.lo + j
    lam = lhs.coeff(k) / target.coeff(k)
    if (lhs - lam * target).max_abs() > LAMBDA_TOL * max(1.0, abs(lam)):
        raise BadLambda("determinant is not a multiple of d(z^2)")
    if abs(lam.imag) > LAMBDA_TOL * max(1.0, abs(lam)) or lam.real <= 0:
        raise BadLambda(f"lambda = {lam:.6g} is not positive")
    scale = 1.0 / np.sqrt(lam.real)
    b1 = (b1 * scale).trim()
    b2 = (b2 * scale).trim()
    field = "real" if a.is_real and b1.is_real and b2.is_real else "complex"
    return FilterBank(a, (b1, b2), field)


def _orthogonal_bank(a: LaurentPoly) -> FilterBank:
    b = a.star().alternate().shift(1)
    field = "real" if a.is_real else "complex"
    return FilterBank(a, (b, LaurentPoly()), field)


def derive_shortest_bank(a: LaurentPoly, params: Optional[ConstructParams] = None) -> FilterBank:
    """
    Tight bank ``{a; b1, b2}`` with ``max(len b1, len b2) <= len a + eps``.

    Parameters
    ----------
    a : LaurentPoly
        Low-pass filter.
    params : ConstructParams, optional
        Fixed choice of ``(eps, s1, s2)``, factor and nullspace vector.  When
        omitted, the first valid choice of :func:`sweep` is used.

    Raises
    ------
    PreconditionFailed
        ``|a(z)|^2 + |a(-z)|^2 > 1`` somewhere on the unit circle.
    EmptyNullspace, BadLambda
        This factor/solution choice yields no valid bank; try other parameters.
    """
    if a.is_zero:
        raise PreconditionFailed("the low-pass filter is identically zero")
    if params is None:
        return first_bank(a)[1]
    _check_condition(a)
    _, _, D = symbols(a)
    if D.trim(1e-12).is_zero:
        return _orthogonal_bank(a)
    cands = factor_candidates(a, params.eps, params.s1, params.s2)
    if params.factor_index >= len(cands):
        raise EmptyNullspace(f"only {len(cands)} factor candidates for these parameters")
    bank = solve_for(a, cands[params.factor_index], params)
    check = verify_tight(bank, TIGHT_TOL)
    if not check.ok:
        raise BadLambda(f"normalized bank is not tight (residual {check.residual:.3g})")
    return bank


def sweep(a: LaurentPoly):
    """Yield ``(params, bank)`` for every valid choice, in the default search order."""
    _check_condition(a)
    _, _, D = symbols(a)
    if D.trim(1e-12).is_zero:
        yield ConstructParams(), _orthogonal_bank(a)
        return
    for eps, s1, s2 in itertools.product((0, 1), repeat=3):
        try:
            cands = factor_candidates(a, eps, s1, s2)
        except FrameletError:
            continue
        for fi, d in enumerate(cands):
            base = ConstructParams(eps, s1, s2, fi, 0)
            try:
                M, _ = _system(a, d, base)
                dim = _nullspace(M).shape[1]
            except FrameletError:
                continue
            for si in range(dim):
                params = ConstructParams(eps, s1, s2, fi, si)
                try:
                    bank = solve_for(a, d, params)
                except FrameletError:
                    continue
                if verify_tight(bank, TIGHT_TOL).ok:
                    yield params, bank


def first_bank(a: LaurentPoly):
    """The first valid bank of :func:`sweep`, as ``(params, bank)``."""
    if a.is_zero:
        raise PreconditionFailed("the low-pass filter is identically zero")
    for item in sweep(a):
        return item
    raise EmptyNullspace("no parameter choice produced a tight bank")
