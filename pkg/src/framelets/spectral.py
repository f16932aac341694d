"""
Fejér-Riesz factorization of Laurent polynomials nonnegative on the unit circle.

Everything here works in a single variable ``w``.  When a caller has a
polynomial in ``z**2`` it substitutes ``w = z**2`` before calling in.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInput, NoFactorInWindow, NotNonnegative
from .laurent import LaurentPoly

CLUSTER_TOL = 1e-6
# multiple roots on the circle smear to ~eps**(1/k); this radius catches k <= 4
CIRCLE_CLUSTER_TOL = 2e-3
MAX_FREE_PAIRS = 14


@dataclass(frozen=True)
class Roots:
    values: np.ndarray
    residual: float


@dataclass
class FactorizationResult:
    factors: list = field(default_factory=list)
    residual: float = 0.0
    real_flags: list = field(default_factory=list)

    def __len__(self):
        return len(self.factors)


def poly_roots(p: LaurentPoly) -> Roots:
    """Roots of the ordinary polynomial ``z**(-lo) * p(z)`` via the companion matrix."""
    if p.is_zero:
        raise DegenerateInput("cannot take roots of the zero polynomial")
    # np.roots wants highest degree first
    r = np.roots(p.coeffs[::-1]) if len(p) > 1 else np.zeros(0, dtype=complex)
    r = np.asarray(r, dtype=np.complex128)
    if r.size:
        q = LaurentPoly(p.coeffs)
        scale = np.maximum(1.0, np.abs(r)) ** (len(p) - 1)
        residual = float(np.max(np.abs(q(r)) / scale))
    else:
        residual = 0.0
    return Roots(r, residual)


def _clusters(roots: np.ndarray, tol: float) -> list[list[int]]:
    """Single-linkage grouping of roots closer than ``tol`` (relative)."""
    n = len(roots)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            scale = max(1.0, abs(roots[i]), abs(roots[j]))
            if abs(roots[i] - roots[j]) <= tol * scale:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _split_roots(roots: np.ndarray, circle_tol: float = CIRCLE_CLUSTER_TOL):
    """Separate unit-circle roots (halved) from reciprocal pairs ``(r, 1/conj r)``."""
    near = np.abs(np.abs(roots) - 1.0) < 5e-2
    circle: list[complex] = []
    loose = list(roots[~near])
    near_roots = roots[near]
    for grp in _clusters(near_roots, circle_tol):
        vals = near_roots[grp]
        centre = np.mean(vals)
        if abs(abs(centre) - 1.0) > 1e-4:
            loose.extend(vals)
            continue
        if len(grp) % 2:
            raise NotNonnegative("unit-circle root of odd multiplicity")
        circle.extend([centre / abs(centre)] * (len(grp) // 2))

    inner = sorted((r for r in loose if abs(r) < 1), key=abs)
    outer = [r for r in loose if abs(r) >= 1]
    if len(inner) != len(outer):
        raise NotNonnegative("roots do not pair as (r, 1/conj r)")
    pairs = []
    used = np.zeros(len(outer), dtype=bool)
    for r in inner:
        mirror = 1.0 / np.conj(r)
        dist = np.array([np.inf if used[j] else abs(o - mirror) for j, o in enumerate(outer)])
        j = int(np.argmin(dist))
        used[j] = True
        pairs.append((r, outer[j]))
    return circle, pairs


def _subset_order(pairs, real_input: bool):
    """Yield tuples of choices (0 = inner root, 1 = outer root) for each pair.

    For real input the conjugate-closed choices come first so the first
    candidates have real coefficients.
    """
    k = len(pairs)
    if k > MAX_FREE_PAIRS:
        raise NoFactorInWindow(f"too many root pairs ({k}) to enumerate")
    all_choices = list(itertools.product((0, 1), repeat=k))
    if not real_input:
        return all_choices, [False] * len(all_choices)

    inner = np.array([p[0] for p in pairs])
    # conj partner index for every pair (itself when the inner root is real)
    partner = []
    for i, r in enumerate(inner):
        j = int(np.argmin(np.abs(inner - np.conj(r))))
        partner.append(j)

    def closed(ch):
        return all(ch[i] == ch[partner[i]] for i in range(k))

    flags = [closed(ch) for ch in all_choices]
    order = sorted(range(len(all_choices)), key=lambda i: (not flags[i], i))
    return [all_choices[i] for i in order], [flags[i] for i in order]


def _normalize(d: LaurentPoly, D: LaurentPoly) -> LaurentPoly:
    dd = d * d.star()
    scale = D.coeff(D.hi) / dd.coeff(dd.hi)
    d = d * np.sqrt(abs(scale))
    lead = d.coeffs[0]
    return d * (abs(lead) / lead)


def _grid_min(D: LaurentPoly, n: int = 4096) -> float:
    xi = np.linspace(0, 2 * np.pi, n, endpoint=False)
    return float(np.min(D.eval_unit(xi).real))


def _candidates(D: LaurentPoly, roots: np.ndarray, circle_tol: float, enumerate_all: bool):
    """Normalized factor candidates, one per root-subset choice, with real flags."""
    circle, pairs = _split_roots(roots, circle_tol)
    choices, real_flags = _subset_order(pairs, D.is_real)
    if not enumerate_all:
        choices, real_flags = choices[:1], real_flags[:1]
    candidates, flags_kept, seen = [], [], set()
    for ch, flag in zip(choices, real_flags):
        chosen = list(circle) + [p[c] for p, c in zip(pairs, ch)]
        key = tuple(sorted((round(z.real, 8), round(z.imag, 8)) for z in chosen))
        if key in seen:
            continue
        seen.add(key)
        c = np.poly(chosen)[::-1] if chosen else np.ones(1)
        candidates.append(_normalize(LaurentPoly(c), D))
        flags_kept.append(flag)
    return candidates, flags_kept


def spectral_factorize(D: LaurentPoly, support_window=None, enumerate_all: bool = False,
                       tol: float = 1e-8) -> FactorizationResult:
    """
    Find Laurent polynomials ``d`` with ``d * d.star() == D``.

    Parameters
    ----------
    D : LaurentPoly
        Hermitian, nonnegative on the unit circle.
    support_window : (int, int), optional
        Every returned factor is shifted so its support starts at the low end of
        the window; factors that do not fit raise ``NoFactorInWindow``.
        Without a window factors start at exponent 0.
    enumerate_all : bool
        Return one factor per admissible root-subset choice instead of only the
        first one (minimum phase, or conjugate-closed for real ``D``).
    tol : float
        Grid nonnegativity tolerance and reconstruction tolerance.

    Returns
    -------
    FactorizationResult
        ``factors`` is empty iff ``D`` is identically zero.
    """
    if D.is_zero:
        return FactorizationResult([], 0.0, [])
    if not D.is_hermitian(tol * max(1.0, D.max_abs())):
        raise NotNonnegative("D is not Hermitian")
    if _grid_min(D) < -tol:
        raise NotNonnegative("D takes negative values on the unit circle")
    if D.lo != -D.hi:
        raise NotNonnegative("Hermitian D must have a symmetric support")
    # negligible outer coefficients would put spurious roots at 0 and infinity
    D_full, D = D, D.trim(1e-14 * D.max_abs())

    if D.hi == 0:
        tried = [([LaurentPoly([np.sqrt(D.coeff(0).real)])], [True])]
    else:
        roots = poly_roots(D).values
        # wide circle clustering first; the tight one catches pairs just off the circle
        tried = []
        for circle_tol in (CIRCLE_CLUSTER_TOL, CLUSTER_TOL):
            try:
                tried.append(_candidates(D, roots, circle_tol, enumerate_all))
            except NotNonnegative:
                continue

    scale = tol * max(1.0, D_full.max_abs())
    exact, worst = [], 0.0
    for candidates, real_flags in tried:
        for d, is_real in zip(candidates, real_flags):
            if is_real:
                d = LaurentPoly(d.coeffs.real, d.lo)
            res = (d * d.star() - D_full).max_abs()
            if res <= scale:
                exact.append((d, is_real))
                worst = max(worst, res)
        if exact:
            break

    out, flags = [], []
    for d, is_real in exact:
        if support_window is not None:
            lo_w, hi_w = support_window
            if d.length > hi_w - lo_w:
                continue
            d = d.shift(lo_w - d.lo)
        out.append(d)
        flags.append(is_real)

    if not out:
        if support_window is not None:
            raise NoFactorInWindow(f"no spectral factor fits the window {tuple(support_window)}")
        raise NotNonnegative("no candidate reproduced D within tolerance")
    return FactorizationResult(out, worst, flags)
