"""
Refinable functions, wavelets and 2D tensor-product generators on dyadic grids.

The refinable function satisfies ``phi(x) = 2 sum_k a(k) phi(2x - k)``.  It is
computed by the cascade iteration on the grid ``2**-K Z``, started from the
hat function (the piecewise-linear interpolant of the delta sequence on Z).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import BadLowpass, IoFailure, LevelMismatch, NonConvergentWarning
from .laurent import LaurentPoly

DEFAULT_LEVEL = 8
DEFAULT_ITERS = 24
CASCADE_TOL = 1e-8
SQRT2 = math.sqrt(2.0)


@dataclass
class CascadeGrid:
    """Samples ``values[j]`` at ``origin + j * 2**-level``."""

    level: int
    origin: float
    values: np.ndarray
    sup_diff: float = 0.0
    iterations: int = 0

    @property
    def step(self) -> float:
        return 2.0 ** -self.level

    @property
    def x(self) -> np.ndarray:
        return self.origin + np.arange(self.values.size) * self.step

    @property
    def end(self) -> float:
        return self.origin + (self.values.size - 1) * self.step

    def at(self, x: float) -> complex:
        """Sample at a grid point; zero outside the stored range."""
        j = (x - self.origin) / self.step
        k = int(round(j))
        if abs(j - k) > 1e-9:
            raise ValueError(f"{x} is not on the level-{self.level} grid")
        return complex(self.values[k]) if 0 <= k < self.values.size else 0j


@dataclass
class Grid2D:
    """Real samples of a 2D generator; row ``i`` is the first tensor factor at ``x[i]``."""

    label: str
    direction: str
    values: np.ndarray
    level: int
    origin: float
    imag_residual: float = 0.0

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def cols(self) -> int:
        return self.values.shape[1]


def _ticks(lo: float, hi: float, level: int) -> int:
    return int(round((hi - lo) * 2 ** level))


def cascade_phi(a: LaurentPoly, K: int = DEFAULT_LEVEL, iters: int = DEFAULT_ITERS,
                tol: float = CASCADE_TOL) -> CascadeGrid:
    """
    Refinable function of the low-pass filter ``a`` sampled on ``2**-K Z``.

    Parameters
    ----------
    a : LaurentPoly
        Low-pass filter with ``a_hat(0) = 1``.
    K : int
        Grid level, ``K >= 1``.
    iters : int
        Maximum number of cascade steps; iteration also stops once successive
        iterates differ by less than ``tol`` in the sup norm.

    Returns
    -------
    CascadeGrid
        Samples on ``fsupp(a)``.  A :class:`NonConvergentWarning` is issued when
        the iteration stalls above ``tol``.
    """
    if K < 1:
        raise ValueError("K must be at least 1")
    if a.is_zero or abs(a.eval_unit(0.0) - 1.0) > 1e-10:
        raise BadLowpass("the low-pass filter must satisfy a_hat(0) = 1")
    h = 2 ** K
    g_lo, g_hi = min(a.lo, -1), max(a.hi, 1)
    n = (g_hi - g_lo) * h + 1
    x = g_lo + np.arange(n) / h
    phi = np.maximum(0.0, 1.0 - np.abs(x)).astype(complex)
    # phi_new[j] = 2 sum_k a(k) phi[idx] where x_idx = 2 x_j - k
    j = np.arange(n)
    diffs = []
    for it in range(1, iters + 1):
        new = np.zeros(n, dtype=complex)
        for k, ak in zip(range(a.lo, a.hi + 1), a.coeffs):
            if ak == 0:
                continue
            idx = 2 * j + (g_lo - k) * h
            ok = (idx >= 0) & (idx < n)
            new[ok] += 2.0 * ak * phi[idx[ok]]
        diffs.append(float(np.max(np.abs(new - phi))))
        phi = new
        if diffs[-1] < tol:
            break
    if diffs[-1] >= tol and len(diffs) >= 4 and not (diffs[-1] < diffs[-2] < diffs[-3] < diffs[-4]):
        warnings.warn(f"cascade did not settle (last difference {diffs[-1]:.3g})",
                      NonConvergentWarning, stacklevel=2)
    start = (a.lo - g_lo) * h
    stop = (a.hi - g_lo) * h + 1
    return CascadeGrid(K, float(a.lo), phi[start:stop].copy(), diffs[-1], len(diffs))


def wavelet_from_phi(phi: CascadeGrid, b: LaurentPoly) -> CascadeGrid:
    """``psi(x) = 2 sum_k b(k) phi(2x - k)`` on the grid of ``phi``."""
    if phi.level < 1:
        raise ValueError("phi must be sampled at level >= 1")
    h = 2 ** phi.level
    if b.is_zero:
        return CascadeGrid(phi.level, phi.origin, np.zeros(1, dtype=complex))
    lo = (phi.origin + b.lo) / 2.0
    hi = (phi.end + b.hi) / 2.0
    n = _ticks(lo, hi, phi.level) + 1
    j = np.arange(n)
    out = np.zeros(n, dtype=complex)
    for k, bk in zip(range(b.lo, b.hi + 1), b.coeffs):
        if bk == 0:
            continue
        # 2 x_j - k = phi.origin + idx / h
        idx = 2 * j + int(round((2 * lo - k - phi.origin) * h))
        ok = (idx >= 0) & (idx < phi.values.size)
        out[ok] += 2.0 * bk * phi.values[idx[ok]]
    return CascadeGrid(phi.level, lo, out, phi.sup_diff, phi.iterations)


def _extend(g: CascadeGrid, lo: float, n: int) -> np.ndarray:
    out = np.zeros(n, dtype=complex)
    off = _ticks(lo, g.origin, g.level)
    out[off:off + g.values.size] = g.values
    return out


def tensor_generators(phi: CascadeGrid, psi_p: CascadeGrid,
                      psi_n: Optional[CascadeGrid] = None) -> list[Grid2D]:
    """
    The 2D real-valued tight framelet generated by ``{phi; psi_p, psi_n}``.

    Returns nine grids: ``phi (x) phi`` first, then the eight directional
    generators (two each along 0, 90, +45 and -45 degrees), all with the
    ``sqrt 2`` scaling.  They are computed from ``psi_p`` and ``psi_n``; when
    ``psi_n`` is the conjugate of ``psi_p`` every grid is real, and
    ``imag_residual`` records how far that holds.  ``psi_n`` defaults to the
    conjugate of ``psi_p``.
    """
    if psi_n is None:
        psi_n = CascadeGrid(psi_p.level, psi_p.origin, np.conj(psi_p.values))
    grids = (phi, psi_p, psi_n)
    if len({g.level for g in grids}) != 1:
        raise LevelMismatch("all grids must share the same level")
    level = phi.level
    lo = min(g.origin for g in grids)
    hi = max(g.end for g in grids)
    n = _ticks(lo, hi, level) + 1
    f, p, q = (_extend(g, lo, n) for g in grids)
    outer = np.multiply.outer

    def re_part(u, v):             # (u + v)/2
        return 0.5 * (u + v)

    def im_part(u, v):             # (u - v)/(2i)
        return -0.5j * (u - v)

    pp, nn, pn, np_ = outer(p, p), outer(q, q), outer(p, q), outer(q, p)
    items = [
        ("phi(x)phi", "none", outer(f, f)),
        ("phi(x)psi_r", "0", SQRT2 * outer(f, re_part(p, q))),
        ("phi(x)psi_i", "0", SQRT2 * outer(f, im_part(p, q))),
        ("psi_r(x)phi", "90", SQRT2 * outer(re_part(p, q), f)),
        ("psi_i(x)phi", "90", SQRT2 * outer(im_part(p, q), f)),
        ("rr-ii", "+45", SQRT2 * re_part(pp, nn)),
        ("rr+ii", "+45", SQRT2 * re_part(pn, np_)),
        ("ri-ir", "-45", SQRT2 * im_part(np_, pn)),
        ("ri+ir", "-45", SQRT2 * im_part(pp, nn)),
    ]
    return [Grid2D(label, direction, v.real.copy(), level, lo, float(np.max(np.abs(v.imag))))
            for label, direction, v in items]


# -- export ------------------------------------------------------------------

def _pgm_bytes(values: np.ndarray) -> bytes:
    v = np.atleast_2d(np.asarray(values, dtype=float))
    vmin, vmax = float(v.min()), float(v.max())
    if vmax > vmin:
        pix = np.rint((v - vmin) * (255.0 / (vmax - vmin))).astype(np.uint8)
    else:
        pix = np.zeros(v.shape, dtype=np.uint8)
    header = f"P5\n# norm min={vmin!r} max={vmax!r}\n{v.shape[1]} {v.shape[0]}\n255\n"
    return header.encode("ascii") + pix.tobytes()


def _csv_text(grid) -> str:
    if isinstance(grid, Grid2D):
        return "".join(",".join(repr(float(c)) for c in row) + "\n" for row in grid.values)
    return "".join(f"{float(x)!r},{float(v.real)!r},{float(v.imag)!r}\n"
                   for x, v in zip(grid.x, grid.values))


def export(grid, fmt: str, path) -> Path:
    """
    Write a grid as CSV or binary PGM.

    A 1D grid becomes ``x,re,im`` rows (CSV) or a one-row image of its real
    part (PGM).  PGM pixels map the minimum to 0 and the maximum to 255; the
    pair is stored in the header comment.
    """
    path = Path(path)
    try:
        if fmt == "csv":
            path.write_text(_csv_text(grid), encoding="utf-8")
        elif fmt == "pgm":
            vals = grid.values if isinstance(grid, Grid2D) else grid.values.real[None, :]
            path.write_bytes(_pgm_bytes(vals))
        else:
            raise ValueError(f"unknown format {fmt!r}")
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
    return path


def read_csv(path, two_d: bool = False):
    """Inverse of the CSV export: ``(x, values)`` for 1D grids, a matrix for 2D."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    rows = [[float(t) for t in line.split(",")] for line in text.splitlines() if line]
    arr = np.array(rows, dtype=float)
    if two_d:
        return arr
    return arr[:, 0], arr[:, 1] + 1j * arr[:, 2]


def read_pgm(path):
    """``(pixels, (vmin, vmax))`` from a PGM written by :func:`export`."""
    data = Path(path).read_bytes()
    lines, pos = [], 0
    while len(lines) < 4:
        end = data.index(b"\n", pos)
        lines.append(data[pos:end].decode("ascii"))
        pos = end + 1
    magic, comment, dims, maxval = lines
    if magic != "P5" or maxval != "255":
        raise IoFailure("not an 8-bit P5 greymap")
    parts = dict(item.split("=") for item in comment.lstrip("# ").split()[1:])
    cols, rows = (int(t) for t in dims.split())
    pix = np.frombuffer(data[pos:], dtype=np.uint8).reshape(rows, cols)
    return pix, (float(parts["min"]), float(parts["max"]))
