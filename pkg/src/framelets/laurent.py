"""
Finitely supported complex sequences as Laurent polynomials.

A sequence ``u`` is stored as its lowest exponent ``lo`` together with the
coefficients of ``z**lo, z**(lo+1), ...``.  Its symbol is

    u(z) = sum_k u(k) z**k,     u_hat(xi) = u(exp(-1j*xi)).

Instances are immutable.  Construction trims exact zeros at both ends; the
tolerance trim :meth:`LaurentPoly.trim` is only applied by callers that have
done floating-point work (root finding, nullspaces, optimization).
"""
from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

DEFAULT_TRIM_TOL = 1e-12


class LaurentPoly:
    """Laurent polynomial with complex coefficients."""

    __slots__ = ("_lo", "_c")

    def __init__(self, coeffs: Iterable[complex] = (), lo: int = 0):
        c = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                     dtype=np.complex128).ravel()
        nz = np.flatnonzero(c)
        if nz.size == 0:
            c = np.zeros(0, dtype=np.complex128)
            lo = 0
        else:
            first, last = nz[0], nz[-1]
            c = c[first:last + 1].copy()
            lo = int(lo) + int(first)
        c.setflags(write=False)
        self._lo = lo
        self._c = c

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls([1.0])

    @classmethod
    def monomial(cls, k: int, c: complex = 1.0) -> "LaurentPoly":
        return cls([c], lo=k)

    @classmethod
    def from_dict(cls, d: Mapping[int, complex]) -> "LaurentPoly":
        if not d:
            return cls()
        lo, hi = min(d), max(d)
        c = np.zeros(hi - lo + 1, dtype=np.complex128)
        for k, v in d.items():
            c[k - lo] += v
        return cls(c, lo=lo)

    # -- basic attributes -------------------------------------------------
    @property
    def lo(self) -> int:
        return self._lo

    @property
    def hi(self) -> int:
        return self._lo + len(self._c) - 1

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def fsupp(self) -> tuple[int, int]:
        if self.is_zero:
            raise ValueError("the zero polynomial has no filter support")
        return self.lo, self.hi

    @property
    def length(self) -> int:
        """Filter length ``hi - lo``; zero for monomials and for the zero filter."""
        return 0 if self.is_zero else self.hi - self.lo

    @property
    def is_zero(self) -> bool:
        return len(self._c) == 0

    @property
    def is_real(self) -> bool:
        return bool(np.all(self._c.imag == 0))

    def is_hermitian(self, tol: float = 0.0) -> bool:
        return (self - self.star()).max_abs() <= tol

    def coeff(self, k: int) -> complex:
        i = k - self._lo
        if 0 <= i < len(self._c):
            return complex(self._c[i])
        return 0j

    def to_dict(self) -> dict[int, complex]:
        return {self._lo + i: complex(v) for i, v in enumerate(self._c) if v != 0}

    def dense(self, lo: int, hi: int) -> np.ndarray:
        """Coefficients of ``z**lo .. z**hi`` (zero padded, truncated outside)."""
        out = np.zeros(hi - lo + 1, dtype=np.complex128)
        if self.is_zero:
            return out
        a, b = max(lo, self.lo), min(hi, self.hi)
        if a <= b:
            out[a - lo:b - lo + 1] = self._c[a - self._lo:b - self._lo + 1]
        return out

    def max_abs(self) -> float:
        return float(np.max(np.abs(self._c))) if len(self._c) else 0.0

    # -- ring operations --------------------------------------------------
    def _binary(self, other: "LaurentPoly", sign: int) -> "LaurentPoly":
        if self.is_zero:
            return other if sign > 0 else -other
        if other.is_zero:
            return self
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        out = self.dense(lo, hi)
        out[other.lo - lo:other.hi - lo + 1] += sign * other._c
        return LaurentPoly(out, lo)

    def __add__(self, other):
        if isinstance(other, LaurentPoly):
            return self._binary(other, 1)
        if np.isscalar(other):
            return self._binary(LaurentPoly([other]), 1)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, LaurentPoly):
            return self._binary(other, -1)
        if np.isscalar(other):
            return self._binary(LaurentPoly([other]), -1)
        return NotImplemented

    def __rsub__(self, other):
        if np.isscalar(other):
            return LaurentPoly([other])._binary(self, -1)
        return NotImplemented

    def __neg__(self):
        return LaurentPoly(-self._c, self._lo)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            if self.is_zero or other.is_zero:
                return LaurentPoly()
            return LaurentPoly(np.convolve(self._c, other._c), self._lo + other._lo)
        if np.isscalar(other):
            return LaurentPoly(self._c * other, self._lo)
        return NotImplemented

    def __rmul__(self, other):
        if np.isscalar(other):
            return LaurentPoly(self._c * other, self._lo)
        return NotImplemented

    def __truediv__(self, other):
        if np.isscalar(other):
            return LaurentPoly(self._c / other, self._lo)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        out = LaurentPoly.one()
        for _ in range(n):
            out = out * self
        return out

    # -- symbol transformations -------------------------------------------
    def star(self) -> "LaurentPoly":
        """Adjoint: conjugate the coefficients and negate the exponents."""
        if self.is_zero:
            return self
        return LaurentPoly(np.conj(self._c[::-1]), -self.hi)

    def conj(self) -> "LaurentPoly":
        """Coefficient-wise complex conjugate (same support)."""
        return LaurentPoly(np.conj(self._c), self._lo)

    def alternate(self) -> "LaurentPoly":
        """The substitution ``z -> -z``."""
        if self.is_zero:
            return self
        k = np.arange(self._lo, self.hi + 1)
        return LaurentPoly(np.where(k % 2 == 0, self._c, -self._c), self._lo)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``z**k``."""
        if self.is_zero:
            return self
        return LaurentPoly(self._c, self._lo + k)

    def upsample_two(self) -> "LaurentPoly":
        """The substitution ``z -> z**2``."""
        if self.is_zero:
            return self
        out = np.zeros(2 * len(self._c) - 1, dtype=np.complex128)
        out[::2] = self._c
        return LaurentPoly(out, 2 * self._lo)

    def polyphase_split(self) -> tuple["LaurentPoly", "LaurentPoly"]:
        """Cosets ``(u0, u1)`` with ``u(z) = u0(z**2) + z*u1(z**2)``."""
        d = self.to_dict()
        even = {k // 2: v for k, v in d.items() if k % 2 == 0}
        odd = {(k - 1) // 2: v for k, v in d.items() if k % 2 != 0}
        return LaurentPoly.from_dict(even), LaurentPoly.from_dict(odd)

    def trim(self, tol: float = DEFAULT_TRIM_TOL) -> "LaurentPoly":
        """Zero out coefficients below ``tol`` in absolute value, then trim."""
        c = self._c.copy()
        c.real[np.abs(c.real) <= tol] = 0.0
        c.imag[np.abs(c.imag) <= tol] = 0.0
        return LaurentPoly(c, self._lo)

    # -- evaluation -------------------------------------------------------
    def __call__(self, z):
        """Evaluate the symbol at nonzero complex ``z`` (scalar or array)."""
        z = np.asarray(z, dtype=np.complex128)
        if self.is_zero:
            return np.zeros_like(z)
        # Horner in z, then the monomial factor z**lo
        acc = np.zeros_like(z)
        for c in self._c[::-1]:
            acc = acc * z + c
        return acc * z ** self._lo

    def eval_unit(self, xi):
        """Fourier series ``sum_k u(k) exp(-1j*k*xi)``; accepts arrays."""
        xi = np.asarray(xi, dtype=float)
        if self.is_zero:
            return np.zeros(xi.shape, dtype=np.complex128)
        k = np.arange(self._lo, self.hi + 1)
        out = np.exp(-1j * np.multiply.outer(xi, k)) @ self._c
        return out[()] if out.ndim == 0 else out

    def integrate_halfcircle(self) -> complex:
        """Exact ``int_0^pi u(exp(-1j*xi)) dxi``.

        Even nonzero exponents integrate to zero, odd ones to ``2/(1j*k)``.
        """
        if self.is_zero:
            return 0j
        k = np.arange(self._lo, self.hi + 1)
        odd = k % 2 != 0
        total = self.coeff(0) * np.pi
        total += np.sum(self._c[odd] * (2.0 / (1j * k[odd])))
        return complex(total)

    # -- dunder plumbing --------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._lo == other._lo and np.array_equal(self._c, other._c)

    def __hash__(self):
        return hash((self._lo, self._c.tobytes()))

    def __len__(self):
        return len(self._c)

    def __repr__(self):
        if self.is_zero:
            return "LaurentPoly(0)"
        body = ", ".join(_fmt(c) for c in self._c)
        return f"LaurentPoly([{body}], lo={self._lo})"

    def allclose(self, other: "LaurentPoly", tol: float = 1e-12) -> bool:
        return (self - other).max_abs() <= tol


def _fmt(c: complex) -> str:
    c = complex(c)
    return repr(c.real) if c.imag == 0 else repr(c)


# Functional spellings used across the package.

def combine(p: LaurentPoly, q: LaurentPoly, kind: str) -> LaurentPoly:
    if kind == "add":
        return p + q
    if kind == "sub":
        return p - q
    if kind == "mul":
        return p * q
    raise ValueError(f"unknown kind {kind!r}")


def star(p: LaurentPoly) -> LaurentPoly:
    return p.star()


def alternate(p: LaurentPoly) -> LaurentPoly:
    return p.alternate()


def eval_unit(p: LaurentPoly, xi):
    return p.eval_unit(xi)


def polyphase_split(p: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    return p.polyphase_split()


def polyphase_merge(u0: LaurentPoly, u1: LaurentPoly) -> LaurentPoly:
    return u0.upsample_two() + u1.upsample_two().shift(1)


def upsample_two(p: LaurentPoly) -> LaurentPoly:
    return p.upsample_two()


def integrate_halfcircle(p: LaurentPoly) -> complex:
    return p.integrate_halfcircle()
