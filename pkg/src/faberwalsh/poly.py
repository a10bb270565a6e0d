"""Dense complex polynomials and truncated Laurent series at infinity."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

MONIC_TOL = 1e-9


def _as_coeffs(coeffs) -> np.ndarray:
    arr = np.array(coeffs, dtype=complex).ravel()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ComplexPolynomial:
    """Polynomial with complex coefficients in ascending powers.

    The zero polynomial has an empty coefficient array.  Trailing zeros are
    rejected rather than trimmed; call :meth:`trimmed` explicitly.
    """

    coeffs: np.ndarray = field(default_factory=lambda: _as_coeffs([]))

    def __post_init__(self):
        arr = _as_coeffs(self.coeffs)
        if arr.size and arr[-1] == 0:
            raise ValueError("leading coefficient must be nonzero (use ComplexPolynomial.from_coeffs to trim)")
        object.__setattr__(self, "coeffs", arr)

    @classmethod
    def from_coeffs(cls, coeffs) -> "ComplexPolynomial":
        """Build from ascending coefficients, dropping exact trailing zeros."""
        arr = np.array(coeffs, dtype=complex).ravel()
        nz = np.flatnonzero(arr)
        return cls(arr[: nz[-1] + 1] if nz.size else arr[:0])

    @classmethod
    def constant(cls, c) -> "ComplexPolynomial":
        return cls.from_coeffs([c])

    @classmethod
    def one(cls) -> "ComplexPolynomial":
        return cls([1.0])

    @classmethod
    def zero(cls) -> "ComplexPolynomial":
        return cls([])

    @classmethod
    def from_roots(cls, roots) -> "ComplexPolynomial":
        p = cls.one()
        for r in np.asarray(roots, dtype=complex).ravel():
            p = poly_linear_shift_mul(p, r)
        return p

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    @property
    def leading(self) -> complex:
        return complex(self.coeffs[-1]) if self.coeffs.size else 0j

    def is_monic(self, tol: float = MONIC_TOL) -> bool:
        return not self.is_zero and abs(self.leading - 1) <= tol

    def trimmed(self, rel_tol: float = 1e-14) -> "ComplexPolynomial":
        """Drop trailing coefficients below ``rel_tol * max|coeff|``."""
        if self.is_zero:
            return self
        mags = np.abs(self.coeffs)
        keep = np.flatnonzero(mags >= rel_tol * mags.max())
        return ComplexPolynomial(self.coeffs[: keep[-1] + 1])

    def padded(self, length: int) -> np.ndarray:
        out = np.zeros(max(length, self.coeffs.size), dtype=complex)
        out[: self.coeffs.size] = self.coeffs
        return out

    def __call__(self, z):
        return poly_eval(self, z)

    def __mul__(self, other):
        if isinstance(other, ComplexPolynomial):
            return poly_mul(self, other)
        return ComplexPolynomial.from_coeffs(self.coeffs * complex(other))

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, ComplexPolynomial):
            other = ComplexPolynomial.constant(other)
        n = max(self.coeffs.size, other.coeffs.size)
        return ComplexPolynomial.from_coeffs(self.padded(n) + other.padded(n))

    __radd__ = __add__

    def __neg__(self):
        return ComplexPolynomial(-self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, ComplexPolynomial):
            other = ComplexPolynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __repr__(self):
        return f"ComplexPolynomial({np.array2string(self.coeffs, precision=6)})"

    def compose(self, inner: "ComplexPolynomial") -> "ComplexPolynomial":
        """Return ``self(inner(z))`` by Horner's scheme on polynomials."""
        out = ComplexPolynomial.zero()
        for c in self.coeffs[::-1]:
            out = poly_mul(out, inner) + c
        return out

    def derivative(self) -> "ComplexPolynomial":
        if self.coeffs.size <= 1:
            return ComplexPolynomial.zero()
        return ComplexPolynomial.from_coeffs(self.coeffs[1:] * np.arange(1, self.coeffs.size))


def poly_eval(p: ComplexPolynomial, z):
    """Evaluate ``p`` at ``z`` (scalar or array) by Horner's scheme."""
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for c in p.coeffs[::-1]:
        acc = acc * z + c
    return complex(acc) if acc.ndim == 0 else acc


def poly_mul(p: ComplexPolynomial, q: ComplexPolynomial) -> ComplexPolynomial:
    if p.is_zero or q.is_zero:
        return ComplexPolynomial.zero()
    # the leading product can underflow to zero for subnormal coefficients
    return ComplexPolynomial.from_coeffs(np.convolve(p.coeffs, q.coeffs))


def poly_linear_shift_mul(p: ComplexPolynomial, alpha: complex) -> ComplexPolynomial:
    """Return ``(z - alpha) * p(z)``."""
    if p.is_zero:
        return p
    out = np.zeros(p.coeffs.size + 1, dtype=complex)
    out[1:] = p.coeffs
    out[:-1] -= alpha * p.coeffs
    return ComplexPolynomial.from_coeffs(out)


def max_coeff_diff(p: ComplexPolynomial, q: ComplexPolynomial) -> float:
    n = max(p.coeffs.size, q.coeffs.size)
    if n == 0:
        return 0.0
    return float(np.max(np.abs(p.padded(n) - q.padded(n))))


@dataclass(frozen=True, eq=False)
class LaurentAtInfinity:
    """Truncated Laurent series ``sum_i poly[i] w^i + sum_k tail[k-1] w^{-k}``.

    ``order`` is the number of negative powers known to be correct; tail
    entries beyond ``len(tail)`` up to ``order`` are zero.  ``order=None``
    marks a finite, exact series.
    """

    poly: np.ndarray
    tail: np.ndarray
    order: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "poly", _as_coeffs(self.poly))
        tail = _as_coeffs(self.tail)
        if self.order is not None:
            if self.order < 0:
                raise ValueError("order must be nonnegative")
            if tail.size > self.order:
                tail = _as_coeffs(tail[: self.order])
        object.__setattr__(self, "tail", tail)

    @classmethod
    def from_map(cls, linear, constant, tail, order: int | None = None) -> "LaurentAtInfinity":
        """Series ``linear*w + constant + sum c_k w^{-k}`` (the shape of a normalized map)."""
        tail = np.asarray(tail, dtype=complex)
        return cls([constant, linear], tail, len(tail) if order is None else order)

    @classmethod
    def constant_one(cls) -> "LaurentAtInfinity":
        return cls([1.0], [], None)

    @property
    def degree(self) -> int:
        return self.poly.size - 1

    @property
    def K(self) -> float:
        return np.inf if self.order is None else self.order

    @property
    def linear(self) -> complex:
        return complex(self.poly[1]) if self.poly.size > 1 else 0j

    @property
    def constant(self) -> complex:
        return complex(self.poly[0]) if self.poly.size else 0j

    def c(self, k: int) -> complex:
        """Coefficient of ``w^{-k}`` (k >= 1), zero past the stored tail."""
        if k < 1:
            raise ValueError("tail index starts at 1")
        if self.order is not None and k > self.order:
            raise ValueError(f"coefficient c_{k} beyond truncation order {self.order}")
        return complex(self.tail[k - 1]) if k <= self.tail.size else 0j

    def tail_array(self, K: int) -> np.ndarray:
        """``[c_1, ..., c_K]`` with validation against the truncation order."""
        if K > self.K:
            raise ValueError(f"need {K} tail coefficients, series truncated at {self.order}")
        out = np.zeros(K, dtype=complex)
        n = min(K, self.tail.size)
        out[:n] = self.tail[:n]
        return out

    def polynomial_part(self) -> ComplexPolynomial:
        return ComplexPolynomial.from_coeffs(self.poly)

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        pos = np.zeros_like(w)
        for c in self.poly[::-1]:
            pos = pos * w + c
        inv = 1.0 / w
        neg = np.zeros_like(w)
        for c in self.tail[::-1]:
            neg = (neg + c) * inv
        out = pos + neg
        return complex(out) if out.ndim == 0 else out


def laurent_truncated_product(s: LaurentAtInfinity, t: LaurentAtInfinity, K: int | None = None) -> LaurentAtInfinity:
    """Product of two series, exact in the nonnegative powers and in ``w^{-1..-K}``.

    The coefficient of ``w^{-k}`` needs ``s`` to order ``k + deg t`` and ``t``
    to order ``k + deg s``; larger ``K`` are rejected.  ``K=None`` takes the
    largest valid order.
    """
    avail = min(s.K - max(t.degree, 0), t.K - max(s.degree, 0))
    if K is None:
        K = None if avail == np.inf else int(avail)
    elif K > avail:
        raise ValueError(f"requested order {K} exceeds available truncation {avail}")
    if s.poly.size == 0 and s.tail.size == 0 or t.poly.size == 0 and t.tail.size == 0:
        return LaurentAtInfinity([], [], K)
    # dense vector indexed from the lowest stored power
    def dense(x):
        return np.concatenate([x.tail[::-1], x.poly]), x.tail.size

    a, sa = dense(s)
    b, sb = dense(t)
    prod = np.convolve(a, b)
    shift = sa + sb  # index of w^0 in prod
    poly = prod[shift:]
    neg = prod[:shift][::-1]  # w^{-1}, w^{-2}, ...
    if K is not None:
        neg = neg[:K]
    return LaurentAtInfinity(poly, neg, K)


def laurent_scale_shift(s: LaurentAtInfinity, alpha: complex, beta: complex, K: int) -> LaurentAtInfinity:
    """Series of ``alpha * s((w - beta)/alpha) + beta`` for a map-shaped ``s``.

    Only maps ``w + c_0 + sum c_k w^{-k}`` with linear coefficient 1 are
    supported; the result keeps linear coefficient 1.
    """
    if abs(s.linear - 1) > MONIC_TOL or s.degree > 1:
        raise ValueError("expected a normalized map series")
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    c0 = s.constant
    # alpha*((w-beta)/alpha + c0 + sum c_k alpha^k (w-beta)^{-k}) + beta
    tail_in = s.tail_array(K)
    out = np.zeros(K, dtype=complex)
    for k in range(1, K + 1):
        ck = tail_in[k - 1] * alpha ** (k + 1)
        if ck == 0:
            continue
        # (w - beta)^{-k} = sum_m C(k+m-1, m) beta^m w^{-k-m}
        for m in range(0, K - k + 1):
            out[k + m - 1] += ck * comb(k + m - 1, m) * beta**m
    return LaurentAtInfinity.from_map(1.0, alpha * c0, out, K)


def series_power(a: np.ndarray, p: float, K: int) -> np.ndarray:
    """First ``K+1`` coefficients of ``(sum a_j x^j)^p`` for ``a_0 != 0``.

    Uses the principal branch for ``a_0^p`` and the J.C.P. Miller recurrence.
    """
    a = np.zeros(K + 1, dtype=complex) + np.pad(np.asarray(a, dtype=complex)[: K + 1], (0, max(0, K + 1 - len(a))))
    if a[0] == 0:
        raise ValueError("leading coefficient must be nonzero")
    b = np.zeros(K + 1, dtype=complex)
    b[0] = a[0] ** p
    for m in range(1, K + 1):
        j = np.arange(1, m + 1)
        b[m] = np.sum((p * j - m + j) * a[j] * b[m - j]) / (m * a[0])
    return b


def series_reciprocal(a: np.ndarray, K: int) -> np.ndarray:
    """First ``K+1`` coefficients of ``1 / sum a_j x^j``."""
    return series_power(a, -1.0, K)
