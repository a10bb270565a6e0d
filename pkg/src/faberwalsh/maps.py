"""Conformal map pairs (Phi, psi) between exterior domains and lemniscatic domains."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb
from typing import Callable

import numpy as np

from .lemniscatic import LemniscaticDomain, abs_U
from .omega import OmegaMap, interval_omega, koch_liesen_psi
from .poly import LaurentAtInfinity, laurent_scale_shift, series_power
from .sets import (
    AffineImage,
    Interval,
    KochLiesenPreimage,
    SetDescriptor,
    StarIntervals,
    SymmetricIntervals,
    parse_complex,
)

DEFAULT_LAURENT_ORDER = 200
NODE_CAP = 2**16


class ConvergenceError(ArithmeticError):
    """A refinement loop hit its node cap without meeting its tolerance."""


@dataclass(eq=False)
class ConformalPair:
    """Lemniscatic map ``phi`` of the exterior of ``set`` and its inverse ``psi``.

    ``laurent_fn(K)`` returns the Laurent series of ``psi`` at infinity with
    at least ``K`` tail coefficients; results are cached.
    """

    domain: LemniscaticDomain
    phi: Callable
    psi: Callable
    set: SetDescriptor | None
    laurent_fn: Callable[[int], LaurentAtInfinity] | None = None
    name: str = ""
    default_order: int = DEFAULT_LAURENT_ORDER
    meta: dict = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def mu(self) -> float:
        return self.domain.capacity

    @property
    def psi_laurent(self) -> LaurentAtInfinity:
        return self.laurent(self.default_order)

    def laurent(self, K: int) -> LaurentAtInfinity:
        if self.laurent_fn is None:
            raise NotImplementedError(f"no Laurent series available for {self.name or 'this pair'}")
        cached = self._cache.get("laurent")
        if cached is None or cached.K < K:
            cached = self.laurent_fn(max(K, self.default_order))
            self._cache["laurent"] = cached
        return cached

    def green(self, z):
        """Green's function of the exterior of E with pole at infinity."""
        return np.log(abs_U(self.domain, self.phi(z))) - np.log(self.mu)


def _pick_closest(cands, target, fn):
    """Among candidate arrays pick, pointwise, the one whose ``fn`` value is nearest ``target``."""
    errs = np.stack([np.abs(fn(c) - target) for c in cands])
    best = np.argmin(errs, axis=0)
    return np.choose(best, np.stack(cands))


# ------------------------------------------------------------ symmetric intervals

def sym_psi_coefficients(C: float, D: float, K: int) -> np.ndarray:
    """Tail ``c_1..c_K`` of psi for ``[-D,-C] U [C,D]`` by the convolution recursion."""
    a2 = ((D + C) / 2) ** 2
    b2 = ((D - C) / 2) ** 2
    nodd = (K + 1) // 2
    odd = np.zeros(nodd)  # odd[k] = c_{2k+1}
    for k in range(nodd):
        conv = np.dot(odd[:k], odd[:k][::-1]) if k else 0.0
        odd[k] = 0.5 * b2 * a2**k - 0.5 * conv
    out = np.zeros(K, dtype=complex)
    out[0::2] = odd[: (K + 1) // 2]
    return out


def sym_intervals_pair(C: float, D: float, order: int = DEFAULT_LAURENT_ORDER) -> ConformalPair:
    """Pair for ``[-D, -C] U [C, D]`` with foci ``+-(D+C)/2`` and ``mu = sqrt(D^2-C^2)/2``."""
    desc = SymmetricIntervals(C, D)  # validates
    a = (D + C) / 2
    b2 = ((D - C) / 2) ** 2
    mu = np.sqrt(D * D - C * C) / 2
    dom = LemniscaticDomain([a, -a], [0.5, 0.5], mu)

    def psi(w):
        w = np.asarray(w, dtype=complex)
        return w * np.sqrt(1 + b2 / (w * w - a * a))

    def phi(z):
        z = np.asarray(z, dtype=complex)
        z2 = z * z
        s = np.sqrt(z2 - C * C) * np.sqrt(z2 - D * D)
        wp, wm = (z2 + D * C + s) / 2, (z2 + D * C - s) / 2
        w2 = np.where(np.abs(wp - a * a) >= np.abs(wm - a * a), wp, wm)
        w = np.sqrt(w2)
        return _pick_closest([w, -w], z, psi)

    def laurent(K):
        return LaurentAtInfinity.from_map(1.0, 0.0, sym_psi_coefficients(C, D, K), K)

    return ConformalPair(dom, phi, psi, desc, laurent, name=f"sym[{C},{D}]", default_order=order)


def sym_intervals_acf(C: float, D: float, z0):
    """Closed-form convergence factor for ``[-D,-C] U [C,D]``; 1 on E."""
    z0 = np.asarray(z0, dtype=complex)
    z2 = z0 * z0
    s = np.sqrt(z2 - C * C) * np.sqrt(z2 - D * D)
    m = np.maximum(np.abs(z2 - (D * D + C * C) / 2 + s), np.abs(z2 - (D * D + C * C) / 2 - s))
    R = 1.0 / np.sqrt(2.0 / (D * D - C * C) * m)
    R = np.where(SymmetricIntervals(C, D).contains(z0), 1.0, np.minimum(R, 1.0))
    return float(R) if R.ndim == 0 else R


# ------------------------------------------------------------ single interval

def inverse_joukowski_pair(alpha: float, beta: float, order: int = DEFAULT_LAURENT_ORDER) -> ConformalPair:
    """Exterior of ``[alpha, beta]`` onto the exterior of a disk (the N = 1 case)."""
    if not alpha < beta:
        raise ValueError("need alpha < beta")
    c = (alpha + beta) / 2
    r = (beta - alpha) / 4
    dom = LemniscaticDomain([c], [1.0], r)

    def phi(z):
        z = np.asarray(z, dtype=complex)
        s = np.sqrt(z - alpha) * np.sqrt(z - beta)
        w1, w2 = 0.5 * (z + c + s), 0.5 * (z + c - s)
        return np.where(np.abs(w1 - c) >= np.abs(w2 - c), w1, w2)

    def psi(w):
        w = np.asarray(w, dtype=complex)
        return w + r * r / (w - c)

    def laurent(K):
        if c == 0:
            return LaurentAtInfinity.from_map(1.0, 0.0, [r * r], None)
        return LaurentAtInfinity.from_map(1.0, 0.0, r * r * c ** np.arange(K), K)

    return ConformalPair(dom, phi, psi, Interval(alpha, beta), laurent, name=f"interval[{alpha},{beta}]",
                         default_order=order)


# ------------------------------------------------------------ polynomial pre-images

def _newton_polish(f, z, w, tol=1e-12, maxit=50):
    """Polish ``f(z) = w`` by Newton with a central-difference derivative."""
    z = np.array(z, dtype=complex)
    for _ in range(maxit):
        res = f(z) - w
        scale = np.maximum(np.abs(w), 1.0)
        if np.all(np.abs(res) <= tol * scale):
            break
        h = 1e-7 * np.maximum(np.abs(z), 1.0)
        df = (f(z + h) - f(z - h)) / (2 * h)
        z = z - res / df
    return z


@dataclass(frozen=True)
class PreimagePoly:
    """``P(z) = alpha z^n + alpha0`` with ``alpha > 0`` and ``n >= 2``."""

    alpha: float
    n: int
    alpha0: float

    def __call__(self, z):
        return self.alpha * np.asarray(z, dtype=complex) ** self.n + self.alpha0


def preimage_psi_laurent(omega: OmegaMap, P: PreimagePoly, K: int) -> LaurentAtInfinity:
    """Laurent series of psi for ``E = P^{-1}(Omega)`` by power-series composition."""
    n, alpha, alpha0 = P.n, P.alpha, P.alpha0
    imax = (K + 1) // n + 1
    lo = omega.psi_laurent(imax + 1)
    tt = lo.linear
    q = complex(omega.phi(alpha0))
    mun = 1.0 / (alpha * omega.dphi_inf)
    s = q * mun
    # h(x) = z^n / w^n in powers of x = w^{-n}
    h = np.zeros(imax + 1, dtype=complex)
    h[0] = tt / (alpha * mun)
    h[1] += (tt * q + lo.constant - alpha0) / alpha
    for j in range(1, imax):
        cj = lo.c(j) if j <= lo.K else 0.0
        if cj == 0:
            continue
        coef = cj * mun**j / alpha
        for m in range(0, imax - j):
            # x^{j+1} (1 + s x)^{-j}
            h[j + 1 + m] += coef * (-1) ** m * comb(j + m - 1, m) * s**m
    e = series_power(h, 1.0 / n, imax)
    tail = np.zeros(K, dtype=complex)
    for i in range(1, imax + 1):
        k = n * i - 1
        if k <= K:
            tail[k - 1] = e[i]
    return LaurentAtInfinity.from_map(e[0], 0.0, tail, K)


def preimage_pair(omega: OmegaMap, P: PreimagePoly, desc: SetDescriptor | None = None,
                  order: int = DEFAULT_LAURENT_ORDER) -> ConformalPair:
    """Lemniscatic pair of ``E = P^{-1}(Omega)`` for a real-symmetric ``Omega``.

    ``mu = (1/(alpha phi'(inf)))^{1/n}``, the foci are the n-th roots of
    ``-mu^n phi(P(0))`` (equal exponents ``1/n``), and
    ``Phi(z) = z ((mu^n / z^n)[phi(P(z)) - phi(P(0))])^{1/n}`` with the
    principal root.  ``psi`` inverts through ``omega.psi`` and a Newton polish.
    """
    n, alpha, alpha0 = P.n, P.alpha, P.alpha0
    if not (alpha > 0 and n >= 2):
        raise ValueError("need alpha > 0 and n >= 2")
    probe = np.array([2.0 + 1.5j, -3.0 + 0.7j, 0.3 + 4.0j]) * (1 + abs(alpha0))
    if np.max(np.abs(omega.phi(np.conj(probe)) - np.conj(omega.phi(probe)))) > 1e-10:
        raise ValueError("Omega must be symmetric with respect to the real axis")
    try:
        q = complex(omega.phi(alpha0))
    except ValueError:
        raise ValueError("alpha0 must lie left of Omega on the real axis") from None
    if abs(q.imag) > 1e-12 or not q.real < -1:
        raise ValueError("alpha0 must lie left of Omega on the real axis")
    q = q.real
    mun = 1.0 / (alpha * omega.dphi_inf)
    mu = mun ** (1.0 / n)
    r = (-mun * q) ** (1.0 / n)
    foci = r * np.exp(2j * np.pi * np.arange(n) / n)
    dom = LemniscaticDomain(foci, np.full(n, 1.0 / n), mu)

    def phi(z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        nz = z != 0
        zs = z[nz]
        inner = (mun / zs**n) * (omega.phi(P(zs)) - q)
        out[nz] = zs * inner ** (1.0 / n)
        return complex(out) if out.ndim == 0 else out

    def psi(w):
        w = np.asarray(w, dtype=complex)
        v = w**n / mun + q
        zn = (omega.psi(v) - alpha0) / alpha
        root = zn ** (1.0 / n)
        cands = [root * np.exp(2j * np.pi * j / n) for j in range(n)]
        z0 = _pick_closest(cands, w, phi)
        return _newton_polish(phi, z0, w)

    laurent = (lambda K: preimage_psi_laurent(omega, P, K))
    return ConformalPair(dom, phi, psi, desc, laurent, name=f"preimage[{omega.name}, n={n}]", default_order=order,
                         meta={"omega": omega, "P": P})


def star_intervals_pair(n: int, C: float, D: float, order: int = DEFAULT_LAURENT_ORDER) -> ConformalPair:
    """``U_j e^{2 pi i j/n}[C, D]`` as the pre-image of ``[-1, 1]``."""
    desc = StarIntervals(n, C, D)
    P = PreimagePoly(2.0 / (D**n - C**n), n, -(D**n + C**n) / (D**n - C**n))
    return preimage_pair(interval_omega(), P, desc, order)


def koch_liesen_preimage_pair(lam: complex, phi: float, R: float, n: int,
                              order: int = DEFAULT_LAURENT_ORDER) -> ConformalPair:
    """Pre-image of ``Omega(lam, phi, R)`` under ``z^n``."""
    desc = KochLiesenPreimage(lam, phi, R, n)
    omega, _ = koch_liesen_psi(lam, phi, R)
    return preimage_pair(omega, PreimagePoly(1.0, n, 0.0), desc, order)


# ------------------------------------------------------------ affine images

def affine_image_pair(base: ConformalPair, alpha: complex, beta: complex) -> ConformalPair:
    """Pair for ``alpha * E + beta``, conjugating the base map by the affine map."""
    alpha, beta = complex(alpha), complex(beta)
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    dom = base.domain.translated(alpha, beta)

    def phi(z):
        return alpha * base.phi((np.asarray(z, dtype=complex) - beta) / alpha) + beta

    def psi(w):
        return alpha * base.psi((np.asarray(w, dtype=complex) - beta) / alpha) + beta

    laurent = None
    if base.laurent_fn is not None:
        laurent = (lambda K: laurent_scale_shift(base.laurent(K), alpha, beta, K))
    desc = AffineImage(base.set, alpha, beta) if base.set is not None else None
    return ConformalPair(dom, phi, psi, desc, laurent, name=f"affine({base.name})",
                         default_order=base.default_order)


# ------------------------------------------------------------ numerics

def numeric_laurent(func: Callable, radius: float, K: int, degree: int = 1, rtol: float = 1e-11,
                    node_cap: int = NODE_CAP) -> LaurentAtInfinity:
    """Laurent coefficients at infinity of ``func`` from samples on ``|z| = radius``.

    The node count doubles until the scaled Fourier coefficients change by at
    most ``rtol`` relative to their largest modulus.
    """
    M = 64
    while M < 4 * (K + degree + 2):
        M *= 2
    prev = None
    while True:
        theta = 2 * np.pi * np.arange(M) / M
        F = np.fft.fft(func(radius * np.exp(1j * theta))) / M
        cur = np.concatenate([F[: degree + 1], F[M - K:][::-1]]) if K else F[: degree + 1]
        if prev is not None:
            scale = np.max(np.abs(cur))
            if np.max(np.abs(cur - prev)) <= rtol * scale:
                break
        if 2 * M > node_cap:
            raise ConvergenceError(f"Laurent coefficients did not stabilize with {M} nodes")
        prev = cur
        M *= 2
    poly = cur[: degree + 1] / radius ** np.arange(degree + 1)
    tail = cur[degree + 1:] * radius ** np.arange(1, K + 1)
    return LaurentAtInfinity(poly, tail, K)


def numeric_laurent_of_phi(pair: ConformalPair, R_circle: float, K: int) -> LaurentAtInfinity:
    """Laurent coefficients ``Phi(z) = z + sum d_j z^{-j}`` by Fourier analysis on a circle."""
    if pair.set is not None and not R_circle > pair.set.radius():
        raise ValueError("circle must strictly enclose E")
    return numeric_laurent(pair.phi, R_circle, K)


# ------------------------------------------------------------ tabulated maps

def _spectral_derivative(x: np.ndarray) -> np.ndarray:
    M = x.size
    k = np.fft.fftfreq(M, d=1.0 / M)
    if M % 2 == 0:
        k[M // 2] = 0
    return np.fft.ifft(1j * k * np.fft.fft(x))


def tabulated_pair(data: dict, set_desc: SetDescriptor | None = None) -> ConformalPair:
    """Pair built from boundary samples of ``Phi`` on closed curves around E.

    ``data`` holds ``foci``, ``exponents``, ``mu``, ``contour_points`` and
    ``phi_values``; the latter two are lists of closed curves sampled
    uniformly in a periodic parameter.  ``Phi`` is extended to points outside
    all curves by Cauchy's formula applied to ``Phi(z) - z``.
    """
    dom = LemniscaticDomain([parse_complex(a) for a in data["foci"]], data["exponents"], float(data["mu"]))
    curves = data["contour_points"]
    values = data["phi_values"]
    if curves and not isinstance(curves[0][0], (list, tuple)):
        curves, values = [curves], [values]
    nodes, weights, dvals = [], [], []
    for pts, vals in zip(curves, values):
        zc = np.array([parse_complex(p) for p in pts])
        fc = np.array([parse_complex(v) for v in vals])
        if zc.size != fc.size or zc.size < 8:
            raise ValueError("each contour needs matching point and value lists (at least 8 points)")
        area = 0.5 * np.sum((np.conj(zc) * np.roll(zc, -1)).imag)
        if area < 0:  # orient counterclockwise
            zc, fc = zc[::-1], fc[::-1]
        theta_step = 2 * np.pi / zc.size
        dz = _spectral_derivative(zc)
        nodes.append(zc)
        weights.append(dz * theta_step / (2j * np.pi))
        dvals.append(fc - zc)
    nodes, weights, dvals = map(np.concatenate, (nodes, weights, dvals))

    def phi(z):
        z = np.asarray(z, dtype=complex)
        zz = z.reshape(-1)
        # exterior Cauchy formula: counterclockwise curves enter with a minus sign
        out = zz - (weights[None, :] * dvals[None, :] / (nodes[None, :] - zz[:, None])).sum(axis=1)
        out = out.reshape(z.shape)
        return complex(out) if out.ndim == 0 else out

    def psi(w):
        w = np.asarray(w, dtype=complex)
        return _newton_polish(phi, w.copy(), w)

    R = 1.1 * float(np.max(np.abs(nodes))) + 0.1
    laurent = (lambda K: _reverted_laurent(psi, dom, R, K))
    return ConformalPair(dom, phi, psi, set_desc, laurent, name="tabulated", default_order=40)


def _reverted_laurent(psi, dom, R_phi, K):
    # psi is analytic outside Lambda_1; sample on a circle beyond Phi(|z| = R_phi)
    Rw = R_phi + np.max(np.abs(dom.foci)) + dom.capacity
    return numeric_laurent(psi, Rw, K)


def load_tabulated_pair(path, set_desc: SetDescriptor | None = None) -> ConformalPair:
    with open(path) as fh:
        data = json.load(fh)
    return tabulated_pair(data, set_desc)


def tabulate_pair(pair: ConformalPair, radius: float, samples: int = 256) -> dict:
    """Export ``pair`` in the tabulated JSON layout (one circle of given radius)."""
    theta = 2 * np.pi * np.arange(samples) / samples
    z = radius * np.exp(1j * theta)
    f = pair.phi(z)
    out = {"type": "tabulated"}
    if pair.set is not None:
        out["set"] = pair.set.to_json()
    return out | {
        "foci": [[a.real, a.imag] for a in pair.domain.foci],
        "exponents": [float(m) for m in pair.domain.exponents],
        "mu": pair.mu,
        "contour_points": [[p.real, p.imag] for p in z],
        "phi_values": [[v.real, v.imag] for v in f],
    }


# ------------------------------------------------------------ dispatch

def pair_for_set(desc: SetDescriptor, order: int = DEFAULT_LAURENT_ORDER) -> ConformalPair:
    if isinstance(desc, SymmetricIntervals):
        return sym_intervals_pair(desc.C, desc.D, order)
    if isinstance(desc, StarIntervals):
        return star_intervals_pair(desc.n, desc.C, desc.D, order)
    if isinstance(desc, Interval):
        return inverse_joukowski_pair(desc.a, desc.b, order)
    if isinstance(desc, KochLiesenPreimage):
        return koch_liesen_preimage_pair(desc.lam, desc.phi, desc.R, desc.n, order)
    if isinstance(desc, AffineImage):
        return affine_image_pair(pair_for_set(desc.base, order), desc.alpha, desc.beta)
    raise ValueError(f"no analytic map for set type {desc.kind!r}")
