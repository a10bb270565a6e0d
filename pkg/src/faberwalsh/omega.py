"""Exterior Riemann maps of simply connected sets used as polynomial pre-image bases."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .poly import LaurentAtInfinity


@dataclass(frozen=True)
class OmegaMap:
    """Exterior map ``phi`` onto ``|w| > 1`` with ``phi'(inf) = dphi_inf > 0``.

    ``psi`` is the inverse and ``psi_laurent(K)`` its Laurent series at
    infinity (``psi(w) = w/dphi_inf + const + sum c_k w^{-k}``).
    """

    phi: Callable
    psi: Callable
    dphi_inf: float
    psi_laurent: Callable[[int], LaurentAtInfinity]
    name: str = "omega"


def _interval_phi(z):
    z = np.asarray(z, dtype=complex)
    s = np.sqrt(z - 1) * np.sqrt(z + 1)
    w1, w2 = z + s, z - s
    return np.where(np.abs(w1) >= np.abs(w2), w1, w2)


def interval_omega() -> OmegaMap:
    """``[-1, 1]`` with ``phi(z) = z + sqrt(z^2 - 1)``, ``phi'(inf) = 2``."""
    return OmegaMap(
        phi=_interval_phi,
        psi=lambda v: 0.5 * (np.asarray(v, dtype=complex) + 1.0 / np.asarray(v, dtype=complex)),
        dphi_inf=2.0,
        psi_laurent=lambda K: LaurentAtInfinity([0.0, 0.5], [0.5], None),
        name="interval[-1,1]",
    )


@dataclass(frozen=True)
class KochLiesenParams:
    N: float
    M: float
    P: float
    t: float
    lam: complex


def koch_liesen_params(lam: complex, phi: float, R: float) -> KochLiesenParams:
    lam = complex(lam)
    if abs(abs(lam) - 1) > 1e-12:
        raise ValueError("lambda must be unimodular")
    if not 0 < phi < 2 * np.pi:
        raise ValueError("phi must lie in (0, 2*pi)")
    P = np.tan(phi / 4) + 1 / np.cos(phi / 4)
    if not 1 <= R < P:
        raise ValueError(f"R must lie in [1, {P})")
    N = 0.5 * (P / R + R / P)
    M = (R * R - 1) / (2 * R * np.tan(phi / 4))
    if not N > M:
        raise ValueError("need N > M")
    return KochLiesenParams(N=N, M=M, P=P, t=1 / (N - M), lam=lam)


def koch_liesen_psi(lam: complex, phi: float, R: float):
    """Return the exterior map pair of ``Omega(lam, phi, R)`` and its parameters.

    ``psi(w) = (w - lam N)(w - lam M) / ((N - M) w + lam (N M - 1))``; the
    inverse solves the quadratic and keeps the root outside the unit disk.
    """
    p = koch_liesen_params(lam, phi, R)
    lam, N, M = p.lam, p.N, p.M
    d, e = N - M, lam * (N * M - 1)

    def psi(w):
        w = np.asarray(w, dtype=complex)
        return (w - lam * N) * (w - lam * M) / (d * w + e)

    def phi_map(z, strict=True):
        z = np.asarray(z, dtype=complex)
        b = lam * (N + M) + z * d
        c = lam * lam * N * M - z * e
        disc = np.sqrt(b * b - 4 * c)
        r1, r2 = 0.5 * (b + disc), 0.5 * (b - disc)
        w = np.where(np.abs(r1) >= np.abs(r2), r1, r2)
        if strict and np.any(np.abs(w) <= 1.0):
            raise ValueError("point lies in Omega (no preimage outside the unit disk)")
        return w

    def laurent(K):
        # psi(w) = (w/d) * (1 - lam(N+M) x + lam^2 N M x^2) / (1 + (e/d) x),  x = 1/w
        g = np.zeros(K + 2, dtype=complex)
        geo = (-e / d) ** np.arange(K + 2)
        num = np.array([1.0, -lam * (N + M), lam * lam * N * M])
        for i, a in enumerate(num):
            g[i:] += a * geo[: K + 2 - i]
        return LaurentAtInfinity([g[1] / d, 1 / d], g[2:] / d, K)

    return OmegaMap(phi=phi_map, psi=psi, dphi_inf=1 / p.t, psi_laurent=laurent, name="koch-liesen"), p
