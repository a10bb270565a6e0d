"""Declarative descriptions of the compact set E: sampling, membership and JSON I/O."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .omega import koch_liesen_psi


def _chebyshev_segment(a: complex, b: complex, density: int) -> np.ndarray:
    # cosine nodes including both endpoints
    x = np.cos(np.pi * np.arange(density) / (density - 1))
    return 0.5 * (a + b) + 0.5 * (b - a) * x[::-1]


def _on_segment(z, a: complex, b: complex, tol: float):
    z = np.asarray(z, dtype=complex)
    d = b - a
    t = ((z - a) * np.conj(d)).real / abs(d) ** 2
    tc = np.clip(t, 0.0, 1.0)
    return np.abs(z - (a + tc * d)) <= tol


def parse_complex(x) -> complex:
    if isinstance(x, (list, tuple)):
        re, im = x
        return complex(float(re), float(im))
    if isinstance(x, str):
        return complex(x.replace(" ", ""))
    return complex(x)


def dump_complex(z: complex):
    z = complex(z)
    return [z.real, z.imag]


class SetDescriptor:
    """Base class; subclasses describe one family of compact sets."""

    kind = "abstract"

    def components(self, density: int) -> list[np.ndarray]:
        """Sample points covering each component (its boundary for 2-D components)."""
        raise NotImplementedError

    def contains(self, z, tol: float = 1e-12):
        raise NotImplementedError

    def radius(self) -> float:
        return float(max(np.max(np.abs(c)) for c in self.components(257)))

    def is_curve_bounded(self) -> bool:
        return False

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Interval(SetDescriptor):
    a: float
    b: float
    kind = "interval"

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError("need a < b")

    def components(self, density):
        return [_chebyshev_segment(self.a, self.b, density)]

    def contains(self, z, tol=1e-12):
        return _on_segment(z, self.a, self.b, tol)

    def to_json(self):
        return {"type": self.kind, "a": self.a, "b": self.b}


@dataclass(frozen=True)
class SymmetricIntervals(SetDescriptor):
    """``[-D, -C] U [C, D]``."""

    C: float
    D: float
    kind = "symmetric_intervals"

    def __post_init__(self):
        if not 0 < self.C < self.D:
            raise ValueError("need 0 < C < D")

    def components(self, density):
        return [_chebyshev_segment(-self.D, -self.C, density), _chebyshev_segment(self.C, self.D, density)]

    def contains(self, z, tol=1e-12):
        return _on_segment(z, -self.D, -self.C, tol) | _on_segment(z, self.C, self.D, tol)

    def radius(self):
        return float(self.D)

    def to_json(self):
        return {"type": self.kind, "C": self.C, "D": self.D}


@dataclass(frozen=True)
class StarIntervals(SetDescriptor):
    """``U_j e^{2 pi i j/n} [C, D]``."""

    n: int
    C: float
    D: float
    kind = "star_intervals"

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need n >= 2")
        if not 0 < self.C < self.D:
            raise ValueError("need 0 < C < D")

    def rays(self):
        return np.exp(2j * np.pi * np.arange(1, self.n + 1) / self.n)

    def components(self, density):
        return [_chebyshev_segment(r * self.C, r * self.D, density) for r in self.rays()]

    def contains(self, z, tol=1e-12):
        out = np.zeros(np.shape(z), dtype=bool)
        for r in self.rays():
            out = out | _on_segment(z, r * self.C, r * self.D, tol)
        return out

    def radius(self):
        return float(self.D)

    def to_json(self):
        return {"type": self.kind, "n": self.n, "C": self.C, "D": self.D}


@dataclass(frozen=True)
class AffineImage(SetDescriptor):
    """``alpha * base + beta``."""

    base: SetDescriptor
    alpha: complex
    beta: complex
    kind = "affine_image"

    def __post_init__(self):
        if self.alpha == 0:
            raise ValueError("alpha must be nonzero")

    def components(self, density):
        return [self.alpha * c + self.beta for c in self.base.components(density)]

    def contains(self, z, tol=1e-12):
        z = np.asarray(z, dtype=complex)
        return self.base.contains((z - self.beta) / self.alpha, tol / abs(self.alpha))

    def is_curve_bounded(self):
        return self.base.is_curve_bounded()

    def to_json(self):
        return {"type": self.kind, "base": self.base.to_json(),
                "alpha": dump_complex(self.alpha), "beta": dump_complex(self.beta)}


@dataclass(frozen=True)
class KochLiesenPreimage(SetDescriptor):
    """``{z : z^n in Omega(lam, phi, R)}``."""

    lam: complex
    phi: float
    R: float
    n: int
    kind = "koch_liesen_preimage"

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need n >= 2")
        koch_liesen_psi(self.lam, self.phi, self.R)  # validates ranges

    def omega(self):
        return koch_liesen_psi(self.lam, self.phi, self.R)

    def components(self, density):
        omega, _ = self.omega()
        theta = 2 * np.pi * np.arange(density) / density
        bd = omega.psi(np.exp(1j * theta))
        root = bd ** (1.0 / self.n)
        return [root * np.exp(2j * np.pi * j / self.n) for j in range(self.n)]

    def contains(self, z, tol=1e-12):
        omega, _ = self.omega()
        w = omega.phi(np.asarray(z, dtype=complex) ** self.n, strict=False)
        return np.abs(w) <= 1.0 + tol

    def is_curve_bounded(self):
        return True

    def to_json(self):
        return {"type": self.kind, "lambda": dump_complex(self.lam), "phi": self.phi, "R": self.R, "n": self.n}


def set_from_json(d: dict) -> SetDescriptor:
    kind = d.get("type")
    try:
        if kind == "interval":
            return Interval(float(d["a"]), float(d["b"]))
        if kind == "symmetric_intervals":
            return SymmetricIntervals(float(d["C"]), float(d["D"]))
        if kind == "star_intervals":
            return StarIntervals(int(d["n"]), float(d["C"]), float(d["D"]))
        if kind == "affine_image":
            return AffineImage(set_from_json(d["base"]), parse_complex(d["alpha"]), parse_complex(d.get("beta", 0)))
        if kind == "koch_liesen_preimage":
            return KochLiesenPreimage(parse_complex(d["lambda"]), float(d["phi"]), float(d["R"]), int(d["n"]))
    except KeyError as exc:
        raise ValueError(f"set description of type {kind!r} is missing field {exc}") from None
    raise ValueError(f"unknown set type {kind!r}")
