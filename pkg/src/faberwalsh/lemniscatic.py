"""Lemniscatic domains, their Green's function, level curves and focus sequences."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .poly import ComplexPolynomial, poly_linear_shift_mul


@dataclass(frozen=True, eq=False)
class LemniscaticDomain:
    """The domain ``{w : |U(w)| > mu}`` with ``U(w) = prod (w - a_j)^{m_j}``."""

    foci: np.ndarray
    exponents: np.ndarray
    capacity: float

    def __post_init__(self):
        foci = np.array(self.foci, dtype=complex).ravel()
        exps = np.array(self.exponents, dtype=float).ravel()
        if foci.size == 0 or foci.size != exps.size:
            raise ValueError("need the same positive number of foci and exponents")
        if np.any(exps <= 0):
            raise ValueError("exponents must be positive")
        if abs(exps.sum() - 1.0) > 1e-12:
            raise ValueError(f"exponents must sum to 1, got {exps.sum()!r}")
        if foci.size > 1:
            d = np.abs(foci[:, None] - foci[None, :])
            if np.min(d[~np.eye(foci.size, dtype=bool)]) <= 0:
                raise ValueError("foci must be pairwise distinct")
        if not self.capacity > 0:
            raise ValueError("capacity must be positive")
        foci.setflags(write=False)
        exps.setflags(write=False)
        object.__setattr__(self, "foci", foci)
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "capacity", float(self.capacity))

    @property
    def N(self) -> int:
        return self.foci.size

    @property
    def mu(self) -> float:
        return self.capacity

    def log_abs_U(self, w):
        w = np.asarray(w, dtype=complex)
        with np.errstate(divide="ignore"):
            out = np.zeros(w.shape)
            for a, m in zip(self.foci, self.exponents):
                out = out + m * np.log(np.abs(w - a))
        out = np.where(np.isinf(w.real) | np.isinf(w.imag), np.inf, out)
        return float(out) if out.ndim == 0 else out

    def critical_points(self) -> np.ndarray:
        """Zeros of ``U'/U = sum m_j/(w - a_j)``, the saddles of ``|U|``."""
        if self.N == 1:
            return np.zeros(0, dtype=complex)
        num = ComplexPolynomial.zero()
        for j in range(self.N):
            others = np.delete(self.foci, j)
            num = num + self.exponents[j] * ComplexPolynomial.from_roots(others)
        return np.roots(num.coeffs[::-1])

    def translated(self, alpha: complex, beta: complex) -> "LemniscaticDomain":
        """Image under ``w -> alpha*w + beta``."""
        return LemniscaticDomain(alpha * self.foci + beta, self.exponents, abs(alpha) * self.capacity)


def abs_U(dom: LemniscaticDomain, w):
    """``|U(w)|``; zero at a focus and ``inf`` at infinity."""
    return np.exp(dom.log_abs_U(w))


def green_L(dom: LemniscaticDomain, w):
    """Green's function ``log|U(w)| - log(mu)`` of the lemniscatic domain."""
    w_arr = np.asarray(w, dtype=complex)
    hit = np.isclose(np.abs(w_arr[..., None] - dom.foci), 0.0, atol=0.0).any(axis=-1)
    if np.any(hit):
        raise ValueError("Green's function is undefined at a focus")
    return dom.log_abs_U(w) - np.log(dom.capacity)


# ---------------------------------------------------------------- level curves

def _is_symmetric_pair(dom: LemniscaticDomain) -> bool:
    return dom.N == 2 and abs(dom.exponents[0] - 0.5) < 1e-14


def _cassini_components(dom: LemniscaticDomain, level: float, samples: int):
    center = 0.5 * (dom.foci[0] + dom.foci[1])
    a = 0.5 * (dom.foci[0] - dom.foci[1])
    a2 = a * a
    r = level * level
    if r < abs(a2):
        theta = 2 * np.pi * np.arange(samples) / samples
        s = a * np.sqrt(1 + (r / a2) * np.exp(1j * theta))
        return [center + s, center - s]
    theta = 4 * np.pi * np.arange(samples) / samples
    s = np.sqrt(r) * np.exp(0.5j * theta) * np.sqrt(1 + (a2 / r) * np.exp(-1j * theta))
    return [center + s]


def _radial_curve(dom: LemniscaticDomain, center: complex, level: float, samples: int, rmax: float):
    """First crossing of ``|U| = level`` along rays from ``center``, by bisection."""
    theta = 2 * np.pi * np.arange(samples) / samples
    dirs = np.exp(1j * theta)
    log_level = np.log(level)
    nsteps = 400
    ts = np.linspace(0, rmax, nsteps + 1)[1:]
    vals = dom.log_abs_U(center + ts[None, :] * dirs[:, None]) - log_level
    first = np.argmax(vals > 0, axis=1)
    if np.any(vals[np.arange(samples), first] <= 0):
        raise ValueError("level curve not bracketed along some ray")
    lo = np.where(first > 0, ts[np.maximum(first - 1, 0)], 0.0)
    hi = ts[first]
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        f = dom.log_abs_U(center + mid * dirs) - log_level
        lo = np.where(f > 0, lo, mid)
        hi = np.where(f > 0, mid, hi)
        if np.max(hi - lo) < 1e-15 * max(rmax, 1.0):
            break
    return center + 0.5 * (lo + hi) * dirs


def level_curve_points(dom: LemniscaticDomain, sigma: float, samples: int = 256):
    """Discretize ``Lambda_sigma = {|U(w)| = sigma*mu}``.

    Returns a list of arrays, one per closed component, each positively
    oriented and sampled uniformly in a periodic parameter.
    """
    if not sigma > 1:
        raise ValueError("level sigma must exceed 1")
    level = sigma * dom.capacity
    if dom.N == 1:
        theta = 2 * np.pi * np.arange(samples) / samples
        return [dom.foci[0] + level * np.exp(1j * theta)]
    if _is_symmetric_pair(dom):
        return _cassini_components(dom, level, samples)
    crit = dom.critical_points()
    crit_vals = np.exp(dom.log_abs_U(crit))
    spread = np.max(np.abs(dom.foci - dom.foci.mean()))
    rmax = 2.0 * (spread + level) + 1.0
    if level > crit_vals.max():
        center = np.sum(dom.exponents * dom.foci)
        return [_radial_curve(dom, center, level, samples, rmax)]
    if level < crit_vals.min():
        return [_radial_curve(dom, a, level, samples, rmax) for a in dom.foci]
    raise NotImplementedError("level curves with partially merged components are not supported")


def level_curve_count(dom: LemniscaticDomain, sigma: float) -> int:
    return len(level_curve_points(dom, sigma, 8))


# ------------------------------------------------------------ focus sequences

@dataclass(frozen=True, eq=False)
class FocusSequence:
    """Focus indices ``alpha_1..alpha_K`` and prefix counts ``counts[k, j] = N_{k,j}``."""

    entries: np.ndarray
    counts: np.ndarray

    def __len__(self):
        return int(self.entries.size)

    def points(self, dom: LemniscaticDomain) -> np.ndarray:
        return dom.foci[self.entries]

    def max_imbalance(self, exponents) -> float:
        k = np.arange(self.counts.shape[0])[:, None]
        return float(np.max(np.abs(self.counts - k * np.asarray(exponents)[None, :])))

    @classmethod
    def from_entries(cls, entries, N: int) -> "FocusSequence":
        entries = np.asarray(entries, dtype=int)
        counts = np.zeros((entries.size + 1, N), dtype=int)
        for k, j in enumerate(entries, start=1):
            counts[k] = counts[k - 1]
            counts[k, j] += 1
        entries.setflags(write=False)
        counts.setflags(write=False)
        return cls(entries, counts)


def _default_first(dom: LemniscaticDomain) -> int:
    # descending real part, ties by index
    return int(np.lexsort((np.arange(dom.N), -dom.foci.real))[0])


def build_focus_sequence(dom: LemniscaticDomain, K: int, first: int | str | None = "real-desc",
                         rule: str = "greedy") -> FocusSequence:
    """Balanced focus sequence of length ``K``.

    For two foci the floor rule is used: with labels ``(a_1, a_2)``,
    ``alpha_k = a_1`` iff ``floor(k m_1) > floor((k-1) m_1)``.  The rule
    begins with ``a_2``; ``first`` picks which focus plays ``a_2`` --
    ``"real-desc"`` (largest real part, the default), an explicit index, or
    ``"index"`` for the domain's own labeling.  For three or more foci the
    greedy largest-deficit rule is used with ties broken by index; its
    imbalance can slightly exceed 1 for some weight vectors.  ``rule="deadline"``
    instead picks, among foci with ``N_{k-1,j} <= k m_j``, the one whose next
    occurrence is due first, ``(N_{k-1,j} + 1)/m_j``.
    """
    if K < 0:
        raise ValueError("K must be nonnegative")
    N = dom.N
    m = dom.exponents
    if N == 1:
        return FocusSequence.from_entries(np.zeros(K, dtype=int), 1)
    if N == 2:
        if first == "index" or first is None:
            lab1, lab2 = 0, 1
        else:
            j = _default_first(dom) if first == "real-desc" else int(first)
            if j not in (0, 1):
                raise ValueError("first focus index out of range")
            lab2, lab1 = j, 1 - j
        m1 = m[lab1]
        k = np.arange(1, K + 1)
        pick1 = np.floor(k * m1) > np.floor((k - 1) * m1)
        return FocusSequence.from_entries(np.where(pick1, lab1, lab2), 2)
    if rule not in ("greedy", "deadline"):
        raise ValueError(f"unknown sequence rule {rule!r}")
    counts = np.zeros(N, dtype=int)
    entries = np.empty(K, dtype=int)
    for k in range(1, K + 1):
        if rule == "greedy":
            j = int(np.argmax(k * m - counts))  # argmax returns the first maximizer
        else:
            due = np.where(counts <= k * m + 1e-12, (counts + 1) / m, np.inf)
            j = int(np.argmin(due))
        entries[k - 1] = j
        counts[j] += 1
    return FocusSequence.from_entries(entries, N)


def u_k_polynomial(dom: LemniscaticDomain, seq: FocusSequence, k: int) -> ComplexPolynomial:
    """``u_k(w) = prod_{j<=k} (w - alpha_j)``."""
    if k < 0 or k > len(seq):
        raise ValueError(f"k={k} outside the sequence length {len(seq)}")
    p = ComplexPolynomial.one()
    for a in seq.points(dom)[:k]:
        p = poly_linear_shift_mul(p, a)
    return p


@dataclass(frozen=True)
class RatioBounds:
    lower: float
    upper: float
    k_max: int
    n_points: int


def check_un_ratio_bounds(dom: LemniscaticDomain, seq: FocusSequence, S, k_max: int) -> RatioBounds:
    """Empirical ``min``/``max`` of ``|u_k(w)| / |U(w)|^k`` over ``k <= k_max``, ``w`` in ``S``."""
    S = np.asarray(S, dtype=complex).ravel()
    if k_max > len(seq):
        raise ValueError("k_max exceeds sequence length")
    dist = np.min(np.abs(S[:, None] - dom.foci[None, :]), axis=1)
    if np.any(dist < 1e-6):
        raise ValueError("sample points must stay at least 1e-6 away from the foci")
    logU = dom.log_abs_U(S)
    logdist = np.log(np.abs(S[:, None] - seq.points(dom)[None, :k_max]))
    log_uk = np.concatenate([np.zeros((S.size, 1)), np.cumsum(logdist, axis=1)], axis=1)
    log_ratio = log_uk - np.arange(k_max + 1)[None, :] * logU[:, None]
    lo, hi = float(np.exp(log_ratio.min())), float(np.exp(log_ratio.max()))
    if not (np.isfinite(lo) and np.isfinite(hi) and lo > 0):
        raise ArithmeticError("ratio bounds are not finite and positive")
    return RatioBounds(lo, hi, k_max, S.size)
