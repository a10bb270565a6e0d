"""Faber-Walsh polynomials, series, Chebyshev oracles and asymptotic convergence factors."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .lemniscatic import FocusSequence, abs_U, build_focus_sequence, level_curve_points
from .maps import ConformalPair, ConvergenceError, NODE_CAP, _spectral_derivative, affine_image_pair, \
    numeric_laurent, numeric_laurent_of_phi, sym_intervals_acf
from .poly import ComplexPolynomial, LaurentAtInfinity, laurent_truncated_product, max_coeff_diff, \
    poly_linear_shift_mul
from .sets import SetDescriptor, SymmetricIntervals


@dataclass(eq=False)
class FaberWalshFamily:
    pair: ConformalPair
    seq: FocusSequence
    polys: list = field(default_factory=list)

    def __getitem__(self, k) -> ComplexPolynomial:
        return self.polys[k]

    def __len__(self):
        return len(self.polys)

    @property
    def K(self) -> int:
        return len(self.polys) - 1


def default_sequence(pair: ConformalPair, K: int, first="real-desc") -> FocusSequence:
    return build_focus_sequence(pair.domain, K, first)


# ------------------------------------------------------------ recursion

def fw_recursion(psi_laurent: LaurentAtInfinity, alphas, K: int) -> list:
    """``b_0..b_K`` from the Laurent coefficients of psi and the focus points ``alphas``.

    ``b_k = (z - alpha_k) b_{k-1} + beta_{k-1,1}`` with
    ``beta_{1,l} = alpha_1 (l-1) c_{l-1} - (l+1) c_l`` and
    ``beta_{k,l} = -c_l b_{k-1} - alpha_k beta_{k-1,l} + beta_{k-1,l+1}``.
    """
    alphas = np.asarray(alphas, dtype=complex)
    if alphas.size < K:
        raise ValueError(f"sequence of length {alphas.size} is shorter than K={K}")
    if psi_laurent.K < K + 2:
        raise ValueError(f"psi Laurent series truncated at {psi_laurent.order}, need order >= {K + 2}")
    if abs(psi_laurent.linear - 1) > 1e-9 or abs(psi_laurent.constant) > 1e-9 or psi_laurent.degree > 1:
        raise ValueError("psi must be normalized as w + sum c_k w^{-k}")
    c = np.concatenate([[0.0], psi_laurent.tail_array(K + 2)])  # c[0] = c_0 = 0
    b = [ComplexPolynomial.one()]
    if K == 0:
        return b
    b.append(poly_linear_shift_mul(b[0], alphas[0]))
    # beta[l] holds beta_{k,l} for the current k, l = 1..K-k
    a1 = alphas[0]
    beta = {l: ComplexPolynomial.constant(a1 * (l - 1) * c[l - 1] - (l + 1) * c[l]) for l in range(1, K)}
    for k in range(2, K + 1):
        b.append(poly_linear_shift_mul(b[k - 1], alphas[k - 1]) + beta[1])
        if k == K:
            break
        ak = alphas[k - 1]
        # beta_{k,l} from beta_{k-1,*}; note b_{k-1} is b[k-1]
        beta = {l: (-c[l]) * b[k - 1] - ak * beta[l] + beta[l + 1] for l in range(1, K - k + 1)}
    return b


def fw_family(pair: ConformalPair, K: int, seq: FocusSequence | None = None) -> FaberWalshFamily:
    """Faber-Walsh polynomials ``b_0..b_K`` of ``pair`` by the recursion."""
    seq = default_sequence(pair, K) if seq is None else seq
    polys = fw_recursion(pair.laurent(K + 2), seq.points(pair.domain), K)
    return FaberWalshFamily(pair, seq, polys)


# ------------------------------------------------------------ contour integrals

def _w_circle_radius(pair: ConformalPair, margin: float = 1.15) -> float:
    """Smallest radius (on a 2% grid) whose circle keeps ``|U| >= margin * mu``."""
    dom = pair.domain
    ring = np.exp(2j * np.pi * np.arange(512) / 512)
    R = max(float(np.max(np.abs(dom.foci))), 0.1 * dom.capacity)
    while np.min(abs_U(dom, R * ring)) < margin * dom.capacity:
        R *= 1.02
    return R


def _check_w_circle(pair: ConformalPair, R: float) -> None:
    # every bounded component of the complement holds a focus, so these two tests suffice
    if not R > np.max(np.abs(pair.domain.foci)):
        raise ValueError("w-circle must enclose all foci")
    if not np.all(abs_U(pair.domain, R * np.exp(2j * np.pi * np.arange(512) / 512)) > pair.mu):
        raise ValueError("w-circle must lie in the lemniscatic domain")


def _set_radius(pair: ConformalPair) -> float:
    if pair.set is None:
        raise ValueError("pair has no set description; pass an explicit contour radius")
    return pair.set.radius()


def fw_contour(pair: ConformalPair, seq: FocusSequence, k: int, contour: dict | None = None,
               tol: float = 1e-9, node_cap: int = NODE_CAP) -> ComplexPolynomial:
    """``b_k`` from its Cauchy-integral definition by trapezoidal quadrature.

    ``contour`` selects the route:

    * ``{"kind": "w-circle", "radius": R}`` (default) integrates
      ``u_k(tau) psi'(tau) / (psi(tau) - z)`` over ``|tau| = R`` at ``k+1``
      targets on a circle around E; coefficients follow by a discrete
      Fourier transform of the target values.
    * ``{"kind": "z-circle", "radius": r}`` extracts the nonnegative-power
      part of ``u_k(Phi(zeta))`` from samples on ``|zeta| = r``.

    The node count doubles until the coefficients move by at most ``tol``.
    """
    if k < 0 or k > len(seq):
        raise ValueError("k outside the focus sequence")
    if k == 0:
        return ComplexPolynomial.one()
    contour = dict(contour or {})
    kind = contour.get("kind", "w-circle")
    alphas = seq.points(pair.domain)[:k]
    M = int(contour.get("nodes", 64))
    if M < 64:
        raise ValueError("need at least 64 quadrature nodes")
    while M < 4 * (k + 1):
        M *= 2

    if kind == "z-circle":
        r = float(contour.get("radius", 1.25 * _set_radius(pair)))
        if pair.set is not None and not r > pair.set.radius():
            raise ValueError("contour does not enclose E")

        def coeffs_at(M):
            theta = 2 * np.pi * np.arange(M) / M
            w = pair.phi(r * np.exp(1j * theta))
            vals = np.prod(w[:, None] - alphas[None, :], axis=1)
            F = np.fft.fft(vals) / M
            return F[: k + 1] / r ** np.arange(k + 1)

    elif kind == "w-circle":
        R = float(contour.get("radius", _w_circle_radius(pair)))
        _check_w_circle(pair, R)

        def coeffs_at(M):
            theta = 2 * np.pi * np.arange(M) / M
            tau = R * np.exp(1j * theta)
            zeta = pair.psi(tau)
            rho = _target_radius(pair, zeta)
            targets = rho * np.exp(2j * np.pi * np.arange(k + 1) / (k + 1))
            dzeta = _spectral_derivative(zeta)  # d zeta / d theta
            uk = np.prod(tau[:, None] - alphas[None, :], axis=1)
            kern = (uk * dzeta)[:, None] / (zeta[:, None] - targets[None, :])
            vals = kern.sum(axis=0) / (1j * M)  # (2 pi / M) / (2 pi i)
            return np.fft.fft(vals)[: k + 1] / (k + 1) / rho ** np.arange(k + 1)

    else:
        raise ValueError(f"unknown contour kind {kind!r}")

    prev = coeffs_at(M)
    while True:
        if 2 * M > node_cap:
            raise ConvergenceError(f"contour quadrature for b_{k} did not converge with {M} nodes")
        M *= 2
        cur = coeffs_at(M)
        if np.max(np.abs(cur - prev)) <= tol:
            break
        prev = cur
    return ComplexPolynomial(cur)


def _target_radius(pair: ConformalPair, zeta: np.ndarray) -> float:
    # any circle inside the contour serves; prefer one through E for conditioning
    inner = 0.9 * float(np.min(np.abs(zeta)))
    return inner if pair.set is None else min(inner, pair.set.radius())


def fw_contour_family(pair: ConformalPair, seq: FocusSequence, K: int, contour: dict | None = None,
                      tol: float = 1e-9) -> FaberWalshFamily:
    return FaberWalshFamily(pair, seq, [fw_contour(pair, seq, k, contour, tol) for k in range(K + 1)])


# ------------------------------------------------------------ polynomial-part oracle

def phi_laurent_for(pair: ConformalPair, K_tail: int, radius: float | None = None) -> LaurentAtInfinity:
    r = 1.25 * _set_radius(pair) if radius is None else radius
    return numeric_laurent_of_phi(pair, r, K_tail)


def polynomial_part_family(phi_laurent: LaurentAtInfinity, alphas, K: int) -> list:
    """Nonnegative-power parts of ``prod_{j<=k} (Phi - alpha_j)`` for ``k = 0..K``."""
    alphas = np.asarray(alphas, dtype=complex)
    if phi_laurent.K < K:
        raise ValueError(f"need the Laurent series of Phi to order >= {K}")
    prod = LaurentAtInfinity.constant_one()
    out = [ComplexPolynomial.one()]
    for j in range(K):
        factor = LaurentAtInfinity(phi_laurent.poly - np.eye(1, phi_laurent.poly.size, 0)[0] * alphas[j],
                                   phi_laurent.tail, phi_laurent.order)
        prod = laurent_truncated_product(prod, factor)
        out.append(prod.polynomial_part())
    return out


def polynomial_part_oracle(pair: ConformalPair, seq: FocusSequence, k: int, K_tail: int | None = None,
                           radius: float | None = None) -> ComplexPolynomial:
    """``b_k`` as the polynomial part of ``u_k(Phi(z))`` at infinity."""
    K_tail = k + 10 if K_tail is None else K_tail
    if K_tail < k + 10:
        raise ValueError("K_tail must be at least k + 10")
    d = phi_laurent_for(pair, K_tail, radius)
    return polynomial_part_family(d, seq.points(pair.domain), k)[k]


def faber_polynomials(phi_laurent: LaurentAtInfinity, K: int) -> list:
    """Faber polynomials ``F_0..F_K``: polynomial parts of ``Phi^k`` (``Phi`` not necessarily monic)."""
    return polynomial_part_family(phi_laurent, np.zeros(K), K)


# ------------------------------------------------------------ Chebyshev oracles

def chebyshev_t(k: int) -> ComplexPolynomial:
    """Classical first-kind Chebyshev polynomial by the three-term recurrence."""
    t0, t1 = ComplexPolynomial.one(), ComplexPolynomial([0.0, 1.0])
    if k == 0:
        return t0
    for _ in range(k - 1):
        t0, t1 = t1, ComplexPolynomial([0.0, 2.0]) * t1 - t0
    return t1


def chebyshev_star_oracle(n: int, C: float, D: float, k: int) -> ComplexPolynomial:
    """``((D^n - C^n)/4)^k 2 T_k(P(z))`` with ``P(z) = (2 z^n - C^n - D^n)/(D^n - C^n)``."""
    if not (0 < C < D) or n < 1 or k < 1:
        raise ValueError("need 0 < C < D, n >= 1 and k >= 1")
    span = D**n - C**n
    P = ComplexPolynomial.from_coeffs(np.concatenate([[-(C**n + D**n) / span], np.zeros(n - 1), [2 / span]]))
    return (2 * (span / 4) ** k) * chebyshev_t(k).compose(P)


# ------------------------------------------------------------ series

@dataclass(eq=False)
class SeriesExpansion:
    coeffs: np.ndarray
    rho: float
    lambda_used: float | None
    family: FaberWalshFamily | None = None

    def partial_sum(self, z, n: int, family: FaberWalshFamily | None = None):
        fam = family or self.family
        if fam is None or fam.K < n:
            raise ValueError("partial sums need the Faber-Walsh polynomials up to degree n")
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        for k in range(n + 1):
            out = out + self.coeffs[k] * fam[k](z)
        return out


def _contour_nodes(pair: ConformalPair, route: dict, M: int):
    """Nodes ``tau`` and weights ``dtau/(2 pi i)`` of a positively oriented w-plane contour."""
    if route["kind"] == "w-circle":
        theta = 2 * np.pi * np.arange(M) / M
        tau = route["radius"] * np.exp(1j * theta)
        return tau, tau / M  # i tau dtheta / (2 pi i)
    comps = level_curve_points(pair.domain, route["level"], M)
    taus, wts = [], []
    for c in comps:
        taus.append(c)
        wts.append(_spectral_derivative(c) / (1j * c.size))
    return np.concatenate(taus), np.concatenate(wts)


def fw_series(pair: ConformalPair, seq: FocusSequence, f: Callable, K: int, contour: dict | None = None,
              rho: float = np.inf, tol: float = 1e-13, node_cap: int = NODE_CAP,
              family: FaberWalshFamily | None = None) -> SeriesExpansion:
    """Faber-Walsh coefficients ``a_0..a_K`` of ``f``.

    ``contour`` is ``{"kind": "w-circle", "radius": R}`` (entire ``f``) or
    ``{"kind": "level", "level": lam}`` with ``1 < lam < rho``.
    """
    route = dict(contour or {"kind": "w-circle", "radius": 2 * _w_circle_radius(pair)})
    lam = None
    if route["kind"] == "level":
        lam = float(route["level"])
        if not 1 < lam < rho:
            raise ValueError(f"contour level {lam} must lie in (1, rho={rho})")
    elif route["kind"] == "w-circle":
        if np.isfinite(rho):
            raise ValueError("a w-circle contour is only valid for entire functions; give a level")
        _check_w_circle(pair, route["radius"])
    else:
        raise ValueError(f"unknown contour kind {route['kind']!r}")
    if len(seq) < K + 1:
        raise ValueError("sequence too short")
    alphas = seq.points(pair.domain)[: K + 1]

    def coeffs_at(M):
        tau, wt = _contour_nodes(pair, route, M)
        fv = f(pair.psi(tau)) * wt
        inv_u = np.cumprod(1.0 / (tau[:, None] - alphas[None, :]), axis=1)  # 1/u_{k+1}
        terms = fv[:, None] * inv_u
        # the integrand mass bounds the attainable rounding floor of each coefficient
        return terms.sum(axis=0), np.abs(terms).sum(axis=0)

    M = int(route.get("nodes", 128))
    prev, _ = coeffs_at(M)
    while True:
        if 2 * M > node_cap:
            raise ConvergenceError("series coefficients did not converge")
        M *= 2
        cur, mass = coeffs_at(M)
        if np.all(np.abs(cur - prev) <= tol * np.maximum(mass, 1.0)):
            break
        prev = cur
    return SeriesExpansion(cur, rho, lam, family)


# ------------------------------------------------------------ convergence factors

def acf(pair: ConformalPair, z0, boundary_tol: float = 1e-12):
    """Asymptotic convergence factor ``mu / |U(Phi(z0))|`` (1 for ``z0`` in E)."""
    z0 = np.asarray(z0, dtype=complex)
    if isinstance(pair.set, SymmetricIntervals):
        return sym_intervals_acf(pair.set.C, pair.set.D, z0)
    return acf_generic(pair, z0, boundary_tol)


def acf_generic(pair: ConformalPair, z0, boundary_tol: float = 1e-12):
    z0 = np.asarray(z0, dtype=complex)
    inside = pair.set.contains(z0, boundary_tol) if pair.set is not None else np.zeros(z0.shape, bool)
    out = np.ones(z0.shape)
    if np.any(~inside):
        zz = z0[~inside]
        out[~inside] = np.minimum(pair.mu / abs_U(pair.domain, pair.phi(zz)), 1.0)
    return float(out) if out.ndim == 0 else out


def rho_of_point(pair: ConformalPair, z) -> float:
    """Level ``exp(g(z))`` of the Green's function through ``z``."""
    return float(np.exp(pair.green(z)))


# ------------------------------------------------------------ norms

def sup_norm_values(func: Callable, desc: SetDescriptor, density: int = 64, rtol: float = 1e-6,
                    max_density: int = 2**20) -> float:
    """Maximum of ``|func|`` over E, refining the sampling until it settles."""
    if density < 64:
        raise ValueError("density must be at least 64 per component")

    def at(d):
        return max(float(np.max(np.abs(func(c)))) for c in desc.components(d))

    prev = at(density)
    while True:
        density = 2 * density - 1 if not desc.is_curve_bounded() else 2 * density
        if density > max_density:
            raise ConvergenceError("sup-norm sampling did not settle")
        cur = at(density)
        if abs(cur - prev) <= rtol * max(cur, 1e-300):
            return cur
        prev = cur


def sup_norm_on_E(p: ComplexPolynomial, desc: SetDescriptor, density: int = 64) -> float:
    return sup_norm_values(p, desc, density)


@dataclass(frozen=True)
class NormRow:
    k: int
    norm: float
    normalized: float
    acf_pow_k: float
    vanishes: bool = False


def norm_decay_table(family: FaberWalshFamily, desc: SetDescriptor, z0: complex, k_max: int | None = None,
                     check: bool = True) -> list:
    """Rows ``(k, ||b_k||_E, ||b_k||_E/|b_k(z0)|, R^k)`` with a Bernstein-Walsh assertion."""
    k_max = family.K if k_max is None else k_max
    R = acf(family.pair, z0)
    rows = []
    for k in range(k_max + 1):
        p = family[k]
        nrm = sup_norm_on_E(p, desc)
        val = abs(p(z0))
        vanish = val == 0
        normalized = np.inf if vanish else nrm / val
        row = NormRow(k, nrm, normalized, R**k, vanish)
        if check and not normalized >= row.acf_pow_k * (1 - 1e-9):
            raise AssertionError(f"Bernstein-Walsh bound violated at k={k}: {normalized} < {row.acf_pow_k}")
        rows.append(row)
    return rows


# ------------------------------------------------------------ identity checks

@dataclass(frozen=True)
class RelationReport:
    deviations: tuple
    max_deviation: float

    @property
    def per_k(self):
        return dict(self.deviations)


def faber_relation_check(pair_pre: ConformalPair, k_max: int, use: str = "recursion") -> RelationReport:
    """Compare ``b_{kn}`` with ``(alpha phi'(inf))^{-k} F_k(P(z))`` for a pre-image pair."""
    meta = getattr(pair_pre, "meta", None) or {}
    if "omega" not in meta:
        raise ValueError("pair was not built by preimage_pair")
    omega, P = meta["omega"], meta["P"]
    n = P.n
    K = k_max * n
    seq = build_focus_sequence(pair_pre.domain, K)
    if use == "recursion":
        b = fw_recursion(pair_pre.laurent(K + 2), seq.points(pair_pre.domain), K)
    else:
        b = [fw_contour(pair_pre, seq, j) if j % n == 0 else None for j in range(K + 1)]
    theta = 2 * np.pi * np.arange(256) / 256
    r_omega = 1.25 * float(np.max(np.abs(omega.psi(np.exp(1j * theta)))))
    F = faber_polynomials(numeric_laurent(omega.phi, r_omega, k_max + 10), k_max)
    Ppoly = ComplexPolynomial.from_coeffs(np.concatenate([[P.alpha0], np.zeros(n - 1), [P.alpha]]))
    scale = 1.0 / (P.alpha * omega.dphi_inf)
    devs = []
    for k in range(k_max + 1):
        rhs = (scale**k) * F[k].compose(Ppoly)
        devs.append((k, max_coeff_diff(b[k * n], rhs)))
    return RelationReport(tuple(devs), max(d for _, d in devs))


def affine_covariance_check(base_pair: ConformalPair, alpha: complex, beta: complex, k_max: int,
                            seq: FocusSequence | None = None) -> RelationReport:
    """Check ``b_k(z) = alpha^{-k} bt_k(alpha z + beta)`` with the image sequence."""
    seq = default_sequence(base_pair, k_max) if seq is None else seq
    img = affine_image_pair(base_pair, alpha, beta)
    b = fw_recursion(base_pair.laurent(k_max + 2), seq.points(base_pair.domain), k_max)
    bt = fw_recursion(img.laurent(k_max + 2), seq.points(img.domain), k_max)
    lin = ComplexPolynomial([beta, alpha])
    devs = []
    for k in range(k_max + 1):
        rhs = (alpha ** (-k)) * bt[k].compose(lin)
        devs.append((k, max_coeff_diff(b[k], rhs)))
    return RelationReport(tuple(devs), max(d for _, d in devs))
