"""Invariant suites and acceptance runs, shared by the ``check`` subcommand and the tests."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .faber_walsh import acf, acf_generic, affine_covariance_check, chebyshev_star_oracle, \
    faber_relation_check, fw_contour, fw_family, fw_series, norm_decay_table, \
    polynomial_part_family, phi_laurent_for, rho_of_point, sup_norm_on_E, sup_norm_values
from .lemniscatic import LemniscaticDomain, build_focus_sequence
from .maps import koch_liesen_preimage_pair, pair_for_set, star_intervals_pair, sym_intervals_pair
from .poly import max_coeff_diff
from .sets import AffineImage, KochLiesenPreimage, StarIntervals, SymmetricIntervals


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: float
    tolerance: float
    seconds: float = 0.0
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: value={self.value:.3e} tol={self.tolerance:.1e} ({self.seconds:.2f}s)"


def _timed(fn):
    def run(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res
    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


@_timed
def chebyshev_identity(k_max: int = 8, tol: float = 1e-8) -> CheckResult:
    """``b_{nk}`` equals the scaled Chebyshev polynomial of ``P`` on intervals and the 3-star."""
    worst = 0.0
    for n, pair in ((2, sym_intervals_pair(0.25, 1.0)), (3, star_intervals_pair(3, 0.25, 1.0))):
        fam = fw_family(pair, n * k_max)
        for k in range(1, k_max + 1):
            worst = max(worst, max_coeff_diff(fam[n * k], chebyshev_star_oracle(n, 0.25, 1.0, k)))
    return CheckResult("chebyshev identity", worst <= tol, worst, tol)


@_timed
def oracle_triangle(k_max: int = 20, tol: float = 1e-8) -> CheckResult:
    pair = sym_intervals_pair(0.25, 1.0)
    fam = fw_family(pair, k_max)
    pp = polynomial_part_family(phi_laurent_for(pair, k_max + 10), fam.seq.points(pair.domain), k_max)
    worst = 0.0
    for k in range(k_max + 1):
        c = fw_contour(pair, fam.seq, k)
        worst = max(worst, max_coeff_diff(fam[k], c), max_coeff_diff(fam[k], pp[k]), max_coeff_diff(c, pp[k]))
    return CheckResult("oracle triangle", worst <= tol, worst, tol)


@_timed
def explicit_values(tol: float = 1e-12) -> CheckResult:
    pair = sym_intervals_pair(0.25, 1.0)
    fam = fw_family(pair, 2)
    devs = {
        "b1": max_coeff_diff(fam[1], type(fam[1])([-0.625, 1.0])),
        "b2": max_coeff_diff(fam[2], type(fam[2])([-0.53125, 0.0, 1.0])),
        "c1": abs(pair.laurent(4).c(1) - 0.0703125),
        "mu": abs(pair.mu - np.sqrt(15) / 8),
    }
    worst = max(devs.values())
    return CheckResult("explicit values", worst <= tol, worst, tol, detail=devs)


@_timed
def acf_closed_form(tol_value: float = 1e-12, tol_agree: float = 1e-10, seed: int = 0) -> CheckResult:
    pair = sym_intervals_pair(0.5, 1.0)
    target = np.sqrt(1 / 3)
    v_closed = abs(acf(pair, 0.0) - target)
    v_generic = abs(acf_generic(pair, 0.0) - target)
    rng = np.random.default_rng(seed)
    z = rng.uniform(-2, 2, 100) + 1j * rng.uniform(-2, 2, 100)
    agree = float(np.max(np.abs(acf(pair, z) - acf_generic(pair, z))))
    ok = v_closed <= tol_value and v_generic <= tol_value and agree <= tol_agree
    return CheckResult("acf closed form", ok, max(v_closed, v_generic, agree), tol_agree,
                       detail={"closed": v_closed, "generic": v_generic, "agreement": agree})


@_timed
def koch_liesen_acf(tol: float = 5e-4) -> CheckResult:
    pair = koch_liesen_preimage_pair(-1, 2 * np.pi / 3, 1.1, 5)
    r0 = acf(pair, 0.0)
    return CheckResult("koch-liesen R0", abs(r0 - 0.9803) <= tol, abs(r0 - 0.9803), tol, detail={"R0": r0})


@_timed
def faber_relation(k_max: int = 4, tol: float = 1e-7) -> CheckResult:
    pair = koch_liesen_preimage_pair(-1, 2 * np.pi / 3, 1.1, 5)
    rep = faber_relation_check(pair, k_max)
    return CheckResult("faber relation", rep.max_deviation <= tol, rep.max_deviation, tol, detail=rep.per_k)


@_timed
def rate_match(n: int = 30, tol: float = 0.02) -> CheckResult:
    devs = {}
    for j in range(1, 5):
        C = 2.0**-j
        pair = sym_intervals_pair(C, 1.0)
        fam = fw_family(pair, n)
        root = (sup_norm_on_E(fam[n], pair.set) / abs(fam[n](0.0))) ** (1 / n)
        devs[j] = abs(root - np.sqrt((1 - C) / (1 + C)))
    worst = max(devs.values())
    return CheckResult("rate match", worst <= tol, worst, tol, detail=devs)


def random_configuration(rng: np.random.Generator, i: int):
    """One of four set families, cycled by ``i``, with a random ``z0``."""
    kind = i % 4
    if kind == 0:
        desc = SymmetricIntervals(rng.uniform(0.05, 0.8), 1.0)
    elif kind == 1:
        desc = StarIntervals(int(rng.integers(2, 5)), rng.uniform(0.1, 0.6), 1.0)
    elif kind == 2:
        alpha = rng.uniform(0.5, 2) * np.exp(2j * np.pi * rng.uniform())
        desc = AffineImage(SymmetricIntervals(rng.uniform(0.1, 0.7), 1.0), alpha, complex(*rng.uniform(-0.5, 0.5, 2)))
    else:
        desc = KochLiesenPreimage(-1, 2 * np.pi / 3, 1.1, int(rng.integers(2, 6)))
    z0 = desc.radius() * rng.uniform(0.0, 1.5) * np.exp(2j * np.pi * rng.uniform())
    return desc, complex(z0)


@_timed
def bernstein_walsh_suite(n_configs: int = 20, k_max: int = 30, seed: int = 3) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = np.inf  # smallest margin over both bounds, relative
    failures = []
    for i in range(n_configs):
        desc, z0 = random_configuration(rng, i)
        pair = pair_for_set(desc)
        fam = fw_family(pair, k_max)
        rows = norm_decay_table(fam, desc, z0, k_max, check=False)
        for r in rows:
            m1 = r.normalized / r.acf_pow_k - 1
            m2 = r.norm / pair.mu**r.k - 1
            worst = min(worst, m1, m2)
            if m1 < -1e-9 or m2 < -1e-9:
                failures.append((desc.kind, z0, r.k))
    return CheckResult("bernstein-walsh suite", not failures, worst, 1e-9, detail={"failures": failures})


@_timed
def affine_covariance(n_trials: int = 10, k_max: int = 15, tol: float = 1e-9, seed: int = 7) -> CheckResult:
    rng = np.random.default_rng(seed)
    base = sym_intervals_pair(0.25, 1.0)
    worst = 0.0
    for _ in range(n_trials):
        alpha = rng.uniform(0.5, 2.0) * np.exp(2j * np.pi * rng.uniform())
        beta = 0.5 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        worst = max(worst, affine_covariance_check(base, alpha, beta, k_max).max_deviation)
    return CheckResult("affine covariance", worst <= tol, worst, tol)


@_timed
def focus_balance(K: int = 10**4) -> CheckResult:
    worst = 0.0
    for m in ((0.5, 0.5), (1 / 3, 2 / 3), (0.2, 0.3, 0.5)):
        dom = LemniscaticDomain(np.arange(len(m)) + 0j, np.array(m), 1.0)
        worst = max(worst, build_focus_sequence(dom, K).max_imbalance(m))
    return CheckResult("focus balance", worst <= 1.0, worst, 1.0)


def series_pole_point(pair, rho: float = 2.0) -> complex:
    """Real point ``z* > D`` on the Green level ``log(rho)`` of symmetric intervals."""
    a = float(np.max(np.abs(pair.domain.foci)))
    w = np.sqrt(a * a + rho * rho * pair.mu**2)
    return complex(pair.psi(w))


@_timed
def series_maximal_convergence(n: int = 30, tol: float = 0.05, level: float = 1.5) -> CheckResult:
    pair = sym_intervals_pair(0.25, 1.0)
    zs = series_pole_point(pair, 2.0)
    rho = rho_of_point(pair, zs)
    fam = fw_family(pair, n + 1)

    def f(z):
        return 1.0 / (z - zs)

    s = fw_series(pair, fam.seq, f, n, {"kind": "level", "level": level}, rho=rho, family=fam)
    err = sup_norm_values(lambda z: f(z) - s.partial_sum(z, n), pair.set)
    root = err ** (1 / n)
    return CheckResult("series maximal convergence", abs(root - 0.5) <= tol, abs(root - 0.5), tol,
                       detail={"rho": rho, "root": root})


ACCEPTANCE = (
    chebyshev_identity,
    oracle_triangle,
    explicit_values,
    acf_closed_form,
    koch_liesen_acf,
    faber_relation,
    rate_match,
    bernstein_walsh_suite,
    affine_covariance,
    focus_balance,
    series_maximal_convergence,
)


def run_all() -> list:
    return [fn() for fn in ACCEPTANCE]
