import numpy as np
import pytest

from faberwalsh.faber_walsh import (acf, acf_generic, affine_covariance_check, chebyshev_star_oracle, chebyshev_t,
                                    faber_polynomials, faber_relation_check, fw_contour, fw_family, fw_recursion,
                                    fw_series, norm_decay_table, phi_laurent_for, polynomial_part_oracle,
                                    rho_of_point, sup_norm_on_E)
from faberwalsh.lemniscatic import build_focus_sequence
from faberwalsh.maps import ConvergenceError, star_intervals_pair, sym_intervals_pair
from faberwalsh.poly import ComplexPolynomial, LaurentAtInfinity, max_coeff_diff


def test_first_polynomials(sym_pair):
    fam = fw_family(sym_pair, 3)
    np.testing.assert_allclose(fam[0].coeffs, [1])
    np.testing.assert_allclose(fam[1].coeffs, [-0.625, 1], atol=1e-15)
    np.testing.assert_allclose(fam[2].coeffs, [-0.53125, 0, 1], atol=1e-15)


def test_monic(sym_pair, kl_pair):
    for pair in (sym_pair, kl_pair):
        fam = fw_family(pair, 25)
        assert all(p.is_monic() and p.degree == k for k, p in enumerate(fam.polys))


def test_recursion_preconditions(sym_pair):
    seq = build_focus_sequence(sym_pair.domain, 10)
    short = LaurentAtInfinity([0, 1], [0.1] * 5, 5)
    with pytest.raises(ValueError):
        fw_recursion(short, seq.points(sym_pair.domain), 10)
    scaled = LaurentAtInfinity([0, 2], [0.1] * 20, 20)
    with pytest.raises(ValueError):
        fw_recursion(scaled, seq.points(sym_pair.domain), 10)
    with pytest.raises(ValueError):
        fw_recursion(sym_pair.laurent(20), seq.points(sym_pair.domain)[:3], 10)


@pytest.mark.parametrize("kind", ["w-circle", "z-circle"])
def test_contour_routes_agree(kl_pair, kind):
    fam = fw_family(kl_pair, 20)
    for k in (1, 5, 12, 20):
        c = fw_contour(kl_pair, fam.seq, k, {"kind": kind})
        assert max_coeff_diff(c, fam[k]) < 1e-8


def test_contour_rejects_bad_contours(sym_pair):
    seq = build_focus_sequence(sym_pair.domain, 4)
    with pytest.raises(ValueError):
        fw_contour(sym_pair, seq, 2, {"kind": "z-circle", "radius": 0.5})
    with pytest.raises(ValueError):
        fw_contour(sym_pair, seq, 2, {"kind": "w-circle", "radius": 0.3})
    with pytest.raises(ValueError):
        fw_contour(sym_pair, seq, 2, {"kind": "ellipse"})
    with pytest.raises(ConvergenceError):
        fw_contour(sym_pair, seq, 4, tol=0.0, node_cap=256)


def test_polynomial_part_oracle(kl_pair):
    fam = fw_family(kl_pair, 10)
    assert max_coeff_diff(polynomial_part_oracle(kl_pair, fam.seq, 10), fam[10]) < 1e-9
    with pytest.raises(ValueError):
        polynomial_part_oracle(kl_pair, fam.seq, 10, K_tail=12)


def test_chebyshev_t_values():
    x = np.linspace(-1, 1, 9)
    assert np.max(np.abs(chebyshev_t(7)(x) - np.cos(7 * np.arccos(x)))) < 1e-13


def test_star_three_chebyshev():
    pair = star_intervals_pair(3, 0.3, 1.0)
    fam = fw_family(pair, 12)
    assert list(fam.seq.entries[:6]) == [0, 1, 2, 0, 1, 2]
    for k in range(1, 5):
        assert max_coeff_diff(fam[3 * k], chebyshev_star_oracle(3, 0.3, 1.0, k)) < 1e-10


def test_faber_relation_contour_route(kl_pair):
    assert faber_relation_check(kl_pair, 3, use="contour").max_deviation < 1e-7


def test_faber_polynomials_of_interval_map(sym_pair):
    # Phi = w + c_0 + ... : F_1 is Phi's polynomial part
    lau = phi_laurent_for(sym_pair, 12)
    F = faber_polynomials(lau, 3)
    assert max_coeff_diff(F[1], ComplexPolynomial(lau.poly)) < 1e-14


def test_affine_covariance_simple(sym_pair):
    assert affine_covariance_check(sym_pair, 2.0, 0.0, 10).max_deviation < 1e-12
    assert affine_covariance_check(sym_pair, 1j, 0.3 - 0.2j, 12).max_deviation < 1e-9


def test_norm_of_b2(sym_pair):
    fam = fw_family(sym_pair, 2)
    assert abs(sup_norm_on_E(fam[2], sym_pair.set) - 0.46875) < 1e-12
    assert sup_norm_on_E(ComplexPolynomial.one(), sym_pair.set) == 1.0


def test_t2_optimality(sym_pair):
    # among z^2 - c (the even members of P_2(0) up to scaling) b_2 minimizes ||p||/|p(0)|
    fam = fw_family(sym_pair, 2)
    best = sup_norm_on_E(fam[2], sym_pair.set) / abs(fam[2](0))
    x = np.linspace(0.25, 1.0, 4001)
    for c in np.linspace(0.1, 1.0, 91):
        assert np.max(np.abs(x * x - c)) / c >= best * (1 - 1e-9)


def test_norm_table_rows_and_zigzag(sym_pair):
    fam = fw_family(sym_pair, 12)
    rows = norm_decay_table(fam, sym_pair.set, 0.0, 12)
    assert rows[0].norm == 1 and rows[0].normalized == 1
    R = acf(sym_pair, 0.0)
    for r in rows:
        assert r.norm >= sym_pair.mu**r.k * (1 - 1e-9)
    for k in range(1, 6):
        assert rows[2 * k + 1].normalized / R ** (2 * k + 1) > rows[2 * k].normalized / R ** (2 * k)


def test_norm_table_flags_vanishing():
    pair = sym_intervals_pair(0.25, 1.0)
    fam = fw_family(pair, 2)
    rows = norm_decay_table(fam, pair.set, 0.625 + 0j, 2, check=False)
    assert rows[1].vanishes and rows[1].normalized == np.inf


def test_acf_generic_matches_closed_form(sym_pair, rng):
    z = rng.uniform(-3, 3, 50) + 1j * rng.uniform(-3, 3, 50)
    assert np.max(np.abs(acf(sym_pair, z) - acf_generic(sym_pair, z))) < 1e-10
    assert acf(sym_pair, 0.5) == 1.0
    assert abs(rho_of_point(sym_pair, 0.0) - 1 / np.sqrt(0.6)) < 1e-12


def test_koch_liesen_acf(kl_pair):
    assert abs(acf(kl_pair, 0.0) - 0.9803) < 5e-4
    assert acf(kl_pair, 2.0) < acf(kl_pair, 1.3)


def test_series_uniqueness(sym_pair):
    fam = fw_family(sym_pair, 9)
    for j in (0, 3, 7):
        s = fw_series(sym_pair, fam.seq, fam[j], 8, family=fam)
        assert np.max(np.abs(s.coeffs - np.eye(1, 9, j)[0])) < 1e-9


def test_series_identity_function(sym_pair):
    fam = fw_family(sym_pair, 3)
    s = fw_series(sym_pair, fam.seq, lambda z: z, 2, family=fam)
    np.testing.assert_allclose(s.coeffs, [0.625, 1, 0], atol=1e-12)


def test_series_exp_superlinear(sym_pair):
    fam = fw_family(sym_pair, 26)
    s = fw_series(sym_pair, fam.seq, np.exp, 25, family=fam)
    x = np.concatenate([np.linspace(-1, -0.25, 200), np.linspace(0.25, 1, 200)])
    err = np.max(np.abs(np.exp(x) - s.partial_sum(x, 25)))
    assert err < 0.9**25 * 1e-12


def test_series_level_restrictions(sym_pair):
    fam = fw_family(sym_pair, 5)
    f = lambda z: 1 / (z - 1.5)
    with pytest.raises(ValueError):
        fw_series(sym_pair, fam.seq, f, 4, {"kind": "level", "level": 3.0}, rho=2.0)
    with pytest.raises(ValueError):
        fw_series(sym_pair, fam.seq, f, 4, None, rho=2.0)


def test_koch_liesen_b5_zeros_outside_E(kl_pair):
    # regression snapshot: the zeros of b_5 sit on a circle of radius 0.8431
    fam = fw_family(kl_pair, 5)
    roots = np.roots(fam[5].coeffs[::-1])
    np.testing.assert_allclose(np.abs(roots), 0.8431, atol=1e-4)
    assert not np.any(kl_pair.set.contains(roots, 1e-9))


@pytest.mark.parametrize("j", [1, 2, 3, 4])
def test_normalized_root_matches_chebyshev_formula(j):
    # b_30 = T_30 on [-1,-C] U [C,1], so (||b_30|| / |b_30(0)|)^(1/30) = R (2 / (1 + R^60))^(1/30);
    # the sampled norm (about 1e-11) carries monomial-basis rounding, hence the loose tolerance
    C = 2.0**-j
    pair = sym_intervals_pair(C, 1.0)
    fam = fw_family(pair, 30)
    root = (sup_norm_on_E(fam[30], pair.set) / abs(fam[30](0.0))) ** (1 / 30)
    R = np.sqrt((1 - C) / (1 + C))
    assert abs(root - R * (2 / (1 + R**60)) ** (1 / 30)) < 1e-6
