import json

import numpy as np
import pytest

from faberwalsh.faber_walsh import fw_family
from faberwalsh.maps import (ConvergenceError, affine_image_pair, inverse_joukowski_pair, load_tabulated_pair,
                             numeric_laurent, pair_for_set, star_intervals_pair, sym_intervals_acf,
                             sym_psi_coefficients, tabulate_pair)
from faberwalsh.omega import koch_liesen_psi
from faberwalsh.poly import max_coeff_diff
from faberwalsh.sets import (AffineImage, KochLiesenPreimage, StarIntervals, SymmetricIntervals,
                             set_from_json)


def exterior_ring(radius, n=64):
    return radius * np.exp(2j * np.pi * (np.arange(n) + 0.3) / n)


def test_sym_constants(sym_pair):
    assert abs(sym_pair.mu - np.sqrt(15) / 8) < 1e-15
    np.testing.assert_allclose(sorted(sym_pair.domain.foci.real), [-0.625, 0.625])
    c = sym_psi_coefficients(0.25, 1.0, 4)
    assert abs(c[0] - 0.0703125) < 1e-15 and c[1] == 0


def test_sym_round_trip(sym_pair):
    z = exterior_ring(1.3)
    assert np.max(np.abs(sym_pair.psi(sym_pair.phi(z)) - z)) < 1e-14
    big = 1e6
    assert abs(sym_pair.phi(big) - big) < 1e-6


def test_sym_psi_laurent_pointwise(sym_pair):
    lau = sym_pair.laurent(60)
    w = exterior_ring(2.0)
    assert np.max(np.abs(lau(w) - sym_pair.psi(w))) < 1e-12


def test_sym_green_is_log_rho(sym_pair):
    # phi maps E onto the boundary |U| = mu
    x = np.linspace(0.25, 1.0, 7) + 1e-9j
    assert np.max(np.abs(sym_pair.green(x))) < 1e-4


def test_acf_in_and_outside():
    assert sym_intervals_acf(0.25, 1, 0.5) == 1.0
    assert abs(sym_intervals_acf(0.25, 1, 0.0) - np.sqrt(0.6)) < 1e-15
    assert sym_intervals_acf(0.25, 1, 10.0) < sym_intervals_acf(0.25, 1, 2.0) < 1


def test_star_two_matches_symmetric(sym_pair):
    star = star_intervals_pair(2, 0.25, 1.0)
    z = exterior_ring(1.4)
    assert np.max(np.abs(star.phi(z) - sym_pair.phi(z))) < 1e-13
    diff = star.laurent(30).tail_array(30) - sym_pair.laurent(30).tail_array(30)
    assert np.max(np.abs(diff)) < 1e-14


def test_koch_liesen_map(kl_pair):
    omega, params = koch_liesen_psi(-1, 2 * np.pi / 3, 1.1)
    assert abs(params.t - 1 / (params.N - params.M)) < 1e-15
    lo = omega.psi_laurent(120)
    w = exterior_ring(1.6)
    assert np.max(np.abs(lo(w) - omega.psi(w))) < 1e-12
    z = exterior_ring(1.25)
    assert np.max(np.abs(kl_pair.phi(kl_pair.psi(kl_pair.phi(z))) - kl_pair.phi(z))) < 1e-13
    assert np.all(np.abs(omega.phi(z**5)) > 1)


def test_koch_liesen_laurent_vs_fourier(kl_pair):
    lau = kl_pair.laurent(40)
    # a circle close to the lemniscate keeps the Fourier noise (about eps * r^k) small
    num = numeric_laurent(kl_pair.psi, 1.6, 40)
    assert np.max(np.abs(lau.tail_array(20) - num.tail_array(20))) < 1e-10


def test_koch_liesen_parameter_validation():
    with pytest.raises(ValueError):
        koch_liesen_psi(2.0, 1.0, 1.1)
    with pytest.raises(ValueError):
        koch_liesen_psi(-1, 2 * np.pi / 3, 5.0)


def test_inverse_joukowski():
    pair = inverse_joukowski_pair(-1.0, 3.0)
    assert pair.mu == 1.0 and pair.domain.foci[0] == 1.0
    z = exterior_ring(4.0) + 1.0
    assert np.max(np.abs(pair.psi(pair.phi(z)) - z)) < 1e-13
    fam = fw_family(pair, 4)
    # N = 1: b_k are the scaled Chebyshev polynomials of the interval, b_2 = (z-1)^2 - 2
    np.testing.assert_allclose(fam[2].coeffs, [-1, -2, 1], atol=1e-14)


def test_affine_pair_maps(sym_pair):
    alpha, beta = 1.5j, 0.3
    img = affine_image_pair(sym_pair, alpha, beta)
    z = exterior_ring(2.0)
    assert np.max(np.abs(img.psi(img.phi(z)) - z)) < 1e-13
    assert abs(img.mu - 1.5 * sym_pair.mu) < 1e-15
    w = exterior_ring(3.0)
    assert np.max(np.abs(img.laurent(60)(w) - img.psi(w))) < 1e-12


def test_numeric_laurent_cap():
    with pytest.raises(ConvergenceError):
        numeric_laurent(lambda z: np.random.default_rng(0).normal(size=z.shape) + 0j, 1.0, 4, node_cap=256)


def test_set_json_round_trip():
    sets = [SymmetricIntervals(0.25, 1.0), StarIntervals(3, 0.2, 1.0),
            AffineImage(SymmetricIntervals(0.5, 1.0), 2 - 1j, 0.5j),
            KochLiesenPreimage(-1, 2 * np.pi / 3, 1.1, 5)]
    for s in sets:
        back = set_from_json(json.loads(json.dumps(s.to_json())))
        assert back == s
        assert pair_for_set(back).set == s
    with pytest.raises(ValueError):
        set_from_json({"type": "symmetric_intervals", "C": 1})
    with pytest.raises(ValueError):
        set_from_json({"type": "disk"})


def test_set_membership():
    s = StarIntervals(3, 0.25, 1.0)
    ray = np.exp(2j * np.pi / 3)
    assert s.contains(0.5 * ray) and not s.contains(0.1 * ray)
    kl = KochLiesenPreimage(-1, 2 * np.pi / 3, 1.1, 5)
    for comp in kl.components(64):
        assert np.all(kl.contains(comp, 1e-9))
    assert not kl.contains(0.0)


def test_tabulated_pair_round_trip(tmp_path, sym_pair):
    data = tabulate_pair(sym_pair, 1.3, 256)
    path = tmp_path / "map.json"
    path.write_text(json.dumps(data))
    tab = load_tabulated_pair(path, sym_pair.set)
    z = exterior_ring(1.8)
    assert np.max(np.abs(tab.phi(z) - sym_pair.phi(z))) < 1e-10
    w = exterior_ring(2.5)
    assert np.max(np.abs(tab.psi(w) - sym_pair.psi(w))) < 1e-10
    fam_tab = fw_family(tab, 8)
    fam = fw_family(sym_pair, 8)
    assert max(max_coeff_diff(a, b) for a, b in zip(fam_tab.polys, fam.polys)) < 1e-8
