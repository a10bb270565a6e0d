import json

import numpy as np
import pytest

from faberwalsh.cli import main, read_csv
from faberwalsh.faber_walsh import chebyshev_star_oracle
from faberwalsh.maps import sym_intervals_pair, tabulate_pair


@pytest.fixture
def sym_file(tmp_path):
    p = tmp_path / "sym.json"
    p.write_text(json.dumps({"type": "symmetric_intervals", "C": 0.25, "D": 1.0}))
    return str(p)


def run(args):
    return main([str(a) for a in args])


def test_poly_rows(tmp_path, sym_file):
    out = tmp_path / "b.csv"
    assert run(["poly", "--set", sym_file, "--degree", 2, "--out", out]) == 0
    header, rows = read_csv(out)
    assert header == ["k", "power", "re", "im"]
    assert [2, 0, -0.53125, 0] in rows and [2, 2, 1, 0] in rows


def test_poly_degree_zero(tmp_path, sym_file):
    out = tmp_path / "b.csv"
    assert run(["poly", "--set", sym_file, "--degree", 0, "--out", out]) == 0
    assert read_csv(out)[1] == [[0, 0, 1, 0]]


def test_poly_star_matches_oracle(tmp_path):
    s = tmp_path / "star.json"
    s.write_text(json.dumps({"type": "star_intervals", "n": 3, "C": 0.25, "D": 1.0}))
    out = tmp_path / "b.csv"
    assert run(["poly", "--set", s, "--degree", 6, "--out", out]) == 0
    _, rows = read_csv(out)
    b6 = np.array([r[2] + 1j * r[3] for r in rows if r[0] == 6])
    assert np.max(np.abs(b6 - chebyshev_star_oracle(3, 0.25, 1.0, 2).coeffs)) < 1e-8


def test_norms_rate(tmp_path):
    s = tmp_path / "e1.json"
    s.write_text(json.dumps({"type": "symmetric_intervals", "C": 0.5, "D": 1.0}))
    out = tmp_path / "n.csv"
    assert run(["norms", "--set", s, "--kmax", 30, "--z0", "0,0", "--out", out]) == 0
    header, rows = read_csv(out)
    assert header == ["k", "norm", "normalized", "acf_pow_k"]
    assert rows[0][1:3] == [1, 1]
    assert all(r[2] >= r[3] * (1 - 1e-9) for r in rows)
    assert abs(rows[30][2] ** (1 / 30) - np.sqrt(1 / 3)) < 0.02


def test_acf_profile_and_grid(tmp_path, sym_file):
    out = tmp_path / "a.csv"
    assert run(["acf", "--set", sym_file, "--profile=-2,10,13", "--out", out]) == 0
    _, rows = read_csv(out)
    R = {r[0]: r[2] for r in rows}
    assert abs(R[0.0] - np.sqrt(0.6)) < 1e-12
    assert R[1.0] == 1.0 and R[10.0] < R[2.0]
    assert run(["acf", "--set", sym_file, "--grid=-2,2,-1,1,9,5", "--out", out]) == 0
    _, rows = read_csv(out)
    assert len(rows) == 45 and all(0 < r[2] <= 1 for r in rows)


def test_phase_is_deterministic(tmp_path, sym_file, monkeypatch):
    a, b = tmp_path / "a.ppm", tmp_path / "b.ppm"
    monkeypatch.setenv("FW_THREADS", "3")
    assert run(["phase", "--set", sym_file, "--degree", 4, "--grid=-1.5,1.5,-1,1,60,40", "--out", a]) == 0
    monkeypatch.setenv("FW_THREADS", "1")
    assert run(["phase", "--set", sym_file, "--degree", 4, "--grid=-1.5,1.5,-1,1,60,40", "--out", b]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_series_commands(tmp_path, sym_file):
    out = tmp_path / "s.csv"
    assert run(["series", "--set", sym_file, "--kmax", 3, "--function", "poly", "--coeffs", "0;1", "--out", out]) == 0
    header, rows = read_csv(out)
    assert header == ["k", "re", "im", "error"]
    assert abs(rows[0][1] - 0.625) < 1e-12 and abs(rows[1][1] - 1) < 1e-12
    assert run(["series", "--set", sym_file, "--kmax", 25, "--function", "exp", "--out", out]) == 0
    err = [r[3] for r in read_csv(out)[1]]
    assert err[25] < 0.9**25 * 1e-6 and err[10] < err[5]
    pair = sym_intervals_pair(0.25, 1.0)
    zs = complex(pair.psi(np.sqrt(0.625**2 + 4 * pair.mu**2))).real
    assert run(["series", "--set", sym_file, "--kmax", 30, "--function", "rational",
                "--pole", f"{zs!r},0", "--out", out]) == 0
    err = read_csv(out)[1][30][3]
    assert abs(err ** (1 / 30) - 0.5) < 0.05


def test_csv_round_trip_is_exact(tmp_path, sym_file):
    out = tmp_path / "b.csv"
    run(["poly", "--set", sym_file, "--degree", 12, "--out", out])
    _, rows = read_csv(out)
    from faberwalsh.faber_walsh import fw_family
    fam = fw_family(sym_intervals_pair(0.25, 1.0), 12)
    for k, p, re, im in rows:
        c = fam[int(k)].coeffs[int(p)]
        assert abs(re - c.real) <= 1e-15 * max(1, abs(c)) and abs(im - c.imag) <= 1e-15 * max(1, abs(c))


def test_tabulated_set_input(tmp_path):
    data = tabulate_pair(sym_intervals_pair(0.25, 1.0), 1.3, 256)
    s = tmp_path / "tab.json"
    s.write_text(json.dumps(data))
    out = tmp_path / "b.csv"
    assert run(["poly", "--set", s, "--degree", 2, "--out", out]) == 0
    _, rows = read_csv(out)
    assert abs(rows[-3][2] + 0.53125) < 1e-8


def test_exit_codes(tmp_path, sym_file):
    assert run(["poly", "--set", tmp_path / "missing.json"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"type": "symmetric_intervals", "C": 2, "D": 1}')
    assert run(["poly", "--set", bad]) == 2
    assert run(["norms", "--set", sym_file, "--z0", "0.5,0"]) == 2
    assert run(["series", "--set", sym_file, "--function", "rational", "--pole", "1.5,0", "--level", 5]) == 2
    assert run(["series", "--set", sym_file, "--kmax", 4, "--nodes", 64, "--function", "exp"]) == 0


def test_convergence_failure_exit_code(monkeypatch, sym_file):
    import faberwalsh.cli as cli
    from faberwalsh.maps import ConvergenceError

    def boom(*a, **k):
        raise ConvergenceError("did not converge")

    monkeypatch.setattr(cli, "norm_decay_table", boom)
    assert run(["norms", "--set", sym_file, "--z0", "0,0"]) == 3
