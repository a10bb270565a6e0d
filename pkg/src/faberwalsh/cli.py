"""Command-line front end: coefficient, norm, ACF and series tables plus phase portraits."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import checks
from .faber_walsh import _w_circle_radius, acf, fw_family, fw_series, norm_decay_table, rho_of_point, sup_norm_values
from .lemniscatic import build_focus_sequence
from .maps import ConvergenceError, pair_for_set, tabulated_pair
from .phase import Window, map_rows, phase_portrait, write_ppm
from .poly import ComplexPolynomial
from .sets import parse_complex, set_from_json

EXIT_CONFIG = 2
EXIT_NUMERIC = 3


class ConfigError(ValueError):
    pass


def fmt(x: float) -> str:
    return "%.17g" % x


def parse_pair_of_floats(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(parts[0].strip())
    if len(parts) != 2:
        raise ConfigError(f"expected 're,im', got {text!r}")
    return complex(float(parts[0]), float(parts[1]))


def parse_seq_order(text: str | None):
    if text is None or text in ("real-desc", "index"):
        return text or "real-desc"
    try:
        return int(text)
    except ValueError:
        raise ConfigError("--seq-order must be 'real-desc', 'index' or a focus index") from None


@dataclass
class JobConfig:
    """Validated inputs shared by all subcommands."""

    set_doc: dict
    degree: int | None = None
    z0: complex | None = None
    grid: Window | None = None
    out: str | None = None
    nodes: int | None = None
    seq_order: object = "real-desc"

    def build(self):
        doc = self.set_doc
        if doc.get("type") == "tabulated":
            desc = set_from_json(doc["set"]) if "set" in doc else None
            pair = tabulated_pair(doc, desc)
        else:
            desc = set_from_json(doc)
            pair = pair_for_set(desc)
        if pair.set is None:
            raise ConfigError("this command needs a set description for E")
        return pair

    def sequence(self, pair, K: int):
        return build_focus_sequence(pair.domain, K, self.seq_order)


def load_config(args) -> JobConfig:
    try:
        with open(args.set) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read set file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"set file is not valid JSON: {exc}") from None
    degree = getattr(args, "degree", None)
    if degree is not None and degree < 0:
        raise ConfigError("--degree must be nonnegative")
    nodes = getattr(args, "nodes", None)
    if nodes is not None and nodes < 64:
        raise ConfigError("--nodes must be at least 64")
    z0 = getattr(args, "z0", None)
    grid = getattr(args, "grid", None)
    return JobConfig(
        set_doc=doc,
        degree=degree,
        z0=None if z0 is None else parse_pair_of_floats(z0),
        grid=None if grid is None else Window.parse(grid),
        out=getattr(args, "out", None),
        nodes=nodes,
        seq_order=parse_seq_order(getattr(args, "seq_order", None)),
    )


def write_csv(path, header, rows):
    fh = open(path, "w", newline="") if path else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([v if isinstance(v, (int, str)) else fmt(v) for v in row])
    finally:
        if path:
            fh.close()


def read_csv(path):
    """Header and rows of a CSV written by this tool, numeric fields as floats."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], [[float(v) for v in r] for r in rows[1:]]


# ------------------------------------------------------------ subcommands

def cmd_poly(cfg: JobConfig, args) -> int:
    pair = cfg.build()
    K = 0 if cfg.degree is None else cfg.degree
    fam = fw_family(pair, K, cfg.sequence(pair, K))
    seq = fam.seq.points(pair.domain)
    print("focus sequence:", " ".join(f"{a.real:.6g}{a.imag:+.6g}j" for a in seq), file=sys.stderr)
    rows = [(k, p, c.real, c.imag) for k in range(K + 1) for p, c in enumerate(fam[k].coeffs)]
    write_csv(cfg.out, ["k", "power", "re", "im"], rows)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"focus_sequence": [[a.real, a.imag] for a in seq],
                       "polynomials": [[[c.real, c.imag] for c in p.coeffs] for p in fam.polys]}, fh)
    return 0


def cmd_norms(cfg: JobConfig, args) -> int:
    pair = cfg.build()
    if cfg.z0 is None:
        raise ConfigError("norms needs --z0")
    if bool(pair.set.contains(cfg.z0, 1e-12)):
        raise ConfigError("z0 must lie outside E")
    K = 30 if cfg.degree is None else cfg.degree
    fam = fw_family(pair, K, cfg.sequence(pair, K))
    rows = norm_decay_table(fam, pair.set, cfg.z0, K)
    write_csv(cfg.out, ["k", "norm", "normalized", "acf_pow_k"],
              [(r.k, r.norm, r.normalized, r.acf_pow_k) for r in rows])
    return 0


def cmd_acf(cfg: JobConfig, args) -> int:
    pair = cfg.build()
    if cfg.grid is not None:
        vals = map_rows(lambda z: acf(pair, z), cfg.grid)
        pts = cfg.grid.points()
        rows = [(z.real, z.imag, v) for z, v in zip(pts.ravel(), vals.ravel())]
        write_csv(cfg.out, ["re", "im", "R"], rows)
        return 0
    if args.profile:
        parts = args.profile.split(",")
        if len(parts) != 3:
            raise ConfigError("--profile needs x0,x1,n")
        xs = np.linspace(float(parts[0]), float(parts[1]), int(parts[2]))
        zs = xs.astype(complex)
    elif cfg.z0 is not None:
        zs = np.array([cfg.z0])
    else:
        raise ConfigError("acf needs --z0, --profile or --grid")
    vals = np.atleast_1d(acf(pair, zs))
    write_csv(cfg.out, ["re", "im", "R"], [(z.real, z.imag, v) for z, v in zip(zs, vals)])
    return 0


def cmd_phase(cfg: JobConfig, args) -> int:
    pair = cfg.build()
    if cfg.grid is None:
        raise ConfigError("phase needs --grid")
    if not cfg.out:
        raise ConfigError("phase needs --out")
    K = 1 if cfg.degree is None else cfg.degree
    fam = fw_family(pair, K, cfg.sequence(pair, K))
    write_ppm(cfg.out, phase_portrait(fam[K], cfg.grid))
    return 0


def _series_function(args, pair):
    """The selected function and its analyticity level ``rho``."""
    if args.function == "exp":
        return np.exp, np.inf
    if args.function == "poly":
        if not args.coeffs:
            raise ConfigError("--function poly needs --coeffs")
        p = ComplexPolynomial.from_coeffs([parse_complex(c) for c in args.coeffs.split(";")])
        return p, np.inf
    if args.function == "rational":
        if args.pole is None:
            raise ConfigError("--function rational needs --pole")
        zs = parse_pair_of_floats(args.pole)
        if bool(pair.set.contains(zs, 1e-12)):
            raise ConfigError("pole lies on E")
        return (lambda z: 1.0 / (z - zs)), rho_of_point(pair, zs)
    raise ConfigError(f"unknown function {args.function!r}")


def cmd_series(cfg: JobConfig, args) -> int:
    pair = cfg.build()
    K = 30 if cfg.degree is None else cfg.degree
    f, rho = _series_function(args, pair)
    fam = fw_family(pair, K + 1, cfg.sequence(pair, K + 1))
    if np.isfinite(rho):
        level = args.level if args.level is not None else float(np.sqrt(rho))
        contour = {"kind": "level", "level": level}
    else:
        contour = {"kind": "w-circle", "radius": 2 * _w_circle_radius(pair)}
    if cfg.nodes is not None:
        contour["nodes"] = cfg.nodes
    s = fw_series(pair, fam.seq, f, K, contour, rho=rho, family=fam)
    rows = []
    for n in range(K + 1):
        err = sup_norm_values(lambda z: f(z) - s.partial_sum(z, n), pair.set)
        rows.append((n, s.coeffs[n].real, s.coeffs[n].imag, err))
    write_csv(cfg.out, ["k", "re", "im", "error"], rows)
    return 0


def cmd_check(args) -> int:
    results = checks.run_all()
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 1


# ------------------------------------------------------------ entry point

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="faberwalsh", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, z0=False, grid=False):
        p.add_argument("--set", required=True, help="JSON description of the compact set E")
        p.add_argument("--degree", "--kmax", dest="degree", type=int)
        p.add_argument("--out", help="output path (CSV to stdout if omitted)")
        p.add_argument("--nodes", type=int, help="initial quadrature node count")
        p.add_argument("--seq-order", dest="seq_order", help="first-focus rule: real-desc, index or an index")
        if z0:
            p.add_argument("--z0", help="point as re,im")
        if grid:
            p.add_argument("--grid", help="window as x0,x1,y0,y1,nx,ny")
        return p

    common(sub.add_parser("poly", help="coefficients of b_0..b_K")).add_argument("--json")
    common(sub.add_parser("norms", help="norm-decay table"), z0=True)
    common(sub.add_parser("acf", help="asymptotic convergence factors"), z0=True, grid=True) \
        .add_argument("--profile", help="real profile as x0,x1,n")
    common(sub.add_parser("phase", help="phase portrait of b_K as PPM"), grid=True)
    sp = common(sub.add_parser("series", help="Faber-Walsh series and error decay"))
    sp.add_argument("--function", choices=["poly", "rational", "exp"], default="exp")
    sp.add_argument("--coeffs", help="ascending coefficients separated by ';'")
    sp.add_argument("--pole", help="pole z* of 1/(z - z*) as re,im")
    sp.add_argument("--level", type=float, help="contour level lambda with 1 < lambda < rho")
    sub.add_parser("check", help="run the acceptance suite")
    return ap


COMMANDS = {"poly": cmd_poly, "norms": cmd_norms, "acf": cmd_acf, "phase": cmd_phase, "series": cmd_series}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "check":
            return cmd_check(args)
        cfg = load_config(args)
        return COMMANDS[args.command](cfg, args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, KeyError, NotImplementedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
