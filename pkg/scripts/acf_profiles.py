"""Convergence factor profiles R_{z0}(E_j) for real z0 in [-2, 2] and one complex grid."""

import argparse
from pathlib import Path

import numpy as np

from faberwalsh.cli import write_csv
from faberwalsh.faber_walsh import acf
from faberwalsh.maps import sym_intervals_pair
from faberwalsh.phase import Window, map_rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=801)
    ap.add_argument("--out", default="out/acf")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    x = np.linspace(-2, 2, args.points)
    cols = [x]
    for j in range(1, 5):
        cols.append(acf(sym_intervals_pair(2.0**-j, 1.0), x.astype(complex)))
    write_csv(out / "profiles.csv", ["z0"] + [f"E{j}" for j in range(1, 5)], zip(*cols))
    win = Window(-2, 2, -1, 1, 201, 101)
    pair = sym_intervals_pair(0.5, 1.0)
    vals = map_rows(lambda z: acf(pair, z), win)
    pts = win.points()
    write_csv(out / "grid_E1.csv", ["re", "im", "R"],
              [(z.real, z.imag, v) for z, v in zip(pts.ravel(), vals.ravel())])
    print(f"wrote {out}/profiles.csv and {out}/grid_E1.csv")


if __name__ == "__main__":
    main()
