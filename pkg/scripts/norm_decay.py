"""Norm-decay tables ||b_k||/|b_k(0)| against R_0^k for E_j = [-1,-2^-j] U [2^-j,1]."""

import argparse
from pathlib import Path

import numpy as np

from faberwalsh.cli import write_csv
from faberwalsh.faber_walsh import fw_family, norm_decay_table
from faberwalsh.maps import sym_intervals_pair


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=int, default=30)
    ap.add_argument("--out", default="out/norm_decay")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for j in range(1, 5):
        pair = sym_intervals_pair(2.0**-j, 1.0)
        rows = norm_decay_table(fw_family(pair, args.kmax), pair.set, 0.0, args.kmax)
        write_csv(out / f"E{j}.csv", ["k", "norm", "normalized", "acf_pow_k"],
                  [(r.k, r.norm, r.normalized, r.acf_pow_k) for r in rows])
        last = rows[-1]
        print(f"E_{j}: root={last.normalized ** (1 / last.k):.6f}  R0={last.acf_pow_k ** (1 / last.k):.6f}")


if __name__ == "__main__":
    main()
