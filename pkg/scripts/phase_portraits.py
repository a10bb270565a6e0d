"""Phase portraits of b_k for symmetric intervals and the Koch-Liesen pre-image set."""

import argparse
from pathlib import Path

import numpy as np

from faberwalsh.faber_walsh import fw_family
from faberwalsh.maps import koch_liesen_preimage_pair, sym_intervals_pair
from faberwalsh.phase import Window, border_winding, phase_portrait, write_ppm


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=400)
    ap.add_argument("--out", default="out/phase")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    jobs = [
        ("sym", sym_intervals_pair(0.25, 1.0), Window(-1.5, 1.5, -1.0, 1.0, args.size, 2 * args.size // 3), (1, 2, 7, 8)),
        ("koch_liesen", koch_liesen_preimage_pair(-1, 2 * np.pi / 3, 1.1, 5),
         Window(-1.5, 1.5, -1.5, 1.5, args.size, args.size), (5, 10)),
    ]
    for name, pair, win, degrees in jobs:
        fam = fw_family(pair, max(degrees))
        for k in degrees:
            write_ppm(out / f"{name}_b{k}.ppm", phase_portrait(fam[k], win))
            print(f"{name} b_{k}: {border_winding(fam[k], win)} zeros in window")


if __name__ == "__main__":
    main()
