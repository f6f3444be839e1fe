"""How much weaker is the Casimir force once the film is quantized?

delta = (F_reference - F_quantized)/F_reference compares a film whose
dielectric tensor comes from its bound states against the same film treated
as a slab of bulk plasma. The reduction is largest for thin films of dilute
metals at short separations and fades with the gap. Runs the three models
side by side for one material and two widths.
"""
import argparse
from pathlib import Path

import numpy as np

from filmcasimir.lifshitz import delta_P
from filmcasimir.materials import material_table

MODELS = ("FWM", "IWM", "PBM")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--material", default="Cs")
    ap.add_argument("--widths", type=float, nargs="+", default=[1.0, 5.0])
    ap.add_argument("--outdir", default="demo_out", type=Path)
    ap.add_argument("--points", default=12, type=int)
    ap.add_argument("--tol", default=1e-6, type=float)
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)

    mat = material_table()[args.material]
    ell_grid = np.geomspace(1.0, 100.0, args.points)

    for D in args.widths:
        table = {m: [delta_P(mat, m, D, float(ell), tol=args.tol) for ell in ell_grid]
                 for m in MODELS}
        out = args.outdir / f"delta_P_{args.material}_D{D:g}.csv"
        with open(out, "w") as fh:
            fh.write(f"# force reduction, {args.material} film, D = {D:g} nm, gamma = 0\n")
            fh.write("ell_nm," + ",".join(MODELS) + "\n")
            for i, ell in enumerate(ell_grid):
                fh.write(f"{float(ell)!r}," + ",".join(f"{table[m][i]!r}" for m in MODELS) + "\n")

        print(f"\n{args.material}, D = {D:g} nm   (delta in %)")
        print(f"{'ell[nm]':>8}" + "".join(f"{m:>8}" for m in MODELS))
        for i, ell in enumerate(ell_grid):
            print(f"{ell:>8.2f}" + "".join(f"{100 * table[m][i]:>8.2f}" for m in MODELS))
        print(f"table -> {out}")


if __name__ == "__main__":
    main()
