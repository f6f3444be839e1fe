"""Trace the size oscillations of the Fermi level in a thin film.

Each time the film grows wide enough to bind one more subband the Fermi
level dips, producing a sawtooth in EF(D)/EF_bulk with period pi/kF. The
script sweeps the scaled width x = kF*D/pi, writes one CSV per model and
plots the curves when matplotlib is importable.
"""
import argparse
from pathlib import Path

import numpy as np

from filmcasimir.estructure import ef_ratio, film_state, write_fermi_ratio_csv
from filmcasimir.materials import derive_bulk, material_table


def sweep(material, model, x_grid):
    bulk = derive_bulk(material)
    rows = []
    for x in x_grid:
        d = float(x) * np.pi / bulk.kF_bulk
        st = film_state(material, model, d)
        rows.append((d, x, ef_ratio(st, bulk), st.m0))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--material", default="Cs")
    ap.add_argument("--outdir", default="demo_out", type=Path)
    ap.add_argument("--points", default=220, type=int)
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)

    mat = material_table()[args.material]
    x_grid = np.linspace(0.6, 8.0, args.points)
    curves = {}
    for model in ("FWM", "IWM"):
        rows = sweep(mat, model, x_grid)
        curves[model] = rows
        out = args.outdir / f"fermi_ratio_{args.material}_{model}.csv"
        with open(out, "w") as fh:
            write_fermi_ratio_csv(fh, args.material, model, rows)
        peak = max(r[2] for r in rows)
        print(f"{model}: peak EF/EF_bulk = {peak:.4f}, "
              f"{rows[-1][3]} subbands at x = {x_grid[-1]:.1f}  -> {out}")

    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not installed, skipping the figure")
        return
    fig, ax = plt.subplots(figsize=(5.2, 3.4))
    for model, rows in curves.items():
        ax.plot([r[1] for r in rows], [r[2] for r in rows], label=model)
    ax.axhline(1.0, color="k", lw=0.6)
    ax.set_xlabel(r"$k_F D/\pi$")
    ax.set_ylabel(r"$E_F/E_F^{\mathrm{bulk}}$")
    ax.set_title(f"{args.material} film")
    ax.legend()
    fig.tight_layout()
    png = args.outdir / f"fermi_ratio_{args.material}.png"
    fig.savefig(png, dpi=150)
    print(f"figure -> {png}")


if __name__ == "__main__":
    main()
