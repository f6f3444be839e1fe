"""Print the built-in materials with their derived free-electron bulk data.

The table mirrors `filmcasimir materials`, then checks the SI round trip
for one entry so the unit conventions are visible in one place.
"""
from filmcasimir.materials import BulkReference, derive_bulk, material_table, well_depth


def main():
    table = material_table()
    print(f"{'name':<6}{'rs/a0':>7}{'W[eV]':>8}{'n0[nm^-3]':>11}{'kF[nm^-1]':>11}"
          f"{'EF[eV]':>8}{'hbar*Omega_P[eV]':>18}{'V0[eV]':>8}")
    for name in sorted(table):
        m = table[name]
        b = derive_bulk(m)
        hwp = b.Omega_P * 6.582119569e-16
        print(f"{name:<6}{m.rs_over_a0:>7.2f}{m.work_function:>8.2f}{b.n0:>11.4f}"
              f"{b.kF_bulk:>11.4f}{b.EF_bulk:>8.4f}{hwp:>18.3f}"
              f"{well_depth(m, b.EF_bulk):>8.3f}")

    b = derive_bulk(table["Al"])
    si = b.to_si()
    back = BulkReference.from_si(si.n0, si.kF_bulk, si.EF_bulk, si.Omega_P)
    print(f"\nAl electron density: {si.n0:.4e} m^-3  "
          f"(round trip error {abs(back.n0 / b.n0 - 1.0):.1e})")


if __name__ == "__main__":
    main()
