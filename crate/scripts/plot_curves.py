#!/usr/bin/env python3
"""Plot F(z) curves from a `polder sweep` CSV.

Usage: plot_curves.py curve.csv [-o curve.png]
"""
import argparse
import csv
from collections import defaultdict

import matplotlib.pyplot as plt


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csv")
    parser.add_argument("-o", "--out", help="image file; shows a window when omitted")
    args = parser.parse_args()

    curves = defaultdict(lambda: ([], []))
    with open(args.csv, newline="") as f:
        reader = csv.DictReader(f)
        energy_column = next(c for c in reader.fieldnames if c.startswith("F_"))
        for row in reader:
            if row["converged"] != "true":
                continue
            z, F = curves[(row["atom"], row["material"], row["regime"])]
            z.append(float(row["z_m"]) * 1e9)
            F.append(float(row[energy_column]))

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for (atom, material, regime), (z, F) in sorted(curves.items()):
        style = "-" if regime == "retarded" else "--"
        ax.plot(z, F, style, label=f"{atom} / {material} ({regime})")
    ax.axhline(0.0, color="grey", linewidth=0.5)
    ax.set_xscale("log")
    # F spans many decades and changes sign, so use a symmetric log axis.
    peak = max((abs(v) for _, F in curves.values() for v in F), default=1.0) or 1.0
    ax.set_yscale("symlog", linthresh=peak * 1e-6)
    ax.set_xlabel("z (nm)")
    ax.set_ylabel(f"F ({energy_column[2:]})")
    ax.legend(fontsize="small")
    fig.tight_layout()
    if args.out:
        fig.savefig(args.out, dpi=150)
    else:
        plt.show()


if __name__ == "__main__":
    main()
