#!/usr/bin/env python3
# Example plotting for wswap sweep output. Documentation, not tested code.
#
#   ./build/wswap sweep --mode purify --grid-step 0.05 --out purify.csv
#   python3 scripts/plot_sweep.py purify.csv purify.png
#
# Draws the purified-vs-raw fidelity surfaces and the success-probability
# surface over the (r, q) grid.

import csv
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def load(path):
    rows = []
    with open(path, newline="") as f:
        for row in csv.DictReader(l for l in f if not l.startswith("#")):
            rows.append({k: float(v) for k, v in row.items()})
    return rows


def surface(rows, key):
    rs = sorted({row["r"] for row in rows})
    qs = sorted({row["q"] for row in rows})
    z = np.full((len(qs), len(rs)), np.nan)
    for row in rows:
        z[qs.index(row["q"]), rs.index(row["r"])] = row[key]
    return np.array(rs), np.array(qs), z


def main():
    if len(sys.argv) != 3:
        sys.exit(f"usage: {sys.argv[0]} sweep.csv out.png")
    rows = load(sys.argv[1])
    if "q" not in rows[0]:
        sys.exit("expected a purify-mode sweep (r and q columns)")

    fig = plt.figure(figsize=(12, 5))

    ax = fig.add_subplot(1, 2, 1, projection="3d")
    r, q, fid_wm = surface(rows, "fid_purified")
    _, _, fid_ad = surface(rows, "fid_no_purification")
    rr, qq = np.meshgrid(r, q)
    ax.plot_surface(rr, qq, fid_wm, cmap="viridis", alpha=0.9)
    ax.plot_surface(rr, qq, fid_ad, color="gray", alpha=0.4)
    ax.set_xlabel("r")
    ax.set_ylabel("q")
    ax.set_zlabel("fidelity")
    ax.set_title("purified (colored) vs raw (gray)")

    ax = fig.add_subplot(1, 2, 2, projection="3d")
    _, _, p_total = surface(rows, "p_total_composed")
    ax.plot_surface(rr, qq, p_total, cmap="plasma")
    ax.set_xlabel("r")
    ax.set_ylabel("q")
    ax.set_zlabel("success probability")
    ax.set_title("total swap + purification success")

    fig.tight_layout()
    fig.savefig(sys.argv[2], dpi=150)
    print(f"wrote {sys.argv[2]}")


if __name__ == "__main__":
    main()
