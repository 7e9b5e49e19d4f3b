"""Capacity curves for 20 MHz HD, 20 MHz FD 1:1 and 2x10 MHz FD 1:2 against the published points."""

import argparse

from fdcap.phy_capacity import sweep_capacity
from fdcap.presets import FIG4_SNR_DB, fig4_plan

# read off the published figure (Mbps)
PUBLISHED = {
    "hd": (0.28, 0.89, 2.75, 7.92, 20, 41.14, 69.18, 100.55, 133.16, 166.18),
    "fd1": (0.57, 1.79, 5.50, 15.85, 40, 82.29, 138.37, 201.11, 266.32, 332.375),
    "fdN": (1.12, 3.49, 10.39, 27.94, 62.67, 113.64, 173.80, 237.68, 302.84, 368.42),
}


def main():
    argparse.ArgumentParser(description=__doc__).parse_args()
    rows = sweep_capacity([fig4_plan()], FIG4_SNR_DB)
    print(f"{'snr':>5} {'curve':>5} {'model':>10} {'published':>10} {'rel':>8}")
    for i, row in enumerate(rows):
        for curve in ("hd", "fd1", "fdN"):
            model = getattr(row, curve).bits_per_second / 1e6
            pub = PUBLISHED[curve][i]
            print(f"{row.snr_db:>5g} {curve:>5} {model:>10.4f} {pub:>10.3f} {model / pub - 1:>+8.4f}")


if __name__ == "__main__":
    main()
