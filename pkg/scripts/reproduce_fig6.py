"""Saturation throughput of the four access schemes for n = 10..300."""

import argparse

import numpy as np

from fdcap.dcf_model import saturation_throughput
from fdcap.presets import FIG6_MODES, FIG6_PUBLISHED, PRESETS, mac_scenario


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--preset", choices=sorted(PRESETS), default="fig6")
    args = ap.parse_args()

    ns = np.arange(10, 301, 10)
    curves = {m: np.array([saturation_throughput(mac_scenario(args.preset, m, int(n))).s_bps / 1e6 for n in ns])
              for m in FIG6_MODES}
    print("n " + " ".join(f"{m.value:>8}" for m in FIG6_MODES))
    for i, n in enumerate(ns):
        print(f"{n:<3d}" + " ".join(f"{curves[m][i]:>8.3f}" for m in FIG6_MODES))

    print("\nagainst published values")
    worst = 0.0
    for m in FIG6_MODES:
        for n, pub in FIG6_PUBLISHED[m].items():
            rel = curves[m][ns == n][0] / pub - 1
            worst = max(worst, abs(rel))
            print(f"  {m.value:>7} n={n:<3d} {curves[m][ns == n][0]:7.3f} vs {pub:6.2f}  {rel:+.3f}")
    hd_best = np.maximum(curves[FIG6_MODES[0]], curves[FIG6_MODES[1]])
    print(f"worst |rel| {worst:.3f}; FD 1:1 / best HD at n=290: {(curves[FIG6_MODES[2]] / hd_best)[ns == 290][0]:.3f}")


if __name__ == "__main__":
    main()
