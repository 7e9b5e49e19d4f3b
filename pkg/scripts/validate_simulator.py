"""Simulated against analytical saturation throughput for the three single-channel modes."""

import argparse

from fdcap.presets import FIG6_MODES, mac_scenario
from fdcap.sim_csma import validate_against_model


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[5, 10, 20])
    ap.add_argument("--tolerance", type=float, default=0.02)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    ok = True
    for mode in FIG6_MODES[:3]:
        report = validate_against_model(mac_scenario("fig6", mode), args.n, args.tolerance, seed=args.seed)
        ok &= report.passed
        for r in report.rows:
            print(f"{mode.value:>7} n={r.n:<3d} model {r.analytical_bps / 1e6:7.3f}  sim {r.simulated_bps / 1e6:7.3f}"
                  f" +/- {r.ci_halfwidth_bps / 1e6:.3f} Mbps  rel {r.rel_diff:.4f}  {'ok' if r.passed else 'FAIL'}")
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
