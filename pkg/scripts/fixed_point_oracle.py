"""High-precision (tau, p) pairs used as frozen reference values in the tests.

Solves p = 1 - (1 - tau(p))^(n-1) in p with mpmath at 40 digits, where
tau(p) = 2 / (1 + W + p W sum_{i<m} (2p)^i). This is independent of the
package solver, which bisects on tau in double precision.
"""

import argparse

import mpmath as mp


def tau_of_p(p, w, m):
    return 2 / (1 + w + p * w * mp.fsum((2 * p) ** i for i in range(m)))


def solve(n, w=15, m=6):
    f = lambda p: p - (1 - (1 - tau_of_p(p, w, m)) ** (n - 1))
    p = mp.findroot(f, (mp.mpf("1e-30"), mp.mpf("0.999999")), solver="bisect", tol=mp.mpf("1e-35"))
    return tau_of_p(p, w, m), p


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("n", type=int, nargs="*", default=[2, 5, 10, 20, 50, 100, 300])
    args = ap.parse_args()
    mp.mp.dps = 40
    for n in args.n:
        tau, p = solve(n)
        print(n, mp.nstr(tau, 17), mp.nstr(p, 17))


if __name__ == "__main__":
    main()
