#!/usr/bin/env python3
"""Deterministic bound tables: the dialog length bound 2(T(T+1)+1) and the
full-approximation-set entropy bounds for the dyadic tolerance ladder."""

import sys
from fractions import Fraction

from metrent.cli import main
from metrent.entropy import ApproxSetSpec, lorentz_bounds

if __name__ == "__main__":
    rc = main(["bounds", "--n-max", "10", "--out", "dialog_bounds.csv"])
    spec = ApproxSetSpec([Fraction(1, 1 << k) for k in range(20)])
    with open("lorentz_dyadic.csv", "w") as fh:
        fh.write("n,lower,upper\n")
        for n in range(11):
            lo, hi = lorentz_bounds(spec, n)
            fh.write(f"{n},{lo:.6f},{hi:.6f}\n")
    sys.exit(rc)
