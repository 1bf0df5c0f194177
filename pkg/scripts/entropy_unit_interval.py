#!/usr/bin/env python3
"""Dialog-cover entropy experiment on the unit interval.

Samples dyadic points, builds their short Cauchy names, groups them by the
dialog of the metered equality run, and emits the per-precision CSV with
packing/covering numbers and the reference bounds.
"""

import sys

from metrent.cli import main

if __name__ == "__main__":
    args = sys.argv[1:] or ["--n-max", "6", "--samples", "200", "--seed", "1",
                            "--out", "entropy_unit_interval.csv"]
    sys.exit(main(["entropy", *args]))
