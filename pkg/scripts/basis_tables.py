#!/usr/bin/env python3
"""Basis tables: per-level hat-expansion errors for x(1-x) and the exact
half-support integrals of the first Haar elements."""

import sys

from metrent.cli import main

if __name__ == "__main__":
    rc = main(["eval", "--basis", "fs", "--n-max", "6", "--out", "fs_errors.csv"])
    rc |= main(["eval", "--basis", "haar", "--p", "2", "--n-max", "12",
                "--out", "haar_integrals.csv"])
    sys.exit(rc)
