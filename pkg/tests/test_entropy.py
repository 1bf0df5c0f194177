import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from metrent.entropy import (ApproxSetSpec, PointCloud,
                             SizeExceeded, build_large_compact,
                             check_spanning_le_covering, cloud_from_vectors,
                             covering_number, interval_cover_count,
                             lorentz_bounds, packing_exponent,
                             packing_witness)


def line_cloud(values):
    vals = [Fraction(v) for v in values]
    return PointCloud(vals, lambda i, j: abs(vals[i] - vals[j]))


def test_covering_examples():
    single = line_cloud([0])
    assert covering_number(single, 3).count == 1
    two = line_cloud([0, 1])
    assert covering_number(two, 1).count == 2     # radius 1/2
    assert covering_number(two, 0).count == 1     # radius 1


def test_covering_exact_cap():
    big = line_cloud(list(range(25)))
    with pytest.raises(SizeExceeded):
        covering_number(big, 1, "exact")
    assert covering_number(big, 1, "greedy").count >= 1


def test_packing_examples():
    single = line_cloud([0])
    assert len(packing_witness(single, 1)) == 1
    assert packing_exponent(single, 1) == 0
    two = line_cloud([0, 3])
    assert len(packing_witness(two, 1)) == 2      # threshold 1
    three = line_cloud([0, Fraction(1, 2), 1])
    # exhaustive check: no pair has distance > 1, so max separated set is 1
    assert len(packing_witness(three, 1)) == 1


def test_greedy_at_least_exact_and_packing_below():
    rnd = random.Random(11)
    for _ in range(40):
        pts = [(Fraction(rnd.randrange(0, 65), 64), Fraction(rnd.randrange(0, 65), 64))
               for _ in range(rnd.randrange(2, 11))]
        K = cloud_from_vectors(pts)
        for n in (0, 1, 2, 3):
            exact = covering_number(K, n, "exact")
            greedy = covering_number(K, n, "greedy")
            assert greedy.count >= exact.count
            assert len(packing_witness(K, n)) <= exact.count
            assert check_spanning_le_covering(K, n)


def test_build_large_compact_unit_peaks():
    # disjoint-support unit peaks of one generation: pairwise sup distance 1
    from metrent.funcs import PiecewiseLinear, sup_dist_pl
    G = 6

    def peak(j):
        w = Fraction(1, 1 << G)
        c = Fraction(2 * j - 1, 1 << G)
        xs = sorted({Fraction(0), c - w, c, c + w, Fraction(1)})
        ys = [Fraction(1) if x == c else Fraction(0) for x in xs]
        return PiecewiseLinear.build(xs, ys)

    zero = PiecewiseLinear.build([0, 1], [0, 0])
    K = build_large_compact(
        mu=lambda i: i, family=peak,
        scale=lambda c, f: f.scaled(c), zero=zero,
        dist=sup_dist_pl, horizon=6)
    assert len(K) == 1 + 2 ** 6
    # packing at threshold 2^-n captures all shells up to n plus the origin
    for n in range(7):
        assert packing_exponent(K, n + 1) >= n


def test_build_large_compact_degenerate():
    zero = (Fraction(0),)
    fam = lambda j: (Fraction(j),)      # distances >= 1 between members
    K = build_large_compact(
        mu=lambda i: 0, family=fam,
        scale=lambda c, v: (c * v[0],), zero=zero,
        dist=lambda a, b: abs(a[0] - b[0]), horizon=0)
    assert len(K) == 2


def test_lorentz_dyadic_reference():
    spec = ApproxSetSpec([Fraction(1, 1 << k) for k in range(16)])
    for n in range(1, 9):
        lo, hi = lorentz_bounds(spec, n)
        assert lo == math.log(2) * sum(range(1, n))
        assert lo <= hi


def test_lorentz_first_drop():
    spec = ApproxSetSpec([Fraction(1)] * 4 + [Fraction(1, 4)] + [Fraction(1, 1 << k) for k in range(3, 20)])
    # N_1 is the first index where delta drops to 1/2 or less
    from metrent.entropy import _n_index
    assert _n_index(spec, 1) == 4


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=3), min_size=12, max_size=18),
       st.integers(min_value=0, max_value=8))
def test_lorentz_lower_le_upper(drops, n):
    # random admissible non-increasing sequence starting at 1
    deltas = [Fraction(1)]
    for d in drops:
        deltas.append(deltas[-1] / (1 << d))
    deltas += [deltas[-1] / (1 << 30)] * 2      # ensure tabulation depth
    spec = ApproxSetSpec(deltas)
    lo, hi = lorentz_bounds(spec, n)
    assert lo <= hi + 1e-12


def test_interval_cover_count():
    pts = [Fraction(k, 8) for k in range(9)]
    assert interval_cover_count(pts, Fraction(1, 2)) == 1
    assert interval_cover_count(pts, Fraction(1, 4)) == 2
    # each ball grabs three consecutive grid points, so three suffice
    assert interval_cover_count(pts, Fraction(1, 8)) == 3
    assert interval_cover_count(pts, Fraction(1, 16)) == 9
    assert interval_cover_count([Fraction(0)], Fraction(1, 16)) == 1
