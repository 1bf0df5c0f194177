import random
from fractions import Fraction

from metrent.baire import Name, in_kl, is_length_monotone, pair_names
from metrent.banach import (BanachReprParams, add_time, banach_add_program,
                            banach_name, banach_norm_program, banach_time,
                            check_growth, coeff_query, combo_query, counted,
                            delta_square_name, dsq_modulus, dsq_to_xi,
                            dsq_value, fs_vector, haar_vector, lp_name,
                            lp_modulus_of_name, lp_to_xi, lp_value,
                            xi_decode_pl, xi_read_combo, xi_to_dsq, xi_to_lp)
from metrent.compact import name_length_fn
from metrent.funcs import (PiecewiseLinear, StepFn, chi, continuity_modulus,
                           lp_modulus, modulus_fn, sup_dist_pl)
from metrent.machine import RunningTime, exp_max_time, metered_run
from metrent.schauder import FSSystem, HaarSystem, fs_elem, fs_partial_sum_pl
from metrent.strings import decode_int, nat_str


ELL = lambda n: n + 4


def fs_setup():
    return BanachReprParams(S=exp_max_time()), FSSystem()


def rand_pl(rnd, scale=3):
    grid = [Fraction(t, 1 << scale) for t in range((1 << scale) + 1)]
    ys = [Fraction(rnd.randrange(-8, 9), 8) for _ in grid]
    return PiecewiseLinear.build(grid, ys)


def rand_step(rnd, scale=3):
    cuts = [Fraction(0)] + sorted(rnd.sample(
        [Fraction(k, 1 << scale) for k in range(1, 1 << scale)], 3)) + [Fraction(1)]
    levels = [Fraction(rnd.randrange(-8, 9), 4) for _ in range(4)]
    return StepFn.build(cuts, levels)


def test_banach_name_coeff_branch():
    params, system = fs_setup()
    phi = banach_name(fs_vector(fs_elem(0)), params, system, ELL)
    for n, m in ((0, 10), (3, 99)):
        assert decode_int(phi(coeff_query(0, n, m))) == m + 1
        assert decode_int(phi(coeff_query(1, n, m))) == 0
    assert in_kl(phi, ELL, 7)


def test_banach_name_norm_branch():
    params, system = fs_setup()
    phi = banach_name(fs_vector(fs_elem(0)), params, system, ELL)
    for n in (0, 2, 6):
        m = 7
        raw = phi(combo_query([m + 1], n, m))      # the vector e_0 itself
        z = decode_int(raw)
        assert abs(1 - Fraction(z, n + 1)) <= Fraction(1, n + 1)


def test_banach_decode_combo():
    params, system = fs_setup()
    rnd = random.Random(3)
    for _ in range(5):
        f = rand_pl(rnd)
        phi = banach_name(fs_vector(f), params, system, ELL)
        for n in (0, 1, 3):
            combo = xi_decode_pl(phi, n, params)
            assert sup_dist_pl(combo, f) <= Fraction(2, n + 1)


def test_banach_norm_program_fs():
    params, system = fs_setup()
    T = banach_time(params)
    budget = RunningTime(lambda l, n: 64 * T.bound(l, n) + 64)
    prog = banach_norm_program(params)
    cases = [
        (fs_elem(0), Fraction(1)),
        (PiecewiseLinear.build([0, 1], [Fraction(1, 2), Fraction(1, 2)]),
         Fraction(1, 2)),
    ]
    for f, norm in cases:
        phi = banach_name(fs_vector(f), params, system, ELL)
        lfn = name_length_fn(phi)
        for n in range(3):
            out, report, _ = metered_run(prog, phi, nat_str(n), budget, lfn)
            z = decode_int(out)
            assert abs(norm - Fraction(z, n + 1)) <= Fraction(1, n + 1)
            assert report.steps_used <= 64 * T.bound(lfn, len(nat_str(n))) + 64


def test_banach_norm_program_haar():
    params = BanachReprParams(S=exp_max_time())
    p = Fraction(2)
    system = HaarSystem(p)
    f = StepFn.build([0, 1], [1])
    phi = banach_name(haar_vector(f, p), params, system, ELL)
    prog = banach_norm_program(params)
    T = banach_time(params)
    budget = RunningTime(lambda l, n: 64 * T.bound(l, n) + 64)
    lfn = name_length_fn(phi)
    for n in range(3):
        out, _, _ = metered_run(prog, phi, nat_str(n), budget, lfn)
        z = decode_int(out)
        assert abs(1 - Fraction(z, n + 1)) <= Fraction(1, n + 1)


def test_banach_addition():
    params, system = fs_setup()
    rnd = random.Random(9)
    f, g = rand_pl(rnd, 2), rand_pl(rnd, 2)
    phi = banach_name(fs_vector(f), params, system, ELL)
    psi = banach_name(fs_vector(g), params, system, ELL)
    chi_n = pair_names(phi, psi)
    l2 = name_length_fn(chi_n)
    prog = banach_add_program()
    T = add_time()
    big = RunningTime(lambda l, n: 64 * T.bound(l, n) + 64)
    ratios = []

    def sum_value(a: str) -> str:
        out, report, _ = metered_run(prog, chi_n, a, big, l2)
        ratios.append(report.steps_used / max(T.bound(l2, len(a)), 1))
        return out

    total = Name(sum_value, label="sum")
    target = f.add(g)
    for n in (0, 1, 3):
        combo = xi_decode_pl(total, n, params)
        assert sup_dist_pl(combo, target) <= Fraction(2, n + 1)
    # the recorded addition constant
    assert max(ratios) <= 16, max(ratios)


def test_delta_square_name_contract():
    f = PiecewiseLinear.build([0, 1], [0, 1])
    mu = modulus_fn(continuity_modulus(f, 12))
    psi = delta_square_name(f, mu)
    rnd = random.Random(17)
    for _ in range(60):
        m = rnd.randrange(0, 5)
        r = rnd.randrange(0, (1 << m) + 1)
        n = rnd.randrange(0, 9)
        v = dsq_value(psi, n, r, m)
        assert abs(f(Fraction(r, 1 << m)) - v) <= Fraction(1, 1 << n)
    assert is_length_monotone(psi, 6)
    table = continuity_modulus(f, 6)
    md = dsq_modulus(psi)
    assert all(md(t) >= table[t] for t in range(7))


def test_xi_to_dsq_values_and_query_growth():
    params, system = fs_setup()
    rnd = random.Random(19)
    f = rand_pl(rnd)
    base = banach_name(fs_vector(f), params, system, ELL)
    phi, counter = counted(base)
    psi = xi_to_dsq(phi, params)
    counts = []
    for n in range(7):
        before = counter[0]
        v = dsq_value(psi, n, 3, 3)
        counts.append(counter[0] - before)
        assert abs(f(Fraction(3, 8)) - v) <= Fraction(1, 1 << n)
    lfn = name_length_fn(base)
    # distinct queries fit below C * (|phi|(n+c) + n)^2 with C = 4, c = 4
    for n, c in enumerate(counts):
        assert c <= 4 * (lfn(n + 4) + n) ** 2, (n, c)


def test_dsq_xi_roundtrip():
    params, _ = fs_setup()
    rnd = random.Random(23)
    for _ in range(3):
        f = rand_pl(rnd, 2)
        mu = modulus_fn(continuity_modulus(f, 14))
        psi = delta_square_name(f, mu)
        xi2 = dsq_to_xi(psi, params)
        psi2 = xi_to_dsq(xi2, params)
        for n in (0, 2, 4, 6):
            for (r, m) in ((0, 0), (1, 1), (3, 2), (5, 3)):
                v = dsq_value(psi2, n, r, m)
                assert abs(f(Fraction(r, 1 << m)) - v) <= Fraction(2, 1 << n)


def test_lp_name_contract():
    p = Fraction(2)
    f = chi(0, Fraction(1, 2))
    mu = modulus_fn(lp_modulus(f, 2, 12))
    psi = lp_name(f, p, mu)
    v = lp_value(psi, 0, 1, 1, 5)
    assert abs(Fraction(1, 2) - v) < Fraction(1, 32)
    rnd = random.Random(29)
    for _ in range(40):
        m = rnd.randrange(0, 4)
        k = rnd.randrange(0, (1 << m) + 1)
        l = rnd.randrange(0, (1 << m) + 1)
        n = rnd.randrange(0, 9)
        v = lp_value(psi, k, l, m, n)
        exact = f.integral(Fraction(k, 1 << m), Fraction(l, 1 << m))
        assert abs(exact - v) < Fraction(1, 1 << n)      # strict
    assert is_length_monotone(psi, 6)
    table = lp_modulus(f, 2, 6)
    md = lp_modulus_of_name(psi)
    assert all(md(t) >= table[t] for t in range(7))


def test_xi_to_lp_values():
    p = Fraction(2)
    params = BanachReprParams(S=exp_max_time())
    rnd = random.Random(31)
    f = rand_step(rnd)
    phi = banach_name(haar_vector(f, p), params, HaarSystem(p), ELL)
    psi = xi_to_lp(phi, params, p)
    for n in (0, 2, 4):
        for (k, l, m) in ((0, 1, 0), (0, 1, 1), (1, 3, 2), (2, 7, 3)):
            v = lp_value(psi, k, l, m, n)
            exact = f.integral(Fraction(k, 1 << m), Fraction(l, 1 << m))
            assert abs(exact - v) < Fraction(1, 1 << n)


def test_lp_xi_roundtrip():
    p = Fraction(2)
    params = BanachReprParams(S=exp_max_time())
    rnd = random.Random(37)
    for _ in range(2):
        f = rand_step(rnd)
        mu = modulus_fn(lp_modulus(f, 2, 14))
        psi = lp_name(f, p, mu)
        xi2 = lp_to_xi(psi, params, p)
        psi2 = xi_to_lp(xi2, params, p)
        for n in (0, 2, 4):
            for (k, l, m) in ((0, 1, 0), (1, 2, 1), (3, 5, 3)):
                v = lp_value(psi2, k, l, m, n)
                exact = f.integral(Fraction(k, 1 << m), Fraction(l, 1 << m))
                assert abs(exact - v) <= Fraction(2, 1 << n)


def test_lp_to_xi_unit_vector():
    p = Fraction(2)
    params = BanachReprParams(S=exp_max_time())
    f = StepFn.build([0, 1], [1])                  # the constant element
    mu = modulus_fn(lp_modulus(f, 2, 14))
    xi2 = lp_to_xi(lp_name(f, p, mu), params, p)
    pairs, m = xi_read_combo(xi2, 4, params, indices=range(4))
    lams = {i: Fraction(z, m) for i, z in pairs}
    assert abs(lams[0] - 1) <= Fraction(2, m)
    assert all(abs(lams[i]) <= Fraction(2, m) for i in (1, 2, 3))


def test_growth_condition():
    S = exp_max_time()
    candidates = [lambda n: n, lambda n: n + 2, lambda n: 2 * n + 4]
    assert check_growth(S, lambda n: n + 10, candidates, depth=8)
    assert not check_growth(S, lambda n: 1 << (2 * n + 20), candidates, depth=8)


def test_packing_clause_truncated():
    # scaled basis vectors 2^-n e_i stay separated: measured exponent at
    # n + C with C = 2 (alpha = 1) reaches the truncated span budget
    from metrent.entropy import PointCloud, packing_exponent
    from metrent.funcs import sup_dist_pl
    elems = [fs_elem(i) for i in range(64)]
    horizon = 6
    for n in range(1, 4):
        scalednames = [e.scaled(Fraction(1, 1 << n)) for e in elems]
        K = PointCloud(scalednames, lambda i, j: sup_dist_pl(scalednames[i], scalednames[j]))
        assert packing_exponent(K, n + 2) >= horizon


def test_short_name_sandwich():
    # vectors approximable within the tolerance ladder receive names of
    # length ELL to scan depth
    params, system = fs_setup()
    rnd = random.Random(41)
    for _ in range(5):
        lams = [Fraction(rnd.randrange(-4, 5), 4) for _ in range(9)]
        f = fs_partial_sum_pl(lams)
        phi = banach_name(fs_vector(f), params, system, ELL)
        assert in_kl(phi, ELL, 6)
