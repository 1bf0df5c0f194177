"""Representations of metric spaces: standard reals, Cauchy, relativized
Cauchy, products, and the co-r.e. rejection procedure.

Decoders accept any value satisfying the contract; generators are
deterministic (least admissible index, round-to-nearest with ties away from
zero).  All "is a name" checks are finite-depth semi-decisions.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Callable

from .baire import LengthFn, Name, pair_names, split_pair
from .machine import Ctx, RunningTime
from .strings import (Dyadic, decode_int, encode_int, nat_str, parse_nat,
                      proj_value, round_half_away, tuple_strs)


class MalformedName(ValueError):
    """A queried value violates the representation's layout."""


# ---------------------------------------------------------------------------
# metric space descriptions

@dataclass
class MetricSpaceSpec:
    """A separable metric space given by a dense sequence and a discrete
    metric evaluator.

    ``dist(i, j, precision)`` returns a rational within 1/(precision+1) of
    d(r_i, r_j); for the library's dyadic spaces it is exact.  ``exact_dist``
    compares arbitrary points exactly and is the test oracle.
    """

    label: str
    point: Callable[[int], object]
    dist: Callable[[int, int, int], Fraction]
    exact_dist: Callable[[object, object], Fraction] | None = None
    approx_index: Callable[[object, int], int] | None = None


def _zigzag(z: int) -> int:
    return 2 * z if z >= 0 else -2 * z - 1


def _cantor(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def dyadic_line_point(i: int) -> Fraction:
    w = (isqrt(8 * i + 1) - 1) // 2
    t = w * (w + 1) // 2
    scale = i - t
    a = w - scale
    num = a // 2 if a % 2 == 0 else -(a + 1) // 2
    return Fraction(num, 1 << scale)


def dyadic_line_index(x: Fraction) -> int:
    d = Dyadic.from_fraction(x)
    return _cantor(_zigzag(d.num), d.scale)


def dyadic_line_space() -> MetricSpaceSpec:
    """The real line with the diagonal enumeration of all dyadics."""
    def dist(i: int, j: int, precision: int) -> Fraction:
        return abs(dyadic_line_point(i) - dyadic_line_point(j))

    def approx(x, n: int) -> int:
        x = Fraction(x) if not isinstance(x, Fraction) else x
        top = dyadic_line_index(x)
        tol = Fraction(1, n + 1)
        for i in range(top + 1):
            if abs(dyadic_line_point(i) - x) <= tol:
                return i
        return top

    return MetricSpaceSpec(
        label="dyadic-line",
        point=dyadic_line_point,
        dist=dist,
        exact_dist=lambda a, b: abs(Fraction(a) - Fraction(b)),
        approx_index=approx,
    )


# ---------------------------------------------------------------------------
# the standard representation of the reals

def real_name(x: Dyadic | Fraction, label: str = "") -> Name:
    """Name with phi(n) an integer encoding and |x - phi(n)/(n+1)| <= 1/(n+1);
    the generator picks round(x*(n+1)) with ties away from zero."""
    xf = x.as_fraction() if isinstance(x, Dyadic) else Fraction(x)

    def fn(a: str) -> str:
        n = parse_nat(a)
        if n is None:
            return ""
        return encode_int(round_half_away(xf * (n + 1)))

    return Name(fn, label=label or f"real({xf})")


def real_decode(phi: Name, n: int) -> tuple[Fraction, Fraction]:
    """Value z/(n+1) together with its error bound 1/(n+1)."""
    raw = phi(nat_str(n))
    try:
        z = decode_int(raw)
    except ValueError as e:
        raise MalformedName(f"query {n}: {e}") from e
    return Fraction(z, n + 1), Fraction(1, n + 1)


def real_validate(phi: Name, depth: int):
    """Finite-depth consistency of the real-name contract: decodability and
    pairwise |z_n/(n+1) - z_m/(m+1)| <= 1/(n+1) + 1/(m+1)."""
    vals = []
    for n in range(depth + 1):
        try:
            v, _ = real_decode(phi, n)
        except MalformedName:
            return ("rejected", n)
        vals.append(v)
    for n in range(depth + 1):
        for m in range(n + 1, depth + 1):
            if abs(vals[n] - vals[m]) > Fraction(1, n + 1) + Fraction(1, m + 1):
                return ("rejected", (n, m))
    return ("consistent", None)


# ---------------------------------------------------------------------------
# Cauchy representation

def cauchy_name(M: MetricSpaceSpec, approx: Callable[[int], int],
                label: str = "") -> Name:
    """phi(n) = index of a 1/(n+1)-approximation, per the caller-certified
    ``approx``."""
    def fn(a: str) -> str:
        n = parse_nat(a)
        if n is None:
            return ""
        return nat_str(approx(n))

    return Name(fn, label=label or f"cauchy[{M.label}]")


def cauchy_index(phi: Name, n: int) -> int:
    i = parse_nat(phi(nat_str(n)))
    if i is None:
        raise MalformedName(f"query {n}: not an index")
    return i


def cauchy_decode(phi: Name, n: int, M: MetricSpaceSpec):
    return M.point(cauchy_index(phi, n))


def cauchy_validate(phi: Name, depth: int, M: MetricSpaceSpec):
    """Rejects on a certified violation of
    d(r_phi(i), r_phi(j)) <= 1/(i+1) + 1/(j+1) up to the given depth."""
    idx = []
    for n in range(depth + 1):
        try:
            idx.append(cauchy_index(phi, n))
        except MalformedName:
            return ("rejected", n)
    for i in range(depth + 1):
        for j in range(i + 1, depth + 1):
            lhs = M.exact_dist(M.point(idx[i]), M.point(idx[j]))
            if lhs > Fraction(1, i + 1) + Fraction(1, j + 1):
                return ("rejected", (i, j))
    return ("consistent", None)


def cauchy_metric(phi: Name, psi: Name, n: int, M: MetricSpaceSpec) -> str:
    """Integer encoding z with |d(x,y) - z/(n+1)| <= 1/(n+1).

    Queries i = phi(4n+3), j = psi(4n+3) and evaluates the discrete metric
    at precision 2n+1.  The output contract is guaranteed when the discrete
    metric is computed exactly (all library spaces); with an approximate
    discrete metric the error can exceed the contract by its approximation
    error.
    """
    i = cauchy_index(phi, 4 * n + 3)
    j = cauchy_index(psi, 4 * n + 3)
    v = M.dist(i, j, 2 * n + 1)
    return encode_int(round_half_away(v * (n + 1)))


def cauchy_metric_program(M: MetricSpaceSpec) -> Callable[[Ctx], None]:
    """Metered variant running against a paired oracle <phi, psi>."""
    def prog(ctx: Ctx) -> None:
        n = parse_nat(ctx.input)
        if n is None:
            raise MalformedName(f"input {ctx.input!r} is not a precision index")
        q = nat_str(4 * n + 3)
        ans = ctx.ask(q)
        ai = proj_value(1, 2, ans)
        aj = proj_value(2, 2, ans)
        if ai is None or aj is None:
            raise MalformedName("paired oracle answer is not a pair")
        i, j = parse_nat(ai), parse_nat(aj)
        if i is None or j is None:
            raise MalformedName("oracle answer is not an index")
        ctx.tick(len(ans) + len(ctx.input) + 4)
        v = M.dist(i, j, 2 * n + 1)
        ctx.emit(encode_int(round_half_away(v * (n + 1))))
    return prog


def cauchy_metric_time(kappa: int = 6) -> RunningTime:
    """T(l,n) = t(l(n+3), n+1) for the discrete-metric cost t(a,b) =
    kappa*(a+b) + kappa."""
    def bound(l: LengthFn, n: int) -> int:
        return kappa * (l(n + 3) + n + 1) + kappa
    return RunningTime(bound, label="t(l(n+3),n+1)", monotone=True)


# ---------------------------------------------------------------------------
# relativized Cauchy representation

def relativized_cauchy_name(M: MetricSpaceSpec, approx: Callable[[int], int],
                            label: str = "") -> Name:
    """Layout: phi("0" + n) is an approximation index; phi("1" + <k,m,n>) is
    an integer z with |d(r_k, r_m) - z/(n+1)| <= 1/(n+1); other queries
    answer epsilon."""
    def fn(a: str) -> str:
        if a == "":
            return ""
        tag, rest = a[0], a[1:]
        if tag == "0":
            n = parse_nat(rest)
            if n is None:
                return ""
            return nat_str(approx(n))
        parts = [proj_value(t, 3, rest) for t in (1, 2, 3)]
        if any(p is None for p in parts):
            return ""
        idx = [parse_nat(p) for p in parts]
        if any(v is None for v in idx):
            return ""
        k, m, n = idx
        d = M.exact_dist(M.point(k), M.point(m))
        return encode_int(round_half_away(d * (n + 1)))

    return Name(fn, label=label or f"rel-cauchy[{M.label}]")


def relativized_metric_program() -> Callable[[Ctx], None]:
    """Metric from a paired relativized-Cauchy oracle.

    Queries approximation indices at precision 8n+7 and the metric branch at
    precision 4n+3, then rounds z'/4 to the output grid; the three error
    terms add to exactly 1/(n+1) at contract level.
    """
    def prog(ctx: Ctx) -> None:
        n = parse_nat(ctx.input)
        if n is None:
            raise MalformedName(f"input {ctx.input!r} is not a precision index")
        q = "0" + nat_str(8 * n + 7)
        ans = ctx.ask(q)
        ai, aj = proj_value(1, 2, ans), proj_value(2, 2, ans)
        if ai is None or aj is None:
            raise MalformedName("paired oracle answer is not a pair")
        i, j = parse_nat(ai), parse_nat(aj)
        if i is None or j is None:
            raise MalformedName("oracle answer is not an index")
        q2 = "1" + tuple_strs([nat_str(i), nat_str(j), nat_str(4 * n + 3)])
        ans2 = ctx.ask(q2)
        raw = proj_value(1, 2, ans2)
        if raw is None:
            raise MalformedName("paired oracle answer is not a pair")
        try:
            zp = decode_int(raw)
        except ValueError as e:
            raise MalformedName(str(e)) from e
        ctx.tick(len(ans2) + 4)
        ctx.emit(encode_int(round_half_away(Fraction(zp, 4))))
    return prog


def relativized_metric_time(kappa: int = 10) -> RunningTime:
    """Budget of shape max(l(n+2), n) up to the recorded constant."""
    def bound(l: LengthFn, n: int) -> int:
        return kappa * (max(l(n + 4), n) + 1) + kappa
    return RunningTime(bound, label="max{l(n+2),n}", monotone=True)


# ---------------------------------------------------------------------------
# products

def product_name(phi: Name, psi: Name) -> Name:
    return pair_names(phi, psi)


def product_split(chi: Name) -> tuple[Name, Name]:
    return split_pair(chi)


def product_name_list(names) -> Name:
    """Iterated binary pairing <phi_1, <phi_2, ...>>."""
    names = list(names)
    if len(names) == 1:
        return names[0]
    return pair_names(names[0], product_name_list(names[1:]))


def box_product_length(d: int, C: int) -> LengthFn:
    """Length of the d-fold product of real names of points with supremum
    norm below 2^C: n -> 2d(n + C + 4)."""
    return lambda n: 2 * d * (n + C + 4)


# ---------------------------------------------------------------------------
# co-r.e. rejection

def co_re_reject(phi: Name, M: MetricSpaceSpec, budget: int):
    """Dovetail over index pairs (i, j) up to ``budget`` trials, rejecting
    with a witness on a certified violation of
    d(r_phi(i), r_phi(j)) <= 1/(i+1) + 1/(j+1).  Never rejects valid names.
    """
    trials = 0
    s = 0
    while trials < budget:
        for i in range(s + 1):
            j = s - i
            if trials >= budget:
                return ("undecided", None)
            trials += 1
            try:
                a = cauchy_index(phi, i)
                b = cauchy_index(phi, j)
            except MalformedName:
                return ("rejected", (i, j))
            d = M.exact_dist(M.point(a), M.point(b))
            if d > Fraction(1, i + 1) + Fraction(1, j + 1):
                return ("rejected", (i, j))
        s += 1
    return ("undecided", None)


# ---------------------------------------------------------------------------
# representation descriptors

@dataclass
class Representation:
    label: str
    decode: Callable[[Name, int], object]
    validate: Callable[[Name, int], tuple]
    length: LengthFn | None = None


def real_representation() -> Representation:
    return Representation("reals", lambda phi, n: real_decode(phi, n)[0],
                          real_validate)


def cauchy_representation(M: MetricSpaceSpec, length: LengthFn | None = None) -> Representation:
    return Representation(f"cauchy[{M.label}]",
                          lambda phi, n: cauchy_decode(phi, n, M),
                          lambda phi, depth: cauchy_validate(phi, depth, M),
                          length)


# ---------------------------------------------------------------------------
# CSV loading for finite dyadic spaces

_DIST_FORMULAS = {
    "abs": lambda p, q: abs(p[0] - q[0]),
    "sup": lambda p, q: max(abs(a - b) for a, b in zip(p, q)),
}


def space_from_csv(path: str, dist_id: str = "sup") -> MetricSpaceSpec:
    """Finite space from a CSV of dyadic coordinates plus a distance formula
    identifier ("abs" for the line, "sup" for the supremum metric)."""
    if dist_id not in _DIST_FORMULAS:
        raise ValueError(f"unknown distance formula {dist_id!r}")
    formula = _DIST_FORMULAS[dist_id]
    points: list[tuple[Fraction, ...]] = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].startswith("#"):
                continue
            points.append(tuple(Fraction(cell) for cell in row))
    def pt(i: int):
        return points[i % len(points)]
    return MetricSpaceSpec(
        label=f"csv[{path}:{dist_id}]",
        point=pt,
        dist=lambda i, j, precision: formula(pt(i), pt(j)),
        exact_dist=formula,
    )
