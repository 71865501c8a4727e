"""Two independent exact evaluators for the configuration polynomials.

The oracle follows the drop dynamics definition: balls fall one by one,
each bounce redistributes mass by an exact rational weight, and the
success probability at fixed rational q is lifted to a polynomial through
interpolation at enough integer points.  The second evaluator runs the
final ball recursion with memoization and never touches probabilities.
Agreement of the two is the backbone of the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm

from .config import Configuration, all_configurations, left_to_right_order
from .qcalc import (
    ONE,
    QPoly,
    QRat,
    ZERO,
    NonIntegerCoefficients,
    interpolate,
    q_binomial,
    q_factorial,
    q_int,
)


class BadContent(ValueError):
    """A drop order whose multiset of sites does not match the configuration."""


@dataclass(frozen=True)
class BigStepWeight:
    """One branch of a bounce: land at landing_site with the given weight."""

    landing_site: int
    numerator: QPoly
    denominator: QPoly
    a: int
    b: int


def big_step_weights(occupied: set[int] | frozenset[int], j: int, n: int) -> list[BigStepWeight]:
    """Branches for a ball arriving at site j over the occupied set.

    An unoccupied j settles there with weight 1.  Otherwise the ball jumps
    to the nearest hole at distance a on the left (weight q^a [b]/[a+b])
    or distance b on the right (weight [a]/[a+b]); a branch landing
    outside [1, n] is failure mass and is omitted.

    >>> [w.landing_site for w in big_step_weights({2, 3}, 3, 4)]
    [1, 4]
    """
    if not 1 <= j <= n:
        raise ValueError(f"site {j} outside [1, {n}]")
    occ = frozenset(occupied)
    if j not in occ:
        return [BigStepWeight(j, ONE, ONE, 0, 0)]
    a = 1
    while j - a >= 1 and (j - a) in occ:
        a += 1
    b = 1
    while j + b <= n and (j + b) in occ:
        b += 1
    out = []
    if j - a >= 1:
        out.append(BigStepWeight(j - a, q_int(b).shift(a), q_int(a + b), a, b))
    if j + b <= n:
        out.append(BigStepWeight(j + b, q_int(a), q_int(a + b), a, b))
    return out


def _success_for_order(n: int, order: tuple[int, ...], q0: Fraction) -> Fraction:
    """Probability that dropping balls at the given sites fills [1, n]."""
    br = [Fraction(sum(q0**k for k in range(i))) for i in range(n + 1)]
    qp = [q0**k for k in range(n + 1)]
    full = (1 << n) - 1
    dist: dict[int, Fraction] = {0: Fraction(1)}
    for s in order:
        bit = 1 << (s - 1)
        ndist: dict[int, Fraction] = {}
        for mask, w in dist.items():
            if not mask & bit:
                key = mask | bit
                ndist[key] = ndist.get(key, 0) + w
                continue
            a = 1
            while s - a >= 1 and mask & (1 << (s - a - 1)):
                a += 1
            b = 1
            while s + b <= n and mask & (1 << (s + b - 1)):
                b += 1
            den = br[a + b]
            if s - a >= 1:
                wv = w * qp[a] * br[b] / den
                if wv:
                    key = mask | (1 << (s - a - 1))
                    ndist[key] = ndist.get(key, 0) + wv
            if s + b <= n:
                key = mask | (1 << (s + b - 1))
                ndist[key] = ndist.get(key, 0) + w * br[a] / den
        dist = ndist
    return Fraction(dist.get(full, 0))


def success_probability(c: Configuration, q0: QRat) -> QRat:
    """Chance that the drop dynamics ends with every site holding one ball.

    >>> success_probability(Configuration((2, 0)), Fraction(1))
    Fraction(1, 2)
    """
    q0 = Fraction(q0)
    if q0 < 0:
        raise ValueError("q must be nonnegative")
    return _success_for_order(c.n, left_to_right_order(c), q0)


def remixed_exact(c: Configuration) -> QPoly:
    """The configuration polynomial via the probability definition.

    Evaluates bracket factorial times success probability at the integer
    points 0..n(n-1)/2 and interpolates.  The result must have nonnegative
    integer coefficients; anything else is an internal defect.
    """
    n = c.n
    big_d = n * (n - 1) // 2
    fact = q_factorial(n)
    order = left_to_right_order(c)
    pts = []
    for q0 in range(big_d + 1):
        x = Fraction(q0)
        pts.append((x, fact.evaluate(x) * _success_for_order(n, order, x)))
    poly = interpolate(pts)
    assert all(co >= 0 for co in poly.coeffs), f"negative coefficient for {c.c}"
    return poly


def drop_order_check(c: Configuration, order: tuple[int, ...], q0: QRat) -> QRat:
    """Success probability under an arbitrary drop order of the same balls.

    Raises BadContent when order is not a rearrangement of the start sites.
    """
    order = tuple(order)
    if tuple(sorted(order)) != left_to_right_order(c):
        raise BadContent(f"order {order} does not have content {c.c}")
    q0 = Fraction(q0)
    if q0 < 0:
        raise ValueError("q must be nonnegative")
    return _success_for_order(c.n, order, q0)


def _wt(n: int, j: int, u: int) -> QPoly:
    """Weight of the last ball, from start site u to landing site j."""
    if j >= u:
        return q_binomial(n, j) * q_int(u)
    return (q_binomial(n, j - 1) * q_int(n + 1 - u)).shift(u - j)


@lru_cache(maxsize=None)
def _induction(ct: tuple[int, ...]) -> QPoly:
    n = len(ct)
    if sum(ct) != n:
        return ZERO
    if n == 0:
        return ONE
    u = max(i for i, x in enumerate(ct, start=1) if x > 0)
    d = list(ct)
    d[u - 1] -= 1
    total = ZERO
    pref = 0
    for j in range(1, n + 1):
        if d[j - 1] == 0 and pref == j - 1:
            left = _induction(tuple(d[: j - 1]))
            right = _induction(tuple(d[j:]))
            if left and right:
                total = total + _wt(n, j, u) * left * right
        pref += d[j - 1]
    return total


def remixed_induction(c: Configuration) -> QPoly:
    """The configuration polynomial via the last ball recursion.

    The ball at the largest occupied site is dropped last.  With it
    removed, each site j that is empty and has exactly j-1 of the other
    balls starting to its left splits the dynamics into independent left
    and right halves; the split is weighted by the landing distribution of
    that last ball.  Results are memoized on the sub-tuple.
    """
    return _induction(c.c)


def _interp_consecutive(vals: list[int]) -> QPoly:
    """Integer interpolation through the points (i, vals[i]), i = 0.. ."""
    big_d = len(vals) - 1
    deltas = [vals[0]]
    row = list(vals)
    for _ in range(big_d):
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
        deltas.append(row[0])
    den = factorial(big_d)
    acc = [0] * (big_d + 1)
    ff = [1]
    for j in range(big_d + 1):
        m = deltas[j] * (den // factorial(j))
        if m:
            for i, co in enumerate(ff):
                acc[i] += m * co
        if j < big_d:
            nxt = [0] * (len(ff) + 1)
            for i, co in enumerate(ff):
                nxt[i] -= j * co
                nxt[i + 1] += co
            ff = nxt
    out = []
    for co in acc:
        if co % den:
            raise NonIntegerCoefficients(f"coefficient {co}/{den} is not an integer")
        out.append(co // den)
    return QPoly(tuple(out))


def exact_sweep(n: int) -> dict[tuple[int, ...], QPoly]:
    """remixed_exact for every configuration on n sites, as one table.

    Configurations sharing a prefix of their left to right order share DP
    work, which makes the exhaustive sweep itself feasible.  Weights are
    kept as scaled integers: each drop multiplies total mass by L, the
    lcm of the bracket values, so the final probability is weight / L**n.
    """
    if n < 1:
        raise ValueError("need at least one site")
    big_d = n * (n - 1) // 2
    values = {cfg.c: [0] * (big_d + 1) for cfg in all_configurations(n)}
    full = (1 << n) - 1

    # Per mask and site: either the settle target or the bounce geometry.
    tab: list[tuple[int, int, int, int, int]] = [(0, 0, 0, 0, 0)] * ((full + 1) * n)
    for mask in range(full + 1):
        for s in range(1, n + 1):
            bit = 1 << (s - 1)
            if not mask & bit:
                tab[mask * n + s - 1] = (mask | bit, -1, -1, 0, 0)
            else:
                a = 1
                while s - a >= 1 and mask & (1 << (s - a - 1)):
                    a += 1
                b = 1
                while s + b <= n and mask & (1 << (s + b - 1)):
                    b += 1
                lt = mask | (1 << (s - a - 1)) if s - a >= 1 else -1
                rt = mask | (1 << (s + b - 1)) if s + b <= n else -1
                tab[mask * n + s - 1] = (-1, lt, rt, a, b)

    counts = [0] * (n + 1)
    for q0 in range(big_d + 1):
        br = [sum(q0**k for k in range(i)) for i in range(n + 1)]
        scale = lcm(*br[1:])
        scale_n = scale**n
        factv = 1
        for i in range(1, n + 1):
            factv *= br[i]
        qp = [q0**k for k in range(n + 1)]
        lw = {}
        rw = {}
        for a in range(1, n):
            for b in range(1, n - a + 1):
                unit = scale // br[a + b]
                lw[(a, b)] = qp[a] * br[b] * unit
                rw[(a, b)] = br[a] * unit

        def rec(min_site: int, k: int, dist: dict[int, int]) -> None:
            if k == n:
                w = dist.get(full)
                if w is not None:
                    num = factv * w
                    if num % scale_n:
                        raise NonIntegerCoefficients(f"non-integer value at q={q0}")
                    values[tuple(counts[1:])][q0] = num // scale_n
                return
            for s in range(min_site, n + 1):
                base = s - 1
                nd: dict[int, int] = {}
                for mask, w in dist.items():
                    free, lt, rt, a, b = tab[mask * n + base]
                    if free >= 0:
                        nd[free] = nd.get(free, 0) + w * scale
                        continue
                    if lt >= 0:
                        wv = w * lw[(a, b)]
                        if wv:
                            nd[lt] = nd.get(lt, 0) + wv
                    if rt >= 0:
                        nd[rt] = nd.get(rt, 0) + w * rw[(a, b)]
                if nd:
                    counts[s] += 1
                    rec(s, k + 1, nd)
                    counts[s] -= 1

        rec(1, 0, {0: 1})

    out = {}
    for ct, vals in values.items():
        poly = _interp_consecutive(vals)
        assert all(co >= 0 for co in poly.coeffs), f"negative coefficient for {ct}"
        out[ct] = poly
    return out
