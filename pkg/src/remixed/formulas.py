"""Closed formulas for the configuration polynomials, family by family.

Each family admits an expression built from brackets, Gaussian binomials
and powers of q: a plain product for the height nonnegative family, a
two term difference when a single height dips below zero, alternating
sums for connected and weakly placed cores, and the one hole core
theorem with its corrective series.  The module also computes q-hit
numbers, matches them to connected configurations, evaluates a q-analog
of the two sided Eulerian triangle, and dispatches a configuration to the
cheapest applicable method.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .config import (
    ConfigFlags,
    Configuration,
    classify,
    core,
    max_weakly_shift,
    one_hole_decompose,
    NoWeaklyShift,
)
from .engine import remixed_exact, remixed_induction
from .qcalc import (
    ONE,
    QPoly,
    TSeries,
    ZERO,
    q_binomial,
    q_int,
    q_pochhammer,
    series_mul,
)


class WrongFamily(ValueError):
    """The configuration or core is outside the formula's family."""


class ShiftOutOfRange(ValueError):
    """Shift index outside [0, n - m]."""


class ShiftBeyondWeaklyBound(ValueError):
    """Shift exceeds the largest weakly placed position of the core."""


class BadPartition(ValueError):
    """The partition does not fit the staircase for its size."""


class NoMatch(ValueError):
    """No connected configuration matches the requested hit number."""


def mset(tup: tuple[int, ...]) -> list[int]:
    """Site indices of tup with multiplicity: i repeated tup[i-1] times."""
    return [i for i, x in enumerate(tup, start=1) for _ in range(x)]


@dataclass(frozen=True)
class _Term:
    """One summand sign * q**qexp * qbin(bin_n, bin_k) * prod of brackets."""

    sign: int
    qexp: int
    brackets: tuple[int, ...]
    binom: tuple[int, int] | None = None

    def poly(self) -> QPoly:
        out = ONE
        for a in self.brackets:
            out = out * q_int(a)
        if self.binom is not None:
            out = out * q_binomial(*self.binom)
        out = out.shift(self.qexp)
        return out if self.sign > 0 else -out

    def render(self) -> str:
        pieces = []
        if self.qexp == 1:
            pieces.append("q")
        elif self.qexp > 1:
            pieces.append(f"q^{self.qexp}")
        if self.binom is not None:
            bn, bk = self.binom
            bk = min(bk, bn - bk)
            if bk == 1:
                pieces.append(f"[{bn}]")
            elif bk > 1:
                pieces.append(f"qbin({bn},{bk})")
        counts: dict[int, int] = {}
        for a in sorted(self.brackets):
            if a != 1:
                counts[a] = counts.get(a, 0) + 1
        for a, e in counts.items():
            pieces.append(f"[{a}]" if e == 1 else f"[{a}]^{e}")
        return " ".join(pieces) if pieces else "1"


def _assemble(terms: list[_Term]) -> tuple[QPoly, str]:
    total = ZERO
    out = []
    for t in terms:
        total = total + t.poly()
        if not out:
            out.append(t.render() if t.sign > 0 else "-" + t.render())
        else:
            out.append(("+ " if t.sign > 0 else "- ") + t.render())
    return total, " ".join(out)


def _luka_terms(c: Configuration) -> list[_Term]:
    return [_Term(1, 0, tuple(mset(c.c)))]


def a_lukasiewicz(c: Configuration) -> QPoly:
    """Product of brackets over the ball start sites.

    Valid exactly when every height of c is nonnegative: each ball can
    settle without ever crossing the left end.

    >>> a_lukasiewicz(Configuration((3, 0, 0, 2, 0))).coeffs
    (1, 2, 3, 4, 3, 2, 1)
    """
    if not classify(c).is_lukasiewicz:
        raise WrongFamily(f"{c.c} has a negative height")
    poly, _ = _assemble(_luka_terms(c))
    return poly


def _almost_terms(c: Configuration, j: int) -> list[_Term]:
    ms = mset(c.c)
    low = tuple(a for a in ms if a < j)
    high = tuple(a - j for a in ms if a > j)
    return [
        _Term(1, 0, tuple(ms)),
        _Term(-1, 0, low + high, (c.n + 1, j)),
    ]


def a_almost_lukasiewicz(c: Configuration) -> QPoly:
    """Bracket product minus one binomial correction at the defect.

    >>> p = a_almost_lukasiewicz(Configuration((1, 0, 3, 0, 1)))
    >>> p.coeffs
    (0, 2, 6, 12, 16, 18, 16, 12, 6, 2)
    """
    j = classify(c).almost_defect
    if j is None:
        raise WrongFamily(f"{c.c} does not have exactly one negative height")
    poly, _ = _assemble(_almost_terms(c, j))
    assert all(co >= 0 for co in poly.coeffs), f"negative coefficient for {c.c}"
    return poly


def _check_connected_core(gamma: tuple[int, ...], n: int) -> None:
    if not gamma:
        raise WrongFamily("empty core")
    if any(x < 1 for x in gamma):
        raise WrongFamily(f"core {gamma} has a hole or a negative entry")
    if sum(gamma) != n:
        raise WrongFamily(f"core {gamma} holds {sum(gamma)} balls, not {n}")


def _shifted_sum_terms(gamma: tuple[int, ...], i: int, n: int) -> list[_Term]:
    ms = mset(gamma)
    return [
        _Term(
            1 if (i + j) % 2 == 0 else -1,
            comb(i - j, 2),
            tuple(j + a for a in ms),
            (n + 1, i - j),
        )
        for j in range(i, -1, -1)
    ]


def a_connected(gamma: tuple[int, ...], i: int, n: int) -> QPoly:
    """Alternating binomial sum for a hole free core shifted by i.

    >>> a_connected((1, 2, 2), 1, 5).coeffs
    (0, 0, 1, 5, 12, 18, 18, 12, 5, 1)
    """
    gamma = tuple(gamma)
    _check_connected_core(gamma, n)
    if i < 0 or i > n - len(gamma):
        raise ShiftOutOfRange(f"shift {i} outside [0, {n - len(gamma)}]")
    poly, _ = _assemble(_shifted_sum_terms(gamma, i, n))
    assert all(co >= 0 for co in poly.coeffs), f"negative coefficient for {gamma} at {i}"
    return poly


def core_series(gamma: tuple[int, ...], n: int, trunc: int) -> TSeries:
    """Pochhammer factor times sum of t**j prod [j+a] over the core balls.

    No family restriction on gamma; this is the raw left-hand side that
    the connected identity, the weak congruence and the corrective series
    are all measured against.
    """
    ms = mset(tuple(gamma))
    rhs_coeffs = []
    for j in range(trunc):
        p = ONE
        for a in ms:
            p = p * q_int(j + a)
        rhs_coeffs.append(p)
    rhs = TSeries.of(rhs_coeffs, trunc)
    return series_mul(q_pochhammer(n + 1, trunc), rhs)


def connected_series(gamma: tuple[int, ...], n: int, trunc: int) -> TSeries:
    """Generating series in t of the shifted polynomials of a core.

    Returns the pochhammer factor times sum of t**j prod [j+a], truncated;
    its t coefficients in [0, n-m] are the shifted polynomials and the
    higher ones vanish.
    """
    gamma = tuple(gamma)
    _check_connected_core(gamma, n)
    return core_series(gamma, n, trunc)


def a_weakly_lukasiewicz(gamma: tuple[int, ...], i: int, n: int) -> QPoly:
    """The connected sum formula, valid up to the largest weakly shift.

    The core may contain holes; what matters is that the shifted
    configuration still satisfies the weak order condition.

    >>> a_weakly_lukasiewicz((3, 0, 2), 1, 5).coeffs
    (0, 2, 6, 12, 17, 17, 12, 6, 2)
    """
    gamma = tuple(gamma)
    if i < 0:
        raise ShiftOutOfRange(f"negative shift {i}")
    try:
        k = max_weakly_shift(gamma, n)
    except NoWeaklyShift as exc:
        raise ShiftBeyondWeaklyBound(f"core {gamma} is nowhere weakly placed") from exc
    if i > k:
        raise ShiftBeyondWeaklyBound(f"shift {i} exceeds the bound {k} for {gamma}")
    poly, _ = _assemble(_shifted_sum_terms(gamma, i, n))
    assert all(co >= 0 for co in poly.coeffs), f"negative coefficient for {gamma} at {i}"
    return poly


def _one_hole_prefactor(
    alpha: tuple[int, ...], beta: tuple[int, ...]
) -> tuple[int, tuple[int, ...]]:
    """Shared prefactor of the one hole expressions.

    Returns the accumulated integer q exponent (sum of a - ell, never
    positive) and the bracket sizes from both blocks.
    """
    ell = len(alpha)
    exp = 0
    brackets = []
    for a in mset(alpha):
        exp += a - ell
        brackets.append(ell + 1 - a)
    brackets.extend(mset(beta))
    return exp, tuple(brackets)


def corrective_series(alpha: tuple[int, ...], beta: tuple[int, ...], n: int) -> TSeries:
    """The finite t series correcting the connected identity at one hole.

    alpha and beta are the blocks around the hole; both must be free of
    holes themselves.  The result is a polynomial in t of degree at most
    n with coefficients in Z[q]; negative powers of q from the prefactor
    always cancel against the main exponent.
    """
    alpha, beta = tuple(alpha), tuple(beta)
    if not alpha or not beta:
        raise WrongFamily("both blocks around the hole must be nonempty")
    if any(x < 1 for x in alpha) or any(x < 1 for x in beta):
        raise WrongFamily(f"blocks {alpha}, {beta} must be hole free")
    ell, p, r = len(alpha), sum(alpha), sum(beta)
    if p + r != n:
        raise WrongFamily(f"blocks hold {p + r} balls, configuration needs {n}")
    exp, brackets = _one_hole_prefactor(alpha, beta)
    pref = ONE
    for a in brackets:
        pref = pref * q_int(a)
    coeffs = [ZERO] * (n + 1)
    for i in range(r + 1):
        e = comb(p, 2) + p * i + comb(i + 1, 2) + exp
        assert e >= 0, f"negative q exponent {e} for blocks {alpha}, {beta}"
        term = (pref * q_binomial(n + 1, r - i)).shift(e)
        if i % 2:
            term = -term
        coeffs[p - ell + i] = term
    return TSeries(n + 1, tuple(coeffs))


def _one_hole_terms(c: Configuration) -> list[_Term]:
    shape = one_hole_decompose(c)
    dec = core(c)
    i, n = dec.left_zeros, c.n
    terms = _shifted_sum_terms(dec.gamma, i, n)
    if i >= shape.p - shape.ell:
        exp, brackets = _one_hole_prefactor(shape.alpha, shape.beta)
        # same exponent as the matching corrective series coefficient
        k = i + shape.ell - shape.p
        e = comb(shape.p, 2) + shape.p * k + comb(k + 1, 2) + exp
        assert e >= 0, f"negative q exponent {e} for {c.c}"
        sign = 1 if (i + shape.p + shape.ell + 1) % 2 == 0 else -1
        terms.append(_Term(sign, e, brackets, (n + 1, i + shape.ell + 1)))
    return terms


def a_one_hole(c: Configuration) -> QPoly:
    """Connected style sum plus one gated correction term.

    >>> a_one_hole(Configuration((0, 2, 1, 0, 3, 0))).coeffs
    (0, 0, 2, 8, 19, 36, 56, 72, 78, 72, 56, 36, 19, 8, 2)
    """
    if not classify(c).is_one_hole:
        raise WrongFamily(f"core of {c.c} does not have exactly one hole")
    poly, _ = _assemble(_one_hole_terms(c))
    assert all(co >= 0 for co in poly.coeffs), f"negative coefficient for {c.c}"
    return poly


@dataclass(frozen=True)
class HitIndex:
    """A partition inside the staircase and a hit count to extract."""

    lam: tuple[int, ...]
    i: int
    n: int

    def __post_init__(self) -> None:
        lam = tuple(self.lam)
        n = self.n
        if n < 1:
            raise BadPartition("size must be positive")
        if any(x < 0 for x in lam):
            raise BadPartition(f"negative part in {lam}")
        if any(lam[k] < lam[k + 1] for k in range(len(lam) - 1)):
            raise BadPartition(f"{lam} is not weakly decreasing")
        if len(lam) > n and any(x > 0 for x in lam[n:]):
            raise BadPartition(f"{lam} has more than {n} parts")
        lam = (lam + (0,) * n)[:n]
        for k in range(n):
            if lam[k] > n - k:
                raise BadPartition(f"part {lam[k]} at row {k + 1} leaves the staircase")
        if not 0 <= self.i <= n:
            raise BadPartition(f"hit count {self.i} outside [0, {n}]")
        object.__setattr__(self, "lam", lam)

    def factor_offsets(self) -> list[int]:
        """The multiset of differences k - lam_{n+1-k} for k = 1..n."""
        return [k - self.lam[self.n - k] for k in range(1, self.n + 1)]


def q_hit(h: HitIndex, trunc_guard: int | None = None) -> QPoly:
    """Coefficient extraction from the hit number generating identity.

    The numerator series is a polynomial in t of degree at most n, so the
    truncation n + 1 is exact.  A larger trunc_guard additionally checks
    that the higher coefficients really vanish.
    """
    n = h.n
    trunc = n + 1 if trunc_guard is None else max(n + 1, trunc_guard)
    offsets = h.factor_offsets()
    rhs_coeffs = []
    for j in range(trunc):
        p = ONE
        for e in offsets:
            p = p * q_int(j + e)
        rhs_coeffs.append(p)
    num = series_mul(q_pochhammer(n + 1, trunc), TSeries.of(rhs_coeffs, trunc))
    for k in range(n + 1, trunc):
        assert num.tcoeff(k).is_zero(), f"nonzero t^{k} coefficient for {h.lam}"
    return num.tcoeff(h.i)


def hit_to_connected(h: HitIndex) -> tuple[tuple[int, ...], int, int]:
    """A connected core and shift whose polynomial is the hit number.

    The factor multiset of the hit identity is matched to the ball
    multiset of a core; the candidate is accepted only after checking
    polynomial equality, so a successful return is self certifying.
    Raises NoMatch when the hit number is zero or the match fails.
    """
    n = h.n
    offsets = sorted(h.factor_offsets())
    z = 1 if offsets[0] == 0 else 0
    shifted = [e + z for e in offsets]
    m = shifted[-1]
    if set(shifted) != set(range(1, m + 1)):
        raise NoMatch(f"factor offsets {offsets} are not an interval")
    gamma = tuple(shifted.count(a) for a in range(1, m + 1))
    shift = h.i - z
    if shift < 0 or shift > n - m:
        raise NoMatch(f"hit count {h.i} of {h.lam} has no matching placement")
    if a_connected(gamma, shift, n) != q_hit(h):
        raise NoMatch(f"candidate {gamma} at shift {shift} fails verification")
    return gamma, shift, n


@dataclass(frozen=True)
class CSParams:
    """Indices of the two sided q Eulerian triangle entry A(r,s|x,y)."""

    r: int
    s: int
    x: int
    y: int

    def __post_init__(self) -> None:
        if self.r < 0 or self.s < 0:
            raise ValueError("r and s must be nonnegative")
        if self.x < 1 or self.y < 1:
            raise ValueError("x and y must be positive")


def cs_configuration(p: CSParams) -> Configuration:
    """The configuration whose polynomial defines A(r,s|x,y)."""
    return Configuration(
        (0,) * p.r + (1,) * (p.y - 1) + (p.r + p.s + 1,) + (1,) * (p.x - 1) + (0,) * p.s
    )


def carlitz_scoville_q(p: CSParams) -> QPoly:
    """Closed form for the q analog of the two sided Eulerian numbers.

    >>> carlitz_scoville_q(CSParams(1, 1, 1, 1)).coeffs
    (0, 2, 2)
    """
    total = ZERO
    rs = p.r + p.s
    for j in range(p.r + 1):
        term = q_binomial(j + p.x + p.y - 1, j) * q_binomial(rs + p.x + p.y, p.r - j)
        term = term * (q_int(j + p.y) ** rs)
        term = term.shift(comb(p.r - j, 2))
        if (p.r + j) % 2:
            term = -term
        total = total + term
    assert all(co >= 0 for co in total.coeffs), f"negative coefficient for {p}"
    return total


@dataclass(frozen=True)
class EvalReport:
    """Outcome of evaluating one configuration by the best method."""

    config: Configuration
    method: str
    poly: QPoly
    flags: ConfigFlags
    crosscheck: str
    pretty: str | None = None

    def to_json(self) -> dict:
        return {
            "config": list(self.config.c),
            "method": self.method,
            "poly": self.poly.to_json(),
            "flags": self.flags.to_json(),
            "crosscheck": self.crosscheck,
        }


def dispatch(c: Configuration, crosscheck: bool = False) -> EvalReport:
    """Pick the most specific applicable formula, fall back to recursion.

    Preference follows expected term count: the plain product, then the
    two term difference, then the alternating sums, then the memoized
    recursion.  With crosscheck enabled the result is compared against
    the drop dynamics oracle.
    """
    flags = classify(c)
    pretty: str | None
    if flags.is_lukasiewicz:
        method = "lukasiewicz"
        poly, pretty = _assemble(_luka_terms(c))
    elif flags.almost_defect is not None:
        method = "almost_lukasiewicz"
        poly, pretty = _assemble(_almost_terms(c, flags.almost_defect))
    elif flags.is_connected:
        method = "connected"
        poly, pretty = _assemble(_shifted_sum_terms(core(c).gamma, core(c).left_zeros, c.n))
    elif flags.is_one_hole:
        method = "one_hole"
        poly, pretty = _assemble(_one_hole_terms(c))
    elif flags.is_weakly_lukasiewicz:
        method = "weakly_lukasiewicz"
        poly, pretty = _assemble(_shifted_sum_terms(core(c).gamma, core(c).left_zeros, c.n))
    else:
        method = "induction"
        poly, pretty = remixed_induction(c), None
    check = "skip"
    if crosscheck:
        check = "pass" if remixed_exact(c) == poly else "fail"
    return EvalReport(c, method, poly, flags, check, pretty)
