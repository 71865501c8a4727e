"""Ball configurations on a line of sites and their combinatorics.

A configuration places c_i balls on site i with as many balls as sites in
total.  This module owns parsing, the height profile, the left to right
ball order, core extraction, reversal, classification into the families
with closed formulas, and the shape decompositions those formulas need.
"""

from __future__ import annotations

from dataclasses import dataclass


class BadSum(ValueError):
    """Ball count does not match the number of sites."""


class Negative(ValueError):
    """A site holds a negative number of balls."""


class Empty(ValueError):
    """No sites at all."""


class EmptySite(ValueError):
    """Ball removal from a site that has none."""


class NoWeaklyShift(ValueError):
    """No placement of the core satisfies the weak order condition."""


class NotOneHole(ValueError):
    """The core does not have exactly one empty site."""


@dataclass(frozen=True)
class Configuration:
    """Tuple c with c_i balls on site i and sum(c) == len(c)."""

    c: tuple[int, ...]

    def __post_init__(self) -> None:
        c = tuple(self.c)
        if not c:
            raise Empty("a configuration needs at least one site")
        if any(x < 0 for x in c):
            raise Negative(f"negative entry in {c}")
        if sum(c) != len(c):
            raise BadSum(f"{sum(c)} balls on {len(c)} sites")
        object.__setattr__(self, "c", c)

    @property
    def n(self) -> int:
        return len(self.c)

    def to_json(self) -> dict:
        return {"c": list(self.c)}

    @classmethod
    def from_json(cls, data: dict) -> Configuration:
        return cls(tuple(int(x) for x in data["c"]))

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.c) + ")"


@dataclass(frozen=True)
class LoadedConfiguration:
    """A configuration with one extra ball, the state during a drop.

    Not a Configuration: it carries n + 1 balls on n sites.
    """

    c: tuple[int, ...]

    def __post_init__(self) -> None:
        c = tuple(self.c)
        if any(x < 0 for x in c):
            raise Negative(f"negative entry in {c}")
        if sum(c) != len(c) + 1:
            raise BadSum(f"{sum(c)} balls on {len(c)} sites, expected one extra")
        object.__setattr__(self, "c", c)


@dataclass(frozen=True)
class PartialConfiguration:
    """A configuration with one ball removed, n - 1 balls on n sites."""

    c: tuple[int, ...]

    def __post_init__(self) -> None:
        c = tuple(self.c)
        if any(x < 0 for x in c):
            raise Negative(f"negative entry in {c}")
        if sum(c) != len(c) - 1:
            raise BadSum(f"{sum(c)} balls on {len(c)} sites, expected one missing")
        object.__setattr__(self, "c", c)


@dataclass(frozen=True)
class CoreDecomposition:
    """Configuration as left zeros, core with nonzero ends, right zeros."""

    left_zeros: int
    gamma: tuple[int, ...]
    right_zeros: int


@dataclass(frozen=True)
class OneHoleShape:
    """Core split around its single hole: gamma = (alpha, 0, beta)."""

    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    ell: int
    m: int
    p: int
    r: int


@dataclass(frozen=True)
class ConfigFlags:
    """Family membership for one configuration."""

    is_lukasiewicz: bool
    almost_defect: int | None
    is_connected: bool
    is_one_hole: bool
    is_weakly_lukasiewicz: bool

    def to_json(self) -> dict:
        return {
            "lukasiewicz": self.is_lukasiewicz,
            "almost_defect": self.almost_defect,
            "connected": self.is_connected,
            "one_hole": self.is_one_hole,
            "weakly_lukasiewicz": self.is_weakly_lukasiewicz,
        }


def parse_config(text: str) -> Configuration:
    """Parse a comma separated list of ball counts.

    >>> parse_config("0,3,0,2,0").c
    (0, 3, 0, 2, 0)
    """
    parts = [p.strip() for p in text.split(",")]
    if parts == [""]:
        raise Empty("empty configuration text")
    try:
        vals = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise ValueError(f"not a list of integers: {text!r}") from exc
    return Configuration(vals)


def heights(c: Configuration) -> tuple[int, ...]:
    """Partial sums of c_i - 1.  The last entry is always zero.

    >>> heights(Configuration((0, 3, 0, 2, 0)))
    (-1, 1, 0, 1, 0)
    """
    out = []
    h = 0
    for x in c.c:
        h += x - 1
        out.append(h)
    return tuple(out)


def left_to_right_order(c: Configuration) -> tuple[int, ...]:
    """Ball start sites listed from the left, with multiplicity.

    >>> left_to_right_order(Configuration((0, 3, 0, 2, 0)))
    (2, 2, 2, 4, 4)
    """
    out = []
    for i, x in enumerate(c.c, start=1):
        out.extend([i] * x)
    return tuple(out)


def core(c: Configuration) -> CoreDecomposition:
    """Strip outer zeros.

    >>> core(Configuration((0, 0, 4, 0, 1, 2, 0)))
    CoreDecomposition(left_zeros=2, gamma=(4, 0, 1, 2), right_zeros=1)
    """
    lo = 0
    while c.c[lo] == 0:
        lo += 1
    hi = len(c.c)
    while c.c[hi - 1] == 0:
        hi -= 1
    return CoreDecomposition(lo, c.c[lo:hi], len(c.c) - hi)


def reverse(c: Configuration) -> Configuration:
    """Mirror image of the configuration."""
    return Configuration(c.c[::-1])


def add_ball(c: Configuration, j: int) -> LoadedConfiguration:
    """One extra ball on site j of c."""
    if not 1 <= j <= c.n:
        raise ValueError(f"site {j} outside [1, {c.n}]")
    lst = list(c.c)
    lst[j - 1] += 1
    return LoadedConfiguration(tuple(lst))


def remove_ball(c: Configuration, j: int) -> PartialConfiguration:
    """c with one ball taken off site j.  Raises EmptySite if none is there."""
    if not 1 <= j <= c.n:
        raise ValueError(f"site {j} outside [1, {c.n}]")
    if c.c[j - 1] == 0:
        raise EmptySite(f"site {j} of {c.c} is empty")
    lst = list(c.c)
    lst[j - 1] -= 1
    return PartialConfiguration(tuple(lst))


def weak_order_ok(u: tuple[int, ...]) -> bool:
    """Whether u_j <= max(u_{j-1} + 1, j) holds for every j >= 2.

    u is a weakly increasing list of start sites; the condition only
    constrains consecutive entries, so it is stable under truncation.
    """
    for j in range(2, len(u) + 1):
        if u[j - 1] > max(u[j - 2] + 1, j):
            return False
    return True


def classify(c: Configuration) -> ConfigFlags:
    """Family flags for c.

    Height based tests decide the first two families, the core decides
    connectivity and one hole, and the start site order decides the weak
    family.

    >>> classify(Configuration((1, 0, 3, 0, 1))).almost_defect
    2
    """
    hs = heights(c)
    neg = [j for j, h in enumerate(hs, start=1) if h < 0]
    is_luka = not neg
    defect: int | None = None
    if len(neg) == 1:
        j = neg[0]
        assert hs[j - 1] == -1, "a lone dip below zero can only reach -1"
        assert c.c[j - 1] == 0, "the defect site cannot hold a ball"
        defect = j
    gamma = core(c).gamma
    holes = gamma.count(0)
    return ConfigFlags(
        is_lukasiewicz=is_luka,
        almost_defect=defect,
        is_connected=holes == 0,
        is_one_hole=holes == 1,
        is_weakly_lukasiewicz=weak_order_ok(left_to_right_order(c)),
    )


def shifted_config(gamma: tuple[int, ...], i: int, n: int) -> Configuration:
    """The configuration with i zeros, then gamma, then trailing zeros."""
    m = len(gamma)
    if i < 0 or i > n - m:
        raise ValueError(f"shift {i} outside [0, {n - m}]")
    return Configuration((0,) * i + gamma + (0,) * (n - m - i))


def _check_core(gamma: tuple[int, ...], n: int) -> None:
    if not gamma:
        raise Empty("empty core")
    if any(x < 0 for x in gamma):
        raise Negative(f"negative entry in {gamma}")
    if gamma[0] == 0 or gamma[-1] == 0:
        raise ValueError(f"core {gamma} must start and end with a ball")
    if sum(gamma) != n:
        raise BadSum(f"core holds {sum(gamma)} balls, configuration needs {n}")
    if len(gamma) > n:
        raise BadSum(f"core spans {len(gamma)} sites but only {n} exist")


def max_weakly_shift(gamma: tuple[int, ...], n: int) -> int:
    """Largest i such that the shift of gamma by i stays in the weak family.

    Shifting right can only break the condition, so membership holds for
    every shift up to the returned value.  Raises NoWeaklyShift when even
    the unshifted placement fails.
    """
    gamma = tuple(gamma)
    _check_core(gamma, n)
    good = [
        i
        for i in range(n - len(gamma) + 1)
        if weak_order_ok(left_to_right_order(shifted_config(gamma, i, n)))
    ]
    if not good:
        raise NoWeaklyShift(f"core {gamma} fails the weak condition at every shift")
    best = max(good)
    assert good == list(range(best + 1)), "good shifts must form a prefix"
    return best


def one_hole_decompose(c: Configuration) -> OneHoleShape:
    """Split the core of c around its unique hole.

    >>> one_hole_decompose(Configuration((0, 2, 1, 0, 3, 0)))
    OneHoleShape(alpha=(2, 1), beta=(3,), ell=2, m=1, p=3, r=3)
    """
    gamma = core(c).gamma
    if gamma.count(0) != 1:
        raise NotOneHole(f"core {gamma} has {gamma.count(0)} holes, need exactly 1")
    z = gamma.index(0)
    alpha, beta = gamma[:z], gamma[z + 1 :]
    return OneHoleShape(
        alpha=alpha,
        beta=beta,
        ell=len(alpha),
        m=len(beta),
        p=sum(alpha),
        r=sum(beta),
    )


def all_configurations(n: int):
    """Iterate every configuration with n sites, lexicographically."""

    def rec(prefix: list[int], remaining: int, sites: int):
        if sites == 1:
            yield tuple(prefix + [remaining])
            return
        for x in range(remaining + 1):
            yield from rec(prefix + [x], remaining - x, sites - 1)

    if n < 1:
        return
    for tup in rec([], n, n):
        yield Configuration(tup)
