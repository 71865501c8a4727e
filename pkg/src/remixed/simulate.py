"""Seeded Monte Carlo simulation of the single site drop dynamics.

The simulator is deliberately primitive: it starts from the raw pile
state and moves one ball one site at a time, so it shares no code with
the exact engine it checks.  All randomness comes from splitmix64, a
small counter based 64-bit generator with published constants, which
gives bit identical runs on every platform.  Each trial owns a derived
stream, so batches can be cut anywhere without changing outcomes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import Configuration
from .qcalc import QRat

_MASK = (1 << 64) - 1
_GOLD = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _mix(z: int) -> int:
    """splitmix64 output function on a 64-bit state."""
    z ^= z >> 30
    z = (z * _MIX1) & _MASK
    z ^= z >> 27
    z = (z * _MIX2) & _MASK
    z ^= z >> 31
    return z


class SplitMix64:
    """splitmix64: state advances by the golden gamma, output is mixed.

    >>> g = SplitMix64(0)
    >>> g.next_u64() == 0xE220A8397B1DCDAF
    True
    """

    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GOLD) & _MASK
        return _mix(self.state)


def subseed(seed: int, index: int) -> int:
    """Starting state of the derived stream for one trial.

    The master seed is advanced index + 1 golden steps and mixed once,
    which decorrelates neighbouring trial streams.
    """
    return _mix((seed + _GOLD * (index + 1)) & _MASK)


def left_threshold(q0: QRat) -> int:
    """Uniform 64-bit draws below this value step left.

    The left probability q/(1+q) is mapped to the integer range with
    floor rounding, entirely in exact arithmetic.
    """
    q0 = Fraction(q0)
    if q0 < 0:
        raise ValueError("q must be nonnegative")
    num, den = q0.numerator, q0.denominator
    return (num << 64) // (num + den)


def run_once(c: Configuration, q0: QRat, rng: SplitMix64) -> frozenset[int]:
    """Settle one pile state by single site moves; return the support.

    Repeatedly takes the leftmost site holding at least two balls and
    moves one of them left with probability q/(1+q), else right.  Sites
    outside [1, n] are ordinary sites, so the support may extend beyond
    the configuration.
    """
    thr = left_threshold(q0)
    counts: dict[int, int] = {}
    for i, x in enumerate(c.c, start=1):
        if x:
            counts[i] = x
    while True:
        over = [s for s, k in counts.items() if k >= 2]
        if not over:
            return frozenset(counts)
        s = min(over)
        dest = s - 1 if rng.next_u64() < thr else s + 1
        counts[s] -= 1
        if counts[s] == 0:
            del counts[s]
        counts[dest] = counts.get(dest, 0) + 1


@dataclass(frozen=True)
class SimResult:
    """Outcome of a batch of independent trials."""

    trials: int
    successes: int
    estimate: Fraction
    q: Fraction
    seed: int

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "successes": self.successes,
            "q": str(self.q),
            "seed": hex(self.seed),
        }


def _mix_np(z: np.ndarray) -> np.ndarray:
    z = z ^ (z >> np.uint64(30))
    z = z * np.uint64(_MIX1)
    z = z ^ (z >> np.uint64(27))
    z = z * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def simulate_batch(
    c: Configuration, q0: QRat, trials: int, seed: int, pick: str = "leftmost"
) -> np.ndarray:
    """Per-trial success flags, all trials advanced in lockstep.

    Each trial runs the same dynamics as run_once on its derived stream.
    A trial stops as soon as a ball leaves [1, n]: occupied sites never
    empty again, so the final support can no longer be [1, n].  The pick
    rule chooses which overloaded site moves; any rule gives the same
    distribution, and the alternative is kept for exactly that test.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    if pick not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown pick rule {pick!r}")
    n = c.n
    thr = np.uint64(left_threshold(q0))
    idx = np.arange(1, trials + 1, dtype=np.uint64)
    states = _mix_np(np.uint64(seed & _MASK) + np.uint64(_GOLD) * idx)
    counts = np.tile(np.array(c.c, dtype=np.int16), (trials, 1))
    orig = np.arange(trials)
    success = np.zeros(trials, dtype=bool)
    while counts.shape[0]:
        over = counts >= 2
        active = over.any(axis=1)
        if not active.all():
            success[orig[~active]] = True
            counts = counts[active]
            states = states[active]
            orig = orig[active]
            if not counts.shape[0]:
                break
            over = over[active]
        if pick == "leftmost":
            col = np.argmax(over, axis=1)
        else:
            col = n - 1 - np.argmax(over[:, ::-1], axis=1)
        states = states + np.uint64(_GOLD)
        draw = _mix_np(states)
        dest = np.where(draw < thr, col - 1, col + 1)
        stay = (dest >= 0) & (dest < n)
        rows = np.flatnonzero(stay)
        counts[rows, col[rows]] -= 1
        counts[rows, dest[rows]] += 1
        if not stay.all():
            counts = counts[stay]
            states = states[stay]
            orig = orig[stay]
    return success


def estimate_success(c: Configuration, q0: QRat, trials: int, seed: int) -> SimResult:
    """Monte Carlo estimate of the success probability.

    Reproducible: the result is a pure function of the four arguments.

    >>> estimate_success(Configuration((1, 1, 1)), Fraction(1), 100, 7).successes
    100
    """
    flags = simulate_batch(c, q0, trials, seed)
    s = int(flags.sum())
    return SimResult(trials, s, Fraction(s, trials), Fraction(q0), seed & _MASK)
