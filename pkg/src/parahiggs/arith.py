"""Exact rationals and parabolic weight systems.

Rationals are :class:`fractions.Fraction`; this module adds the string
codec used on the wire, the weight-system container, SU(n) conjugacy
classes, and the two genericity certifications.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import floor
from typing import Iterable, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "parse_rational",
    "format_rational",
    "frac_part",
    "WeightSystem",
    "SUnClass",
    "SelectionWitness",
    "check_distinct",
    "check_generic_subset_sum",
    "find_integral_subset",
    "check_generic_selection",
    "class_to_weights",
]


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, an int or a Fraction. Floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c in text for c in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot read {type(value).__name__} as an exact rational")


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def frac_part(x: Fraction) -> Fraction:
    return x - floor(x)


@dataclass(frozen=True)
class WeightSystem:
    """Per-puncture weights with multiplicities for a rank-``rank`` bundle.

    ``weights[j]`` is a tuple of ``(alpha, multiplicity)`` pairs, strictly
    increasing in ``alpha``.
    """

    rank: int
    weights: tuple[tuple[tuple[Fraction, int], ...], ...]

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be positive")
        for j, block in enumerate(self.weights):
            if not block:
                raise ValueError(f"puncture {j}: no weights")
            prev = None
            total = 0
            for alpha, mult in block:
                if not isinstance(alpha, Fraction):
                    raise TypeError(f"puncture {j}: weight {alpha!r} is not a Fraction")
                if not 0 <= alpha < 1:
                    raise ValueError(f"puncture {j}: weight {alpha} outside [0,1)")
                if prev is not None and alpha <= prev:
                    raise ValueError(f"puncture {j}: weights not strictly increasing")
                if mult < 1:
                    raise ValueError(f"puncture {j}: multiplicity must be positive")
                prev = alpha
                total += mult
            if total != self.rank:
                raise ValueError(f"puncture {j}: multiplicities sum to {total}, expected {self.rank}")

    @property
    def punctures(self) -> int:
        return len(self.weights)

    @classmethod
    def from_lists(cls, rank: int, lists: Iterable[Iterable]) -> "WeightSystem":
        """Build from plain per-puncture lists, repeated entries meaning multiplicity."""
        blocks = []
        for values in lists:
            counts = Counter(parse_rational(v) for v in values)
            blocks.append(tuple(sorted(counts.items())))
        return cls(rank, tuple(blocks))

    def flat(self, j: int) -> list[Fraction]:
        """Weights at puncture ``j`` repeated by multiplicity, increasing."""
        return [a for a, m in self.weights[j] for _ in range(m)]

    def multiset(self) -> list[Fraction]:
        return [a for j in range(self.punctures) for a in self.flat(j)]


@dataclass(frozen=True)
class SUnClass:
    """Normalized log-eigenvalues of an SU(n) conjugacy class."""

    theta: tuple[Fraction, ...]

    def __post_init__(self):
        th = self.theta
        if not th:
            raise ValueError("empty class")
        if any(a < b for a, b in zip(th, th[1:])):
            raise ValueError("theta must be weakly decreasing")
        if sum(th) != 0:
            raise ValueError("theta must sum to zero")
        if th[-1] < th[0] - 1:
            raise ValueError("theta_n must be >= theta_1 - 1")

    @property
    def n(self) -> int:
        return len(self.theta)

    def lam(self, subset: Iterable[int]) -> Fraction:
        """Sum of theta over a 1-based index set."""
        return sum((self.theta[i - 1] for i in subset), Fraction(0))

    @classmethod
    def from_weights(cls, weights: Sequence[Fraction]) -> "SUnClass":
        """Normalize weights whose total is an integer into the unique class."""
        w = sorted((frac_part(Fraction(a)) for a in weights), reverse=True)
        total = sum(w, Fraction(0))
        if total.denominator != 1:
            raise ValueError("weights do not sum to an integer")
        # shifting the t largest down by one keeps the window condition
        t = int(total)
        theta = sorted((a - 1 for a in w[:t]), reverse=True)
        theta = tuple(sorted(w[t:] + theta, reverse=True))
        return cls(theta)


def check_distinct(w: WeightSystem) -> bool:
    return all(len(block) == w.rank for block in w.weights)


def find_integral_subset(values: Sequence[Fraction], proper: bool = True) -> tuple[int, ...] | None:
    """Indices of a nonempty sub-multiset summing to an integer, or None.

    With ``proper`` the full multiset is excluded. Meet in the middle on
    fractional parts.
    """
    values = [Fraction(v) for v in values]
    size = len(values)
    if not proper and size and sum(values, Fraction(0)).denominator == 1:
        return tuple(range(size))
    if size < 2:
        return None
    if all(v.denominator == 1 for v in values):
        return (0,)
    half = size // 2
    left, right = values[:half], values[half:]

    def sums(part):
        out = [(Fraction(0), 0)]
        for i, v in enumerate(part):
            out += [(s + v, mask | (1 << i)) for s, mask in out]
        return out

    full_left = (1 << len(left)) - 1
    full_right = (1 << len(right)) - 1
    table: dict[Fraction, list[int]] = {}
    for s, mask in sums(right):
        table.setdefault(frac_part(s), []).append(mask)
    for s, lmask in sorted(sums(left), key=lambda t: t[1]):
        for rmask in table.get(frac_part(-s), ()):
            if lmask == 0 and rmask == 0:
                continue
            if lmask == full_left and rmask == full_right:
                continue
            idx = [i for i in range(len(left)) if lmask >> i & 1]
            idx += [half + i for i in range(len(right)) if rmask >> i & 1]
            return tuple(idx)
    return None


def check_generic_subset_sum(w: WeightSystem, proper: bool = True) -> bool:
    """Sufficient genericity test: no nonempty proper sub-multiset is integral.

    ``proper=False`` also tests the full multiset.
    """
    return find_integral_subset(w.multiset(), proper) is None


@dataclass(frozen=True)
class SelectionWitness:
    r: int
    selection: tuple[tuple[Fraction, ...], ...]

    @property
    def total(self) -> Fraction:
        return sum((sum(s, Fraction(0)) for s in self.selection), Fraction(0))


def check_generic_selection(w: WeightSystem) -> tuple[bool, SelectionWitness | None]:
    """No choice of r weights at every puncture (1 <= r < n) sums to an integer.

    Returns the lexicographically first violating selection when one exists.
    """
    if not check_distinct(w):
        raise ValueError("selection genericity needs distinct weights at every puncture")
    n = w.rank
    d = w.punctures
    for r in range(1, n):
        choices = [list(combinations(w.flat(j), r)) for j in range(d)]
        sums = [[frac_part(sum(c, Fraction(0))) for c in cs] for cs in choices]
        dead: set[tuple[int, Fraction]] = set()

        def search(j: int, acc: Fraction) -> list[int] | None:
            if j == d:
                return [] if acc == 0 else None
            if (j, acc) in dead:
                return None
            for i, s in enumerate(sums[j]):
                rest = search(j + 1, frac_part(acc + s))
                if rest is not None:
                    return [i] + rest
            dead.add((j, acc))
            return None

        picks = search(0, Fraction(0))
        if picks is not None and d > 0:
            sel = tuple(choices[j][i] for j, i in enumerate(picks))
            return False, SelectionWitness(r, sel)
    return True, None


def class_to_weights(c: SUnClass) -> tuple[tuple[Fraction, int], ...]:
    counts = Counter(frac_part(t) for t in c.theta)
    return tuple(sorted(counts.items()))
