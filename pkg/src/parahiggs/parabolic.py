"""Split parabolic bundles on the projective line.

A bundle is a Grothendieck splitting type plus one weight per summand per
puncture. Flags are either adapted to the splitting or in general position
inside blocks; the mode only matters where the splitting type of a derived
bundle depends on it (:func:`hom_split`).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import WeightSystem, frac_part

ADAPTED = "adapted"
GENERIC = "generic"
FLAG_MODES = (ADAPTED, GENERIC)


class HomRegimeError(ValueError):
    """The parabolic Hom splitting type is not determined by the given data."""


@dataclass(frozen=True)
class LineSummand:
    degree: int
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        for a in self.weights:
            if not isinstance(a, Fraction):
                raise TypeError(f"weight {a!r} is not a Fraction")
            if not 0 <= a < 1:
                raise ValueError(f"weight {a} outside [0,1)")


@dataclass(frozen=True)
class SplitParabolicBundle:
    punctures: int
    summands: tuple[LineSummand, ...]
    flag_mode: str = ADAPTED

    def __post_init__(self):
        if not self.summands:
            raise ValueError("a bundle needs at least one summand")
        if self.flag_mode not in FLAG_MODES:
            raise ValueError(f"unknown flag mode {self.flag_mode!r}")
        for i, s in enumerate(self.summands):
            if len(s.weights) != self.punctures:
                raise ValueError(
                    f"summand {i} carries {len(s.weights)} weights, expected {self.punctures}"
                )

    @classmethod
    def build(cls, summands: Iterable[tuple[int, Sequence]], punctures: int | None = None,
              flag_mode: str = ADAPTED) -> "SplitParabolicBundle":
        items = tuple(LineSummand(int(deg), tuple(Fraction(a) for a in ws)) for deg, ws in summands)
        if punctures is None:
            punctures = len(items[0].weights) if items else 0
        return cls(punctures, items, flag_mode)

    @property
    def rank(self) -> int:
        return len(self.summands)

    @property
    def degree(self) -> int:
        return sum(s.degree for s in self.summands)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(s.degree for s in self.summands)

    def weights_at(self, j: int) -> list[Fraction]:
        return [s.weights[j] for s in self.summands]

    def weight_system(self) -> WeightSystem:
        blocks = []
        for j in range(self.punctures):
            blocks.append(tuple(sorted(Counter(self.weights_at(j)).items())))
        return WeightSystem(self.rank, tuple(blocks))

    def underlying(self) -> "SplitBundle":
        return SplitBundle(self.degrees)

    def __add__(self, other: "SplitParabolicBundle") -> "SplitParabolicBundle":
        if self.punctures != other.punctures:
            raise ValueError("puncture counts differ")
        mode = ADAPTED if self.flag_mode == other.flag_mode == ADAPTED else GENERIC
        return SplitParabolicBundle(self.punctures, self.summands + other.summands, mode)


@dataclass(frozen=True)
class SplitBundle:
    """Splitting type only: the multiset of line-bundle degrees.

    The empty splitting is the zero sheaf (a vanishing kernel or cokernel).
    """

    degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(sorted(int(a) for a in self.degrees)))

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def degree(self) -> int:
        return sum(self.degrees)


def par_deg(E: SplitParabolicBundle) -> Fraction:
    return E.degree + sum((a for s in E.summands for a in s.weights), Fraction(0))


def par_slope(E: SplitParabolicBundle) -> Fraction:
    return par_deg(E) / E.rank


def par_deg_hom(E: SplitParabolicBundle, F: SplitParabolicBundle) -> Fraction:
    if E.punctures != F.punctures:
        raise ValueError("puncture counts differ")
    return E.rank * par_deg(F) - F.rank * par_deg(E)


def _uniform_at(E: SplitParabolicBundle, F: SplitParabolicBundle, j: int) -> bool:
    # every E weight sits on one side of all F weights, so no flag position matters
    fw = F.weights_at(j)
    lo, hi = min(fw), max(fw)
    return all(a > hi or a <= lo for a in E.weights_at(j))


def hom_split(E: SplitParabolicBundle, F: SplitParabolicBundle) -> SplitParabolicBundle:
    """Parabolic Hom bundle as a sum over summand pairs.

    Exact when, at every puncture, either both flags are adapted or the
    weights of E compare uniformly against the weights of F.
    """
    if E.punctures != F.punctures:
        raise ValueError("puncture counts differ")
    both_adapted = E.flag_mode == ADAPTED and F.flag_mode == ADAPTED
    if not both_adapted:
        bad = [j for j in range(E.punctures) if not _uniform_at(E, F, j)]
        if bad:
            raise HomRegimeError(
                f"generic flags with interleaved weights at punctures {bad}: "
                "splitting type of the Hom bundle is not determined"
            )
    out = []
    for e in E.summands:
        for f in F.summands:
            drop = sum(1 for a, b in zip(e.weights, f.weights) if a > b)
            out.append(LineSummand(
                f.degree - e.degree - drop,
                tuple(frac_part(b - a) for a, b in zip(e.weights, f.weights)),
            ))
    return SplitParabolicBundle(E.punctures, tuple(out), ADAPTED if both_adapted else GENERIC)


def twist_log(B, d: int):
    """Tensor with the log canonical bundle of (P^1, D), which has degree d - 2."""
    shift = d - 2
    if isinstance(B, SplitBundle):
        return SplitBundle(tuple(a + shift for a in B.degrees))
    return SplitParabolicBundle(
        B.punctures,
        tuple(LineSummand(s.degree + shift, s.weights) for s in B.summands),
        B.flag_mode,
    )


def cohomology(B: SplitBundle) -> tuple[int, int]:
    h0 = sum(max(a + 1, 0) for a in B.degrees)
    h1 = sum(max(-a - 1, 0) for a in B.degrees)
    return h0, h1


def pardeg_bounds_check(E: SplitParabolicBundle) -> bool:
    p = par_deg(E)
    if E.punctures == 0:
        return p == E.degree
    return E.degree <= p < E.degree + E.rank * E.punctures
