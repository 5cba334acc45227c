"""Graded parabolic Higgs models on the projective line.

The Higgs field is carried as rank data only: the generic rank of each
step E^p -> E^{p-1}(log D), plus, where the caller knows them, the
splitting types of kernel and cokernel of the induced map on the adjoint
bundle ``V^k -> V^{k-1}(log D)``. Everything downstream is integer and
rational bookkeeping on top of :mod:`parahiggs.parabolic`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .parabolic import (
    HomRegimeError,
    SplitBundle,
    SplitParabolicBundle,
    cohomology,
    hom_split,
    par_deg_hom,
)


class MissingDataError(ValueError):
    """A check needs kernel/cokernel splitting data that the model lacks."""


_RELATIONS = {
    "<=": lambda a, b: a <= b,
    "<": lambda a, b: a < b,
    ">=": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
    "==": lambda a, b: a == b,
}


@dataclass(frozen=True)
class BoundReport:
    label: str
    lhs: Fraction
    relation: str
    rhs: Fraction
    chain: tuple[tuple[str, object], ...] = ()

    def __post_init__(self):
        if self.relation not in _RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")

    @property
    def holds(self) -> bool:
        return _RELATIONS[self.relation](self.lhs, self.rhs)


@dataclass(frozen=True)
class AdjointPiece:
    k: int
    rank: int
    par_deg: Fraction
    split: SplitParabolicBundle | None = None


@dataclass(frozen=True)
class GradedHiggsModel:
    """Pieces are ordered top first: ``pieces[0]`` is E^r, ``pieces[-1]`` is E^1.

    ``higgs_rank[i]`` is the generic rank of the step out of ``pieces[i]``.
    ``ker_split``/``coker_split`` are keyed by adjoint level k and describe
    the kernel and cokernel of ``V^k -> V^{k-1}(log D)``.
    """

    pieces: tuple[SplitParabolicBundle, ...]
    higgs_rank: tuple[int, ...] = ()
    ker_split: Mapping[int, SplitBundle] = field(default_factory=dict)
    coker_split: Mapping[int, SplitBundle] = field(default_factory=dict)

    def __post_init__(self):
        if not self.pieces:
            raise ValueError("a graded model needs at least one piece")
        d = self.pieces[0].punctures
        if any(P.punctures != d for P in self.pieces):
            raise ValueError("all graded pieces must share the puncture count")
        r = self.r
        if len(self.higgs_rank) != r - 1:
            raise ValueError(f"expected {r - 1} Higgs ranks, got {len(self.higgs_rank)}")
        for p in range(2, r + 1):
            h = self.step_rank(p)
            cap = min(self.piece(p).rank, self.piece(p - 1).rank)
            if not 1 <= h <= cap:
                raise ValueError(f"Higgs rank {h} out of range [1, {cap}] at step {p}")
        if set(self.ker_split) != set(self.coker_split):
            raise ValueError("kernel and cokernel data must be given for the same levels")
        for k in self.ker_split:
            self._validate_level(k)
        for k in self.ker_split:
            m = 1 - k
            if m in self.ker_split and hyper_h1_dim(self.ker_split[k], self.coker_split[k]) != \
                    hyper_h1_dim(self.ker_split[m], self.coker_split[m]):
                raise ValueError(f"levels {k} and {m} violate Hodge symmetry")

    @property
    def r(self) -> int:
        return len(self.pieces)

    @property
    def punctures(self) -> int:
        return self.pieces[0].punctures

    def piece(self, p: int) -> SplitParabolicBundle:
        """E^p for 1 <= p <= r."""
        if not 1 <= p <= self.r:
            raise IndexError(p)
        return self.pieces[self.r - p]

    def step_rank(self, p: int) -> int:
        """Generic rank of E^p -> E^{p-1}(log D), for 2 <= p <= r."""
        return self.higgs_rank[self.r - p]

    def adjoint_rank(self, k: int) -> int:
        return sum(self.piece(p).rank * self.piece(p + k).rank for p in _pairs(self.r, k))

    def _validate_level(self, k: int) -> None:
        r = self.r
        if not 1 - r < k < r or k == 1:
            raise ValueError(f"kernel/cokernel data only make sense for levels 1-r < k < r, k != 1; got {k}")
        ker, coker = self.ker_split[k], self.coker_split[k]
        rv, rw = self.adjoint_rank(k), self.adjoint_rank(k - 1)
        image = rv - ker.rank
        if image != rw - coker.rank:
            raise ValueError(f"level {k}: ranks of kernel and cokernel break rank-nullity")
        lo, hi = image_rank_bounds(self, k) if k > 1 else (0, min(rv, rw))
        if not lo <= image <= hi:
            raise ValueError(f"level {k}: image rank {image} outside [{lo}, {hi}]")
        if k > 1:
            splits = [_split_or_none(self, k), _split_or_none(self, k - 1)]
            if all(s is not None for s in splits):
                V, W = splits
                lhs = ker.degree + W.degree + W.rank * (self.punctures - 2)
                rhs = V.degree + coker.degree
                if lhs != rhs:
                    raise ValueError(f"level {k}: kernel/cokernel degrees break the exact sequence")


def _pairs(r: int, k: int) -> range:
    return range(max(1, 1 - k), min(r, r - k) + 1)


def _split_or_none(M: GradedHiggsModel, k: int) -> SplitParabolicBundle | None:
    parts = []
    for p in _pairs(M.r, k):
        try:
            parts.append(hom_split(M.piece(p), M.piece(p + k)))
        except HomRegimeError:
            return None
    if not parts:
        return None
    out = parts[0]
    for q in parts[1:]:
        out = out + q
    return out


def adjoint_pieces(M: GradedHiggsModel) -> list[AdjointPiece]:
    out = []
    for k in range(1 - M.r, M.r):
        pd = sum((par_deg_hom(M.piece(p), M.piece(p + k)) for p in _pairs(M.r, k)), Fraction(0))
        out.append(AdjointPiece(k, M.adjoint_rank(k), pd, _split_or_none(M, k)))
    return out


def image_rank_bounds(M: GradedHiggsModel, k: int) -> tuple[int, int]:
    """Bounds on the generic rank of ``V^k -> V^{k-1}(log D)`` for 1 < k < r.

    The map is block bidiagonal; post-composition blocks sit on a block
    diagonal, and so do pre-composition blocks one step down, so either
    family's total rank is a lower bound.
    """
    r = M.r
    if not 1 < k < r:
        raise ValueError("interior levels only")
    post = sum(M.piece(j).rank * M.step_rank(j + k) for j in range(1, r - k + 1))
    pre = sum(M.piece(j + k).rank * M.step_rank(j + 1) for j in range(1, r - k + 1))
    return max(post, pre), min(M.adjoint_rank(k), M.adjoint_rank(k - 1))


def hyper_h1_dim(ker: SplitBundle, coker: SplitBundle) -> int:
    return cohomology(ker)[1] + cohomology(coker)[0]


def mirror_data(ker: SplitBundle, coker: SplitBundle) -> tuple[SplitBundle, SplitBundle]:
    """Serre-dual kernel/cokernel pair for the mirror level 1 - k."""
    return (SplitBundle(tuple(-b - 2 for b in coker.degrees)),
            SplitBundle(tuple(-a - 2 for a in ker.degrees)))


def minimal_energy_check(M: GradedHiggsModel) -> tuple[bool, dict]:
    """Hodge length one for the adjoint hypercohomology.

    Checks the extreme piece through H^1 of Hom(E^r, E^1) and every interior
    level through kernel/cokernel cohomology; negative levels follow by
    symmetry.
    """
    r = M.r
    report: dict = {"r": r}
    if r == 1:
        report["reason"] = "single graded piece with zero Higgs field"
        return True, report
    bottom = hom_split(M.piece(r), M.piece(1))
    h1 = cohomology(bottom.underlying())[1]
    report["hom_top_bottom_splitting"] = list(bottom.underlying().degrees)
    report["h1_hom_top_bottom"] = h1
    ok = h1 == 0
    interior = {}
    for k in range(2, r):
        if k not in M.ker_split:
            raise MissingDataError(f"level {k}: kernel/cokernel splitting types required")
        interior[k] = hyper_h1_dim(M.ker_split[k], M.coker_split[k])
        ok = ok and interior[k] == 0
    report["hyper_h1_interior"] = interior
    return ok, report


def coker_degree_bounds(M: GradedHiggsModel) -> list[BoundReport]:
    out = []
    for k in range(2, M.r):
        if k not in M.ker_split:
            raise MissingDataError(f"level {k}: kernel/cokernel splitting types required")
        out.append(coker_bound(M.coker_split[k], label=f"coker level {k}"))
        out.append(ker_bound(M.ker_split[k], label=f"ker level {k}"))
    return out


def coker_bound(coker: SplitBundle, label: str = "coker") -> BoundReport:
    return BoundReport(label, Fraction(coker.degree), "<=", Fraction(-coker.rank))


def ker_bound(ker: SplitBundle, label: str = "ker") -> BoundReport:
    return BoundReport(label, Fraction(ker.degree), ">=", Fraction(-ker.rank))


def rank_defect_check(rank_v_prev: int, rank_coker: int, r: int, k: int) -> BoundReport:
    return BoundReport(f"rank defect level {k}", Fraction(rank_v_prev - rank_coker), ">=",
                       Fraction(r - k),
                       (("rank V^{k-1}", rank_v_prev), ("rank coker", rank_coker)))


def rank_defect_bound(M: GradedHiggsModel) -> list[BoundReport]:
    if M.r < 3:
        raise ValueError("rank defect bound needs at least three graded pieces")
    out = []
    for k in range(2, M.r):
        lo, _ = image_rank_bounds(M, k)
        rank_prev = M.adjoint_rank(k - 1)
        if k in M.coker_split:
            rank_coker = M.coker_split[k].rank
        else:
            rank_coker = rank_prev - lo
        out.append(rank_defect_check(rank_prev, rank_coker, M.r, k))
    return out


def _rank_map(ranks, start: int) -> dict[int, int]:
    if isinstance(ranks, Mapping):
        return {int(k): int(v) for k, v in ranks.items()}
    return {start + i: int(v) for i, v in enumerate(ranks)}


def main_bound_value(rank_v, rank_coker, r: int) -> tuple[Fraction, int, int]:
    """Upper bound on deg D from adjoint ranks; returns (bound, numerator, denominator).

    ``rank_v`` lists rank V^1 .. V^{r-1}; ``rank_coker`` lists the cokernel
    ranks for k = 2 .. r-1 (sequences or dicts keyed by level).
    """
    if r < 3:
        raise ValueError("main bound needs r >= 3")
    R = _rank_map(rank_v, 1)
    C = _rank_map(rank_coker, 2)
    ks = range(2, r)
    num = (2 * R[r - 1] - R[1] + 2 * sum(R[k - 1] for k in ks)
           + sum((2 * k - 3) * R[k] for k in ks))
    den = sum(R[k - 1] - C[k] for k in ks) + sum((k - 2) * R[k] for k in ks)
    if den <= 0:
        raise ValueError(f"nonpositive denominator {den}")
    return Fraction(num, den), num, den


def main_bound(rank_v, rank_coker, r: int, d: int | None = None) -> BoundReport:
    value, num, den = main_bound_value(rank_v, rank_coker, r)
    lhs = Fraction(d) if d is not None else value
    return BoundReport("deg D <= main bound", lhs, "<=", value,
                       (("numerator", num), ("denominator", den), ("bound", value)))


def slack_cokernel_ranks(rank_v, r: int) -> dict[int, int]:
    """Cokernel ranks at the extreme allowed by the rank-defect bound."""
    R = _rank_map(rank_v, 1)
    return {k: R[k - 1] - (r - k) for k in range(2, r)}


def theorem_bound(n: int, r: int) -> BoundReport:
    """The rank-only chain bounding deg D for r >= 3 graded pieces of total rank n."""
    if r < 3 or n < r:
        raise ValueError("need 3 <= r <= n")
    coarse = n * n - 2 * r - 1
    quad = r * r - 5 * r + 7
    tri = Fraction((r - 1) * (r - 2), 2)
    first = 2 * quad * coarse / tri
    links = (
        ("quadratic < (r-1)(r-2)", quad < (r - 1) * (r - 2)),
        ("bound < 4(n^2-2r-1)", first < 4 * coarse),
        ("4(n^2-2r-1) <= 4n^2-28", 4 * coarse <= 4 * n * n - 28),
    )
    chain = (
        ("r^2-5r+7", quad),
        ("(r-1)(r-2)/2", tri),
        ("coarse rank bound", coarse),
        ("bound", first),
        ("4(n^2-2r-1)", 4 * coarse),
        ("4n^2-28", 4 * n * n - 28),
    ) + tuple(links)
    return BoundReport("deg D < 4n^2-28", first, "<", Fraction(4 * n * n - 28), chain)


def theorem_links_hold(report: BoundReport) -> bool:
    return all(v for name, v in report.chain if isinstance(v, bool))


def pardeg_V1_lower_bound(rank_v, d: int, r: int) -> tuple[Fraction, int]:
    """Lower bound for par-deg V^1 and the forced degree of V^{r-1}."""
    if r < 3:
        raise ValueError("needs r >= 3")
    R = _rank_map(rank_v, 1)
    ks = range(2, r)
    bound = (d - 1) * sum((k - 2) * R[k] for k in ks) - sum((k - 1) * R[k] for k in ks)
    return Fraction(bound), R[r - 1] * (1 - d)


def positive_genus_obstruction(g: int, hom_par_deg, hom_deg: int, hom_rank: int = 1) -> bool:
    """True when a multi-step minimal-energy model is ruled out (unitary forced).

    Inputs describe Hom(E^r, E^1): its parabolic degree, underlying degree
    and rank.
    """
    if g < 0:
        raise ValueError("genus must be non-negative")
    hom_par_deg = Fraction(hom_par_deg)
    if not hom_deg <= hom_par_deg <= 0:
        raise ValueError("need deg <= par-deg <= 0 for Hom(E^r, E^1)")
    if g == 0:
        return False
    # Riemann-Roch needs 1 - g >= -deg/rank; with deg <= 0 that leaves only
    # g = 1 and deg = par-deg = 0, where distinct weights force E^r = E^1.
    return True


def centralizer_dim(multiplicities: Sequence[int]) -> int:
    return sum(m * m for m in multiplicities)


def katz_rigidity(n: int, centralizer_dims: Sequence[int]) -> bool:
    if any(c < 1 for c in centralizer_dims):
        raise ValueError("centralizer dimensions are positive")
    k = len(centralizer_dims)
    return (2 - k) * n * n + sum(centralizer_dims) == 2
