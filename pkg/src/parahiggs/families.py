"""Explicit minimal-energy families and their stability certificates.

Two constructions live here. The first is a two-step family on
``O(-a)^{n-1} + O(-a-1)`` over ``1 + na`` punctures, which has minimal
energy for every rank and so shows that many punctures cannot force more
than two graded pieces. The second is a rank-three example over three
punctures whose sub-object is destabilizing as a plain parabolic bundle,
which feeds the Gromov-Witten certificate in :mod:`parahiggs.schubert`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arith import WeightSystem, check_distinct, check_generic_selection
from .higgs import GradedHiggsModel, minimal_energy_check
from .parabolic import (
    ADAPTED,
    GENERIC,
    SplitParabolicBundle,
    cohomology,
    hom_split,
    par_deg,
    par_slope,
    twist_log,
)


@dataclass(frozen=True)
class CertificateEntry:
    label: str
    value: Fraction
    kind: str = "exact"  # or "upper bound"


@dataclass(frozen=True)
class StabilityCertificate:
    """Candidate sub-Higgs families with their parabolic degrees (or bounds)."""

    entries: tuple[CertificateEntry, ...]
    assumptions: tuple[str, ...] = ()
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def stable(self) -> bool:
        return all(e.value < 0 for e in self.entries)

    def failures(self) -> list[CertificateEntry]:
        return [e for e in self.entries if e.value >= 0]


def _big_weight(n: int, a: int) -> Fraction:
    return Fraction(1 + a, 1 + n * a)


def lemma_6_1_check(n: int, a: int, eps) -> bool:
    """The weight-ordering inequality behind the two-step family."""
    if n < 2 or a < 0:
        raise ValueError("need n >= 2 and a >= 0")
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    big = _big_weight(n, a)
    return Fraction(1, n - 1) * (1 - big - eps) < big - eps


def default_eps_vec(n: int) -> tuple[Fraction, ...]:
    """Symmetric progression of step 2/10^6 with zero sum; ``(0,)`` for n = 2."""
    return tuple(Fraction(2 * i - (n - 2), 10**6) for i in range(n - 1))


@dataclass(frozen=True)
class Example62Params:
    n: int
    a: int
    eps: Fraction
    eps_vec: tuple[Fraction, ...]

    def __post_init__(self):
        n, a, eps, ev = self.n, self.a, self.eps, self.eps_vec
        if n < 2 or a < 0:
            raise ValueError("need n >= 2 and a >= 0")
        if not isinstance(eps, Fraction) or eps <= 0:
            raise ValueError("eps must be a positive Fraction")
        if len(ev) != n - 1:
            raise ValueError(f"eps_vec needs {n - 1} entries, got {len(ev)}")
        if any(x >= y for x, y in zip(ev, ev[1:])):
            raise ValueError("eps_vec must be strictly increasing")
        if sum(ev, Fraction(0)) != 0:
            raise ValueError("eps_vec must sum to zero")
        if not lemma_6_1_check(n, a, eps):
            raise ValueError(f"weight inequality fails at n={n}, a={a}, eps={eps}")
        ws = self.small_weights() + [self.large_weight()]
        if any(x >= y for x, y in zip(ws, ws[1:])) or not 0 < ws[0] or not ws[-1] < 1:
            raise ValueError("weights at a puncture must increase strictly inside (0,1)")

    @property
    def d(self) -> int:
        return 1 + self.n * self.a

    def base_small(self) -> Fraction:
        n, a = self.n, self.a
        return Fraction(1, n - 1) * (1 - _big_weight(n, a) + self.eps)

    def small_weights(self) -> list[Fraction]:
        c = self.base_small()
        return [c + e for e in self.eps_vec]

    def large_weight(self) -> Fraction:
        return _big_weight(self.n, self.a) - self.eps

    @classmethod
    def suggest(cls, n: int, a: int, eps=None, eps_vec=None) -> "Example62Params":
        """Fill in eps and eps_vec when not given.

        The default eps is min(1/100, half the inequality slack at eps = 0),
        halved until the weights order correctly.
        """
        ev = tuple(Fraction(x) for x in eps_vec) if eps_vec is not None else default_eps_vec(n)
        if eps is not None:
            return cls(n, a, Fraction(eps), ev)
        big = _big_weight(n, a)
        slack = big - Fraction(1, n - 1) * (1 - big)
        e = min(Fraction(1, 100), slack / 2)
        for _ in range(64):
            try:
                return cls(n, a, e, ev)
            except ValueError:
                e /= 2
        raise ValueError(f"no admissible eps found for n={n}, a={a}")


def build_example_62(p: Example62Params) -> tuple[GradedHiggsModel, WeightSystem]:
    d = p.d
    S = SplitParabolicBundle.build(
        [(-p.a, [w] * d) for w in p.small_weights()], punctures=d, flag_mode=GENERIC)
    Q = SplitParabolicBundle.build([(-p.a - 1, [p.large_weight()] * d)], punctures=d)
    M = GradedHiggsModel((S, Q), (1,))
    return M, (S + Q).weight_system()


def max_subbundle_pardeg(E: SplitParabolicBundle, r: int) -> Fraction:
    """Upper bound for par-deg of any rank-r subbundle.

    The r largest summand degrees plus, at each puncture, the r largest
    weights. Sound for any flags.
    """
    if not 1 <= r <= E.rank:
        raise ValueError(f"rank {r} outside [1, {E.rank}]")
    top = sum(sorted(E.degrees, reverse=True)[:r])
    w = sum((sum(sorted(E.weights_at(j), reverse=True)[:r], Fraction(0))
             for j in range(E.punctures)), Fraction(0))
    return top + w


def max_line_pardeg_generic(E: SplitParabolicBundle) -> Fraction:
    """Exact maximum par-deg of a line subbundle of a rank-2 bundle with generic flags.

    A line of degree e <= min degree moves in a family of dimension
    b1 + b2 - 2e + 1, so it can be made to pass through that many of the
    general flag lines, each such puncture contributing the larger weight.
    """
    if E.rank != 2:
        raise ValueError("exact line maximizer is for rank 2")
    b2, b1 = sorted(E.degrees)
    # the top summand is the only line of its degree and misses general flags
    best = b1 + sum((min(E.weights_at(j)) for j in range(E.punctures)), Fraction(0)) \
        if b1 > b2 else None
    e = b2
    while True:
        value = _line_of_degree_bound(E, e)
        best = value if best is None else max(best, value)
        if b1 + b2 - 2 * e + 1 >= E.punctures:
            return best
        e -= 1


def theta_nonzero_possible(M: GradedHiggsModel) -> bool:
    """Whether each step E^p -> E^{p-1}(log D) admits a nonzero map at all."""
    for p in range(2, M.r + 1):
        hom = hom_split(M.piece(p), M.piece(p - 1)).underlying()
        if cohomology(twist_log(hom, M.punctures))[0] == 0:
            return False
    return True


def certify_example_62(M: GradedHiggsModel, p: Example62Params) -> tuple[StabilityCertificate, bool, dict]:
    """Stability certificate and minimal-energy verdict for the two-step family.

    The candidate sub-Higgs objects are Q, ker(theta) and V + Q for V a
    proper subbundle of S. When no nonzero theta exists (small a), S itself
    is invariant and enters the certificate.
    """
    S, Q = M.piece(2), M.piece(1)
    n, d, eps = p.n, p.d, p.eps
    entries = [CertificateEntry("slope Q", par_slope(Q))]
    if n >= 3:
        entries.append(CertificateEntry("par-deg ker theta", 2 * eps * d - d + 2, "upper bound"))
    for rk in range(0, n - 1):
        bound = par_deg(Q) if rk == 0 else max_subbundle_pardeg(S, rk) + par_deg(Q)
        entries.append(CertificateEntry(f"par-deg V+Q, rank V = {rk}", bound, "upper bound"))
    nonzero = theta_nonzero_possible(M)
    if not nonzero:
        entries.append(CertificateEntry("par-deg S (theta forced to vanish)", par_deg(S)))
    assumptions = ("sub-Higgs objects are Q, ker theta and V + Q",)
    if d <= 3:
        assumptions += (f"deg D = {d} does not exceed 3",)
    cert = StabilityCertificate(tuple(entries), assumptions, {"theta_nonzero_possible": nonzero})
    me, report = minimal_energy_check(M)
    info = {
        "d": d,
        "par_deg": par_deg(S + Q),
        "par_deg_S": par_deg(S),
        "par_deg_Q": par_deg(Q),
        "hom_SQ_splitting": list(hom_split(S, Q).underlying().degrees),
        "hom_SQ_log_twist": list(twist_log(hom_split(S, Q).underlying(), d).degrees),
        "distinct": check_distinct((S + Q).weight_system()),
        "minimal_energy_report": report,
    }
    return cert, me, info


def example_62_genericity(M: GradedHiggsModel):
    """Selection genericity of the family's weights (can be slow for large d)."""
    return check_generic_selection((M.piece(2) + M.piece(1)).weight_system())


def build_example_69(eps) -> GradedHiggsModel:
    eps = Fraction(eps)
    if not Fraction(1, 48) < eps < Fraction(1, 24):
        raise ValueError("eps must lie strictly between 1/48 and 1/24")
    half, eighth, third = Fraction(1, 2), Fraction(1, 8), Fraction(1, 3)
    S = SplitParabolicBundle.build([(-2, [1 - eps, 3 * Fraction(1, 4) + eps, third - eps])],
                                   flag_mode=ADAPTED)
    # the second summand carries the weight of the general flag line
    Q = SplitParabolicBundle.build(
        [(-1, [half, eighth - eps, third]), (-1, [half + eps, eighth, third + eps])],
        flag_mode=GENERIC)
    return GradedHiggsModel((S, Q), (1,))


def example_69_weight_lists(eps) -> list[list[Fraction]]:
    M = build_example_69(eps)
    E = M.piece(2) + M.piece(1)
    return [sorted(E.weights_at(j)) for j in range(E.punctures)]


def certify_example_69(M: GradedHiggsModel) -> tuple[StabilityCertificate, bool, dict]:
    """Stability for the rank-three example.

    Invariant graded sub-objects are Q, lines in Q, and S plus the line
    spanned by theta(S). For a general theta the image of S saturates to a
    line of degree deg S in Q(log D).
    """
    S, Q = M.piece(2), M.piece(1)
    d = M.punctures
    line_max = max_line_pardeg_generic(Q)
    image_line = S.degree - (d - 2)
    image_bound = _line_of_degree_bound(Q, image_line)
    entries = (
        CertificateEntry("par-deg Q", par_deg(Q)),
        CertificateEntry("par-deg line in Q", line_max, "upper bound"),
        CertificateEntry("par-deg S + theta(S)", par_deg(S) + image_bound, "upper bound"),
    )
    cert = StabilityCertificate(
        entries,
        ("theta general, so theta(S) saturates to a line of degree deg S - deg D + 2 in Q",),
        {"crude_line_bound": max_subbundle_pardeg(Q, 1)},
    )
    me, report = minimal_energy_check(M)
    info = {
        "slope_S": par_slope(S),
        "par_deg": par_deg(S + Q),
        "hom_SQ_splitting": list(hom_split(S, Q).underlying().degrees),
        "hom_SQ_log_twist": list(twist_log(hom_split(S, Q).underlying(), d).degrees),
        "max_line_in_Q": line_max,
        "minimal_energy_report": report,
    }
    return cert, me, info


def _line_of_degree_bound(E: SplitParabolicBundle, e: int) -> Fraction:
    """Max par-deg of a degree-e line in rank-2 E with general flags."""
    if E.rank != 2:
        raise ValueError("line bounds are for rank 2")
    b2, b1 = sorted(E.degrees)
    if e > b2:
        raise ValueError("only lines of degree at most the smaller summand are handled")
    d = E.punctures
    lows, gains = [], []
    for j in range(d):
        lo, hi = sorted(E.weights_at(j))
        lows.append(lo)
        gains.append(hi - lo)
    gains.sort(reverse=True)
    hits = min(d, b1 + b2 - 2 * e + 1)
    return e + sum(lows, Fraction(0)) + sum(gains[:hits], Fraction(0))


def example_62_closed_form(p: Example62Params) -> dict[str, object]:
    """The certificate values written out directly from the parameters."""
    d, eps, n = p.d, p.eps, p.n
    top = sorted(p.eps_vec, reverse=True)
    return {
        "slope Q": -d * eps,
        "ker": 2 * eps * d - d + 2,
        "V+Q": [rk * d * eps / (n - 1) + d * sum(top[:rk], Fraction(0)) - eps * d
                for rk in range(0, n - 1)],
    }


def example_62_bounds(params: Sequence[Example62Params]) -> list[tuple[Example62Params, bool, bool]]:
    out = []
    for p in params:
        M, _ = build_example_62(p)
        cert, me, _ = certify_example_62(M, p)
        out.append((p, cert.stable, me))
    return out
