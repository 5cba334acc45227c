"""Quantum Schubert calculus on Gr(k, n) and the SU(n) existence test.

Classical products come from Littlewood-Richardson tableaux; quantum
products reduce the classical expansion (taken in at most k rows) by
removing n-rim hooks, which is done on beta numbers: a row of length
``nu_i`` has beta number ``nu_i + k - i``, reducing it mod n removes hooks,
and the sign is that of the sorting permutation times ``(-1)^(d(k-1))``.

Gromov-Witten numbers here are fixed-marked-point invariants: the
coefficient of ``q^delta`` times the point class in the iterated quantum
product. These are the numbers that index the multiplicative eigenvalue
inequalities.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from .arith import SUnClass, frac_part
from .higgs import GradedHiggsModel
from .parabolic import SplitParabolicBundle, par_deg, par_slope

Partition = tuple[int, ...]
QClass = dict[tuple[Partition, int], int]


def _trim(p: Iterable[int]) -> Partition:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _pad(p: Sequence[int], k: int) -> Partition:
    if len(p) > k:
        raise ValueError(f"{tuple(p)} has more than {k} rows")
    return tuple(p) + (0,) * (k - len(p))


def validate_partition(p: Sequence[int], k: int, n: int) -> Partition:
    p = tuple(int(x) for x in p)
    if any(x < 0 for x in p) or any(a < b for a, b in zip(p, p[1:])):
        raise ValueError(f"{p} is not a partition")
    p = _trim(p)
    if len(p) > k or (p and p[0] > n - k):
        raise ValueError(f"{p} does not fit the {k}x{n - k} box")
    return p


def partitions_in_box(k: int, n: int) -> list[Partition]:
    out = []

    def rec(prefix: list[int], cap: int):
        if len(prefix) == k:
            out.append(_trim(prefix))
            return
        for x in range(cap, -1, -1):
            rec(prefix + [x], x)

    rec([], n - k)
    return sorted(out, key=lambda p: (sum(p), p))


def subset_to_partition(I: Sequence[int], k: int, n: int) -> Partition:
    I = sorted(int(i) for i in I)
    if len(I) != k or len(set(I)) != k or I[0] < 1 or I[-1] > n:
        raise ValueError(f"{I} is not a {k}-subset of 1..{n}")
    return _trim((n - k) + a - i for a, i in enumerate(I, start=1))


def partition_to_subset(lam: Sequence[int], k: int, n: int) -> tuple[int, ...]:
    lam = _pad(validate_partition(lam, k, n), k)
    return tuple((n - k) + a - lam[a - 1] for a in range(1, k + 1))


def complement(lam: Sequence[int], k: int, n: int) -> Partition:
    lam = _pad(validate_partition(lam, k, n), k)
    return _trim(n - k - x for x in reversed(lam))


def point_class(k: int, n: int) -> Partition:
    return (n - k,) * k


# --- classical Littlewood-Richardson ------------------------------------------

def lr_coefficient(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    """c^nu_{lam, mu} by enumerating LR skew tableaux of shape nu/lam, content mu."""
    lam, mu, nu = _trim(lam), _trim(mu), _trim(nu)
    if sum(lam) + sum(mu) != sum(nu) or len(lam) > len(nu):
        return 0
    lam_p = lam + (0,) * (len(nu) - len(lam))
    if any(a > b for a, b in zip(lam_p, nu)):
        return 0
    cells = [(i, j) for i in range(len(nu)) for j in range(nu[i] - 1, lam_p[i] - 1, -1)]
    filling: dict[tuple[int, int], int] = {}
    counts = [0] * (len(mu) + 1)
    total = 0

    def rec(idx: int):
        nonlocal total
        if idx == len(cells):
            total += 1
            return
        i, j = cells[idx]
        hi = filling.get((i, j + 1), len(mu))
        lo = filling[(i - 1, j)] + 1 if (i - 1, j) in filling else 1
        for v in range(lo, hi + 1):
            if counts[v] >= mu[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            filling[(i, j)] = v
            counts[v] += 1
            rec(idx + 1)
            counts[v] -= 1
            del filling[(i, j)]

    rec(0)
    return total


def _partitions_containing(lam: Partition, size: int, rows: int, width: int) -> list[Partition]:
    lam_p = _pad(lam, rows)
    out = []

    def rec(i: int, prefix: list[int], left: int, cap: int):
        if i == rows:
            if left == 0:
                out.append(_trim(prefix))
            return
        for x in range(min(cap, lam_p[i] + left), lam_p[i] - 1, -1):
            rec(i + 1, prefix + [x], left - (x - lam_p[i]), x)

    rec(0, [], size - sum(lam), width)
    return out


@lru_cache(maxsize=None)
def classical_product(lam: Partition, mu: Partition, rows: int) -> tuple[tuple[Partition, int], ...]:
    """s_lam * s_mu truncated to at most ``rows`` rows (no width bound)."""
    if len(lam) > rows or len(mu) > rows:
        return ()
    size = sum(lam) + sum(mu)
    width = (lam[0] if lam else 0) + (mu[0] if mu else 0)
    out = []
    for nu in _partitions_containing(lam, size, rows, width):
        c = lr_coefficient(lam, mu, nu)
        if c:
            out.append((nu, c))
    return tuple(out)


def rim_hook_reduce(nu: Partition, k: int, n: int) -> tuple[int, Partition, int] | None:
    """Reduce a partition with at most k rows to the k x (n-k) box.

    Returns (sign, boxed partition, q-degree) or None when the class vanishes.
    """
    nu = _pad(nu, k)
    beta = [nu[i] + k - 1 - i for i in range(k)]
    res = [b % n for b in beta]
    if len(set(res)) < k:
        return None
    d = sum(b - r for b, r in zip(beta, res)) // n
    order = sorted(range(k), key=lambda i: -res[i])
    sign = _perm_sign(order) * (-1) ** (d * (k - 1))
    sres = [res[i] for i in order]
    lam = _trim(sres[i] - (k - 1 - i) for i in range(k))
    if lam and lam[0] > n - k:
        return None
    return sign, lam, d


def _perm_sign(perm: Sequence[int]) -> int:
    perm = list(perm)
    sign = 1
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def quantum_product(lam: Partition, mu: Partition, k: int, n: int) -> tuple[tuple[tuple[Partition, int], int], ...]:
    """sigma_lam * sigma_mu in QH*(Gr(k,n)) as ((partition, q-degree), coefficient) pairs."""
    acc: dict[tuple[Partition, int], int] = defaultdict(int)
    for nu, c in classical_product(lam, mu, k):
        red = rim_hook_reduce(nu, k, n)
        if red is None:
            continue
        sign, rho, d = red
        acc[(rho, d)] += sign * c
    return tuple(sorted((key, v) for key, v in acc.items() if v))


def multiply(x: QClass, lam: Partition, k: int, n: int) -> QClass:
    acc: QClass = defaultdict(int)
    for (mu, d), c in x.items():
        for (rho, e), v in quantum_product(mu, lam, k, n):
            acc[(rho, d + e)] += c * v
    return {key: v for key, v in acc.items() if v}


def iterated_product(classes: Sequence[Partition], k: int, n: int) -> QClass:
    x: QClass = {((), 0): 1}
    for lam in classes:
        x = multiply(x, lam, k, n)
    return x


# --- Gromov-Witten queries -----------------------------------------------------

@dataclass(frozen=True)
class GWQuery:
    k: int
    n: int
    classes: tuple[Partition, ...]
    degree: int

    def __post_init__(self):
        if not 1 <= self.k <= self.n - 1:
            raise ValueError("need 1 <= k <= n-1")
        if len(self.classes) < 2:
            raise ValueError("need at least two classes")
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        object.__setattr__(self, "classes",
                           tuple(validate_partition(c, self.k, self.n) for c in self.classes))

    @classmethod
    def from_subsets(cls, k: int, n: int, subsets: Sequence[Sequence[int]], degree: int) -> "GWQuery":
        return cls(k, n, tuple(subset_to_partition(I, k, n) for I in subsets), degree)

    def dimension_ok(self) -> bool:
        return sum(sum(c) for c in self.classes) == self.k * (self.n - self.k) + self.degree * self.n


def gw_invariant(q: GWQuery) -> tuple[int, bool]:
    """Coefficient of q^degree times the point class, plus the dimension flag."""
    x = iterated_product(q.classes, q.k, q.n)
    return x.get((point_class(q.k, q.n), q.degree), 0), q.dimension_ok()


# --- SU(n) existence -----------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    s: int
    subsets: tuple[tuple[int, ...], ...]
    degree: int
    invariant: int
    lam_sum: Fraction


@dataclass(frozen=True)
class ExistenceVerdict:
    violations: tuple[Violation, ...]
    mode: str = "degree"
    checked: int = 0

    @property
    def exists(self) -> bool:
        return not self.violations


def su_existence(classes: Sequence[SUnClass], mode: str = "degree",
                 require_one: bool = True) -> ExistenceVerdict:
    """Decide whether unitary matrices in the given classes can multiply to 1.

    ``mode="degree"`` compares against the curve degree; ``mode="strict"``
    compares against the number of punctures instead. With
    ``require_one=False`` every nonzero invariant indexes an inequality.
    """
    if mode not in ("degree", "strict"):
        raise ValueError(f"unknown mode {mode!r}")
    if not classes:
        raise ValueError("need at least one class")
    n = classes[0].n
    if any(c.n != n for c in classes):
        raise ValueError("classes must share n")
    d = len(classes)
    violations = []
    checked = 0
    for s in range(1, n):
        subsets = list(combinations(range(1, n + 1), s))
        parts = {I: subset_to_partition(I, s, n) for I in subsets}
        pt = point_class(s, n)
        max_deg = (d * s * (n - s)) // n
        for tup in product(subsets, repeat=d):
            x = iterated_product([parts[I] for I in tup], s, n) if d >= 1 else {}
            for delta in range(max_deg + 1):
                val = x.get((pt, delta), 0)
                if val == 0 or (require_one and val != 1):
                    continue
                checked += 1
                lam = sum((c.lam(I) for c, I in zip(classes, tup)), Fraction(0))
                rhs = delta if mode == "degree" else d
                if lam > rhs:
                    violations.append(Violation(s, tuple(tup), delta, val, lam))
    violations.sort(key=lambda v: (v.s, v.degree, v.subsets))
    return ExistenceVerdict(tuple(violations), mode, checked)


# --- modified bundles and the certificate ---------------------------------------

class InfeasibleWindowError(ValueError):
    """Weights at some puncture cannot be normalized into an SU(n) window."""


class NotDestabilizingError(ValueError):
    """The proposed sub-object does not destabilize."""


def _lowered_counts(E: SplitParabolicBundle) -> list[int]:
    out = []
    for j in range(E.punctures):
        total = sum(E.weights_at(j), Fraction(0))
        if total.denominator != 1:
            raise InfeasibleWindowError(
                f"puncture {j}: weights sum to {total}, not an integer")
        out.append(int(total))
    return out


def _lowered_summands(E: SplitParabolicBundle, j: int, t: int) -> set[int]:
    ws = E.weights_at(j)
    if len(set(ws)) < len(ws) and t not in (0, len(ws)):
        # a tie straddling the window edge would make the choice flag-dependent
        order = sorted(ws, reverse=True)
        if order[t - 1] == order[t]:
            raise InfeasibleWindowError(f"puncture {j}: repeated weight straddles the window")
    idx = sorted(range(len(ws)), key=lambda i: (-ws[i], i))
    return set(idx[:t])


@dataclass(frozen=True)
class ModifiedBundle:
    """Integer-shifted model: summand degrees and weights in a unit window."""

    degrees: tuple[int, ...]
    weights: tuple[tuple[Fraction, ...], ...]
    ledger: tuple[tuple[int, int], ...]  # (summand, puncture) pairs whose weight dropped by 1
    flag_mode: str = "adapted"

    @property
    def degree(self) -> int:
        return sum(self.degrees)

    @property
    def trivial(self) -> bool:
        if self.flag_mode == "adapted":
            return all(x == 0 for x in self.degrees)
        return self.degree == 0

    def par_deg(self, summands: Iterable[int] | None = None) -> Fraction:
        idx = range(len(self.degrees)) if summands is None else summands
        return sum((self.degrees[i] + sum(self.weights[i], Fraction(0)) for i in idx), Fraction(0))


def modified_bundle(E: SplitParabolicBundle) -> ModifiedBundle:
    """Shift weights into the window [theta_1 - 1, theta_1] at each puncture.

    At a puncture whose weights sum to t, the t largest drop by one; the
    summand carrying a dropped weight gains a degree, so parabolic degrees
    of coordinate subbundles are unchanged.
    """
    if E.punctures < 1:
        raise ValueError("need at least one puncture")
    counts = _lowered_counts(E)
    degrees = list(E.degrees)
    weights = [list(s.weights) for s in E.summands]
    ledger = []
    for j, t in enumerate(counts):
        for i in sorted(_lowered_summands(E, j, t)):
            degrees[i] += 1
            weights[i][j] -= 1
            ledger.append((i, j))
    return ModifiedBundle(tuple(degrees), tuple(tuple(w) for w in weights),
                          tuple(sorted(ledger)), E.flag_mode)


@dataclass(frozen=True)
class GWCertificate:
    query: GWQuery
    subsets: tuple[tuple[int, ...], ...]
    modified_degree: int
    lam_sum: Fraction
    invariant: int
    dimension_ok: bool
    claim: str
    classes: tuple[SUnClass, ...] = field(default=(), compare=False)


def gw_certificate(M: GradedHiggsModel) -> GWCertificate:
    """Quantum-cohomology witness for the destabilizing top piece of a two-step model."""
    if M.r != 2:
        raise ValueError("certificate needs a two-step model")
    H = M.piece(2)
    E = M.piece(2) + M.piece(1)
    if not par_slope(H) > 0 >= par_slope(E):
        raise NotDestabilizingError(
            f"slope of the top piece is {par_slope(H)}, total slope {par_slope(E)}")
    counts = _lowered_counts(E)
    deg_mod = H.degree
    subsets = []
    classes = []
    for j, t in enumerate(counts):
        ws = E.weights_at(j)
        if len(set(ws)) < len(ws):
            raise InfeasibleWindowError(f"puncture {j}: weights must be distinct")
        dropped = _lowered_summands(E, j, t)
        theta = [w - 1 if i in dropped else w for i, w in enumerate(ws)]
        order = sorted(range(len(ws)), key=lambda i: -theta[i])
        pos = {i: p for p, i in enumerate(order, start=1)}
        subsets.append(tuple(sorted(pos[i] for i in range(H.rank))))
        deg_mod += sum(1 for i in range(H.rank) if i in dropped)
        classes.append(SUnClass(tuple(theta[i] for i in order)))
    lam_sum = sum((c.lam(I) for c, I in zip(classes, subsets)), Fraction(0))
    degree = -deg_mod
    n, k = E.rank, H.rank
    if degree < 0:
        raise NotDestabilizingError(f"modified top piece has positive degree {deg_mod}")
    q = GWQuery.from_subsets(k, n, subsets, degree)
    value, ok = gw_invariant(q)
    claim = (f"<sigma_I>_{degree} on Gr({k},{n}) is nonzero; lambda sum {lam_sum} "
             f"exceeds degree {degree}")
    return GWCertificate(q, tuple(subsets), deg_mod, lam_sum, value, ok, claim, tuple(classes))


def sun_classes_of(E: SplitParabolicBundle) -> list[SUnClass]:
    return [SUnClass.from_weights(E.weights_at(j)) for j in range(E.punctures)]


def weights_in_window(theta: Sequence[Fraction]) -> bool:
    return max(theta) - min(theta) < 1


def reduced_weights(theta: Sequence[Fraction]) -> list[Fraction]:
    return sorted(frac_part(t) for t in theta)


def pardeg_preserved(E: SplitParabolicBundle) -> bool:
    return modified_bundle(E).par_deg() == par_deg(E)
