"""Property checks shared by the hypothesis suites and the acceptance runner.

Each ``check_*`` takes concrete inputs and raises AssertionError on failure.
The ``random_*`` builders draw inputs from a seeded ``random.Random``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product

from parahiggs.arith import (
    WeightSystem,
    check_generic_selection,
    check_generic_subset_sum,
    frac_part,
)
from parahiggs.higgs import (
    GradedHiggsModel,
    _split_or_none,
    adjoint_pieces,
    hyper_h1_dim,
    image_rank_bounds,
    mirror_data,
)
from parahiggs.parabolic import (
    SplitBundle,
    SplitParabolicBundle,
    cohomology,
    hom_split,
    par_deg,
    par_deg_hom,
    pardeg_bounds_check,
)
from parahiggs.schubert import InfeasibleWindowError, modified_bundle


# --- builders ------------------------------------------------------------------

def random_weight(rng: random.Random) -> Fraction:
    q = rng.randint(1, 12)
    return Fraction(rng.randrange(q), q)


def random_bundle(rng: random.Random, d: int | None = None, rank: int | None = None,
                  mode: str = "adapted") -> SplitParabolicBundle:
    d = rng.randint(0, 3) if d is None else d
    rank = rng.randint(1, 3) if rank is None else rank
    return SplitParabolicBundle.build(
        [(rng.randint(-4, 4), [random_weight(rng) for _ in range(d)]) for _ in range(rank)],
        punctures=d, flag_mode=mode)


def random_integral_bundle(rng: random.Random) -> SplitParabolicBundle:
    """Adapted bundle whose weights sum to an integer at every puncture."""
    d = rng.randint(1, 3)
    rank = rng.randint(1, 4)
    cols = []
    for _ in range(d):
        ws = [random_weight(rng) for _ in range(rank - 1)]
        ws.append(frac_part(-sum(ws, Fraction(0))))
        cols.append(ws)
    return SplitParabolicBundle.build(
        [(rng.randint(-4, 4), [cols[j][i] for j in range(d)]) for i in range(rank)], punctures=d)


def random_split(rng: random.Random) -> SplitBundle:
    return SplitBundle(tuple(rng.randint(-6, 6) for _ in range(rng.randint(0, 4))))


def random_distinct_weights(rng: random.Random) -> WeightSystem:
    n = rng.randint(1, 3)
    d = rng.randint(1, 3)
    lists = []
    for _ in range(d):
        q = rng.choice([5, 6, 7, 8, 9, 10, 11, 12, 13])
        lists.append(rng.sample([Fraction(i, q) for i in range(q)], n))
    return WeightSystem.from_lists(n, lists)


def random_model(rng: random.Random) -> GradedHiggsModel:
    r = rng.randint(1, 4)
    d = rng.randint(0, 3)
    pieces = tuple(random_bundle(rng, d=d, rank=rng.randint(1, 3)) for _ in range(r))
    hr = tuple(rng.randint(1, min(pieces[i].rank, pieces[i + 1].rank)) for i in range(r - 1))
    return GradedHiggsModel(pieces, hr)


def random_full_data(rng: random.Random):
    """Three-step adapted model with consistent level-2 data and its mirror at level -1."""
    d = rng.randint(0, 3)
    pieces = tuple(random_bundle(rng, d=d, rank=rng.randint(1, 2)) for _ in range(3))
    hr = tuple(rng.randint(1, min(pieces[i].rank, pieces[i + 1].rank)) for i in range(2))
    M0 = GradedHiggsModel(pieces, hr)
    lo, hi = image_rank_bounds(M0, 2)
    image = rng.randint(lo, hi)
    V, W = _split_or_none(M0, 2), _split_or_none(M0, 1)
    ker = SplitBundle(tuple(rng.randint(-4, 2) for _ in range(V.rank - image)))
    crank = W.rank - image
    cdeg = ker.degree + W.degree + W.rank * (d - 2) - V.degree
    if crank == 0:
        if cdeg != 0:
            return None
        coker = SplitBundle(())
    else:
        parts = [rng.randint(-4, 2) for _ in range(crank - 1)]
        coker = SplitBundle(tuple(parts) + (cdeg - sum(parts),))
    mk, mc = mirror_data(ker, coker)
    return pieces, hr, {2: ker, -1: mk}, {2: coker, -1: mc}


# --- checks --------------------------------------------------------------------

def check_additivity(F: SplitParabolicBundle, Q: SplitParabolicBundle) -> None:
    assert par_deg(F + Q) == par_deg(F) + par_deg(Q)


def check_hom_consistency(E: SplitParabolicBundle, F: SplitParabolicBundle) -> None:
    H = hom_split(E, F)
    assert par_deg(H) == par_deg_hom(E, F)
    assert H.rank == E.rank * F.rank
    assert all(0 <= a < 1 for s in H.summands for a in s.weights)


def check_pardeg_bounds(E: SplitParabolicBundle) -> None:
    assert pardeg_bounds_check(E)
    direct = sum(s.degree for s in E.summands) + sum(a for s in E.summands for a in s.weights)
    assert par_deg(E) == direct


def check_riemann_roch(B: SplitBundle) -> None:
    h0, h1 = cohomology(B)
    assert h0 - h1 == B.degree + B.rank
    assert h0 >= 0 and h1 >= 0


def check_adjoint_antisymmetry(M: GradedHiggsModel) -> None:
    by_k = {P.k: P for P in adjoint_pieces(M)}
    for k, P in by_k.items():
        assert P.rank == by_k[-k].rank
        assert P.par_deg == -by_k[-k].par_deg


def check_hodge_symmetry(data) -> None:
    pieces, hr, ker, coker = data
    M = GradedHiggsModel(pieces, hr, ker, coker)
    assert hyper_h1_dim(M.ker_split[2], M.coker_split[2]) == \
        hyper_h1_dim(M.ker_split[-1], M.coker_split[-1])


def check_genericity_implication(w: WeightSystem) -> None:
    subset_ok = check_generic_subset_sum(w)
    selection_ok, witness = check_generic_selection(w)
    if subset_ok:
        assert selection_ok
    # brute-force oracles for both tests
    values = w.multiset()
    brute_subset = not any(
        sum(c, Fraction(0)).denominator == 1
        for size in range(1, len(values))
        for c in combinations(values, size))
    assert subset_ok == brute_subset
    brute_sel = not any(
        sum((sum(c, Fraction(0)) for c in pick), Fraction(0)).denominator == 1
        for r in range(1, w.rank)
        for pick in product(*[list(combinations(w.flat(j), r)) for j in range(w.punctures)]))
    assert selection_ok == brute_sel
    if witness is not None:
        assert witness.total.denominator == 1


def check_modified_bundle(E: SplitParabolicBundle) -> None:
    try:
        mod = modified_bundle(E)
    except InfeasibleWindowError:
        # only a repeated weight cut by the window edge may be refused
        assert any(len(set(E.weights_at(j))) < E.rank for j in range(E.punctures))
        return
    assert mod.par_deg() == par_deg(E)
    for size in range(1, E.rank + 1):
        for idx in combinations(range(E.rank), size):
            sub = SplitParabolicBundle(E.punctures, tuple(E.summands[i] for i in idx))
            assert mod.par_deg(idx) == par_deg(sub)
    for j in range(E.punctures):
        col = [w[j] for w in mod.weights]
        assert max(col) - min(col) < 1
        assert sum(col) == 0
