from fractions import Fraction as F
from itertools import combinations

import pytest

from parahiggs.families import Example62Params, build_example_62, build_example_69
from parahiggs.higgs import (
    GradedHiggsModel,
    MissingDataError,
    adjoint_pieces,
    centralizer_dim,
    coker_bound,
    coker_degree_bounds,
    hyper_h1_dim,
    katz_rigidity,
    ker_bound,
    main_bound,
    main_bound_value,
    minimal_energy_check,
    pardeg_V1_lower_bound,
    positive_genus_obstruction,
    rank_defect_bound,
    rank_defect_check,
    slack_cokernel_ranks,
    theorem_bound,
    theorem_links_hold,
)
from parahiggs.parabolic import SplitBundle, SplitParabolicBundle


def line(deg, *ws):
    return SplitParabolicBundle.build([(deg, ws)], punctures=len(ws))


def three_step(d=2):
    z = [F(0)] * d
    return GradedHiggsModel((line(0, *z), line(0, *z), line(0, *z)), (1, 1))


def test_adjoint_pieces_two_step():
    M = build_example_69(F(1, 36))
    by_k = {P.k: P for P in adjoint_pieces(M)}
    assert sorted(by_k) == [-1, 0, 1]
    assert by_k[1].rank == 2 and by_k[0].rank == 5 and by_k[-1].rank == 2
    # V^k collects Hom(E^p, E^{p+k}); Hom(S, Q) sits at level -1
    assert by_k[-1].split.underlying().degrees == (-1, -1)
    # the top level Hom(E^1, E^r) has degree rank * (1 - deg D)
    assert by_k[1].split.underlying().degree == 2 * (1 - 3)
    assert by_k[1].par_deg == -by_k[-1].par_deg


def test_hyper_h1():
    assert hyper_h1_dim(SplitBundle((-1, -1)), SplitBundle((-1,))) == 0
    assert hyper_h1_dim(SplitBundle((-2,)), SplitBundle((0,))) == 2
    assert hyper_h1_dim(SplitBundle((-1, -3)), SplitBundle((1,))) == 4


def test_minimal_energy():
    assert minimal_energy_check(GradedHiggsModel((line(0, F(1, 2)),)))[0]
    M, _ = build_example_62(Example62Params(3, 1, F(1, 100), (F(-1, 10**6), F(1, 10**6))))
    assert minimal_energy_check(M)[0]
    bad = GradedHiggsModel((line(0, F(0)), line(-2, F(0))), (1,))
    ok, rep = minimal_energy_check(bad)
    assert not ok and rep["h1_hom_top_bottom"] == 1


def test_minimal_energy_needs_interior_data():
    with pytest.raises(MissingDataError):
        minimal_energy_check(three_step())


def test_interior_data_validated():
    # all pieces O with zero weights over two points: V^2 = O, V^1 = O^2
    ker, coker = SplitBundle(()), SplitBundle((0,))
    M = GradedHiggsModel(three_step().pieces, (1, 1), {2: ker}, {2: coker})
    ok, rep = minimal_energy_check(M)
    assert rep["hyper_h1_interior"] == {2: 1} and not ok
    with pytest.raises(ValueError):  # degree identity broken
        GradedHiggsModel(three_step().pieces, (1, 1), {2: ker}, {2: SplitBundle((-1,))})
    with pytest.raises(ValueError):  # rank-nullity broken
        GradedHiggsModel(three_step().pieces, (1, 1), {2: ker}, {2: SplitBundle((0, 0))})


def test_hodge_symmetry_rejection():
    pieces = three_step().pieces
    ker, coker = SplitBundle(()), SplitBundle((0,))
    with pytest.raises(ValueError):
        GradedHiggsModel(pieces, (1, 1), {2: ker, -1: SplitBundle(())},
                         {2: coker, -1: SplitBundle((-5,))})
    GradedHiggsModel(pieces, (1, 1), {2: ker, -1: SplitBundle((-2,))},
                     {2: coker, -1: SplitBundle(())})


def test_higgs_rank_range():
    with pytest.raises(ValueError):
        GradedHiggsModel((line(0), line(0)), (0,))
    with pytest.raises(ValueError):
        GradedHiggsModel((line(0), line(0)), (2,))
    with pytest.raises(ValueError):
        GradedHiggsModel((line(0), line(0, F(1, 2))), (1,))


def test_coker_ker_bounds():
    assert coker_bound(SplitBundle((-1, -1))).holds
    assert coker_bound(SplitBundle((-1, -1))).lhs == coker_bound(SplitBundle((-1, -1))).rhs
    assert not coker_bound(SplitBundle((0,))).holds
    assert ker_bound(SplitBundle((-1, 0))).holds
    M = GradedHiggsModel(three_step().pieces, (1, 1), {2: SplitBundle(())}, {2: SplitBundle((0,))})
    reports = coker_degree_bounds(M)
    assert [b.holds for b in reports] == [False, True]


def test_rank_defect():
    reports = rank_defect_bound(three_step())
    assert len(reports) == 1 and reports[0].holds and reports[0].rhs == 1
    assert not rank_defect_check(5, 4, 5, 3).holds
    with pytest.raises(ValueError):
        rank_defect_bound(GradedHiggsModel((line(0),)))


def test_main_bound_examples():
    value, num, den = main_bound_value([2, 2], [1], 3)
    assert (value, num, den) == (8, 8, 1)
    assert main_bound([2, 2], [1], 3, d=8).holds
    assert not main_bound([2, 2], [1], 3, d=9).holds
    with pytest.raises(ValueError):
        main_bound_value([2, 2], [2], 3)


def test_main_bound_independent_formula():
    # direct re-derivation of the displayed fraction for r = 4
    R = {1: 3, 2: 2, 3: 1}
    C = {2: 1, 3: 0}
    num = 2 * R[3] - R[1] + 2 * (R[1] + R[2]) + (1 * R[2] + 3 * R[3])
    den = (R[1] - C[2]) + (R[2] - C[3]) + (0 * R[2] + 1 * R[3])
    assert main_bound_value(R, C, 4)[0] == F(num, den)


def test_main_bound_monotone_grid():
    # scaling every rank (and cokernel rank) by c leaves the bound unchanged
    for r in range(3, 6):
        for ranks in combinations(range(1, 5), r - 1):
            rv = list(ranks)
            coker = slack_cokernel_ranks(rv, r)
            if any(v < 0 for v in coker.values()):
                continue
            base = main_bound_value(rv, coker, r)[0]
            for c in (2, 3):
                scaled = {k: c * v for k, v in coker.items()}
                den_shift = main_bound_value([c * x for x in rv], scaled, r)
                assert den_shift[1] == c * main_bound_value(rv, coker, r)[1]
                assert den_shift[0] == base


def test_theorem_bound():
    b = theorem_bound(3, 3)
    chain = dict(b.chain)
    assert chain["bound"] == 4 and chain["4(n^2-2r-1)"] == 8 and chain["4n^2-28"] == 8
    assert b.holds and theorem_links_hold(b)
    for n in range(3, 13):
        for r in range(3, n + 1):
            assert theorem_links_hold(theorem_bound(n, r))
    with pytest.raises(ValueError):
        theorem_bound(3, 2)


def test_v1_bound():
    assert pardeg_V1_lower_bound([5, 2], 7, 3) == (-2, -12)
    assert pardeg_V1_lower_bound([1, 2], 4, 3)[1] == -6
    assert pardeg_V1_lower_bound([9, 1, 1], 5, 4)[0] == 4 * 1 - (1 + 2)


def test_positive_genus():
    assert positive_genus_obstruction(1, F(-1, 2), -1)
    assert positive_genus_obstruction(1, 0, 0)
    assert not positive_genus_obstruction(0, F(-1, 2), -1)
    with pytest.raises(ValueError):
        positive_genus_obstruction(1, F(1, 2), 0)


def test_katz():
    assert katz_rigidity(2, [2, 2, 2])
    assert not katz_rigidity(2, [2, 2, 2, 2])
    assert centralizer_dim([1, 1]) == 2
    assert not katz_rigidity(2, [2, 2, 4])
    with pytest.raises(ValueError):
        katz_rigidity(2, [0, 2])
