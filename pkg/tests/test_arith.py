from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from parahiggs.arith import (
    SUnClass,
    WeightSystem,
    check_distinct,
    check_generic_selection,
    check_generic_subset_sum,
    class_to_weights,
    find_integral_subset,
    format_rational,
    parse_rational,
)
from parahiggs.families import example_69_weight_lists

fracs = st.fractions(max_denominator=10**6)


def test_parse_and_format():
    assert parse_rational("3/6") == F(1, 2)
    assert parse_rational(-4) == F(-4)
    assert format_rational(0) == "0/1"
    assert format_rational(F(-6, 4)) == "-3/2"
    for bad in ("0.5", "1e3", "", 0.5, True):
        with pytest.raises((TypeError, ValueError)):
            parse_rational(bad)


@given(fracs, fracs)
def test_canonical_form_closed(a, b):
    for x in (a + b, a - b, a * b) + ((a / b,) if b else ()):
        assert x.denominator > 0
        assert parse_rational(format_rational(x)) == x


def test_weight_system_validation():
    with pytest.raises(ValueError):
        WeightSystem(2, (((F(1, 2), 1),),))
    with pytest.raises(ValueError):
        WeightSystem(1, (((F(1), 1),),))
    with pytest.raises(ValueError):
        WeightSystem(2, (((F(1, 2), 1), (F(1, 3), 1)),))


def test_distinct():
    ws = WeightSystem.from_lists(3, example_69_weight_lists(F(1, 36)))
    assert check_distinct(ws)
    assert not check_distinct(WeightSystem.from_lists(2, [["1/2", "1/2"]]))
    assert check_distinct(WeightSystem.from_lists(1, [["1/3"], ["0"]]))


def test_subset_sum():
    assert check_generic_subset_sum(WeightSystem.from_lists(1, [["1/2"], ["1/3"]]))
    halves = WeightSystem.from_lists(1, [["1/2"], ["1/2"]])
    # the only integral sub-multiset is the whole thing
    assert check_generic_subset_sum(halves)
    assert not check_generic_subset_sum(halves, proper=False)
    assert find_integral_subset([F(1, 2), F(1, 2)], proper=False) == (0, 1)
    ws = WeightSystem.from_lists(3, example_69_weight_lists(F(1, 36)))
    assert not check_generic_subset_sum(ws)
    vals = ws.multiset()
    idx = find_integral_subset(vals)
    assert sum(vals[i] for i in idx).denominator == 1
    assert 0 < len(idx) < len(vals)


def test_selection():
    ok, wit = check_generic_selection(
        WeightSystem.from_lists(2, [["1/5", "2/5"], ["1/7", "2/7"], ["1/11", "2/11"]]))
    assert ok and wit is None
    ok, wit = check_generic_selection(WeightSystem.from_lists(2, [["1/2", "3/4"], ["1/2", "1/4"]]))
    assert not ok
    assert wit.r == 1 and wit.selection == ((F(1, 2),), (F(1, 2),)) and wit.total == 1
    assert check_generic_selection(WeightSystem.from_lists(1, [["1/2"]]))[0]
    with pytest.raises(ValueError):
        check_generic_selection(WeightSystem.from_lists(2, [["1/2", "1/2"]]))


def test_example_69_selection_generic_but_subset_not():
    ws = WeightSystem.from_lists(3, example_69_weight_lists(F(1, 36)))
    assert check_generic_selection(ws)[0]


def test_sun_class():
    assert class_to_weights(SUnClass((F(0),) * 3)) == ((F(0), 3),)
    assert class_to_weights(SUnClass((F(1, 3), F(0), F(-1, 3)))) == ((F(0), 1), (F(1, 3), 1), (F(2, 3), 1))
    c = SUnClass((F(3, 8), F(1, 8), F(-1, 2)))
    assert class_to_weights(c) == ((F(1, 8), 1), (F(3, 8), 1), (F(1, 2), 1))
    assert c.lam([1, 3]) == F(-1, 8)
    # (1/2, 1/8, -5/8) spans more than a unit window
    with pytest.raises(ValueError):
        SUnClass((F(1, 2), F(1, 8), F(-5, 8)))
    for bad in ((F(1), F(-1)), (F(0), F(1, 2)), (F(1, 2), F(0))):
        with pytest.raises(ValueError):
            SUnClass(bad)


def test_from_weights_round_trip():
    c = SUnClass.from_weights([F(1, 2), F(1, 2) + F(1, 36), 1 - F(1, 36)])
    assert c.theta == (F(1, 2), -F(1, 36), F(-1, 2) + F(1, 36))
    with pytest.raises(ValueError):
        SUnClass.from_weights([F(1, 3)])


@given(st.lists(st.fractions(min_value=0, max_value=F(49, 50), max_denominator=50),
                min_size=1, max_size=4))
def test_class_weights_valid(ws):
    ws = list(ws)
    ws[-1] = (ws[-1] - sum(ws)) % 1
    c = SUnClass.from_weights(ws)
    blocks = class_to_weights(c)
    WeightSystem(c.n, (blocks,))
    assert sorted(a for a, m in blocks for _ in range(m)) == sorted(w % 1 for w in ws)
