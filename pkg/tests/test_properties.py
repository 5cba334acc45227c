"""Randomized invariants, 1000 examples each (see conftest)."""

from hypothesis import assume, given
from hypothesis import strategies as st

import props
from parahiggs.parabolic import SplitBundle

rngs = st.randoms(use_true_random=False)


@given(rngs)
def test_pardeg_additive(rng):
    d = rng.randint(0, 3)
    props.check_additivity(props.random_bundle(rng, d=d), props.random_bundle(rng, d=d))


@given(rngs)
def test_hom_split_matches_hom_degree(rng):
    d = rng.randint(0, 3)
    props.check_hom_consistency(props.random_bundle(rng, d=d), props.random_bundle(rng, d=d))


@given(rngs)
def test_pardeg_between_degree_bounds(rng):
    props.check_pardeg_bounds(props.random_bundle(rng))


@given(st.lists(st.integers(-50, 50), max_size=6))
def test_riemann_roch(degrees):
    props.check_riemann_roch(SplitBundle(tuple(degrees)))


@given(rngs)
def test_adjoint_rank_and_degree_antisymmetric(rng):
    props.check_adjoint_antisymmetry(props.random_model(rng))


@given(rngs)
def test_hodge_symmetry_on_full_data(rng):
    data = props.random_full_data(rng)
    assume(data is not None)
    props.check_hodge_symmetry(data)


@given(rngs)
def test_subset_sum_genericity_implies_selection(rng):
    props.check_genericity_implication(props.random_distinct_weights(rng))


@given(rngs)
def test_modified_bundle_preserves_pardeg(rng):
    props.check_modified_bundle(props.random_integral_bundle(rng))
