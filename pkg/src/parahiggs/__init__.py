"""Exact certifying calculator for parabolic Higgs bundles on the projective line."""

from .arith import (
    Rational,
    SUnClass,
    WeightSystem,
    check_distinct,
    check_generic_selection,
    check_generic_subset_sum,
    class_to_weights,
    format_rational,
    parse_rational,
)
from .families import (
    Example62Params,
    StabilityCertificate,
    build_example_62,
    build_example_69,
    certify_example_62,
    certify_example_69,
    lemma_6_1_check,
    max_subbundle_pardeg,
)
from .higgs import (
    BoundReport,
    GradedHiggsModel,
    adjoint_pieces,
    hyper_h1_dim,
    katz_rigidity,
    main_bound,
    minimal_energy_check,
    theorem_bound,
)
from .parabolic import (
    SplitBundle,
    SplitParabolicBundle,
    cohomology,
    hom_split,
    par_deg,
    par_deg_hom,
    par_slope,
    twist_log,
)
from .schubert import GWQuery, gw_certificate, gw_invariant, lr_coefficient, su_existence

__version__ = "0.1.0"
