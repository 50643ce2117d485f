"""Toric ideals of monomial projections of Veronese varieties.

The package is organized bottom-up: monomials and parameterizing sets,
diagonal group actions and their invariants, fibers of the monomial map
with minimal generator counts, a binomial Buchberger engine with term
order search, named families with theorem-backed Koszul labels, and a
survey driver with a command line front end.
"""

from .monomials import (
    Monomial,
    MonomialSet,
    enumerate_degree,
    enumerate_support_bounded,
    read_omega,
    write_omega,
)
from .groups import (
    CyclicFactor,
    DiagonalGroup,
    block_group,
    cyclic_group,
    h_vector_group,
    invariants_of_degree,
    lambda_decomposition,
    parse_group,
    surface_koszul,
    surface_normal_form,
    surface_quadraticity,
    triple_projections,
)
from .fibers import (
    Factorization,
    Fiber,
    GeneratorTable,
    fiber_of,
    fibers_of_degree,
    h_polynomial,
    hilbert_function,
    hilbert_values,
    ik_sequence_witness,
    is_2_normal,
    minimal_generator_table,
)
from .groebner import (
    Binomial,
    GroebnerBasis,
    TermOrder,
    buchberger,
    lift_omega,
    lift_order,
    parse_order,
    rc_term_order,
    search_quadratic_order,
    toric_generators,
    verify_groebner,
)
from .families import (
    FamilySpec,
    TheoremVerdict,
    koszul_label,
    parse_family,
    run_scenario,
    scenario_names,
)
from .survey import (
    SurveyOptions,
    SurveyRow,
    build_survey_row,
    canonical_surface_weights,
    conjecture1_check,
    conjecture2_check,
    survey_groups,
)
from .errors import GuardExceeded, SpecParseError

__version__ = "0.1.0"
