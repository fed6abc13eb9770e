"""Exact-arithmetic toolkit: cluster mutation with Laurent/positivity checks,
Bratteli diagrams from mutation-tree quotients, dimension-group computations,
annulus moduli, and Jones polynomials of closed braids."""

from .errors import ClusterKitError
from .laurent import LaurentPolynomial, chebyshev_T
from .cluster import (
    ExchangeMatrix,
    Seed,
    seed_mutate,
    matrix_mutate,
    numeric_mutate,
    enumerate_cluster_variables,
    check_positivity,
    is_finite_type,
    seed_from_json,
    seed_to_json,
)
from .bratteli import (
    build_mutation_tree,
    quotient_to_bratteli,
    seeds_l_equivalent,
    stationary_diagram,
    export_diagram,
    BratteliDiagram,
)
from .k0 import (
    K0Element,
    k0_push,
    k0_equal,
    k0_is_positive,
    trace_state,
    supernatural_of,
    qn_contains,
    gicar_rho,
    gicar_is_positive,
    riesz_interpolate,
)
from .annulus import (
    a11_variable,
    casimir,
    canonical_basis_element,
    solve_moduli,
    admissible_moduli,
    verify_trace_exchange,
)
from .jones import (
    BraidWord,
    PlanarPairing,
    TLElement,
    enumerate_pairings,
    tl_mul,
    braid_to_tl,
    markov_trace,
    jones_polynomial,
    kauffman_oracle,
    verify_paper_relations,
)

__version__ = "0.1.0"
