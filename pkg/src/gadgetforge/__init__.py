"""gadgetforge: expander-derived gadgets, hitting distributions, and their testers."""

__version__ = "0.1.0"

from ._backend import backend_name
from .algebra import (
    ExtContext,
    ExtFieldElem,
    FieldElem,
    FieldError,
    Gf2nElem,
    Rational,
    binomial_fraction_holds,
    binomial_log_gap_holds,
    ext_is_square,
    find_nonresidue,
    gf2n_eval_poly,
    is_prime,
)
from .gadgets import (
    Coloring,
    DisjGadget,
    GadgetError,
    PartialGadget,
    UNDEF,
    build_gadget_from_colored_graph,
    build_sqr_coloring,
    build_sqr_gadget,
    eval_disj,
    eval_sqr,
    is_balanced,
    load_coloring,
    load_gadget,
    rank_colex,
    save_coloring,
    save_gadget,
    unrank_colex,
    verify_subfunction,
)
from .graphs import (
    GraphError,
    RegularGraph,
    SpectralReport,
    build_ap,
    check_affine_like,
    check_vertex_expansion,
    load_graph,
    max_common_neighbors,
    save_graph,
    spectral_report,
)
from .hashing import HashFamily, hash_eval, verify_kwise
from .hitting import (
    EXACT,
    FULL_INDEP,
    POLY10WISE,
    SAMPLER_ONLY,
    BudgetExceeded,
    DisjOneRectangle,
    DistributionError,
    HitReport,
    HittingDistribution,
    Rectangle,
    adversarial_average_exact,
    adversarial_witness_search,
    build_disj0_distribution,
    build_expander_distribution,
    corollary1_bound,
    delta_curve,
    disj1_failure_bound,
    disj1_regime,
    load_distribution,
    sample_disj1_rectangle,
    sample_rectangle,
    save_distribution,
    simulation_bound,
    sparsify,
    support_lower_bound_check,
    test_hitting_exact,
    test_hitting_mc,
    theorem2_h,
    verify_monochromatic,
)
from .thickness import (
    DegreeStats,
    GridError,
    GridSet,
    build_xn,
    degree_stats,
    inflate,
    load_gridset,
    peel_core,
    save_gridset,
    thickness_prune,
    verify_theorem5,
)
