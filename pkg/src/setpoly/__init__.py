"""Set-valued polynomial systems, recurrence witness search, certificates.

The package is organized bottom up: finite tuple sets and symbol
allocation, set polynomials and their calculus, systems with weights and
normalization, coloring spaces and oracles, the witness search engines,
semigroup values and arithmetic demos, bounded-degree group maps, and a
JSON layer feeding the command line tool.
"""

from .coloring import (
    ColoringOracle,
    ConfigSpace,
    IntColoring,
    ReducerOracle,
    SeededOracle,
    ShiftPoint,
    TableOracle,
    agreement_radius,
    shift_act,
    witness_holds,
)
from .engine import (
    BruteForceSub,
    FocusingTrace,
    GridWitness,
    SearchBudget,
    StageRecord,
    Witness,
    brute_force_witness,
    color_focusing_search,
    combinatorial_line_search,
    focusing_facts,
    grid_witness_search,
    hj_number,
    line_reduction_map,
    single_square_search,
    symmetric_product,
    word_to_column_config,
)
from .errors import (
    ArityError,
    BudgetExhausted,
    CapTooSmallError,
    DegreeOverflowError,
    DegreeTooHighError,
    DimensionMismatch,
    EmptySubsetError,
    EmptySystemError,
    LengthMismatch,
    LineNotFoundError,
    MalformedCertificateError,
    MalformedMinimalError,
    MalformedOracleError,
    NotContainedError,
    NotDominatedError,
    NotHomomorphicError,
    NotPolynomialError,
    OutOfWindowError,
    OverlapError,
    ParseError,
    SetPolyError,
    SubOracleFailure,
    TooLargeError,
    WindowMismatchError,
)
from .finsets import (
    FinSet,
    SymbolAllocator,
    cartesian,
    difference,
    disjoint_union,
    intersect,
    power,
    support,
    union,
    union_all,
)
from .polynomials import (
    SetPolynomial,
    add,
    degree,
    dominates,
    embed_dimension,
    equivalent,
    evaluate,
    leading_term,
    poly_support,
    shift,
    subtract,
    term_of_degree,
)
from .polymaps import (
    Group,
    INT_GROUP,
    PhiTable,
    PolyMap,
    additive_tracks_map,
    bounded_subsets,
    degree_bound_check,
    difference_map,
    embed_subsets,
    evaluate_table,
    group_config_search,
    parse_group,
    recover_table,
    vector_group,
)
from .ramsey import (
    diagonal_family,
    formal_image,
    grid_witness_to_progression,
    monomial_image,
    multiplicative_search,
    product_sum_search,
    square_difference_threshold,
    substituted_image,
)
from .semigroups import (
    FormalPoly,
    IntPoly,
    Multiset,
    Semigroup,
    apply_hom,
    combine_values,
    finite_sums,
    parse_int_poly,
    tensor_collapse,
)
from .systems import (
    NormalizationRecord,
    System,
    adjoin_minimal,
    derived_system,
    expand_markers,
    normalize_terms,
    precedes,
    strip_minimal_shadow,
    system_support,
    weight_vector,
)

__version__ = "0.1.0"
