"""Mod-2 Betti numbers of loop spaces of stunted Borel constructions.

Three independent computation routes (brute-force simplicial homology over
GF(2), a cover-intersection Betti sum, and closed combinatorial formulas)
with cross-validation between them.
"""

from .simplicial import (
    FiniteSimplicialSet,
    Involution,
    PointedSubset,
    SimplexRef,
    SimplicialMap,
    TruncationError,
    ValidationError,
)
from .constructions import (
    find_section,
    image_subset,
    orbit_space,
    product,
    quotient,
    reduced_diagonal,
    smash,
    smash_power,
)
from .homology import (
    BettiTable,
    GF2SparseMatrix,
    ChainComplexGF2,
    chain_complex,
    gf2_rank,
    induced_map,
    is_homologous_zero,
    kunneth,
    kunneth_power,
    quotient_betti_via_les,
    reduced_betti,
    table_from_dict,
)
from .pinched import (
    Composition,
    delta_alpha,
    delta_intersection,
    intersection_to_composition,
    mv_e1_betti,
    pinched_betti_brute,
    pinched_inductive,
    pinched_set,
    pinched_union,
)
from .closed_form import (
    BettiInput,
    RecurrenceSeries,
    betti_pinched_example,
    betti_pinched_formula,
    c_coeff,
    loop_betti,
    loop_betti_example,
    poincare_coeffs,
    quotient_betti_concentrated,
)
from .verify import RunReport, run_verify

__all__ = [
    "FiniteSimplicialSet",
    "Involution",
    "PointedSubset",
    "SimplexRef",
    "SimplicialMap",
    "TruncationError",
    "ValidationError",
    "find_section",
    "image_subset",
    "orbit_space",
    "product",
    "quotient",
    "reduced_diagonal",
    "smash",
    "smash_power",
    "BettiTable",
    "GF2SparseMatrix",
    "ChainComplexGF2",
    "chain_complex",
    "gf2_rank",
    "induced_map",
    "is_homologous_zero",
    "kunneth",
    "kunneth_power",
    "quotient_betti_via_les",
    "reduced_betti",
    "table_from_dict",
    "Composition",
    "delta_alpha",
    "delta_intersection",
    "intersection_to_composition",
    "mv_e1_betti",
    "pinched_betti_brute",
    "pinched_inductive",
    "pinched_set",
    "pinched_union",
    "BettiInput",
    "RecurrenceSeries",
    "betti_pinched_example",
    "betti_pinched_formula",
    "c_coeff",
    "loop_betti",
    "loop_betti_example",
    "poincare_coeffs",
    "quotient_betti_concentrated",
    "RunReport",
    "run_verify",
]

__version__ = "0.1.0"
