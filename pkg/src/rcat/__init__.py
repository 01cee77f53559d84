"""Finite restriction categories on the desk: tables in, law reports out.

Everything here works with explicit finite data.  Categories are
composition tables, structure is chosen (spans, cocones, copy maps) and
then checked against the laws it is supposed to satisfy, and every
checker returns a report listing each violated law with a witness.
"""

from . import coproducts, copycat, core, errors, parfin, products, splitting
from .coproducts import (
    Cocone,
    CoproductStructure,
    Decision,
    PartialMatrix,
    ZeroWitness,
    check_restriction_coproducts,
    check_restriction_zero,
    decision_from_binary,
    discover_coproducts,
    fam_completion,
    find_decision,
    find_restriction_zero,
    is_decision,
    is_extensive_map,
    matrix_decompose,
    matrix_multiply,
    matrix_recompose,
    validate_matrix,
)
from .copycat import (
    Comonoid,
    CompletionResult,
    CopyStructure,
    DistributiveCategoryData,
    FinSetDistributive,
    KleisliModel,
    MonoidalMonadData,
    StrictMonoidalData,
    check_copy_monad,
    check_counital_copy,
    check_distributive_copy,
    check_equational_lifting,
    check_monoidal_monad,
    check_strict_monoidal,
    comonoid_category,
    completion_canonical_iso,
    copy_to_products,
    decision_from_copy,
    decision_in_kleisli,
    distributive_copy_equivalence,
    diamond_lattice,
    enumerate_comonoids,
    extensive_completion,
    finset_distributive,
    finset_distributive_data,
    identity_monad,
    kleisli_plus_one_check,
    kleisli_restriction,
    lattice_category,
    monoid_category,
    par_copy,
    par_monoidal,
    plus_one_monad,
    products_to_copy,
    search_copy_structures,
)
from .core import (
    FinCategory,
    LawReport,
    RestrictionCategory,
    Violation,
    check_category_laws,
    check_restriction_axioms,
    dense_subcategory,
    find_splitting,
    is_restriction_monic,
    is_total,
    leq,
    restriction_idempotent_ids,
    restriction_inverse,
    total_morphism_ids,
    two_sided_inverse,
)
from .errors import (
    CapExceeded,
    InvalidDistributiveData,
    InvalidWitness,
    MalformedTable,
    MissingBinaryDecision,
    MissingStructure,
    NoDecision,
    NoProducts,
    NotParallel,
    NotSeparable,
    NotSplit,
    NoTotalLimit,
    NoZero,
    RcatError,
    ShapeMismatch,
    UndefinedComposite,
    UnknownMorphism,
)
from .parfin import (
    ParModel,
    PartialFn,
    all_partial_fns,
    closure_par_model,
    finset_category,
    par_category,
    par_to_rcat,
    pf_name,
)
from .products import (
    Diagram,
    IdempotentLattice,
    PCategoryStructure,
    RestrictionLimit,
    RestrictionProductStructure,
    Span,
    check_p_category,
    check_restriction_products,
    check_substitution,
    derive_restriction,
    discover_restriction_products,
    find_ordinary_product,
    idempotent_lattice,
    par_products,
    pc_from_products,
    product_p_equivalence,
    products_from_pc,
    restriction_limit_of_arrow,
    restriction_limit_of_diagram,
    restriction_terminal_check,
    split_products,
    total_equalizer,
    triviality_guard,
)
from .splitting import (
    SplitModel,
    check_extensive_category,
    is_extensive_rcat,
    split_coproducts,
    split_idempotents,
    total_subcategory,
)

__version__ = "0.1.0"
