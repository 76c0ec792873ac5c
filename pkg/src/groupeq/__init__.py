"""groupeq: equation systems over groups, exactly.

Classify systems as singular / nonsingular / unimodular from the Smith
normal form of their exponent matrix; reproduce the explicit metabelian
counterexamples (the order-42 triangular group over F_7 and its torsion-free
central-product variant) by exact matrix-group and group-ring computation;
and reduce systems over a split extension A ⋉ B to certified-nonsingular
systems over B via Laurent-polynomial linear algebra.
"""

from .classify import NONSINGULAR, SINGULAR, UNIMODULAR, Verdict, classify
from .groups import (
    CentralProductElem,
    FiniteGroupTable,
    HeisenbergElem,
    PermElem,
    ScaledTriangularElem,
    TriangularElem,
    brute_force_solve,
    builtin_group,
    central_product_elems,
    central_product_normalize,
    comm,
    conj,
    derived_subgroup,
    evaluate_word,
    gpow,
    group_closure,
    is_metabelian,
    metabelian_identity_scan,
    order42_elems,
)
from .intlinalg import IntMatrix, SmithForm, bad_primes, det, rank_over_rationals, smith_normal_form
from .reduction import (
    AbelianSolution,
    NonsingularityCertificate,
    ReductionResult,
    RewrittenSystem,
    SplitExtensionSpec,
    certificate_document,
    certify_nonsingular,
    change_variables,
    induced_system,
    orbit_shift,
    reduce_system,
    rewrite_over_base,
    row_dependence_check,
    solve_induced,
)
from .rings import (
    CyclicPoly,
    LaurentPoly,
    PrimeFieldElem,
    RingHom,
    apply_hom,
    cyclic_project,
    determinant,
)
from .words import (
    EquationSystem,
    FlatWord,
    SurfaceWord,
    SymbolTable,
    exponent_matrix,
    exponent_sum,
    flatten,
    parse_word,
)

__version__ = "0.1.0"
