"""Which integers do the spinor regular but not regular positive definite
ternary quadratic forms miss?  Tools to enumerate, to decide locally, and
to check the closed-form answers three independent ways.
"""

from .arith import (
    factor,
    hilbert,
    in_local_norm_group,
    is_padic_square,
    legendre,
    ord_p,
    squarefree_part,
)
from .catalog import (
    CatalogError,
    CatalogFile,
    GenusRecord,
    load_catalog,
    load_default_catalog,
    lookup,
)
from .forms_core import (
    BoundOverflowError,
    DefinitenessError,
    RepresentedSet,
    TernaryForm,
    Witness,
    discriminant,
    enumerate_represented,
    evaluate,
    is_positive_definite,
)
from .local_solver import (
    LocalSplitting,
    LocalVerdict,
    genus_represents,
    lemma71_excluded,
    lemma72_excluded,
    lemma73_excluded,
    local_represents,
    locally_represented,
    unramified_shortcut,
)
from .spinor_theory import (
    EXCEPTIONAL,
    LOCALLY_EXCLUDED,
    REPRESENTED,
    Classification,
    OddBoundType,
    classify,
    congruence_Mt,
    in_Mt,
    in_squareclass_spec,
    spinor_exceptional_general,
)

__version__ = "0.1.0"
