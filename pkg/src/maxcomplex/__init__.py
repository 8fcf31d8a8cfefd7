"""Exact state complexity of bounded-length colored languages."""

from .core import (
    CapacityError,
    ColoredFunction,
    InputError,
    MonotoneFunction,
    Word,
    is_early,
    is_monotone,
    is_zero,
    rank,
    residual,
    unrank,
)
from .minauto import (
    EquivClasses,
    NoAutomatonError,
    Pdfa,
    export_dot,
    minimal_pdfa,
    mn_class_count,
    mn_classes,
    mn_equivalent,
    run,
    state_complexity,
    states_by_depth,
)
from .bounds import (
    BoundKind,
    NeedCsgCountError,
    NeedDedekindError,
    complete_dfa_bound,
    cp_family,
    csg_bound,
    family_bound,
    general_bound,
    monotone_bound,
)
from .witness import CrossoverPoint, NoWitnessError, construct_maximal, crossover, nonzero_functions
from .counting import NoMaxError, count_max, o_i, onto_count, onto_first_count, stirling2
from .lattice import (
    AdequacyCertificate,
    AdequacyError,
    LatticeMap,
    Poset,
    SearchOutcome,
    build_witness_language,
    check_relation,
    enumerate_monotone,
    is_adequate,
    is_isotone,
    lemma_les_check,
    named_embedding,
    search_relation,
)
from .csg import (
    build_csg_witness,
    check_csg_relation,
    enumerate_csg,
    enumerate_early,
    majorization_leq,
    search_csg_relation,
)

__version__ = "0.1.0"
