"""Monodromy factorizations of Lefschetz fibrations over the 2-sphere.

Homological Dehn-twist calculus, exact fibration invariants, feasibility
enumeration for singular-fiber counts, coset enumeration for
fundamental-group certification, and a catalog of named factorizations.
"""

from .surface import (
    BOUNDARY,
    NONSEP,
    SEP,
    CurveClass,
    HomologyClass,
    SurfaceSpec,
    classify_kind_from_word,
    homology_of_word,
    pairing_matrix,
    symplectic_pairing,
)
from .twists import (
    Factorization,
    MissingHomology,
    TwistLetter,
    VerificationReport,
    cancel_adjacent_inverses,
    cap_boundary,
    conjugate_factorization,
    factorization_matrix,
    hurwitz_move,
    is_symplectic,
    twist_matrix,
    verify_homological_relator,
)
from .invariants import (
    FiberCounts,
    InvariantReport,
    LedgerEntry,
    chi_and_betti,
    endo_nagami_total,
    euler_characteristic,
    hyperelliptic_signature,
    min_nonseparating_bound,
    signature_bound_check,
    twist_count_congruence,
)
from .fpgroup import (
    AbelianInvariants,
    EnumerationResult,
    GroupPresentation,
    abelianization,
    quotient_by_cycles,
    surface_group,
    todd_coxeter,
)
from .feasibility import (
    BoundsReport,
    ConstraintProfile,
    FeasibilityRow,
    check_counts,
    enumerate_feasible,
    min_fiber_bounds,
)
from .catalog import (
    CatalogEntry,
    NoWordData,
    get_entry,
    invariant_report,
    load_catalog,
    pi1_presentation,
)
from .mono import MonoParseError, parse_mono, serialize_mono
from .words import Word, parse_word

__version__ = "0.1.0"
