"""Exact wall-and-chamber computations for weighted hyperplane arrangements."""

from .arrangement import (
    Arrangement,
    Flat,
    LogCanonicalVerdict,
    StabilityVerdict,
    dichotomy_check,
    e_configuration,
    flats,
    is_e_type,
    is_log_canonical,
    is_stable,
)
from .blowup import (
    BlowupDivisor,
    ModificationChecks,
    PairingSurface,
    TestCurve,
    ample_coefficient_threshold,
    ample_from_pairing,
    canonical_class,
    degeneration_log_divisor,
    exceptional_class,
    hyperplane_class,
    is_ample_blowup,
    modification_checks,
    pair,
    ruled_fiber_degree,
    through_p_class,
    y1_log_divisor,
)
from .epsfield import (
    EPS,
    ONE,
    ZERO,
    EpsPoly,
    EpsRat,
    Rat,
    eps_arith,
    eps_cmp,
    eval_at,
    parse_eps_rat,
    parse_poly,
    parse_rat,
    positivity_radius,
)
from .errors import (
    BadParameters,
    DegreeOverflow,
    DimensionMismatch,
    DivisionByZero,
    IndistinguishableAtTruncation,
    InsufficientTruncation,
    InvariantBreach,
    NotFine,
    NotInNormalForm,
    ParseError,
    PoleAtPoint,
    PreconditionViolated,
    SizeGuard,
    WallcrossError,
    WrongDimension,
)
from .jets import (
    DegenerationModel,
    JetFamily,
    JetPoly,
    LimitSection,
    limit_section,
    normalize_to_common_chart,
    separated_sections,
    separation_depth,
    stable_replacement_model,
    validate_degeneration,
)
from .mixedsub import (
    CayleyConfig,
    DefectCell,
    DualGraph,
    FiberVertex,
    MixedCell,
    MixedSubdivision,
    cayley_config,
    cell_vertices,
    cell_volume,
    dual_graph,
    fiber_vertex,
    qcartier_defect_cells,
    regular_mixed_subdivision,
)
from .weights import (
    Crossing,
    SignVector,
    Wall,
    WeightVector,
    chamber_walls,
    in_chamber_closure,
    leq,
    nt_weights,
    same_chamber,
    segment_walls,
    sign_vector,
    t_weights,
    wall_value,
    walls_containing,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
