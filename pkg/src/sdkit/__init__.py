"""Decision analysis over pairwise superiority degrees.

Turns pairwise-comparison data (complete, multicriteria, group, or
incomplete) into rankings, utility scores, nested Pareto cores, and interval
estimates; ships a CLI (``sd``) and an HTTP session service on top.
"""

from .errors import InvariantViolation, ParseError, SdkitError, WrongDataKind
from .relations import (
    AlternativeSet,
    Core,
    PreferenceRelation,
    core,
    decompose,
    identity_part,
    intersect,
    inverse,
    is_connected,
    is_coordinated,
    is_transitive,
    strict_part,
    union,
)
from .superiority import (
    DEFAULT_EPS,
    ClassFlags,
    CriterionFamily,
    NonTransitiveAggregateWarning,
    SDMatrix,
    UtilityVector,
    WeightVector,
    aggregate,
    classify,
    convolution,
    isd,
    potential,
    sd_coordinated_with,
    utility,
)
from .levels import (
    LevelChain,
    LevelRelation,
    Rung,
    identity_relation,
    join,
    ladder,
    level_relation,
    level_slice,
    meet,
    nonstrict_level_relation,
    strict_level_relation,
)
from .group import (
    TallyMatrix,
    VectorPreferenceRelation,
    additivity_check,
    copeland,
    expert_from_order,
    group_isd,
    group_level,
    group_sd,
    majority,
    tally,
)
from .interval import (
    AbstentionTally,
    IntervalEstimate,
    MissingInfo,
    PartialSDMatrix,
    abstention_tally,
    bounds,
    group_intervals,
    group_margins,
    integral_bounds,
    interval_order,
    interval_utilities,
    missing_info,
    partition,
    refine,
)
from .session import (
    Session,
    add_bookmark,
    analyze,
    apply_refinement,
    ladder_report,
    load,
    new_session,
    report_json,
    session_from_document,
    session_json,
    session_to_document,
    suggest_next_pair,
)

__version__ = "0.1.0"

__all__ = [
    "AlternativeSet",
    "Core",
    "PreferenceRelation",
    "core",
    "decompose",
    "identity_part",
    "intersect",
    "inverse",
    "is_connected",
    "is_coordinated",
    "is_transitive",
    "strict_part",
    "union",
    "DEFAULT_EPS",
    "ClassFlags",
    "CriterionFamily",
    "NonTransitiveAggregateWarning",
    "SDMatrix",
    "UtilityVector",
    "WeightVector",
    "aggregate",
    "classify",
    "convolution",
    "isd",
    "potential",
    "sd_coordinated_with",
    "utility",
    "LevelChain",
    "LevelRelation",
    "Rung",
    "identity_relation",
    "join",
    "ladder",
    "level_relation",
    "level_slice",
    "meet",
    "nonstrict_level_relation",
    "strict_level_relation",
    "TallyMatrix",
    "VectorPreferenceRelation",
    "additivity_check",
    "copeland",
    "expert_from_order",
    "group_isd",
    "group_level",
    "group_sd",
    "majority",
    "tally",
    "AbstentionTally",
    "IntervalEstimate",
    "MissingInfo",
    "PartialSDMatrix",
    "abstention_tally",
    "bounds",
    "group_intervals",
    "group_margins",
    "integral_bounds",
    "interval_order",
    "interval_utilities",
    "missing_info",
    "partition",
    "refine",
    "Session",
    "add_bookmark",
    "analyze",
    "apply_refinement",
    "ladder_report",
    "load",
    "new_session",
    "report_json",
    "session_from_document",
    "session_json",
    "session_to_document",
    "suggest_next_pair",
    "InvariantViolation",
    "ParseError",
    "SdkitError",
    "WrongDataKind",
]
