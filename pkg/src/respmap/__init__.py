"""respmap: responsibility mapping and gap analysis for algorithmic
decision-support systems.

Describe who does what around such a system (actors, tasks,
responsibility areas, authorities, communication channels) and get a
deterministic report of responsibility gaps, conflicts of interest,
agency mismatches and missing communication paths, plus what-if diffing
between scenarios.
"""

from .mapdoc import (
    canonical_digest,
    map_to_document,
    parse_map,
    parse_report,
    serialize_map,
)
from .model import (
    Actor,
    Assignment,
    AuthorityKind,
    ENGINE_VERSION,
    EngineVersionMismatch,
    Finding,
    Issue,
    MapDelta,
    MapError,
    MapFormatError,
    MapValidationError,
    NOBODY,
    NOBODY_TOKEN,
    Report,
    ReportDelta,
    ResponsibilityKind,
    ResponsibilityMap,
    Severity,
    TaskKind,
    validate_map,
)
from .render import UnknownLocale, render_delta, render_report
from .rules import (
    DEFAULT_TABLES,
    RuleMappingTables,
    analyze,
    apply_map_delta,
    diff_reports,
    what_if,
)

__version__ = ENGINE_VERSION

__all__ = [
    "Actor",
    "Assignment",
    "AuthorityKind",
    "DEFAULT_TABLES",
    "ENGINE_VERSION",
    "EngineVersionMismatch",
    "Finding",
    "Issue",
    "MapDelta",
    "MapError",
    "MapFormatError",
    "MapValidationError",
    "NOBODY",
    "NOBODY_TOKEN",
    "Report",
    "ReportDelta",
    "ResponsibilityKind",
    "ResponsibilityMap",
    "RuleMappingTables",
    "Severity",
    "TaskKind",
    "UnknownLocale",
    "analyze",
    "apply_map_delta",
    "canonical_digest",
    "diff_reports",
    "map_to_document",
    "parse_map",
    "parse_report",
    "render_delta",
    "render_report",
    "serialize_map",
    "validate_map",
    "what_if",
]
