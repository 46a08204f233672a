"""Domain model for responsibility maps.

A responsibility map records, for one algorithmic decision-support system
inside an organisation, who the involved people and groups are and how the
surrounding tasks, responsibility areas, authorities and communication
channels are assigned to them.  All types here are immutable after
validation and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence, Union

ENGINE_VERSION = "0.1.0"

#: Reserved assignee token meaning "explicitly assigned to no one".
NOBODY_TOKEN = "nobody"


class TaskKind(Enum):
    """The seven task areas around a decision-support system.

    The declaration order is fixed and meaningful: reports list task slots
    in exactly this order.
    """

    ADOPTION_DECISION = "adoption_decision"
    DEVELOPMENT = "development"
    IMPLEMENTATION = "implementation"
    APPLICATION = "application"
    SECURITY = "security"
    DATA_MANAGEMENT = "data_management"
    EVALUATION = "evaluation"


class ResponsibilityKind(Enum):
    """The five failure domains someone has to answer for."""

    TARGETS_NOT_MET = "targets_not_met"
    POOR_INTEGRATION = "poor_integration"
    DATA_PROTECTION_COMPLAINTS = "data_protection_complaints"
    SECURITY_BREACH = "security_breach"
    MISAPPLICATION = "misapplication"


class AuthorityKind(Enum):
    """The four powers to effect change in or around the system."""

    STOP_SYSTEM = "stop_system"
    CHANGE_INTEGRATION_AND_USE = "change_integration_and_use"
    CORRECT_DATA = "correct_data"
    MANDATE_SECURITY = "mandate_security"


SlotKind = Union[TaskKind, ResponsibilityKind, AuthorityKind]

TASK_ORDER = {member: i for i, member in enumerate(TaskKind)}
RESPONSIBILITY_ORDER = {member: i for i, member in enumerate(ResponsibilityKind)}
AUTHORITY_ORDER = {member: i for i, member in enumerate(AuthorityKind)}


class Severity(Enum):
    GAP = "gap"
    CONFLICT = "conflict"
    ADVISORY = "advisory"


# --- validation issues ------------------------------------------------------

EMPTY_ACTOR_NAME = "EmptyActorName"
RESERVED_ACTOR_NAME = "ReservedActorName"
DUPLICATE_ACTOR = "DuplicateActor"
UNKNOWN_ACTOR_REFERENCE = "UnknownActorReference"
NOBODY_MIXED_WITH_ACTOR = "NobodyMixedWithActor"
CHANNEL_SELF_PAIR = "ChannelSelfPair"
CHANNEL_UNKNOWN_ACTOR = "ChannelUnknownActor"
UNSUPPORTED_FORMAT_VERSION = "UnsupportedFormatVersion"


@dataclass(frozen=True)
class Issue:
    """One concrete violation, pointing at the offending slot or actor."""

    code: str
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.path}: {self.message} [{self.code}]"


class MapError(Exception):
    """Base class for map parsing/validation failures; carries all issues."""

    def __init__(self, issues: Sequence[Issue]):
        self.issues = tuple(issues)
        super().__init__("; ".join(str(i) for i in self.issues))


class MapValidationError(MapError):
    """The map is structurally readable but violates model invariants."""


class MapFormatError(MapError):
    """The document does not match the interchange format."""


class EngineVersionMismatch(Exception):
    """Two reports from different engine versions cannot be diffed."""


# --- actors and assignments -------------------------------------------------

@dataclass(frozen=True)
class Actor:
    """A named person or group.

    ``kind`` is a free-text tag ("person", "group", ...) carried for
    display purposes only; no analysis rule reads it.
    """

    name: str
    kind: str | None = None


@dataclass(frozen=True)
class Assignment:
    """The holders of one slot: either nobody, or one or more actors.

    An empty assignee tuple *is* the "nobody" state; the two cannot be
    mixed, so no separate sentinel value is needed internally.  Assignee
    order follows the actor registry of the containing map.
    """

    assignees: tuple[str, ...] = ()

    @property
    def is_nobody(self) -> bool:
        return not self.assignees

    def __iter__(self):
        return iter(self.assignees)

    def __contains__(self, name: object) -> bool:
        return name in self.assignees


NOBODY = Assignment()

#: Loose assignment input accepted by :func:`validate_map`.
AssignmentInput = Union[Assignment, Sequence[str], str, None]


@dataclass(frozen=True)
class ResponsibilityMap:
    """A validated, normalised responsibility map.

    Instances should be obtained through :func:`validate_map` (or the
    document parser), which enforces every invariant: registered, unique,
    non-reserved actor names; assignments referencing only registered
    actors with assignees in registry order; channel pairs between distinct
    registered actors, stored orientation-free.
    """

    title: str
    actors: tuple[Actor, ...]
    tasks: Mapping[TaskKind, Assignment]
    responsibilities: Mapping[ResponsibilityKind, Assignment]
    authorities: Mapping[AuthorityKind, Assignment]
    channels: frozenset[tuple[str, str]]
    format_version: int = 1
    notes: str | None = None

    @property
    def actor_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.actors)

    def assignment(self, slot: SlotKind) -> Assignment:
        if isinstance(slot, TaskKind):
            return self.tasks[slot]
        if isinstance(slot, ResponsibilityKind):
            return self.responsibilities[slot]
        return self.authorities[slot]

    def has_channel(self, a: str, b: str) -> bool:
        return (a, b) in self.channels or (b, a) in self.channels


def _normalize_assignment(
    value: AssignmentInput,
    path: str,
    registry_index: Mapping[str, int],
    issues: list[Issue],
) -> Assignment:
    """Coerce one raw slot value into a normalised Assignment."""
    if value is None:
        return NOBODY
    if isinstance(value, Assignment):
        value = value.assignees
    if isinstance(value, str):
        # Convenience for programmatic construction; the document format
        # itself only allows the sentinel string or an array.
        value = () if value.strip() == NOBODY_TOKEN else (value,)

    names: list[str] = []
    ok = True
    for raw in value:
        name = raw.strip() if isinstance(raw, str) else ""
        if not name:
            issues.append(Issue(EMPTY_ACTOR_NAME, path, "assignee name is empty"))
            ok = False
            continue
        if name == NOBODY_TOKEN:
            issues.append(Issue(
                NOBODY_MIXED_WITH_ACTOR, path,
                f"the sentinel {NOBODY_TOKEN!r} cannot appear inside an assignee list",
            ))
            ok = False
            continue
        if name in names:
            issues.append(Issue(DUPLICATE_ACTOR, path, f"duplicate assignee {name!r}"))
            ok = False
            continue
        if name not in registry_index:
            issues.append(Issue(
                UNKNOWN_ACTOR_REFERENCE, path,
                f"assignee {name!r} is not a registered actor",
            ))
            ok = False
            continue
        names.append(name)
    if not ok:
        return NOBODY
    # Registry order, never input order, so that equal maps normalise equally.
    return Assignment(tuple(sorted(names, key=registry_index.__getitem__)))


def validate_map(
    *,
    title: str = "",
    actors: Sequence[Actor | str] = (),
    tasks: Mapping[TaskKind, AssignmentInput] | None = None,
    responsibilities: Mapping[ResponsibilityKind, AssignmentInput] | None = None,
    authorities: Mapping[AuthorityKind, AssignmentInput] | None = None,
    channels: Iterable[Sequence[str]] = (),
    format_version: int = 1,
    notes: str | None = None,
) -> ResponsibilityMap:
    """Validate a candidate map and return the normalised result.

    All violations are collected and reported together in one
    :class:`MapValidationError`; the first error never masks the rest.
    Slots missing from the input mappings default to nobody.
    """
    issues: list[Issue] = []

    if not isinstance(format_version, int) or isinstance(format_version, bool) or format_version != 1:
        issues.append(Issue(
            UNSUPPORTED_FORMAT_VERSION, "format_version",
            f"unsupported format version {format_version!r}; this engine reads version 1",
        ))

    registry: list[Actor] = []
    registry_index: dict[str, int] = {}
    for i, entry in enumerate(actors):
        actor = Actor(entry) if isinstance(entry, str) else entry
        name = actor.name.strip()
        path = f"actors[{i}]"
        if not name:
            issues.append(Issue(EMPTY_ACTOR_NAME, path, "actor name is empty"))
            continue
        if name == NOBODY_TOKEN:
            issues.append(Issue(
                RESERVED_ACTOR_NAME, path,
                f"{NOBODY_TOKEN!r} is reserved and cannot be used as an actor name",
            ))
            continue
        if name in registry_index:
            issues.append(Issue(DUPLICATE_ACTOR, path, f"duplicate actor {name!r}"))
            continue
        kind = actor.kind.strip() if actor.kind and actor.kind.strip() else None
        registry_index[name] = len(registry)
        registry.append(Actor(name, kind))

    tasks = dict(tasks or {})
    responsibilities = dict(responsibilities or {})
    authorities = dict(authorities or {})

    norm_tasks = {
        kind: _normalize_assignment(tasks.get(kind), f"tasks.{kind.value}", registry_index, issues)
        for kind in TaskKind
    }
    norm_resps = {
        kind: _normalize_assignment(
            responsibilities.get(kind), f"responsibilities.{kind.value}", registry_index, issues)
        for kind in ResponsibilityKind
    }
    norm_auths = {
        kind: _normalize_assignment(
            authorities.get(kind), f"authorities.{kind.value}", registry_index, issues)
        for kind in AuthorityKind
    }

    norm_channels: set[tuple[str, str]] = set()
    for i, pair in enumerate(channels):
        path = f"channels[{i}]"
        names = [p.strip() if isinstance(p, str) else "" for p in pair]
        if len(names) != 2 or not all(names):
            issues.append(Issue(
                CHANNEL_UNKNOWN_ACTOR, path,
                "a channel is a pair of two registered actor names",
            ))
            continue
        a, b = names
        if a == b:
            issues.append(Issue(CHANNEL_SELF_PAIR, path, f"channel pairs {a!r} with itself"))
            continue
        bad = [n for n in (a, b) if n not in registry_index]
        if bad:
            for n in bad:
                issues.append(Issue(
                    CHANNEL_UNKNOWN_ACTOR, path,
                    f"channel endpoint {n!r} is not a registered actor",
                ))
            continue
        norm_channels.add((min(a, b), max(a, b)))

    if issues:
        raise MapValidationError(issues)

    return ResponsibilityMap(
        title=title,
        actors=tuple(registry),
        tasks=norm_tasks,
        responsibilities=norm_resps,
        authorities=norm_auths,
        channels=frozenset(norm_channels),
        format_version=format_version,
        notes=notes.strip() if notes and notes.strip() else None,
    )


# --- findings and reports ----------------------------------------------------

RULE_TASK_GAP = "task-gap"
RULE_EVAL_INDEPENDENCE = "eval-independence"
RULE_RESP_WITHOUT_TASK = "resp-without-task"
RULE_RESP_GAP = "resp-gap"
RULE_RESP_OVERLAP = "resp-overlap"
RULE_RESP_WITHOUT_AUTHORITY = "resp-without-authority"
RULE_MISSING_CHANNEL = "missing-channel"

SECTION_BY_RULE = {
    RULE_TASK_GAP: 1,
    RULE_EVAL_INDEPENDENCE: 2,
    RULE_RESP_WITHOUT_TASK: 3,
    RULE_RESP_GAP: 4,
    RULE_RESP_OVERLAP: 4,
    RULE_RESP_WITHOUT_AUTHORITY: 5,
    RULE_MISSING_CHANNEL: 6,
}

SEVERITY_BY_RULE = {
    RULE_TASK_GAP: Severity.GAP,
    RULE_EVAL_INDEPENDENCE: Severity.CONFLICT,
    RULE_RESP_WITHOUT_TASK: Severity.CONFLICT,
    RULE_RESP_GAP: Severity.GAP,
    RULE_RESP_OVERLAP: Severity.ADVISORY,
    RULE_RESP_WITHOUT_AUTHORITY: Severity.CONFLICT,
    RULE_MISSING_CHANNEL: Severity.GAP,
}

#: For each rule, the slot family its findings point at.  Channel findings
#: point at a pair of task slots.
RULE_SLOT_FAMILY: Mapping[str, object] = {
    RULE_TASK_GAP: TaskKind,
    RULE_EVAL_INDEPENDENCE: TaskKind,
    RULE_RESP_WITHOUT_TASK: ResponsibilityKind,
    RULE_RESP_GAP: ResponsibilityKind,
    RULE_RESP_OVERLAP: ResponsibilityKind,
    RULE_RESP_WITHOUT_AUTHORITY: ResponsibilityKind,
    RULE_MISSING_CHANNEL: (TaskKind, TaskKind),
}

Slot = Union[SlotKind, tuple[TaskKind, TaskKind]]


def slot_token(slot: Slot) -> str:
    """Stable text token for a slot; task pairs join their tokens with '+'."""
    if isinstance(slot, tuple):
        return f"{slot[0].value}+{slot[1].value}"
    return slot.value


def _slot_sort_key(slot: Slot) -> tuple[int, ...]:
    if isinstance(slot, tuple):
        return (TASK_ORDER[slot[0]], TASK_ORDER[slot[1]])
    if isinstance(slot, TaskKind):
        return (TASK_ORDER[slot],)
    if isinstance(slot, ResponsibilityKind):
        return (RESPONSIBILITY_ORDER[slot],)
    return (AUTHORITY_ORDER[slot],)


@dataclass(frozen=True)
class Finding:
    """One detected problem.

    Identity for diffing purposes is (section, rule, slot, subjects); the
    rendered message is deliberately excluded so that rewording or
    localisation never changes analysis results.
    """

    section: int
    rule: str
    severity: Severity
    slot: Slot
    subjects: tuple[str, ...]
    message: str

    def __post_init__(self) -> None:
        if self.rule not in SECTION_BY_RULE:
            raise ValueError(f"unknown rule id {self.rule!r}")
        if self.section != SECTION_BY_RULE[self.rule]:
            raise ValueError(f"rule {self.rule!r} belongs to section {SECTION_BY_RULE[self.rule]}")
        family = RULE_SLOT_FAMILY[self.rule]
        if isinstance(family, tuple):
            if not (isinstance(self.slot, tuple) and len(self.slot) == 2
                    and all(isinstance(t, TaskKind) for t in self.slot)):
                raise ValueError(f"rule {self.rule!r} expects a task-pair slot")
            if TASK_ORDER[self.slot[0]] >= TASK_ORDER[self.slot[1]]:
                raise ValueError("task-pair slots must be in task declaration order")
        elif not isinstance(self.slot, family):  # type: ignore[arg-type]
            raise ValueError(f"rule {self.rule!r} expects a {family.__name__} slot")  # type: ignore[union-attr]

    @property
    def slot_token(self) -> str:
        return slot_token(self.slot)

    @property
    def identity(self) -> tuple[int, str, str, tuple[str, ...]]:
        return (self.section, self.rule, self.slot_token, self.subjects)

    @property
    def sort_key(self) -> tuple:
        return (self.section, self.rule, _slot_sort_key(self.slot), self.subjects)


@dataclass(frozen=True)
class Report:
    """Deterministically ordered analysis result for one map."""

    engine_version: str
    map_digest: str
    findings: tuple[Finding, ...]

    def __post_init__(self) -> None:
        keys = [f.sort_key for f in self.findings]
        if keys != sorted(keys):
            raise ValueError("report findings must be in canonical order")

    def section(self, number: int) -> tuple[Finding, ...]:
        return tuple(f for f in self.findings if f.section == number)

    @property
    def worst_severity(self) -> Severity | None:
        present = {f.severity for f in self.findings}
        for severity in (Severity.GAP, Severity.CONFLICT, Severity.ADVISORY):
            if severity in present:
                return severity
        return None


@dataclass(frozen=True)
class ReportDelta:
    """Findings removed and added between two reports of the same engine."""

    engine_version: str
    resolved: tuple[Finding, ...]
    introduced: tuple[Finding, ...]

    @property
    def is_empty(self) -> bool:
        return not self.resolved and not self.introduced


@dataclass(frozen=True)
class MapDelta:
    """A hypothetical reassignment: per-slot overrides plus channel edits.

    Only the listed slots change; everything else keeps its current
    assignment.  Channel edits are applied after the removals.
    """

    tasks: Mapping[TaskKind, Assignment] = field(default_factory=dict)
    responsibilities: Mapping[ResponsibilityKind, Assignment] = field(default_factory=dict)
    authorities: Mapping[AuthorityKind, Assignment] = field(default_factory=dict)
    channels_add: frozenset[tuple[str, str]] = frozenset()
    channels_remove: frozenset[tuple[str, str]] = frozenset()

    @property
    def is_empty(self) -> bool:
        return not (self.tasks or self.responsibilities or self.authorities
                    or self.channels_add or self.channels_remove)
