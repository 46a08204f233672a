"""The six analyses over a validated responsibility map.

Every rule is a pure function from a map (plus the mapping tables) to a
list of findings; :func:`analyze` runs all of them and assembles the
canonical report.  Nothing here mutates its inputs, so analyses of
distinct maps may run in parallel freely.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import mapdoc, render
from .model import (
    ENGINE_VERSION,
    AuthorityKind,
    EngineVersionMismatch,
    Finding,
    MapDelta,
    Report,
    ReportDelta,
    ResponsibilityKind,
    ResponsibilityMap,
    RULE_EVAL_INDEPENDENCE,
    RULE_MISSING_CHANNEL,
    RULE_RESP_GAP,
    RULE_RESP_OVERLAP,
    RULE_RESP_WITHOUT_AUTHORITY,
    RULE_RESP_WITHOUT_TASK,
    RULE_TASK_GAP,
    SECTION_BY_RULE,
    SEVERITY_BY_RULE,
    Slot,
    TASK_ORDER,
    TaskKind,
    validate_map,
)


@dataclass(frozen=True)
class RuleMappingTables:
    """The fixed correspondences the cross-checking rules rely on.

    ``resp_to_task`` pairs each responsibility area with the task whose
    holders should also carry it; ``resp_to_authority`` pairs it with the
    authority needed to actually effect change in that area.  There is no
    narrower "change the application" power, so both the integration and
    the misapplication areas map to the integration-and-use authority.

    ``eval_conflict_tasks`` are the task areas whose holders must stay
    clear of the evaluation: the operational roles.  The adoption decision
    is deliberately not among them; the people deciding whether the system
    stays in use are the audience of the evaluation, not its subject, so
    that overlap is no independence conflict.

    ``required_channels`` lists the task pairs whose holders need a
    communication or complaint path between them.
    """

    resp_to_task: dict[ResponsibilityKind, TaskKind]
    resp_to_authority: dict[ResponsibilityKind, AuthorityKind]
    required_channels: tuple[tuple[TaskKind, TaskKind], ...]
    eval_conflict_tasks: tuple[TaskKind, ...]

    def __post_init__(self) -> None:
        for kind in ResponsibilityKind:
            if kind not in self.resp_to_task:
                raise ValueError(f"resp_to_task is missing {kind.value}")
            if kind not in self.resp_to_authority:
                raise ValueError(f"resp_to_authority is missing {kind.value}")
        normalized = []
        for a, b in self.required_channels:
            if a is b:
                raise ValueError("required channel pairs must join two distinct tasks")
            normalized.append((a, b) if TASK_ORDER[a] < TASK_ORDER[b] else (b, a))
        object.__setattr__(self, "required_channels", tuple(sorted(
            set(normalized), key=lambda p: (TASK_ORDER[p[0]], TASK_ORDER[p[1]]))))
        if TaskKind.EVALUATION in self.eval_conflict_tasks:
            raise ValueError("the evaluation task cannot conflict with itself")


DEFAULT_TABLES = RuleMappingTables(
    resp_to_task={
        ResponsibilityKind.TARGETS_NOT_MET: TaskKind.ADOPTION_DECISION,
        ResponsibilityKind.POOR_INTEGRATION: TaskKind.IMPLEMENTATION,
        ResponsibilityKind.DATA_PROTECTION_COMPLAINTS: TaskKind.DATA_MANAGEMENT,
        ResponsibilityKind.SECURITY_BREACH: TaskKind.SECURITY,
        ResponsibilityKind.MISAPPLICATION: TaskKind.APPLICATION,
    },
    resp_to_authority={
        ResponsibilityKind.TARGETS_NOT_MET: AuthorityKind.STOP_SYSTEM,
        ResponsibilityKind.POOR_INTEGRATION: AuthorityKind.CHANGE_INTEGRATION_AND_USE,
        ResponsibilityKind.DATA_PROTECTION_COMPLAINTS: AuthorityKind.CORRECT_DATA,
        ResponsibilityKind.SECURITY_BREACH: AuthorityKind.MANDATE_SECURITY,
        ResponsibilityKind.MISAPPLICATION: AuthorityKind.CHANGE_INTEGRATION_AND_USE,
    },
    required_channels=(
        (TaskKind.APPLICATION, TaskKind.DEVELOPMENT),
        (TaskKind.APPLICATION, TaskKind.EVALUATION),
        (TaskKind.APPLICATION, TaskKind.ADOPTION_DECISION),
        (TaskKind.EVALUATION, TaskKind.ADOPTION_DECISION),
    ),
    eval_conflict_tasks=(
        TaskKind.DEVELOPMENT,
        TaskKind.IMPLEMENTATION,
        TaskKind.APPLICATION,
        TaskKind.SECURITY,
        TaskKind.DATA_MANAGEMENT,
    ),
)


def _finding(rule: str, slot: Slot, subjects: tuple[str, ...] = ()) -> Finding:
    return Finding(
        section=SECTION_BY_RULE[rule],
        rule=rule,
        severity=SEVERITY_BY_RULE[rule],
        slot=slot,
        subjects=subjects,
        message=render.finding_message(rule, slot, subjects),
    )


def rule1_task_gaps(map_: ResponsibilityMap) -> list[Finding]:
    """Section 1: task areas left to nobody."""
    return [_finding(RULE_TASK_GAP, task)
            for task in TaskKind if map_.tasks[task].is_nobody]


def rule2_evaluation_independence(
    map_: ResponsibilityMap, tables: RuleMappingTables = DEFAULT_TABLES,
) -> list[Finding]:
    """Section 2: evaluators who also hold an operational task.

    One finding per conflicting task, naming all overlapping actors.
    Nobody-assigned slots never overlap; their emptiness is section 1's
    business.
    """
    evaluators = set(map_.tasks[TaskKind.EVALUATION].assignees)
    findings = []
    for task in tables.eval_conflict_tasks:
        overlap = [name for name in map_.tasks[task].assignees if name in evaluators]
        if overlap:
            findings.append(_finding(RULE_EVAL_INDEPENDENCE, task, tuple(overlap)))
    return findings


def rule3_responsibility_without_task(
    map_: ResponsibilityMap, tables: RuleMappingTables = DEFAULT_TABLES,
) -> list[Finding]:
    """Section 3: responsibility holders who lack the matching task.

    Skipped entirely when the matching task is assigned to nobody: that
    emptiness is already a section-1 gap, and piling a conflict per holder
    on top would report the same hole twice.
    """
    findings = []
    for resp in ResponsibilityKind:
        task_assignment = map_.tasks[tables.resp_to_task[resp]]
        if task_assignment.is_nobody:
            continue
        for name in map_.responsibilities[resp].assignees:
            if name not in task_assignment:
                findings.append(_finding(RULE_RESP_WITHOUT_TASK, resp, (name,)))
    return findings


def rule4_responsibility_gaps_and_overlaps(map_: ResponsibilityMap) -> list[Finding]:
    """Section 4: unassigned responsibility areas, plus shared ones.

    Sharing is advisory only; it can be fine, but is worth a look.
    """
    findings = []
    for resp in ResponsibilityKind:
        assignment = map_.responsibilities[resp]
        if assignment.is_nobody:
            findings.append(_finding(RULE_RESP_GAP, resp))
        elif len(assignment.assignees) >= 2:
            findings.append(_finding(RULE_RESP_OVERLAP, resp, assignment.assignees))
    return findings


def rule5_responsibility_without_authority(
    map_: ResponsibilityMap, tables: RuleMappingTables = DEFAULT_TABLES,
) -> list[Finding]:
    """Section 5: responsibility holders who cannot effect change.

    Unlike section 3, an authority slot assigned to nobody does not mute
    the check: no other rule reports empty authorities, and a holder whose
    required power belongs to no one at all is the starkest mismatch.
    """
    findings = []
    for resp in ResponsibilityKind:
        authority_assignment = map_.authorities[tables.resp_to_authority[resp]]
        for name in map_.responsibilities[resp].assignees:
            if name not in authority_assignment:
                findings.append(_finding(RULE_RESP_WITHOUT_AUTHORITY, resp, (name,)))
    return findings


def rule6_missing_channels(
    map_: ResponsibilityMap, tables: RuleMappingTables = DEFAULT_TABLES,
) -> list[Finding]:
    """Section 6: required communication paths that do not exist.

    One finding per required task pair and unordered actor pair; a person
    holding both tasks needs no channel to themselves, and a pair lacking
    a channel is reported once even if both actors hold both tasks.
    """
    findings = []
    for first_task, second_task in tables.required_channels:
        seen: set[frozenset[str]] = set()
        for a in map_.tasks[first_task].assignees:
            for b in map_.tasks[second_task].assignees:
                if a == b:
                    continue
                key = frozenset((a, b))
                if key in seen or map_.has_channel(a, b):
                    continue
                seen.add(key)
                findings.append(_finding(RULE_MISSING_CHANNEL, (first_task, second_task), (a, b)))
    return findings


def analyze(map_: ResponsibilityMap, tables: RuleMappingTables = DEFAULT_TABLES) -> Report:
    """Run all six rules and assemble the canonical report.

    Pure function of (map, tables, engine version): repeated calls yield
    byte-identical canonical reports.
    """
    findings = [
        *rule1_task_gaps(map_),
        *rule2_evaluation_independence(map_, tables),
        *rule3_responsibility_without_task(map_, tables),
        *rule4_responsibility_gaps_and_overlaps(map_),
        *rule5_responsibility_without_authority(map_, tables),
        *rule6_missing_channels(map_, tables),
    ]
    findings.sort(key=lambda f: f.sort_key)
    return Report(
        engine_version=ENGINE_VERSION,
        map_digest=mapdoc.canonical_digest(map_),
        findings=tuple(findings),
    )


def diff_reports(before: Report, after: Report) -> ReportDelta:
    """Findings present only in ``before`` (resolved) or only in ``after``
    (introduced), compared by identity tuple."""
    if before.engine_version != after.engine_version:
        raise EngineVersionMismatch(
            f"cannot diff reports from engines {before.engine_version} and {after.engine_version}")
    before_ids = {f.identity for f in before.findings}
    after_ids = {f.identity for f in after.findings}
    return ReportDelta(
        engine_version=before.engine_version,
        resolved=tuple(f for f in before.findings if f.identity not in after_ids),
        introduced=tuple(f for f in after.findings if f.identity not in before_ids),
    )


def apply_map_delta(map_: ResponsibilityMap, delta: MapDelta) -> ResponsibilityMap:
    """Build and validate the hypothetical map a delta describes.

    The input map is untouched; validation failures (unknown actors in the
    delta, self-pairing channels, ...) surface as MapValidationError.
    """
    tasks = {**map_.tasks, **delta.tasks}
    responsibilities = {**map_.responsibilities, **delta.responsibilities}
    authorities = {**map_.authorities, **delta.authorities}
    removed = {frozenset(p) for p in delta.channels_remove}
    channels = [p for p in map_.channels if frozenset(p) not in removed]
    channels.extend(delta.channels_add)
    return validate_map(
        title=map_.title,
        actors=map_.actors,
        tasks=tasks,
        responsibilities=responsibilities,
        authorities=authorities,
        channels=channels,
        format_version=map_.format_version,
        notes=map_.notes,
    )


def what_if(
    map_: ResponsibilityMap, delta: MapDelta, tables: RuleMappingTables = DEFAULT_TABLES,
) -> ReportDelta:
    """Preview which findings a hypothetical reassignment would resolve or
    introduce, without touching the original map."""
    return diff_reports(analyze(map_, tables), analyze(apply_map_delta(map_, delta), tables))
