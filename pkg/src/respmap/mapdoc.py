"""On-disk interchange format for maps and reports.

Maps travel as UTF-8 JSON documents (conventional extension
``.respmap.json``), structured reports as ``.report.json``.  Serialization
is canonical: fixed key order, slots in declaration order, assignee arrays
in registry order, channels orientation-normalised and sorted, 2-space
indentation, trailing newline.  Equal maps therefore serialize to equal
bytes, which is what makes digests and golden files stable.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any, Mapping

from .model import (
    Actor,
    Assignment,
    AuthorityKind,
    Finding,
    Issue,
    MapDelta,
    MapFormatError,
    NOBODY_TOKEN,
    Report,
    ResponsibilityKind,
    ResponsibilityMap,
    RULE_SLOT_FAMILY,
    SECTION_BY_RULE,
    SEVERITY_BY_RULE,
    Severity,
    TASK_ORDER,
    TaskKind,
    validate_map,
)

STRICT = "strict"
LENIENT = "lenient"

SYNTAX_ERROR = "SyntaxError"
MISSING_ENUM_KEY = "MissingEnumKey"
UNKNOWN_ENUM_KEY = "UnknownEnumKey"
UNKNOWN_KEY = "UnknownKey"

_TOP_LEVEL_KEYS = ("format_version", "title", "notes", "actors",
                   "tasks", "responsibilities", "authorities", "channels")

_FAMILIES: tuple[tuple[str, type], ...] = (
    ("tasks", TaskKind),
    ("responsibilities", ResponsibilityKind),
    ("authorities", AuthorityKind),
)

#: Which input block of the questionnaire owns which document key.
BLOCK_KEYS = {1: "actors", 2: "tasks", 3: "responsibilities", 4: "authorities", 5: "channels"}


# --- serialization ------------------------------------------------------------

def _assignment_value(assignment: Assignment) -> str | list[str]:
    return NOBODY_TOKEN if assignment.is_nobody else list(assignment.assignees)


def map_to_document(map_: ResponsibilityMap) -> dict:
    """The canonical plain-dict form of a validated map."""
    doc: dict[str, Any] = {
        "format_version": map_.format_version,
        "title": map_.title,
    }
    if map_.notes:
        doc["notes"] = map_.notes
    doc["actors"] = [
        {"name": a.name, "kind": a.kind} if a.kind else {"name": a.name}
        for a in map_.actors
    ]
    doc["tasks"] = {k.value: _assignment_value(map_.tasks[k]) for k in TaskKind}
    doc["responsibilities"] = {
        k.value: _assignment_value(map_.responsibilities[k]) for k in ResponsibilityKind}
    doc["authorities"] = {
        k.value: _assignment_value(map_.authorities[k]) for k in AuthorityKind}
    doc["channels"] = [list(pair) for pair in sorted(map_.channels)]
    return doc


def serialize_map(map_: ResponsibilityMap) -> bytes:
    return (json.dumps(map_to_document(map_), ensure_ascii=False, indent=2) + "\n").encode("utf-8")


def canonical_digest(map_: ResponsibilityMap) -> str:
    """SHA-256 over the canonical serialization; equal maps share it."""
    return hashlib.sha256(serialize_map(map_)).hexdigest()


# --- parsing ------------------------------------------------------------------

def _decode(raw: bytes | str) -> Any:
    if isinstance(raw, bytes):
        try:
            raw = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MapFormatError([Issue(SYNTAX_ERROR, "", f"input is not UTF-8: {exc}")]) from exc
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise MapFormatError([Issue(
            SYNTAX_ERROR, "",
            f"line {exc.lineno}, column {exc.colno}: {exc.msg}",
        )]) from exc


def _walk_actors(value: Any, issues: list[Issue], warnings: list[str],
                 mode: str) -> list[Actor]:
    if not isinstance(value, list):
        issues.append(Issue(SYNTAX_ERROR, "actors", "expected an array of actor objects"))
        return []
    actors: list[Actor] = []
    for i, entry in enumerate(value):
        path = f"actors[{i}]"
        if not isinstance(entry, dict):
            issues.append(Issue(SYNTAX_ERROR, path, 'expected an object like {"name": ...}'))
            continue
        unknown = sorted(set(entry) - {"name", "kind"})
        if unknown:
            note = f"{path}: ignoring unknown keys {unknown}"
            if mode == STRICT:
                issues.append(Issue(UNKNOWN_KEY, path, f"unknown keys {unknown}"))
            else:
                warnings.append(note)
        name = entry.get("name")
        if not isinstance(name, str):
            issues.append(Issue(SYNTAX_ERROR, f"{path}.name", "actor name must be a string"))
            continue
        kind = entry.get("kind")
        if kind is not None and not isinstance(kind, str):
            issues.append(Issue(SYNTAX_ERROR, f"{path}.kind", "actor kind must be a string"))
            continue
        actors.append(Actor(name, kind))
    return actors


def _walk_assignments(
    key: str, enum: type, value: Any, issues: list[Issue], warnings: list[str],
    mode: str, partial: bool,
) -> dict:
    out: dict = {}
    if not isinstance(value, dict):
        issues.append(Issue(SYNTAX_ERROR, key, "expected an object of slot assignments"))
        return out
    tokens = {member.value: member for member in enum}
    for token, slot_value in value.items():
        path = f"{key}.{token}"
        member = tokens.get(token)
        if member is None:
            if mode == STRICT:
                issues.append(Issue(UNKNOWN_ENUM_KEY, path, f"unknown {key} slot {token!r}"))
            else:
                warnings.append(f"{path}: ignoring unknown slot")
            continue
        if isinstance(slot_value, str):
            if slot_value != NOBODY_TOKEN:
                issues.append(Issue(
                    SYNTAX_ERROR, path,
                    f"a string value must be the literal {NOBODY_TOKEN!r}; "
                    "use an array for actor names"))
                continue
            out[member] = None
        elif isinstance(slot_value, list):
            if not slot_value:
                issues.append(Issue(
                    SYNTAX_ERROR, path,
                    f"an assignee array must not be empty; use {NOBODY_TOKEN!r} instead"))
                continue
            if not all(isinstance(item, str) for item in slot_value):
                issues.append(Issue(SYNTAX_ERROR, path, "assignee entries must be strings"))
                continue
            out[member] = slot_value
        else:
            issues.append(Issue(
                SYNTAX_ERROR, path,
                f"value must be {NOBODY_TOKEN!r} or an array of actor names"))
    if not partial:
        for token, member in tokens.items():
            if member not in out and not any(
                    i.path == f"{key}.{token}" for i in issues):
                issues.append(Issue(MISSING_ENUM_KEY, f"{key}.{token}", "slot is missing"))
    return out


def _walk_channels(value: Any, issues: list[Issue]) -> list[list[str]]:
    if not isinstance(value, list):
        issues.append(Issue(SYNTAX_ERROR, "channels", "expected an array of actor-name pairs"))
        return []
    pairs: list[list[str]] = []
    for i, entry in enumerate(value):
        path = f"channels[{i}]"
        if (not isinstance(entry, list) or len(entry) != 2
                or not all(isinstance(item, str) for item in entry)):
            issues.append(Issue(SYNTAX_ERROR, path, "expected a pair of two actor names"))
            continue
        pairs.append(entry)
    return pairs


def _parse_document(
    raw: bytes | str, mode: str, partial: bool, warnings: list[str] | None,
) -> tuple[ResponsibilityMap, frozenset[int]]:
    if mode not in (STRICT, LENIENT):
        raise ValueError(f"unknown parse mode {mode!r}")
    if warnings is None:
        warnings = []
    data = _decode(raw)
    if not isinstance(data, dict):
        raise MapFormatError([Issue(SYNTAX_ERROR, "", "top level must be a JSON object")])

    issues: list[Issue] = []
    unknown = sorted(set(data) - set(_TOP_LEVEL_KEYS))
    if unknown:
        if mode == STRICT:
            issues.append(Issue(UNKNOWN_KEY, "", f"unknown top-level keys {unknown}"))
        else:
            warnings.append(f"ignoring unknown top-level keys {unknown}")

    required = () if partial else ("format_version", "title", "actors",
                                   "tasks", "responsibilities", "authorities", "channels")
    for key in required:
        if key not in data:
            issues.append(Issue(SYNTAX_ERROR, key, "required key is missing"))

    format_version = data.get("format_version", 1)
    if not isinstance(format_version, int) or isinstance(format_version, bool):
        issues.append(Issue(SYNTAX_ERROR, "format_version", "must be an integer"))
        format_version = 1

    title = data.get("title", "")
    if not isinstance(title, str):
        issues.append(Issue(SYNTAX_ERROR, "title", "must be a string"))
        title = ""

    notes = data.get("notes")
    if notes is not None and not isinstance(notes, str):
        issues.append(Issue(SYNTAX_ERROR, "notes", "must be a string"))
        notes = None

    actors = _walk_actors(data.get("actors", []), issues, warnings, mode)
    families = {}
    for key, enum in _FAMILIES:
        families[key] = _walk_assignments(
            key, enum, data.get(key, {}), issues, warnings, mode, partial)
    channels = _walk_channels(data.get("channels", []), issues)

    if issues:
        raise MapFormatError(issues)

    map_ = validate_map(
        title=title,
        actors=actors,
        tasks=families["tasks"],
        responsibilities=families["responsibilities"],
        authorities=families["authorities"],
        channels=channels,
        format_version=format_version,
        notes=notes,
    )
    present = frozenset(block for block, key in BLOCK_KEYS.items() if key in data)
    return map_, present


def parse_map(raw: bytes | str, mode: str = STRICT,
              warnings: list[str] | None = None) -> ResponsibilityMap:
    """Parse and validate a complete map document.

    Structural problems raise :class:`MapFormatError`; documents that read
    fine but violate model invariants raise
    :class:`~respmap.model.MapValidationError`.  In lenient mode, unknown
    keys are appended to ``warnings`` (if given) instead of failing.
    """
    map_, _ = _parse_document(raw, mode, partial=False, warnings=warnings)
    return map_


def parse_draft_document(
    raw: bytes | str, mode: str = STRICT, warnings: list[str] | None = None,
) -> tuple[ResponsibilityMap, frozenset[int]]:
    """Parse a possibly partial map document.

    Missing blocks and missing slots count as unanswered and default to
    nobody; referential closure is still enforced.  Returns the map plus
    the set of questionnaire blocks (1-5) present in the document.
    """
    return _parse_document(raw, mode, partial=True, warnings=warnings)


# --- block payloads and deltas (service plumbing) -----------------------------

def parse_block_payload(block: int, raw: bytes | str) -> dict:
    """Parse the body of a block update into validate_map-ready kwargs."""
    data = _decode(raw)
    if not isinstance(data, dict):
        raise MapFormatError([Issue(SYNTAX_ERROR, "", "payload must be a JSON object")])
    key = BLOCK_KEYS[block]
    unknown = sorted(set(data) - {key})
    issues: list[Issue] = []
    if unknown:
        issues.append(Issue(UNKNOWN_KEY, "", f"block {block} expects only {key!r}, got {unknown}"))
    if key not in data:
        issues.append(Issue(SYNTAX_ERROR, key, f"block {block} payload needs a {key!r} key"))
    if issues:
        raise MapFormatError(issues)
    warnings: list[str] = []
    if key == "actors":
        actors = _walk_actors(data[key], issues, warnings, STRICT)
        if issues:
            raise MapFormatError(issues)
        return {"actors": actors}
    if key == "channels":
        channels = _walk_channels(data[key], issues)
        if issues:
            raise MapFormatError(issues)
        return {"channels": channels}
    enum = dict(_FAMILIES)[key]
    slots = _walk_assignments(key, enum, data[key], issues, warnings, STRICT, partial=True)
    if issues:
        raise MapFormatError(issues)
    return {key: slots}


def parse_map_delta(raw: bytes | str) -> MapDelta:
    """Parse a what-if delta: slot overrides plus channel additions/removals."""
    data = _decode(raw)
    if not isinstance(data, dict):
        raise MapFormatError([Issue(SYNTAX_ERROR, "", "delta must be a JSON object")])
    allowed = {"tasks", "responsibilities", "authorities", "channels_add", "channels_remove"}
    issues: list[Issue] = []
    unknown = sorted(set(data) - allowed)
    if unknown:
        issues.append(Issue(UNKNOWN_KEY, "", f"unknown delta keys {unknown}"))

    warnings: list[str] = []
    families: dict[str, dict] = {}
    for key, enum in _FAMILIES:
        slots = _walk_assignments(
            key, enum, data.get(key, {}), issues, warnings, STRICT, partial=True)
        families[key] = {
            member: Assignment(tuple(value)) if value else Assignment()
            for member, value in slots.items()
        }
    added = _walk_channels(data.get("channels_add", []), issues)
    removed = _walk_channels(data.get("channels_remove", []), issues)
    if issues:
        raise MapFormatError(issues)
    return MapDelta(
        tasks=families["tasks"],
        responsibilities=families["responsibilities"],
        authorities=families["authorities"],
        channels_add=frozenset((min(a, b), max(a, b)) for a, b in added),
        channels_remove=frozenset((min(a, b), max(a, b)) for a, b in removed),
    )


# --- structured reports -------------------------------------------------------

_ALL_SLOT_TOKENS: Mapping[str, Any] = {
    **{m.value: m for m in TaskKind},
    **{m.value: m for m in ResponsibilityKind},
    **{m.value: m for m in AuthorityKind},
}


def _parse_slot(rule: str, token: Any, path: str, issues: list[Issue]):
    if not isinstance(token, str):
        issues.append(Issue(SYNTAX_ERROR, path, "slot must be a string"))
        return None
    family = RULE_SLOT_FAMILY.get(rule)
    if isinstance(family, tuple):
        parts = token.split("+")
        tasks = [t for t in (_ALL_SLOT_TOKENS.get(p) for p in parts) if isinstance(t, TaskKind)]
        if len(parts) != 2 or len(tasks) != 2 or TASK_ORDER[tasks[0]] >= TASK_ORDER[tasks[1]]:
            issues.append(Issue(SYNTAX_ERROR, path, f"invalid task pair {token!r}"))
            return None
        return (tasks[0], tasks[1])
    slot = _ALL_SLOT_TOKENS.get(token)
    if family is None or not isinstance(slot, family):
        issues.append(Issue(SYNTAX_ERROR, path, f"slot {token!r} does not fit rule {rule!r}"))
        return None
    return slot


def parse_report(raw: bytes | str) -> Report:
    """Parse a structured report document back into a Report."""
    data = _decode(raw)
    issues: list[Issue] = []
    if not isinstance(data, dict):
        raise MapFormatError([Issue(SYNTAX_ERROR, "", "top level must be a JSON object")])
    engine_version = data.get("engine_version")
    map_digest = data.get("map_digest")
    sections = data.get("sections")
    if not isinstance(engine_version, str):
        issues.append(Issue(SYNTAX_ERROR, "engine_version", "must be a string"))
    if not isinstance(map_digest, str):
        issues.append(Issue(SYNTAX_ERROR, "map_digest", "must be a string"))
    if not isinstance(sections, list):
        issues.append(Issue(SYNTAX_ERROR, "sections", "must be an array"))
        raise MapFormatError(issues)

    findings: list[Finding] = []
    for si, section in enumerate(sections):
        spath = f"sections[{si}]"
        if not isinstance(section, dict) or not isinstance(section.get("findings"), list):
            issues.append(Issue(SYNTAX_ERROR, spath, "expected a section object with findings"))
            continue
        number = section.get("section")
        for fi, entry in enumerate(section["findings"]):
            path = f"{spath}.findings[{fi}]"
            if not isinstance(entry, dict):
                issues.append(Issue(SYNTAX_ERROR, path, "expected a finding object"))
                continue
            rule = entry.get("rule")
            if rule not in SECTION_BY_RULE or SECTION_BY_RULE[rule] != number:
                issues.append(Issue(SYNTAX_ERROR, path, f"rule {rule!r} does not belong here"))
                continue
            slot = _parse_slot(rule, entry.get("slot"), f"{path}.slot", issues)
            subjects = entry.get("subjects")
            message = entry.get("message")
            severity = entry.get("severity")
            if (slot is None or not isinstance(subjects, list)
                    or not all(isinstance(s, str) for s in subjects)
                    or not isinstance(message, str)
                    or severity != SEVERITY_BY_RULE[rule].value):
                issues.append(Issue(SYNTAX_ERROR, path, "malformed finding"))
                continue
            findings.append(Finding(
                section=SECTION_BY_RULE[rule],
                rule=rule,
                severity=Severity(severity),
                slot=slot,
                subjects=tuple(subjects),
                message=message,
            ))
    if issues:
        raise MapFormatError(issues)
    try:
        return Report(engine_version=engine_version, map_digest=map_digest,
                      findings=tuple(findings))
    except ValueError as exc:
        raise MapFormatError([Issue(SYNTAX_ERROR, "sections", str(exc))]) from exc
