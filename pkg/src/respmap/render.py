"""Message catalogs and report rendering.

Two output styles: ``human`` (the six numbered problem sections as plain
text) and ``structured`` (canonical JSON, byte-stable).  Two locales ship,
German (the tool's home language, default) and English.  Finding identity
never depends on wording, so switching locales can never change what was
found.
"""

from __future__ import annotations

import json

from .model import (
    Finding,
    Report,
    ReportDelta,
    ResponsibilityKind,
    RULE_EVAL_INDEPENDENCE,
    RULE_MISSING_CHANNEL,
    RULE_RESP_GAP,
    RULE_RESP_OVERLAP,
    RULE_RESP_WITHOUT_AUTHORITY,
    RULE_RESP_WITHOUT_TASK,
    RULE_TASK_GAP,
    Severity,
    Slot,
    TaskKind,
)

DEFAULT_LOCALE = "de"

HUMAN = "human"
STRUCTURED = "structured"


class UnknownLocale(ValueError):
    """The requested locale has no shipped message catalog."""


_DE_TASK_GAP_PHRASES = {
    TaskKind.ADOPTION_DECISION: "über die Einführung oder den Weiterbetrieb des Algorithmensystems entscheidet",
    TaskKind.DEVELOPMENT: "das Algorithmensystem entwickelt",
    TaskKind.IMPLEMENTATION: "das Algorithmensystem implementiert",
    TaskKind.APPLICATION: "das Algorithmensystem anwendet",
    TaskKind.SECURITY: "für die Sicherheit des Algorithmensystems sorgt",
    TaskKind.DATA_MANAGEMENT: "die Datenverwaltung übernimmt",
    TaskKind.EVALUATION: "das Algorithmensystem evaluiert",
}

_DE_TASK_NOUNS = {
    TaskKind.ADOPTION_DECISION: "die Entscheidung über die Einführung",
    TaskKind.DEVELOPMENT: "die Entwicklung des Algorithmensystems",
    TaskKind.IMPLEMENTATION: "die Implementierung des Algorithmensystems",
    TaskKind.APPLICATION: "die Anwendung des Algorithmensystems",
    TaskKind.SECURITY: "die Sicherheit des Algorithmensystems",
    TaskKind.DATA_MANAGEMENT: "die Datenverwaltung",
    TaskKind.EVALUATION: "die Evaluierung",
}

_DE_TASK_LABELS = {
    TaskKind.ADOPTION_DECISION: "Entscheidung über die Einführung",
    TaskKind.DEVELOPMENT: "Entwicklung",
    TaskKind.IMPLEMENTATION: "Implementierung",
    TaskKind.APPLICATION: "Anwendung",
    TaskKind.SECURITY: "Systemsicherheit",
    TaskKind.DATA_MANAGEMENT: "Datenverwaltung",
    TaskKind.EVALUATION: "Evaluierung",
}

_DE_RESP_NOUNS = {
    ResponsibilityKind.TARGETS_NOT_MET: "die Erfüllung der Zielvorgaben",
    ResponsibilityKind.POOR_INTEGRATION: "die Integration des Systems in die organisatorischen Prozesse und Strukturen",
    ResponsibilityKind.DATA_PROTECTION_COMPLAINTS: "Probleme mit datenschutzrechtlichen Beschwerden",
    ResponsibilityKind.SECURITY_BREACH: "Verletzungen der Systemsicherheit",
    ResponsibilityKind.MISAPPLICATION: "Fälle falscher Anwendung des Algorithmensystems",
}

_EN_TASK_GAP_PHRASES = {
    TaskKind.ADOPTION_DECISION: "decides on the adoption or continued use of the algorithmic system",
    TaskKind.DEVELOPMENT: "develops the algorithmic system",
    TaskKind.IMPLEMENTATION: "implements the algorithmic system",
    TaskKind.APPLICATION: "applies the algorithmic system",
    TaskKind.SECURITY: "takes care of the security of the algorithmic system",
    TaskKind.DATA_MANAGEMENT: "manages the data",
    TaskKind.EVALUATION: "evaluates the algorithmic system",
}

_EN_TASK_NOUNS = {
    TaskKind.ADOPTION_DECISION: "the adoption decision",
    TaskKind.DEVELOPMENT: "the development of the algorithmic system",
    TaskKind.IMPLEMENTATION: "the implementation of the algorithmic system",
    TaskKind.APPLICATION: "the application of the algorithmic system",
    TaskKind.SECURITY: "the security of the algorithmic system",
    TaskKind.DATA_MANAGEMENT: "the data management",
    TaskKind.EVALUATION: "the evaluation",
}

_EN_TASK_LABELS = {
    TaskKind.ADOPTION_DECISION: "adoption decision",
    TaskKind.DEVELOPMENT: "development",
    TaskKind.IMPLEMENTATION: "implementation",
    TaskKind.APPLICATION: "application",
    TaskKind.SECURITY: "system security",
    TaskKind.DATA_MANAGEMENT: "data management",
    TaskKind.EVALUATION: "evaluation",
}

_EN_RESP_NOUNS = {
    ResponsibilityKind.TARGETS_NOT_MET: "meeting the system's targets",
    ResponsibilityKind.POOR_INTEGRATION: "the integration of the system into the organisation's processes and structures",
    ResponsibilityKind.DATA_PROTECTION_COMPLAINTS: "data protection complaints",
    ResponsibilityKind.SECURITY_BREACH: "breaches of system security",
    ResponsibilityKind.MISAPPLICATION: "cases of misapplication of the algorithmic system",
}

CATALOGS: dict[str, dict] = {
    "de": {
        "report_title": "Verantwortungsanalyse",
        "untitled": "(ohne Titel)",
        "engine_line": "Engine-Version: {version} | Karten-Prüfsumme: {digest}",
        "disclaimer": (
            "Diese Problemliste ist als Anregung zu verstehen, genauer darüber "
            "nachzudenken, ob diese Probleme im konkreten Fall wirklich bestehen "
            "und welche Auswirkungen sie haben können, und erhebt insbesondere "
            "keinen Anspruch auf Vollständigkeit."
        ),
        "no_findings": "Wir konnten keine offensichtlichen Probleme dieser Art identifizieren.",
        "section_heading": "Problemkreis {number}: {title}",
        "section_titles": {
            1: "Lücken in der Aufgabenverteilung",
            2: "Fehlende Unabhängigkeit der Evaluierung",
            3: "Jemand ist für Aufgaben verantwortlich, die nicht ihr/ihm zugeteilt sind",
            4: "Lücken in der Verantwortung",
            5: "Verantwortung ohne passende Befugnisse",
            6: "Fehlende Kommunikations- und Beschwerdewege",
        },
        "severity_labels": {
            Severity.GAP: "Lücke",
            Severity.CONFLICT: "Konflikt",
            Severity.ADVISORY: "Hinweis",
        },
        "delta_resolved": "Behobene Probleme:",
        "delta_introduced": "Neu auftretende Probleme:",
        "delta_empty": "Keine Änderungen.",
        "and_word": "und",
        "task_gap_phrases": _DE_TASK_GAP_PHRASES,
        "task_nouns": _DE_TASK_NOUNS,
        "task_labels": _DE_TASK_LABELS,
        "resp_nouns": _DE_RESP_NOUNS,
        "msg_task_gap": "Es ist möglichst bald zu klären, wer {phrase}.",
        "msg_eval_independence": (
            "Da die gleiche Person oder Gruppe für die Evaluierung wie für "
            "{task_noun} zuständig ist, kann eine unabhängige Evaluierung nicht "
            "gewährleistet werden."
        ),
        "msg_resp_without_task": (
            "{actor} ist für {resp_noun} verantwortlich, ohne dass ihr/ihm "
            "dieser Bereich als Aufgabe zugeteilt ist."
        ),
        "msg_resp_gap": (
            "Da für {resp_noun} niemand zuständig ist, besteht hier potenziell "
            "eine Verantwortungslücke."
        ),
        "msg_resp_overlap": (
            "Potenziell kommt es zu einer Überschneidung von Verantwortung, weil "
            "für {resp_noun} mit {actors} mehrere verantwortlich sind."
        ),
        "msg_resp_without_authority": (
            "{actor} ist für {resp_noun} verantwortlich, ohne in diesem Bereich "
            "Änderungen veranlassen zu können."
        ),
        "msg_missing_channel": (
            "Zwischen {actor_a} ({task_a}) und {actor_b} ({task_b}) fehlt ein "
            "Kommunikations- bzw. Beschwerdeweg."
        ),
    },
    "en": {
        "report_title": "Responsibility analysis",
        "untitled": "(untitled)",
        "engine_line": "Engine version: {version} | Map digest: {digest}",
        "disclaimer": (
            "This list of problems is meant as a prompt to think more carefully "
            "about whether these problems really exist in your specific case and "
            "what consequences they might have; in particular, it makes no claim "
            "to completeness."
        ),
        "no_findings": "We could not identify any obvious problems of this kind.",
        "section_heading": "Problem area {number}: {title}",
        "section_titles": {
            1: "Gaps in the assignment of tasks",
            2: "Lack of independent evaluation",
            3: "Someone is responsible for areas not assigned to them as a task",
            4: "Gaps in the assignment of responsibility",
            5: "Responsibility without the matching authority",
            6: "Missing communication and complaint channels",
        },
        "severity_labels": {
            Severity.GAP: "gap",
            Severity.CONFLICT: "conflict",
            Severity.ADVISORY: "advisory",
        },
        "delta_resolved": "Resolved findings:",
        "delta_introduced": "Introduced findings:",
        "delta_empty": "No changes.",
        "and_word": "and",
        "task_gap_phrases": _EN_TASK_GAP_PHRASES,
        "task_nouns": _EN_TASK_NOUNS,
        "task_labels": _EN_TASK_LABELS,
        "resp_nouns": _EN_RESP_NOUNS,
        "msg_task_gap": "It should be clarified as soon as possible who {phrase}.",
        "msg_eval_independence": (
            "Because the same person or group is in charge of the evaluation as "
            "well as {task_noun}, an independent evaluation cannot be guaranteed."
        ),
        "msg_resp_without_task": (
            "{actor} is responsible for {resp_noun} without having this area "
            "assigned as a task."
        ),
        "msg_resp_gap": (
            "Since nobody is in charge of {resp_noun}, there is a potential "
            "responsibility gap here."
        ),
        "msg_resp_overlap": (
            "Responsibility potentially overlaps: with {actors}, several people "
            "are responsible for {resp_noun}."
        ),
        "msg_resp_without_authority": (
            "{actor} is responsible for {resp_noun} without being able to "
            "effect changes in this area."
        ),
        "msg_missing_channel": (
            "There is no communication or complaint channel between {actor_a} "
            "({task_a}) and {actor_b} ({task_b})."
        ),
    },
}


def _catalog(locale: str) -> dict:
    try:
        return CATALOGS[locale]
    except KeyError:
        raise UnknownLocale(f"no message catalog for locale {locale!r}") from None


def _join_names(names: tuple[str, ...], catalog: dict) -> str:
    if len(names) <= 1:
        return "".join(names)
    return f"{', '.join(names[:-1])} {catalog['and_word']} {names[-1]}"


def finding_message(rule: str, slot: Slot, subjects: tuple[str, ...],
                    locale: str = DEFAULT_LOCALE) -> str:
    """Render the sentence for one finding from its identity parts."""
    cat = _catalog(locale)
    if rule == RULE_TASK_GAP:
        return cat["msg_task_gap"].format(phrase=cat["task_gap_phrases"][slot])
    if rule == RULE_EVAL_INDEPENDENCE:
        return cat["msg_eval_independence"].format(task_noun=cat["task_nouns"][slot])
    if rule == RULE_RESP_WITHOUT_TASK:
        return cat["msg_resp_without_task"].format(
            actor=subjects[0], resp_noun=cat["resp_nouns"][slot])
    if rule == RULE_RESP_GAP:
        return cat["msg_resp_gap"].format(resp_noun=cat["resp_nouns"][slot])
    if rule == RULE_RESP_OVERLAP:
        return cat["msg_resp_overlap"].format(
            resp_noun=cat["resp_nouns"][slot], actors=_join_names(subjects, cat))
    if rule == RULE_RESP_WITHOUT_AUTHORITY:
        return cat["msg_resp_without_authority"].format(
            actor=subjects[0], resp_noun=cat["resp_nouns"][slot])
    if rule == RULE_MISSING_CHANNEL:
        first_task, second_task = slot
        return cat["msg_missing_channel"].format(
            actor_a=subjects[0], task_a=cat["task_labels"][first_task],
            actor_b=subjects[1], task_b=cat["task_labels"][second_task])
    raise ValueError(f"unknown rule id {rule!r}")


def _finding_to_dict(finding: Finding, locale: str) -> dict:
    return {
        "rule": finding.rule,
        "severity": finding.severity.value,
        "slot": finding.slot_token,
        "subjects": list(finding.subjects),
        "message": finding_message(finding.rule, finding.slot, finding.subjects, locale),
    }


def report_to_document(report: Report, locale: str = DEFAULT_LOCALE) -> dict:
    """The structured form of a report, with stable key order."""
    cat = _catalog(locale)
    return {
        "engine_version": report.engine_version,
        "locale": locale,
        "map_digest": report.map_digest,
        "sections": [
            {
                "section": number,
                "title": cat["section_titles"][number],
                "findings": [_finding_to_dict(f, locale) for f in report.section(number)],
            }
            for number in range(1, 7)
        ],
    }


def _canonical_json_bytes(document: dict) -> bytes:
    return (json.dumps(document, ensure_ascii=False, indent=2) + "\n").encode("utf-8")


def _render_human_report(report: Report, locale: str) -> bytes:
    cat = _catalog(locale)
    lines = [
        f"{cat['report_title']}",
        cat["engine_line"].format(version=report.engine_version, digest=report.map_digest),
        "",
        cat["disclaimer"],
    ]
    for number in range(1, 7):
        lines.append("")
        lines.append(cat["section_heading"].format(
            number=number, title=cat["section_titles"][number]))
        findings = report.section(number)
        if not findings:
            lines.append(f"  {cat['no_findings']}")
            continue
        for finding in findings:
            label = cat["severity_labels"][finding.severity]
            message = finding_message(finding.rule, finding.slot, finding.subjects, locale)
            lines.append(f"  - [{label}] {message}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def render_report(report: Report, style: str = HUMAN, locale: str = DEFAULT_LOCALE) -> bytes:
    """Render a report; pure function of (report, style, locale)."""
    _catalog(locale)  # fail fast on unknown locales for either style
    if style == STRUCTURED:
        return _canonical_json_bytes(report_to_document(report, locale))
    if style == HUMAN:
        return _render_human_report(report, locale)
    raise ValueError(f"unknown render style {style!r}")


def delta_to_document(delta: ReportDelta, locale: str = DEFAULT_LOCALE) -> dict:
    def entry(finding: Finding) -> dict:
        return {"section": finding.section, **_finding_to_dict(finding, locale)}

    return {
        "engine_version": delta.engine_version,
        "locale": locale,
        "resolved": [entry(f) for f in delta.resolved],
        "introduced": [entry(f) for f in delta.introduced],
    }


def render_delta(delta: ReportDelta, style: str = HUMAN, locale: str = DEFAULT_LOCALE) -> bytes:
    cat = _catalog(locale)
    if style == STRUCTURED:
        return _canonical_json_bytes(delta_to_document(delta, locale))
    if style != HUMAN:
        raise ValueError(f"unknown render style {style!r}")
    if delta.is_empty:
        return (cat["delta_empty"] + "\n").encode("utf-8")
    lines = []
    for heading, findings in ((cat["delta_resolved"], delta.resolved),
                              (cat["delta_introduced"], delta.introduced)):
        if not findings:
            continue
        if lines:
            lines.append("")
        lines.append(heading)
        for finding in findings:
            label = cat["severity_labels"][finding.severity]
            message = finding_message(finding.rule, finding.slot, finding.subjects, locale)
            lines.append(f"  - [{label}] {message}")
    return ("\n".join(lines) + "\n").encode("utf-8")
