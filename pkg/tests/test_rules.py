"""The six analyses, the aggregator and report diffing."""

import random

import pytest

from mapgen import doc_bytes, random_doc
from oracle import naive_findings, report_identities
from respmap import (
    Actor,
    Assignment,
    AuthorityKind,
    EngineVersionMismatch,
    MapDelta,
    Report,
    ResponsibilityKind,
    Severity,
    TaskKind,
    analyze,
    apply_map_delta,
    diff_reports,
    parse_map,
    serialize_map,
    validate_map,
    what_if,
)
from respmap.rules import (
    rule1_task_gaps,
    rule2_evaluation_independence,
    rule3_responsibility_without_task,
    rule4_responsibility_gaps_and_overlaps,
    rule5_responsibility_without_authority,
    rule6_missing_channels,
)


def identities(findings) -> list[tuple]:
    return [f.identity for f in findings]


class TestRule1:
    def test_fixture_flags_implementation_only(self, fixture_map):
        assert identities(rule1_task_gaps(fixture_map)) == [
            (1, "task-gap", "implementation", ()),
        ]

    def test_fully_assigned_map_is_clean(self):
        m = validate_map(actors=[Actor("Ada")],
                         tasks={t: ["Ada"] for t in TaskKind})
        assert rule1_task_gaps(m) == []

    def test_all_nobody_yields_all_seven_in_order(self):
        m = validate_map()
        assert identities(rule1_task_gaps(m)) == [
            (1, "task-gap", t.value, ()) for t in TaskKind
        ]


class TestRule2:
    def test_fixture_flags_security_and_data_management(self, fixture_map):
        assert identities(rule2_evaluation_independence(fixture_map)) == [
            (2, "eval-independence", "security", ("Azra Jašarević",)),
            (2, "eval-independence", "data_management", ("Azra Jašarević",)),
        ]

    def test_nobody_evaluation_never_overlaps(self):
        m = validate_map(actors=[Actor("Ada")],
                         tasks={t: ["Ada"] for t in TaskKind if t is not TaskKind.EVALUATION})
        assert rule2_evaluation_independence(m) == []

    def test_evaluator_on_every_operational_task(self):
        # The adoption decision never conflicts with evaluating: the people
        # deciding are the audience of the evaluation, not its subject.
        m = validate_map(actors=[Actor("Ada")], tasks={t: ["Ada"] for t in TaskKind})
        flagged = [f.slot for f in rule2_evaluation_independence(m)]
        assert flagged == [
            TaskKind.DEVELOPMENT, TaskKind.IMPLEMENTATION, TaskKind.APPLICATION,
            TaskKind.SECURITY, TaskKind.DATA_MANAGEMENT,
        ]
        assert TaskKind.ADOPTION_DECISION not in flagged

    def test_overlap_names_all_shared_actors(self):
        m = validate_map(
            actors=[Actor("Ada"), Actor("Bo"), Actor("Cem")],
            tasks={TaskKind.EVALUATION: ["Ada", "Bo"],
                   TaskKind.DEVELOPMENT: ["Bo", "Cem", "Ada"]},
        )
        (finding,) = rule2_evaluation_independence(m)
        assert finding.subjects == ("Ada", "Bo")
        assert finding.severity is Severity.CONFLICT


class TestRule3:
    def test_fixture_is_clean(self, fixture_map):
        assert rule3_responsibility_without_task(fixture_map) == []

    def test_all_nobody_responsibilities_are_vacuous(self):
        m = validate_map(actors=[Actor("Ada")], tasks={t: ["Ada"] for t in TaskKind})
        assert rule3_responsibility_without_task(m) == []

    def test_responsible_without_task_is_flagged(self):
        m = validate_map(
            actors=[Actor("Ada"), Actor("Bo")],
            tasks={TaskKind.SECURITY: ["Bo"]},
            responsibilities={ResponsibilityKind.SECURITY_BREACH: ["Ada"]},
        )
        assert identities(rule3_responsibility_without_task(m)) == [
            (3, "resp-without-task", "security_breach", ("Ada",)),
        ]

    def test_muted_while_matching_task_is_unassigned(self):
        # the empty security task is already a section-1 gap; stacking a
        # section-3 conflict on every holder would report the hole twice
        m = validate_map(actors=[Actor("Ada")],
                         responsibilities={ResponsibilityKind.SECURITY_BREACH: ["Ada"]})
        assert rule3_responsibility_without_task(m) == []

    def test_holder_with_matching_task_is_clean(self):
        m = validate_map(
            actors=[Actor("Ada")],
            tasks={TaskKind.SECURITY: ["Ada"]},
            responsibilities={ResponsibilityKind.SECURITY_BREACH: ["Ada"]},
        )
        assert rule3_responsibility_without_task(m) == []


class TestRule4:
    def test_fixture_gap_and_overlap(self, fixture_map):
        assert sorted(identities(rule4_responsibility_gaps_and_overlaps(fixture_map))) == [
            (4, "resp-gap", "data_protection_complaints", ()),
            (4, "resp-overlap", "targets_not_met", ("Azra Jašarević", "Deniz Nacar")),
        ]

    def test_singly_held_responsibilities_are_clean(self):
        m = validate_map(actors=[Actor("Ada")],
                         responsibilities={r: ["Ada"] for r in ResponsibilityKind})
        assert rule4_responsibility_gaps_and_overlaps(m) == []

    def test_severities(self):
        m = validate_map(
            actors=[Actor("Ada"), Actor("Bo")],
            responsibilities={ResponsibilityKind.TARGETS_NOT_MET: ["Ada", "Bo"]},
        )
        findings = rule4_responsibility_gaps_and_overlaps(m)
        by_rule = {f.rule: f.severity for f in findings}
        assert by_rule["resp-gap"] is Severity.GAP
        assert by_rule["resp-overlap"] is Severity.ADVISORY


class TestRule5:
    def test_fixture_is_clean(self, fixture_map):
        assert rule5_responsibility_without_authority(fixture_map) == []

    def test_responsible_without_authority_is_flagged(self):
        m = validate_map(
            actors=[Actor("Ada"), Actor("Bo")],
            responsibilities={ResponsibilityKind.MISAPPLICATION: ["Ada"]},
            authorities={AuthorityKind.CHANGE_INTEGRATION_AND_USE: ["Bo"]},
        )
        assert identities(rule5_responsibility_without_authority(m)) == [
            (5, "resp-without-authority", "misapplication", ("Ada",)),
        ]

    def test_all_nobody_responsibilities_are_vacuous(self):
        m = validate_map(actors=[Actor("Ada")],
                         authorities={a: ["Ada"] for a in AuthorityKind})
        assert rule5_responsibility_without_authority(m) == []

    def test_holder_with_authority_is_clean(self):
        m = validate_map(
            actors=[Actor("Ada")],
            responsibilities={ResponsibilityKind.TARGETS_NOT_MET: ["Ada"]},
            authorities={AuthorityKind.STOP_SYSTEM: ["Ada"]},
        )
        assert rule5_responsibility_without_authority(m) == []

    def test_empty_authority_slot_still_flags_holders(self):
        # no gap rule reports empty authorities, so muting this would hide
        # the starkest mismatch: a power held by no one at all
        m = validate_map(actors=[Actor("Ada")],
                         responsibilities={ResponsibilityKind.TARGETS_NOT_MET: ["Ada"]})
        assert identities(rule5_responsibility_without_authority(m)) == [
            (5, "resp-without-authority", "targets_not_met", ("Ada",)),
        ]


class TestRule6:
    def test_minimal_missing_channel(self):
        m = validate_map(
            actors=[Actor("Xenia"), Actor("Yusuf")],
            tasks={TaskKind.APPLICATION: ["Xenia"], TaskKind.DEVELOPMENT: ["Yusuf"]},
        )
        assert identities(rule6_missing_channels(m)) == [
            (6, "missing-channel", "development+application", ("Yusuf", "Xenia")),
        ]

    def test_complete_channel_graph_is_clean(self, fixture_map):
        names = fixture_map.actor_names
        m = validate_map(
            title=fixture_map.title,
            actors=fixture_map.actors,
            tasks=fixture_map.tasks,
            responsibilities=fixture_map.responsibilities,
            authorities=fixture_map.authorities,
            channels=[[a, b] for i, a in enumerate(names) for b in names[i + 1:]],
        )
        assert rule6_missing_channels(m) == []

    def test_same_holder_of_both_tasks_is_exempt(self):
        m = validate_map(
            actors=[Actor("Ada")],
            tasks={TaskKind.APPLICATION: ["Ada"], TaskKind.DEVELOPMENT: ["Ada"]},
        )
        assert rule6_missing_channels(m) == []

    def test_pair_reported_once_even_when_both_hold_both(self):
        m = validate_map(
            actors=[Actor("Ada"), Actor("Bo")],
            tasks={TaskKind.APPLICATION: ["Ada", "Bo"],
                   TaskKind.DEVELOPMENT: ["Ada", "Bo"]},
        )
        assert identities(rule6_missing_channels(m)) == [
            (6, "missing-channel", "development+application", ("Ada", "Bo")),
        ]


class TestAnalyze:
    def test_empty_map_gaps_only(self):
        report = analyze(validate_map())
        assert len(report.section(1)) == 7
        assert len(report.section(4)) == 5
        assert len(report.findings) == 12

    def test_analyze_is_pure(self, fixture_map):
        assert analyze(fixture_map) == analyze(fixture_map)

    def test_findings_are_totally_ordered(self):
        rng = random.Random(11)
        for _ in range(100):
            report = analyze(parse_map(doc_bytes(random_doc(rng))))
            keys = [f.sort_key for f in report.findings]
            assert keys == sorted(keys)

    def test_finding_count_bounds(self):
        rng = random.Random(12)
        for _ in range(200):
            report = analyze(parse_map(doc_bytes(random_doc(rng))))
            assert len(report.section(1)) <= 7
            assert len(report.section(2)) <= 6
            gaps = [f for f in report.section(4) if f.rule == "resp-gap"]
            assert len(gaps) <= 5

    def test_agrees_with_naive_checker_on_random_maps(self):
        rng = random.Random(13)
        for _ in range(300):
            doc = random_doc(rng)
            report = analyze(parse_map(doc_bytes(doc)))
            assert report_identities(report) == naive_findings(doc)

    def test_rule1_monotonicity(self):
        rng = random.Random(14)
        checked = 0
        while checked < 100:
            doc = random_doc(rng)
            m = parse_map(doc_bytes(doc))
            gapped = [t for t in TaskKind if m.tasks[t].is_nobody]
            if not gapped or not m.actors:
                continue
            checked += 1
            task = rng.choice(gapped)
            before = analyze(m)
            after = analyze(apply_map_delta(m, MapDelta(
                tasks={task: Assignment((rng.choice(m.actor_names),))})))
            before_gaps = {f.identity for f in before.section(1)}
            after_gaps = {f.identity for f in after.section(1)}
            assert before_gaps - after_gaps == {(1, "task-gap", task.value, ())}
            assert after_gaps <= before_gaps

    def test_rules_3_and_5_are_local(self):
        m = validate_map(
            actors=[Actor("Ada"), Actor("Bo")],
            tasks={TaskKind.SECURITY: ["Bo"]},
            responsibilities={ResponsibilityKind.SECURITY_BREACH: ["Ada"],
                              ResponsibilityKind.TARGETS_NOT_MET: ["Ada"]},
        )
        extended = validate_map(
            actors=[Actor("Ada"), Actor("Bo"), Actor("Cem")],
            tasks={TaskKind.SECURITY: ["Bo"]},
            responsibilities={ResponsibilityKind.SECURITY_BREACH: ["Ada"],
                              ResponsibilityKind.TARGETS_NOT_MET: ["Ada"]},
        )
        for rule in (rule3_responsibility_without_task, rule5_responsibility_without_authority):
            assert identities(rule(m)) == identities(rule(extended))

    def test_rename_commutes_with_analyze(self):
        rng = random.Random(15)
        for _ in range(100):
            m = parse_map(doc_bytes(random_doc(rng)))
            sigma = {name: f"β{name}" for name in m.actor_names}
            renamed = validate_map(
                title=m.title,
                actors=[Actor(sigma[a.name], a.kind) for a in m.actors],
                tasks={k: [sigma[n] for n in v] for k, v in m.tasks.items()},
                responsibilities={k: [sigma[n] for n in v]
                                  for k, v in m.responsibilities.items()},
                authorities={k: [sigma[n] for n in v] for k, v in m.authorities.items()},
                channels=[[sigma[a], sigma[b]] for a, b in m.channels],
                notes=m.notes,
            )
            expected = sorted(
                (f.section, f.rule, f.slot_token, tuple(sigma[s] for s in f.subjects))
                for f in analyze(m).findings)
            actual = sorted(f.identity for f in analyze(renamed).findings)
            assert actual == expected


class TestDiffReports:
    def test_self_diff_is_empty(self, fixture_report):
        assert diff_reports(fixture_report, fixture_report).is_empty

    def test_assigning_implementation_resolves_its_gap(self, fixture_map, fixture_report):
        after = analyze(apply_map_delta(fixture_map, MapDelta(
            tasks={TaskKind.IMPLEMENTATION: Assignment(("AG Algorithmen",))})))
        delta = diff_reports(fixture_report, after)
        assert identities(delta.resolved) == [(1, "task-gap", "implementation", ())]
        assert identities(delta.introduced) == []

    def test_adding_evaluator_to_development_introduces_conflict(self, fixture_map,
                                                                 fixture_report):
        after = analyze(apply_map_delta(fixture_map, MapDelta(
            tasks={TaskKind.DEVELOPMENT: Assignment(("TechSolve GmbH", "Azra Jašarević"))})))
        delta = diff_reports(fixture_report, after)
        assert (2, "eval-independence", "development", ("Azra Jašarević",)) in identities(
            delta.introduced)
        assert delta.resolved == ()

    def test_engine_version_mismatch(self, fixture_report):
        other = Report(engine_version="9.9.9", map_digest=fixture_report.map_digest,
                       findings=fixture_report.findings)
        with pytest.raises(EngineVersionMismatch):
            diff_reports(fixture_report, other)

    def test_what_if_equals_analyze_and_subtract(self, fixture_map):
        delta = MapDelta(tasks={TaskKind.IMPLEMENTATION: Assignment(("AG Algorithmen",))})
        via_what_if = what_if(fixture_map, delta)
        by_hand = diff_reports(analyze(fixture_map),
                               analyze(apply_map_delta(fixture_map, delta)))
        assert via_what_if == by_hand

    def test_what_if_leaves_map_unchanged(self, fixture_map):
        before = serialize_map(fixture_map)
        what_if(fixture_map, MapDelta(
            tasks={TaskKind.IMPLEMENTATION: Assignment(("AG Algorithmen",))}))
        assert serialize_map(fixture_map) == before
