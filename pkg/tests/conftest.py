import itertools
import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # oracle / mapgen helpers

from respmap import (
    Actor,
    AuthorityKind,
    ResponsibilityKind,
    TaskKind,
    analyze,
    parse_map,
    validate_map,
)

FIXTURE_PATH = Path(__file__).parent.parent / "fixtures" / "gutes_beispiel.respmap.json"


def make_clean_map():
    """A fully assigned map with zero findings: one actor per task, matching
    responsibilities and authorities, complete channel graph."""
    names = ["Olga", "Pia", "Quentin", "Rosa", "Sam", "Tana", "Uli"]
    by_task = dict(zip(TaskKind, names))
    return validate_map(
        title="konfliktfrei",
        actors=[Actor(n) for n in names],
        tasks={task: [name] for task, name in by_task.items()},
        responsibilities={
            ResponsibilityKind.TARGETS_NOT_MET: [by_task[TaskKind.ADOPTION_DECISION]],
            ResponsibilityKind.POOR_INTEGRATION: [by_task[TaskKind.IMPLEMENTATION]],
            ResponsibilityKind.DATA_PROTECTION_COMPLAINTS: [by_task[TaskKind.DATA_MANAGEMENT]],
            ResponsibilityKind.SECURITY_BREACH: [by_task[TaskKind.SECURITY]],
            ResponsibilityKind.MISAPPLICATION: [by_task[TaskKind.APPLICATION]],
        },
        authorities={
            AuthorityKind.STOP_SYSTEM: [by_task[TaskKind.ADOPTION_DECISION]],
            AuthorityKind.CHANGE_INTEGRATION_AND_USE: [
                by_task[TaskKind.IMPLEMENTATION], by_task[TaskKind.APPLICATION]],
            AuthorityKind.CORRECT_DATA: [by_task[TaskKind.DATA_MANAGEMENT]],
            AuthorityKind.MANDATE_SECURITY: [by_task[TaskKind.SECURITY]],
        },
        channels=[[a, b] for a, b in itertools.combinations(names, 2)],
    )


@pytest.fixture()
def clean_map():
    return make_clean_map()


@pytest.fixture(scope="session")
def fixture_bytes() -> bytes:
    return FIXTURE_PATH.read_bytes()


@pytest.fixture(scope="session")
def fixture_doc(fixture_bytes) -> dict:
    return json.loads(fixture_bytes)


@pytest.fixture()
def fixture_map(fixture_bytes):
    return parse_map(fixture_bytes)


@pytest.fixture()
def fixture_report(fixture_map):
    return analyze(fixture_map)
