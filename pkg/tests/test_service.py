"""HTTP API: sessions, block updates, live reports, what-if, persistence."""

import json

import pytest
from fastapi.testclient import TestClient

from respmap import ENGINE_VERSION, analyze, parse_map, render_report
from respmap.service import create_app


@pytest.fixture()
def client(tmp_path):
    with TestClient(create_app(data_dir=tmp_path / "sessions")) as c:
        yield c


def create_session(client, body: bytes | None = None) -> dict:
    response = client.post("/api/v1/sessions",
                           content=body or b"",
                           headers={"Content-Type": "application/json"})
    assert response.status_code == 201
    return response.json()


def put_block(client, session, block: int, payload: dict):
    return client.put(
        f"/api/v1/sessions/{session['session_id']}/blocks/{block}",
        content=json.dumps(payload),
        headers={"If-Match": str(session["revision"]), "Content-Type": "application/json"},
    )


class TestSessions:
    def test_health(self, client):
        response = client.get("/api/v1/health")
        assert response.status_code == 200
        assert response.json() == {"status": "ok", "engine_version": ENGINE_VERSION}

    def test_blank_session(self, client):
        info = create_session(client)
        assert info["revision"] == 1
        assert info["draft"] is True
        report = client.get(f"/api/v1/sessions/{info['session_id']}/report").json()
        counts = {s["section"]: len(s["findings"]) for s in report["sections"]}
        assert counts == {1: 7, 2: 0, 3: 0, 4: 5, 5: 0, 6: 0}

    def test_fixture_session_echoes_the_fixture(self, client, fixture_bytes, fixture_doc):
        info = create_session(client, fixture_bytes)
        assert info["draft"] is False
        echoed = client.get(f"/api/v1/sessions/{info['session_id']}").json()
        assert echoed["map"] == fixture_doc

    def test_invalid_initial_map_rejected(self, client):
        response = client.post(
            "/api/v1/sessions",
            content=json.dumps({"tasks": {"security": ["Ghost"]}}),
            headers={"Content-Type": "application/json"})
        assert response.status_code == 400
        codes = [i["code"] for i in response.json()["error"]["issues"]]
        assert "UnknownActorReference" in codes

    def test_unknown_session_is_404(self, client):
        for path in ("", "/report", "/export"):
            response = client.get(f"/api/v1/sessions/{'x' * 22}{path}")
            assert response.status_code == 404

    def test_persistence_across_app_instances(self, tmp_path, fixture_bytes):
        with TestClient(create_app(data_dir=tmp_path / "d")) as first:
            info = create_session(first, fixture_bytes)
        with TestClient(create_app(data_dir=tmp_path / "d")) as second:
            exported = second.get(f"/api/v1/sessions/{info['session_id']}/export")
            assert exported.content == fixture_bytes

    def test_no_stray_temp_files(self, tmp_path, fixture_bytes):
        data_dir = tmp_path / "d"
        with TestClient(create_app(data_dir=data_dir)) as client:
            info = create_session(client, fixture_bytes)
            put_block(client, info, 5, {"channels": []})
            assert not list(data_dir.glob("*.tmp"))
            names = {p.suffix for p in data_dir.iterdir()}
            assert names == {".json"}


class TestBlocks:
    def test_block_2_with_implementation_omitted(self, client):
        info = create_session(client)
        response = put_block(client, info, 1, {"actors": [{"name": "Ada"}]})
        assert response.status_code == 200
        info = response.json()
        response = put_block(client, info, 2, {"tasks": {
            "adoption_decision": ["Ada"], "development": ["Ada"],
            "application": ["Ada"], "security": ["Ada"],
            "data_management": ["Ada"], "evaluation": ["Ada"],
        }})
        assert response.status_code == 200
        section1 = response.json()["report"]["sections"][0]
        assert [f["slot"] for f in section1["findings"]] == ["implementation"]

    def test_removing_referenced_actor_is_rejected(self, client, fixture_bytes):
        info = create_session(client, fixture_bytes)
        response = put_block(client, info, 1, {"actors": [{"name": "Azra Jašarević"}]})
        assert response.status_code == 400
        codes = [i["code"] for i in response.json()["error"]["issues"]]
        assert "UnknownActorReference" in codes
        # the draft stayed untouched
        echoed = client.get(f"/api/v1/sessions/{info['session_id']}").json()
        assert len(echoed["map"]["actors"]) == 6
        assert echoed["revision"] == info["revision"]

    def test_resubmitting_identical_payload_keeps_report_identical(self, client):
        info = create_session(client)
        payload = {"actors": [{"name": "Ada"}, {"name": "Bo"}]}
        first = put_block(client, info, 1, payload)
        assert first.status_code == 200
        second = put_block(client, first.json(), 1, payload)
        assert second.status_code == 200
        assert first.json()["report"] == second.json()["report"]

    def test_stale_revision_is_conflict(self, client):
        info = create_session(client)
        first = put_block(client, info, 1, {"actors": [{"name": "Ada"}]})
        assert first.status_code == 200
        stale = put_block(client, info, 1, {"actors": []})  # reuses revision 1
        assert stale.status_code == 409
        assert stale.json()["error"]["current_revision"] == 2
        echoed = client.get(f"/api/v1/sessions/{info['session_id']}").json()
        assert echoed["map"]["actors"] == [{"name": "Ada"}]

    def test_missing_revision_token_is_rejected(self, client):
        info = create_session(client)
        response = client.put(
            f"/api/v1/sessions/{info['session_id']}/blocks/1",
            content=json.dumps({"actors": []}),
            headers={"Content-Type": "application/json"})
        assert response.status_code == 400

    def test_block_index_must_be_1_to_5(self, client):
        info = create_session(client)
        for block in (0, 6):
            response = client.put(
                f"/api/v1/sessions/{info['session_id']}/blocks/{block}",
                content=b"{}", headers={"If-Match": "1"})
            assert response.status_code == 404

    def test_draft_flag_clears_after_all_blocks(self, client):
        info = create_session(client)
        payloads = {
            1: {"actors": [{"name": "Ada"}]},
            2: {"tasks": {t: ["Ada"] for t in (
                "adoption_decision", "development", "implementation", "application",
                "security", "data_management", "evaluation")}},
            3: {"responsibilities": {}},
            4: {"authorities": {}},
            5: {"channels": []},
        }
        for block in (1, 2, 3, 4):
            response = put_block(client, info, block, payloads[block])
            assert response.status_code == 200
            info = response.json()
            assert info["draft"] is True
        info = put_block(client, info, 5, payloads[5]).json()
        assert info["draft"] is False


class TestReportAndExport:
    def test_fixture_session_report_is_golden(self, client, fixture_bytes, fixture_map):
        info = create_session(client, fixture_bytes)
        response = client.get(f"/api/v1/sessions/{info['session_id']}/report")
        assert response.content == render_report(analyze(fixture_map), "structured", "de")

    def test_report_locale_switch(self, client, fixture_bytes):
        info = create_session(client, fixture_bytes)
        de = client.get(f"/api/v1/sessions/{info['session_id']}/report").json()
        en = client.get(f"/api/v1/sessions/{info['session_id']}/report?locale=en").json()
        assert de != en
        identity = lambda doc: [
            [(f["rule"], f["slot"], tuple(f["subjects"])) for f in s["findings"]]
            for s in doc["sections"]]
        assert identity(de) == identity(en)

    def test_unknown_locale_is_400(self, client, fixture_bytes):
        info = create_session(client, fixture_bytes)
        response = client.get(f"/api/v1/sessions/{info['session_id']}/report?locale=xx")
        assert response.status_code == 400

    def test_export_round_trips_and_digests_match(self, client, fixture_bytes):
        info = create_session(client, fixture_bytes)
        exported = client.get(f"/api/v1/sessions/{info['session_id']}/export")
        assert parse_map(exported.content) == parse_map(fixture_bytes)
        report = json.loads(
            client.get(f"/api/v1/sessions/{info['session_id']}/report").content)
        from respmap import canonical_digest
        assert report["map_digest"] == canonical_digest(parse_map(exported.content))

    def test_report_equals_cli_analysis_of_export(self, client, fixture_bytes):
        info = create_session(client, fixture_bytes)
        exported = client.get(f"/api/v1/sessions/{info['session_id']}/export").content
        report = client.get(f"/api/v1/sessions/{info['session_id']}/report").content
        assert report == render_report(analyze(parse_map(exported)), "structured", "de")


class TestWhatIf:
    def test_empty_delta(self, client, fixture_bytes):
        info = create_session(client, fixture_bytes)
        response = client.post(
            f"/api/v1/sessions/{info['session_id']}/whatif", content=b"{}")
        assert response.status_code == 200
        data = response.json()
        assert data["resolved"] == [] and data["introduced"] == []

    def test_assigning_implementation_resolves_gap(self, client, fixture_bytes):
        info = create_session(client, fixture_bytes)
        response = client.post(
            f"/api/v1/sessions/{info['session_id']}/whatif",
            content=json.dumps({"tasks": {"implementation": ["AG Algorithmen"]}}))
        data = response.json()
        assert [(f["rule"], f["slot"]) for f in data["resolved"]] == [
            ("task-gap", "implementation")]
        assert data["introduced"] == []

    def test_adding_evaluator_to_development_introduces_conflict(self, client,
                                                                 fixture_bytes):
        info = create_session(client, fixture_bytes)
        response = client.post(
            f"/api/v1/sessions/{info['session_id']}/whatif",
            content=json.dumps({
                "tasks": {"development": ["TechSolve GmbH", "Azra Jašarević"]}}))
        data = response.json()
        assert ("eval-independence", "development") in [
            (f["rule"], f["slot"]) for f in data["introduced"]]

    def test_what_if_does_not_mutate_the_session(self, client, fixture_bytes):
        info = create_session(client, fixture_bytes)
        url = f"/api/v1/sessions/{info['session_id']}"
        before = client.get(f"{url}/report").content
        client.post(f"{url}/whatif",
                    content=json.dumps({"tasks": {"implementation": ["AG Algorithmen"]}}))
        assert client.get(f"{url}/report").content == before

    def test_delta_with_unknown_actor_is_400(self, client, fixture_bytes):
        info = create_session(client, fixture_bytes)
        response = client.post(
            f"/api/v1/sessions/{info['session_id']}/whatif",
            content=json.dumps({"tasks": {"implementation": ["Ghost"]}}))
        assert response.status_code == 400
