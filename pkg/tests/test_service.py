from __future__ import annotations

import json

import pytest
from starlette.testclient import TestClient

from prioritree.model_io import nhs_fixture_path
from prioritree.service import create_app
from prioritree.session import create_session
from prioritree.core import hierarchy

import oracle


@pytest.fixture()
def client() -> TestClient:
    return TestClient(create_app())


@pytest.fixture(scope="module")
def fixture_doc() -> bytes:
    return nhs_fixture_path().read_bytes()


def make_session(client: TestClient, goal="pick", criteria=("c1", "c2"), alternatives=("x", "y")):
    resp = client.post(
        "/sessions",
        json={"goal": goal, "criteria": list(criteria), "alternatives": list(alternatives)},
    )
    assert resp.status_code == 201
    body = resp.json()
    return body["payload"]["session_id"], body


class TestEnvelope:
    def test_create_carries_revision_and_empty_errors(self, client):
        _, body = make_session(client)
        assert body["revision"] == 0
        assert body["errors"] == []
        assert body["payload"]["snapshot"]["complete"] is False

    def test_error_responses_have_no_payload(self, client):
        resp = client.get("/sessions/does-not-exist")
        assert resp.status_code == 404
        body = resp.json()
        assert body["payload"] is None
        assert body["errors"][0]["code"] == "unknown_session"

    def test_mutations_echo_post_mutation_revision(self, client):
        sid, _ = make_session(client)
        resp = client.put(
            f"/sessions/{sid}/judgments", json={"matrix": "c1", "a": "x", "b": "y", "value": "3"}
        )
        assert resp.status_code == 200
        assert resp.json()["revision"] == 1
        assert resp.json()["payload"]["snapshot"]["revision"] == 1


class TestJudgments:
    def test_put_updates_reciprocal(self, client):
        sid, _ = make_session(client)
        resp = client.put(
            f"/sessions/{sid}/judgments", json={"matrix": "c1", "a": "y", "b": "x", "value": "1/4"}
        )
        pairs = resp.json()["payload"]["judgments"]["c1"]
        assert pairs == [{"a": "x", "b": "y", "value": "4"}]

    def test_out_of_scale_value_is_422(self, client):
        sid, _ = make_session(client)
        resp = client.put(
            f"/sessions/{sid}/judgments", json={"matrix": "c1", "a": "x", "b": "y", "value": "10"}
        )
        assert resp.status_code == 422
        err = resp.json()["errors"][0]
        assert err["code"] == "out_of_scale"
        assert err["field"] == "value"

    def test_bad_index_is_422(self, client):
        sid, _ = make_session(client)
        resp = client.put(
            f"/sessions/{sid}/judgments", json={"matrix": "c1", "a": "x", "b": "zzz", "value": "3"}
        )
        assert resp.status_code == 422
        assert resp.json()["errors"][0]["code"] == "bad_index"

    def test_unknown_matrix_is_422(self, client):
        sid, _ = make_session(client)
        resp = client.put(
            f"/sessions/{sid}/judgments", json={"matrix": "nope", "a": "x", "b": "y", "value": "3"}
        )
        assert resp.status_code == 422
        assert resp.json()["errors"][0]["code"] == "unknown_matrix"

    def test_malformed_body_is_400(self, client):
        sid, _ = make_session(client)
        resp = client.put(
            f"/sessions/{sid}/judgments",
            content=b"{not json",
            headers={"content-type": "application/json"},
        )
        assert resp.status_code == 400

    def test_optimistic_concurrency(self, client):
        sid, _ = make_session(client)
        put = {"matrix": "c1", "a": "x", "b": "y", "value": "3"}
        first = client.put(f"/sessions/{sid}/judgments", json=put, headers={"If-Match": "0"})
        assert first.status_code == 200
        assert first.json()["revision"] == 1
        stale = client.put(f"/sessions/{sid}/judgments", json=put, headers={"If-Match": "0"})
        assert stale.status_code == 409
        assert stale.json()["errors"][0]["code"] == "revision_conflict"
        assert stale.json()["revision"] == 1

    def test_if_match_not_a_number_is_400(self, client):
        sid, _ = make_session(client)
        resp = client.put(
            f"/sessions/{sid}/judgments",
            json={"matrix": "c1", "a": "x", "b": "y", "value": "3"},
            headers={"If-Match": "abc"},
        )
        assert resp.status_code == 400


class TestImportExport:
    def test_import_fixture_reproduces_published_scores(self, client, fixture_doc):
        sid, _ = make_session(client)
        resp = client.post(f"/sessions/{sid}/import", content=fixture_doc)
        assert resp.status_code == 200
        assert resp.json()["revision"] == 1  # import is one mutation
        snap = resp.json()["payload"]["snapshot"]
        assert snap["complete"] is True
        scores = dict(zip(snap["synthesis"]["alternative_ids"], snap["synthesis"]["scores"]))
        for alt, printed in oracle.PRINTED_FINAL_SCORES.items():
            assert scores[alt] == pytest.approx(printed, abs=0.03)
        assert snap["synthesis"]["ranking"][0]["id"] == "SAAS"

    def test_import_invalid_document_is_422(self, client):
        sid, _ = make_session(client)
        resp = client.post(f"/sessions/{sid}/import", content=b'{"version": 99}')
        assert resp.status_code == 422

    def test_import_malformed_json_is_400(self, client):
        sid, _ = make_session(client)
        resp = client.post(f"/sessions/{sid}/import", content=b"{oops")
        assert resp.status_code == 400

    def test_export_round_trips_with_identical_snapshot(self, client, fixture_doc):
        sid, _ = make_session(client)
        client.post(f"/sessions/{sid}/import", content=fixture_doc)
        client.put(
            f"/sessions/{sid}/judgments",
            json={"matrix": "Fun", "a": "SAAS", "b": "PAAS", "value": "3"},
        )
        exported = client.get(f"/sessions/{sid}/export").content

        fresh_app_client = TestClient(create_app())
        sid2, _ = make_session(fresh_app_client)
        imported = fresh_app_client.post(f"/sessions/{sid2}/import", content=exported)
        original = client.get(f"/sessions/{sid}").json()["payload"]
        restored = imported.json()["payload"]
        for key in ("goal", "criteria", "alternatives", "judgments"):
            assert restored[key] == original[key]
        a, b = restored["snapshot"], original["snapshot"]
        a.pop("revision"), b.pop("revision")
        assert a == b

    def test_export_is_canonical_document(self, client, fixture_doc):
        sid, _ = make_session(client)
        client.post(f"/sessions/{sid}/import", content=fixture_doc)
        assert client.get(f"/sessions/{sid}/export").content == fixture_doc


class TestGatewayAddsNoComputation:
    def test_api_snapshot_equals_library_evaluate(self, client):
        sid, _ = make_session(client, criteria=("c1", "c2", "c3"), alternatives=("x", "y"))
        edits = [
            ("criteria", "c1", "c2", "3"),
            ("criteria", "c1", "c3", "5"),
            ("criteria", "c2", "c3", "2"),
            ("c1", "x", "y", "4"),
            ("c2", "x", "y", "1/2"),
            ("c3", "y", "x", "9"),
        ]
        for matrix, a, b, value in edits:
            resp = client.put(
                f"/sessions/{sid}/judgments",
                json={"matrix": matrix, "a": a, "b": b, "value": value},
            )
            assert resp.status_code == 200
        via_api = client.get(f"/sessions/{sid}").json()["payload"]["snapshot"]

        s = create_session(hierarchy("pick", ["c1", "c2", "c3"], ["x", "y"]))
        from prioritree import judgment_from_token

        for matrix, a, b, value in edits:
            s.set_judgment(matrix, a, b, judgment_from_token(value))
        from prioritree.service import snapshot_payload

        assert via_api == json.loads(json.dumps(snapshot_payload(s.evaluate())))


class TestHotspots:
    def test_hotspots_for_fixture_criteria_matrix(self, client, fixture_doc):
        sid, _ = make_session(client)
        client.post(f"/sessions/{sid}/import", content=fixture_doc)
        resp = client.get(f"/sessions/{sid}/hotspots", params={"matrix": "criteria", "k": 2})
        assert resp.status_code == 200
        spots = resp.json()["payload"]["hotspots"]
        assert len(spots) == 2
        assert spots[0]["triad"] == ["Ven", "Cos", "Val"]
        assert spots[0]["suggested"] == "1/9"

    def test_incomplete_matrix_is_422(self, client):
        sid, _ = make_session(client, criteria=("c1", "c2", "c3"))
        resp = client.get(f"/sessions/{sid}/hotspots", params={"matrix": "criteria"})
        assert resp.status_code == 422

    def test_missing_matrix_param_is_422(self, client):
        sid, _ = make_session(client)
        assert client.get(f"/sessions/{sid}/hotspots").status_code == 422


class TestSensitivity:
    def test_architecture_sensitivity(self, client, fixture_doc):
        sid, _ = make_session(client)
        client.post(f"/sessions/{sid}/import", content=fixture_doc)
        resp = client.get(f"/sessions/{sid}/sensitivity", params={"criterion": "Arc"})
        assert resp.status_code == 200
        payload = resp.json()["payload"]
        assert payload["winner"] == "SAAS"
        assert payload["challenger"] == "IAAS"
        assert payload["crossover_weight"] == pytest.approx(0.497275, abs=1e-4)

    def test_scores_at_weight(self, client, fixture_doc):
        sid, _ = make_session(client)
        client.post(f"/sessions/{sid}/import", content=fixture_doc)
        resp = client.get(
            f"/sessions/{sid}/sensitivity", params={"criterion": "Arc", "weight": "0.9"}
        )
        assert resp.status_code == 200
        at = resp.json()["payload"]["scores_at"]
        assert at["weight"] == 0.9
        ranking = at["synthesis"]["ranking"]
        assert ranking[0]["id"] == "IAAS"

    def test_incomplete_model_is_422(self, client):
        sid, _ = make_session(client)
        resp = client.get(f"/sessions/{sid}/sensitivity", params={"criterion": "c1"})
        assert resp.status_code == 422
        assert resp.json()["errors"][0]["code"] == "model_incomplete"

    def test_unknown_criterion_is_422(self, client, fixture_doc):
        sid, _ = make_session(client)
        client.post(f"/sessions/{sid}/import", content=fixture_doc)
        resp = client.get(f"/sessions/{sid}/sensitivity", params={"criterion": "nope"})
        assert resp.status_code == 422
        assert resp.json()["errors"][0]["code"] == "unknown_criterion"


class TestMisc:
    def test_create_session_rejects_bad_hierarchy(self, client):
        resp = client.post(
            "/sessions", json={"goal": "g", "criteria": ["only"], "alternatives": ["x", "y"]}
        )
        assert resp.status_code == 422

    def test_create_session_rejects_malformed_json(self, client):
        resp = client.post("/sessions", content=b"{", headers={"content-type": "application/json"})
        assert resp.status_code == 400

    def test_index_lists_endpoints_without_static_dir(self, client):
        resp = client.get("/")
        assert resp.status_code == 200
        assert "/sessions" in "".join(resp.json()["endpoints"])

    def test_distinct_sessions_are_independent(self, client):
        sid_a, _ = make_session(client)
        sid_b, _ = make_session(client)
        client.put(
            f"/sessions/{sid_a}/judgments", json={"matrix": "c1", "a": "x", "b": "y", "value": "3"}
        )
        snap_b = client.get(f"/sessions/{sid_b}").json()
        assert snap_b["revision"] == 0

    def test_static_bundle_hosted_at_root(self, tmp_path):
        (tmp_path / "index.html").write_text("<html><body>decision cockpit</body></html>")
        static_client = TestClient(create_app(static_dir=tmp_path))
        resp = static_client.get("/")
        assert resp.status_code == 200
        assert "decision cockpit" in resp.text
        # API routes still take precedence over the static mount
        sid, _ = make_session(static_client)
        assert static_client.get(f"/sessions/{sid}").status_code == 200
