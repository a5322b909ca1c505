import warnings

import pytest

from concheck import relations as R, serialize
from concheck.signalling import parity_counterexample

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from concheck.service import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def test_health(client):
    body = client.get("/health").json()
    assert body["status"] == "ok"
    assert "laxity" in body["suites"]


class TestRelEndpoint:
    def test_compose_pipeline_order(self, client):
        resp = client.post(
            "/rel/compose",
            json={
                "relations": [
                    {"src": ["a1", "a2"], "dst": ["b1", "b2"], "pairs": [[0, 0], [0, 1], [1, 1]]},
                    {"src": ["b1", "b2"], "dst": ["c1", "c2", "c3"], "pairs": [[0, 0], [1, 2]]},
                ]
            },
        )
        assert resp.status_code == 200
        assert resp.json()["relations"][0]["pairs"] == [[0, 0], [0, 2], [1, 2]]

    def test_meet_idempotent(self, client):
        rel = {"src": ["a"], "dst": ["b"], "pairs": [[0, 0]]}
        resp = client.post("/rel/meet", json={"relations": [rel, rel]})
        assert resp.json()["relations"] == [rel]

    def test_converse(self, client):
        resp = client.post(
            "/rel/converse",
            json={"relations": [{"src": ["a"], "dst": ["b1", "b2"], "pairs": [[0, 1]]}]},
        )
        assert resp.json()["relations"][0] == {
            "src": ["b1", "b2"], "dst": ["a"], "pairs": [[1, 0]],
        }

    def test_generators(self, client):
        resp = client.post("/rel/generators", json={"src": ["a1", "a2"], "dst": ["b1"]})
        assert [r["pairs"] for r in resp.json()["relations"]] == [[[1, 0]], [[0, 0]]]

    def test_boundary_mismatch_is_400(self, client):
        resp = client.post(
            "/rel/compose",
            json={
                "relations": [
                    {"src": ["a"], "dst": ["b"], "pairs": []},
                    {"src": ["nope"], "dst": ["c"], "pairs": []},
                ]
            },
        )
        assert resp.status_code == 400
        assert resp.json()["error"] == "BoundaryMismatch"

    def test_unknown_op_is_400(self, client):
        resp = client.post("/rel/transmogrify", json={"relations": []})
        assert resp.status_code == 400

    def test_wrong_arity_is_400(self, client):
        resp = client.post(
            "/rel/converse",
            json={"relations": []},
        )
        assert resp.status_code == 400


class TestCheckEndpoint:
    def test_ok(self, client):
        circuit = {
            "kind": "circuit",
            "encoding": "sectorial_sum",
            "declarations": {
                "idr": {"src": ["a"], "dst": ["a"], "pairs": [[0, 0]]},
                "idm": {"kind": "block_matrix", "dom": [["a", 1]], "cod": [["a", 1]],
                        "entries": [["1/1"]]},
                "p": {"kind": "pair", "constraint": "idr", "morphism": "idm"},
            },
            "circuit": {"op": "ref", "name": "p"},
        }
        resp = client.post("/check", json={"circuit": circuit})
        assert resp.status_code == 200
        assert resp.json()["status"] == "ok"

    def test_violation_is_result_not_error(self, client):
        chan = parity_counterexample()
        gens = R.meet_generators(chan.dom.labels, chan.cod.labels)
        circuit = {
            "kind": "circuit",
            "encoding": "signalling",
            "declarations": {
                "met": serialize.relation_to_obj(R.meet(gens[0], gens[1])),
                "chan": serialize.channel_to_obj(chan),
                "bad": {"kind": "pair", "constraint": "met", "morphism": "chan"},
            },
            "circuit": {"op": "ref", "name": "bad"},
        }
        resp = client.post("/check", json={"circuit": circuit})
        assert resp.status_code == 200
        body = resp.json()
        assert body["status"] == "violation"
        assert body["witness"]["node"] == "circuit"

    def test_parse_error_is_400(self, client):
        resp = client.post("/check", json={"circuit": {"kind": "circuit"}})
        assert resp.status_code == 400
        assert resp.json()["error"] == "CircuitError"

    def test_malformed_body_is_422(self, client):
        resp = client.post("/check", json={"nonsense": 1})
        assert resp.status_code == 422


class TestOracleEndpoint:
    def test_timesym_small(self, client):
        resp = client.post("/oracle/timesym", json={"seed": 5})
        assert resp.status_code == 200
        body = resp.json()
        assert body["passed"] is True
        assert body["cases"] >= 500

    def test_unknown_suite(self, client):
        resp = client.post("/oracle/everything", json={})
        assert resp.status_code == 400

    def test_cap_limit(self, client):
        resp = client.post("/oracle/laxity", json={"cap": 10**9})
        assert resp.status_code == 400
        assert resp.json()["error"] == "ExplosionError"
