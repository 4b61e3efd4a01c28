"""HTTP endpoints, exercised through the ASGI app."""

import pytest
from fastapi.testclient import TestClient

from tropmat.service.app import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app, raise_server_exceptions=False) as c:
        yield c


TRIV = {"rows": [["0", "0", "inf"], ["0", "inf", "0"]]}
ZEROS = {"rows": [["0", "0", "0"], ["0", "0", "0"]]}
MU11 = {"rows": [["1", "0", "0", "inf"], ["0", "0", "0", "0"]]}


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}


def test_stiefel(client):
    resp = client.post("/stiefel", json={"matrix": TRIV})
    assert resp.status_code == 200
    body = resp.json()
    assert body["mu"]["values"] == {"1,2": "0", "1,3": "0", "2,3": "0"}
    assert body["underlying"]["bases"] == [[1, 2], [1, 3], [2, 3]]
    assert body["labels"] == ["1", "2", "3"]


def test_stiefel_error_paths(client):
    resp = client.post("/stiefel", json={"matrix": {"rows": [["inf", "inf"], ["inf", "inf"]]}})
    assert resp.status_code == 400
    assert resp.json()["error"]["kind"] == "input"
    resp = client.post("/stiefel", json={"matrix": {"rows": [["in f", "0"], ["0", "0"]]}})
    assert resp.status_code == 400
    resp = client.post("/stiefel", json={"matrix": {}})
    assert resp.status_code == 422


def test_check_pluecker(client):
    values = {"1,2": "1", "1,3": "1", "1,4": "0", "2,3": "0", "2,4": "0", "3,4": "0"}
    resp = client.post("/check-pluecker", json={"n": 4, "d": 2, "values": values})
    assert resp.status_code == 200
    assert resp.json()["ok"] is False
    resp = client.post("/check-pluecker", json={"n": 4, "d": 2, "values": {"1,2": "0"}})
    assert resp.json() == {"ok": True, "failure": None}


def test_underlying(client):
    mu = {"n": 3, "d": 2, "values": {"1,2": "0", "1,3": "0", "2,3": "0"}}
    resp = client.post("/underlying", json={"mu": mu})
    assert resp.json()["underlying"]["bases"] == [[1, 2], [1, 3], [2, 3]]


def test_dapx_and_decompose(client):
    resp = client.post("/dapx", json={"matrix": TRIV})
    assert resp.status_code == 200
    body = resp.json()
    assert body["apex"]["rows"] == [["0", "0", "0"], ["0", "0", "0"]]
    assert body["decomposition"]["dmat"][0]["multiplicity"] == 2

    resp = client.post("/decompose", json={"matrix": TRIV})
    rows = resp.json()["decomposition"]["rows"]
    assert sorted(r["J"] for r in rows) == [[2], [3]]

    shifted = {"rows": [["5", "5", "5"], ["0", "0", "0"]]}
    resp = client.post("/decompose", json={"matrix": shifted, "apex_of": ZEROS})
    assert sorted(r["lambda"] for r in resp.json()["decomposition"]["rows"]) == ["0", "5"]


def test_is_minimal_and_minimize(client):
    assert client.post("/is-minimal", json={"matrix": TRIV}).json() == {"minimal": True}
    assert client.post("/is-minimal", json={"matrix": ZEROS}).json() == {"minimal": False}
    resp = client.post("/minimize", json={"matrix": MU11, "keep": "4"})
    assert resp.status_code == 200
    rows = resp.json()["matrix"]["rows"]
    assert all(r[3] != "inf" for r in rows)
    resp = client.post("/minimize", json={"matrix": MU11, "keep": "nope"})
    assert resp.status_code == 400


def test_extend_meet_certificates_collide(client):
    resp = client.post("/extend", json={"matrix": TRIV, "x": ["1", "0"]})
    values = resp.json()["extension"]["values"]
    assert values["3,4"] == "1" and values["1,4"] == "0"
    assert resp.json()["labels"] == ["1", "2", "3", "*"]

    resp = client.post("/meet", json={"matrix": TRIV, "x": ["1", "0"], "y": ["0", "1"]})
    assert resp.json()["extension"]["values"]["3,4"] == "0"

    resp = client.post("/certificates", json={"matrix": TRIV})
    body = resp.json()
    assert body["verdict"] == "INJECTIVE"
    assert [c["subset"] for c in body["certificates"]] == [["3", "*"], ["2", "*"]]

    resp = client.post("/certificates", json={"matrix": ZEROS})
    assert resp.json()["verdict"] == "COLLISION"

    resp = client.post("/collide", json={"matrix": ZEROS})
    assert resp.json() == {"row": 1, "x": ["1", "0"], "y": ["2", "0"]}
    assert client.post("/collide", json={"matrix": TRIV}).status_code == 400


def test_present_min(client):
    dapx11 = {"rows": [["1", "0", "0", "1"], ["0", "0", "0", "0"]]}
    resp = client.post("/present-min", json={"matrix": dapx11})
    body = resp.json()
    assert body["labels"][-1] == "*"
    assert len(body["base"]["rows"][0]) == 3
    assert len(body["x"]) == 2


def test_verify_endpoint(client):
    resp = client.post(
        "/verify",
        json={"suite": "join", "n": 4, "d": 2, "count": 10, "seed": 3},
    )
    body = resp.json()
    assert body["ok"] is True
    assert body["report"]["passed"] == 10


def test_lab_endpoint(client):
    resp = client.post("/lab", json={"n": 3, "d": 2, "trials": 3, "seed": 2})
    reports = resp.json()["reports"]
    assert len(reports) == 3
    resp = client.post("/lab", json={"pinned": "u23"})
    assert resp.json()["reports"][0]["realizable"] is True
    assert client.post("/lab", json={"n": 9, "d": 2}).status_code == 400


def test_gen_endpoint(client):
    resp = client.post("/gen", json={"n": 4, "d": 2, "count": 5, "seed": 1})
    instances = resp.json()["instances"]
    assert len(instances) == 5
    again = client.post("/gen", json={"n": 4, "d": 2, "count": 5, "seed": 1}).json()
    assert again["instances"] == instances
