"""The HTTP surface, exercised through the ASGI test client."""

import json

import numpy as np
import pytest
from fastapi.testclient import TestClient

from saxplore import create_app
from saxplore.session import SessionStore

from helpers import long_csv


@pytest.fixture()
def client():
    return TestClient(create_app(SessionStore()), raise_server_exceptions=False)


def demo_csv(n_series=6, n_samples=40):
    rng = np.random.default_rng(50)
    series = {}
    for i in range(n_series):
        t = np.arange(n_samples, dtype=float)
        base = np.sin(t / 4.0) if i % 2 == 0 else t * 0.1
        series[f"s{i}"] = (t, base + rng.normal(0, 0.05, t.size))
    return long_csv(series)


def create_session(client, body=None, alpha=4, omega=8, **extra):
    r = client.post(
        "/sessions",
        files={"file": ("data.csv", body or demo_csv(), "text/csv")},
        data={"alpha": str(alpha), "omega": str(omega), **extra},
    )
    return r


def test_create_session(client):
    r = create_session(client)
    assert r.status_code == 201
    doc = r.json()
    assert doc["n_series"] == 6
    assert doc["alpha"] == 4 and doc["omega"] == 8
    assert len(doc["breakpoints"]) == 3
    info = client.get(f"/sessions/{doc['id']}").json()
    assert info == doc


def test_tree_root_covers_collection(client):
    sid = create_session(client).json()["id"]
    tree = client.get(f"/sessions/{sid}/tree").json()
    assert tree["size"] == 6


def test_expand_returns_updated_tree(client):
    sid = create_session(client).json()["id"]
    tree = client.get(f"/sessions/{sid}/tree").json()
    r = client.post(f"/sessions/{sid}/tree/{tree['id']}/expand")
    assert r.status_code == 200
    # idempotent second expand, and the view sticks across reads
    again = client.post(f"/sessions/{sid}/tree/{tree['id']}/expand").json()
    assert again == client.get(f"/sessions/{sid}/tree").json()


def test_cluster_detail_round_trip(client):
    sid = create_session(client).json()["id"]
    tree = client.get(f"/sessions/{sid}/tree").json()
    detail = client.get(f"/sessions/{sid}/clusters/{tree['id']}").json()
    assert detail["size"] == tree["size"]
    assert len(detail["members"]) == detail["size"]
    leaf = detail["members"][0]["id"]
    single = client.get(f"/sessions/{sid}/clusters/{leaf}").json()
    assert single["size"] == 1


def test_heatmap_and_band(client):
    sid = create_session(client).json()["id"]
    root = client.get(f"/sessions/{sid}/tree").json()["id"]
    hm = client.get(f"/sessions/{sid}/clusters/{root}/heatmap").json()
    assert set(hm) == {"alpha", "omega", "size", "cells", "gap"}
    columns = np.array(hm["cells"]).sum(axis=0) + np.array(hm["gap"])
    assert np.allclose(columns, 1.0, atol=1e-9)
    band = client.get(f"/sessions/{sid}/clusters/{root}/band").json()
    assert len(band["mean"]) == hm["omega"]


def test_compare_self_and_modes(client):
    sid = create_session(client).json()["id"]
    root = client.get(f"/sessions/{sid}/tree").json()["id"]
    percent = client.post(
        f"/sessions/{sid}/compare", json={"a": root, "b": root, "mode": "percent"}
    ).json()
    assert all(v == 0 for row in percent["diff"] for v in row)
    counts = client.post(
        f"/sessions/{sid}/compare", json={"a": root, "b": root, "mode": "counts"}
    ).json()
    assert counts["mode"] == "counts"
    assert client.post(
        f"/sessions/{sid}/compare", json={"a": root, "b": root, "mode": "foo"}
    ).status_code == 422


def test_query_sketch_and_id(client):
    sid = create_session(client).json()["id"]
    r = client.post(f"/sessions/{sid}/query", json={"type": "sketch", "columns": [[0], []]})
    assert r.status_code == 200
    doc = r.json()
    assert set(doc) == {"matched_ids", "highlight_nodes", "pattern_source"}
    by_id = client.post(f"/sessions/{sid}/query", json={"type": "id", "id": "s1"}).json()
    assert by_id["matched_ids"] == ["s1"]
    tree = client.get(f"/sessions/{sid}/tree").json()
    assert tree["id"] in by_id["highlight_nodes"]
    assert client.post(
        f"/sessions/{sid}/query", json={"type": "sketch", "columns": [[], []]}
    ).status_code == 422


def test_series_endpoint(client):
    sid = create_session(client).json()["id"]
    doc = client.get(f"/sessions/{sid}/series/s2").json()
    assert doc["id"] == "s2"
    assert doc["n_samples"] == 40
    assert client.get(f"/sessions/{sid}/series/ghost").status_code == 404


def test_unknown_session_and_node_are_404(client):
    assert client.get("/sessions/bogus/tree").status_code == 404
    sid = create_session(client).json()["id"]
    assert client.get(f"/sessions/{sid}/clusters/zzz").status_code == 404
    assert client.post(f"/sessions/{sid}/tree/zzz/expand").status_code == 404


def test_parse_error_is_400_with_line(client):
    r = create_session(client, body=b"series_id,timestamp,value\ns1,zap,1\n")
    assert r.status_code == 400
    assert "line 2" in r.json()["error"]


def test_alpha_bound_is_422(client):
    assert create_session(client, alpha=1).status_code == 422


def test_degenerate_upload_is_422(client):
    flat = long_csv({"a": ([0.0, 1.0], [3.0, 3.0]), "b": ([0.0, 1.0], [3.0, 3.0])})
    assert create_session(client, body=flat).status_code == 422


def test_oversize_upload_is_413():
    store = SessionStore(max_series=2)
    client = TestClient(create_app(store), raise_server_exceptions=False)
    assert create_session(client).status_code == 413


def test_duplicate_uploads_are_independent_sessions(client):
    a = create_session(client).json()
    b = create_session(client).json()
    assert a["id"] != b["id"]
    tree_a = client.get(f"/sessions/{a['id']}/tree").json()
    tree_b = client.get(f"/sessions/{b['id']}/tree").json()
    assert json.dumps(tree_a) == json.dumps(tree_b)  # deterministic pipeline
    client.post(f"/sessions/{a['id']}/tree/{tree_a['id']}/expand")
    assert client.get(f"/sessions/{b['id']}/tree").json() == tree_b  # b untouched


def test_metadata_sidecar_reaches_detail_payload(client):
    meta = b"series_id,key,value\ns0,class,sine\n"
    r = client.post(
        "/sessions",
        files={
            "file": ("data.csv", demo_csv(), "text/csv"),
            "metadata": ("meta.csv", meta, "text/csv"),
        },
        data={"alpha": "4", "omega": "8"},
    )
    sid = r.json()["id"]
    doc = client.get(f"/sessions/{sid}/series/s0").json()
    assert doc["meta"]["class"] == "sine"


def test_series_json_upload(client):
    body = json.dumps([
        {"id": "x", "t": [0, 1, 2, 3], "v": [0.0, 1.0, 0.0, -1.0]},
        {"id": "y", "t": [0, 1, 2, 3], "v": [3.0, 2.0, 1.0, 0.0]},
    ]).encode()
    r = client.post(
        "/sessions",
        files={"file": ("data.json", body, "application/json")},
        data={"alpha": "4", "omega": "4", "format": "series-json"},
    )
    assert r.status_code == 201
    assert r.json()["n_series"] == 2


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}
