import json

import pytest
from fastapi.testclient import TestClient
from httpx import ASGITransport, AsyncClient

from src.preftree import __version__
from src.preftree.app import app


@pytest.fixture
def client():
    return TestClient(app)


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "healthy", "app": "Preftree", "version": __version__}


def test_rank(client):
    response = client.post(
        "/discriminant/rank",
        json={"coefficients": {"Output": 8.074, "Applications": 14.048, "Media": 9.374}},
    )
    assert response.status_code == 200
    assert response.json() == {"order": ["Applications", "Media", "Output"]}


def test_rank_empty_is_bad_request(client):
    response = client.post("/discriminant/rank", json={"coefficients": {}})
    assert response.status_code == 400
    assert "no coefficients" in response.json()["detail"]["message"]


def test_mst_triangle(client):
    response = client.post(
        "/graph/mst",
        json={"edges": [{"u": "A", "v": "B", "w": 3}, {"u": "B", "v": "C", "w": 2}, {"u": "C", "v": "A", "w": 1}]},
    )
    assert response.status_code == 200
    body = response.json()
    assert body["component_count"] == 1
    assert body["forest"]["total_weight"] == 5.0
    assert [(e["u"], e["v"]) for e in body["forest"]["edges"]] == [("A", "B"), ("B", "C")]


def test_mst_isolated_nodes(client):
    response = client.post("/graph/mst", json={"nodes": ["X"], "edges": [{"u": "A", "v": "B", "w": 0.5}]})
    assert response.json()["component_count"] == 2


def test_mst_rejects_self_loop(client):
    response = client.post("/graph/mst", json={"edges": [{"u": "A", "v": "A", "w": 1}]})
    assert response.status_code == 400


def _uploads(survey_path, schema_path, coefficients_path):
    return {
        "data": ("survey.csv", survey_path.read_bytes(), "text/csv"),
        "schema": ("schema.json", schema_path.read_bytes(), "application/json"),
        "coefficients": ("coefficients.json", coefficients_path.read_bytes(), "application/json"),
    }


def test_pipeline_run(client, survey_path, schema_path, coefficients_path):
    response = client.post("/pipeline/run", files=_uploads(survey_path, schema_path, coefficients_path))
    assert response.status_code == 200
    body = response.json()
    assert body["group_order"] == ["Applications", "Media", "Output"]
    assert set(body["groups"]["Output"]) >= {"coefficient", "attribute_order", "edges"}


def test_pipeline_run_unknown_target(client, survey_path, schema_path, coefficients_path):
    response = client.post(
        "/pipeline/run",
        files=_uploads(survey_path, schema_path, coefficients_path),
        data={"target_class": "Faculty"},
    )
    assert response.status_code == 400
    assert response.json()["detail"]["step"] == "e"


def test_pipeline_run_bad_schema(client, survey_path, coefficients_path, tmp_path):
    schema = tmp_path / "schema.json"
    schema.write_text(json.dumps({"groups": {}}))
    response = client.post("/pipeline/run", files=_uploads(survey_path, schema, coefficients_path))
    assert response.status_code == 400
    assert response.json()["detail"]["step"] == "c"


async def test_rank_async():
    async with AsyncClient(transport=ASGITransport(app=app), base_url="http://test") as ac:
        response = await ac.post("/discriminant/rank", json={"coefficients": {"x": 2.0, "y": 2.0, "z": 3.0}})
    assert response.status_code == 200
    assert response.json()["order"] == ["z", "x", "y"]
