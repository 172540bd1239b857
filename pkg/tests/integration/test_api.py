"""Tests for the HTTP API."""

import pytest
from fastapi.testclient import TestClient

from src import __version__
from src.api.main import app

INSTANCE = {
    "delta": 5,
    "k": 5,
    "m": 11,
    "tasks": [
        {"id": i, "profile": {"type": "table", "workloads": [w] * 5}, "value": v}
        for i, (w, v) in enumerate([("2.4", "3"), ("2.2", "2"), ("2.2", "2"), ("0.7", "1")])
    ],
}


@pytest.fixture
def client():
    return TestClient(app)


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "healthy", "version": __version__}


def test_params(client):
    response = client.get("/params/5", params={"k": 5, "m": 11})
    assert response.status_code == 200
    body = response.json()
    assert body["delta_prime"] == 5
    assert body["beta2"] == "13/4"
    assert body["theta"] == "5/11"


def test_params_domain_error(client):
    response = client.get("/params/0")
    assert response.status_code == 400


def test_schedule(client):
    response = client.post("/schedule", json={"instance": INSTANCE, "d": "1"})
    assert response.status_code == 200
    body = response.json()
    assert body["exit_reason"] == "insufficient_for_group"
    assert body["utilization"] == "34/55"
    assert body["placements"][1] == {"task": 1, "first_processor": 4, "width": 5, "start": "0", "end": "11/25"}


def test_classify(client):
    response = client.post("/classify", json={"instance": INSTANCE, "d": "1"})
    assert response.status_code == 200
    classes = {row["task"]: row["class"] for row in response.json()["classes"]}
    assert classes == {0: "A'", 1: "A_3", 2: "A_3", 3: "A''"}


def test_makespan_and_welfare(client):
    makespan = client.post("/makespan", json={"instance": INSTANCE, "epsilon": "1/10"})
    assert makespan.status_code == 200
    assert makespan.json()["epsilon"] == "1/10"

    welfare = client.post("/welfare", json={"instance": INSTANCE, "tau": "1"})
    assert welfare.status_code == 200
    body = welfare.json()
    assert body["alpha"] == "1"
    assert body["order"][0] == 3


def test_non_positive_deadline_is_bad_request(client):
    response = client.post("/schedule", json={"instance": INSTANCE, "d": "0"})
    assert response.status_code == 400


def test_float_rationals_are_rejected(client):
    response = client.post("/schedule", json={"instance": INSTANCE, "d": 1.5})
    assert response.status_code == 422


def test_tables(client):
    response = client.get("/tables")
    assert response.status_code == 200
    assert response.json()["status"] == "ok"
