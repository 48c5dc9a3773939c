import pytest
from fastapi.testclient import TestClient

from quantgame.engine import DisplayMode, GameConfig
from quantgame.service import create_app
from quantgame.simulate import RatioTable, simulate_session


@pytest.fixture
def client(tmp_path):
    return TestClient(create_app(tmp_path / "store"))


def simulated_csv(seed=1, mode=DisplayMode.DICE):
    config = GameConfig(mode=mode, trials_per_game=20)
    return simulate_session(RatioTable(), config, n_games=2, seed=seed).csv


def test_ingest_and_list(client):
    text = simulated_csv()
    resp = client.post("/api/v1/logs", json={
        "subject": "s1", "experimenter": "e1", "content": text})
    assert resp.status_code == 200
    body = resp.json()
    assert body["status"] == "ok"
    assert body["records"] == 40
    listing = client.get("/api/v1/logs", params={"subject": "s1"}).json()
    assert [entry["log_id"] for entry in listing] == [body["log_id"]]


def test_ingest_duplicate_idempotent(client):
    text = simulated_csv()
    first = client.post("/api/v1/logs",
                        json={"subject": "s1", "content": text}).json()
    second = client.post("/api/v1/logs",
                         json={"subject": "s1", "content": text}).json()
    assert first["log_id"] == second["log_id"]
    assert len(client.get("/api/v1/logs").json()) == 1


def test_ingest_rejects_bad_header(client):
    resp = client.post("/api/v1/logs",
                       json={"subject": "s1", "content": "garbage\n"})
    assert resp.status_code == 422


def test_accuracy_report_endpoint(client):
    client.post("/api/v1/logs",
                json={"subject": "s1", "content": simulated_csv()})
    resp = client.get("/api/v1/reports/accuracy",
                      params={"subject": "s1", "set_size": 2})
    assert resp.status_code == 200
    assert resp.text.startswith("| Session |")
    missing = client.get("/api/v1/reports/accuracy",
                         params={"subject": "nobody"})
    assert missing.status_code == 404


def test_correlation_report_endpoint(client):
    client.post("/api/v1/logs",
                json={"subject": "s1", "content": simulated_csv()})
    resp = client.get("/api/v1/reports/correlation",
                      params={"subject": "s1"})
    assert resp.status_code == 200
    assert resp.text.startswith("Value Set,")


def play_trial(client, session_id, snapshot):
    values = snapshot["pending"]["values"]
    slot = values.index(max(values))
    resp = client.post(f"/api/v1/session/{session_id}/input",
                       json={"type": "touch_slot", "slot": slot})
    assert resp.status_code == 200
    return resp.json()["snapshot"]


def test_session_lifecycle_over_http(client):
    created = client.post("/api/v1/session", json={
        "mode": "dice", "trials_per_game": 3, "seed": 42}).json()
    session_id = created["session_id"]
    snapshot = created["snapshot"]
    assert snapshot["phase"] == "menu"
    assert snapshot["seed"] == 42
    resp = client.post(f"/api/v1/session/{session_id}/input",
                       json={"type": "select_mode", "mode": "dice"})
    snapshot = resp.json()["snapshot"]
    assert snapshot["phase"] == "in_game"
    assert snapshot["pending"]["mode"] == "dice"
    for _ in range(3):
        snapshot = play_trial(client, session_id, snapshot)
    assert snapshot["phase"] == "ended"
    assert snapshot["correct_in_game"] == 3
    log = client.get(f"/api/v1/session/{session_id}/log").text
    assert log.startswith("Test no, Test Name,")
    assert len(log.splitlines()) == 4
    txt = client.get(f"/api/v1/session/{session_id}/log",
                     params={"format": "txt"}).text
    assert txt.startswith("Test no: 1\n")
    assert client.get(f"/api/v1/session/{session_id}/log",
                      params={"format": "pdf"}).status_code == 422
    events = client.get(f"/api/v1/session/{session_id}/events").text
    lines = events.splitlines()
    assert lines[0].split()[1] == "session_started"
    assert lines[-1].split()[1] == "game_ended(high)"
    # the queue drains: a second read is empty
    assert client.get(f"/api/v1/session/{session_id}/events").text == ""


def test_session_illegal_transition_is_409(client):
    created = client.post("/api/v1/session", json={"seed": 1}).json()
    resp = client.post(f"/api/v1/session/{created['session_id']}/input",
                       json={"type": "touch_slot", "slot": 0})
    assert resp.status_code == 409


def test_session_validation_errors_are_422(client):
    created = client.post("/api/v1/session", json={"seed": 1}).json()
    session_id = created["session_id"]
    resp = client.post(f"/api/v1/session/{session_id}/input",
                       json={"type": "teleport"})
    assert resp.status_code == 422
    client.post(f"/api/v1/session/{session_id}/input",
                json={"type": "select_mode", "mode": "dice"})
    resp = client.post(f"/api/v1/session/{session_id}/input",
                       json={"type": "touch_slot", "slot": 9})
    assert resp.status_code == 422
    bad_config = client.post("/api/v1/session", json={"set_size": 9})
    assert bad_config.status_code == 422


def test_session_not_found_is_404(client):
    assert client.get("/api/v1/session/deadbeef").status_code == 404


def test_long_press_and_exit_routes(client):
    created = client.post("/api/v1/session", json={"seed": 1}).json()
    session_id = created["session_id"]
    resp = client.post(f"/api/v1/session/{session_id}/input",
                       json={"type": "long_press", "duration_ms": 1500})
    assert resp.json()["snapshot"]["phase"] == "settings"
    resp = client.post(f"/api/v1/session/{session_id}/input",
                       json={"type": "exit"})
    assert resp.json()["snapshot"]["phase"] == "menu"
