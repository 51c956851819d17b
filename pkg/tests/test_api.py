def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"
    assert "X-Process-Time" in response.headers


def test_list_commands(client):
    response = client.get("/api/commands")
    assert response.status_code == 200
    assert "screen" in response.json()["data"]


def test_run_command(client):
    response = client.post("/api/commands/bracket", json={"args": ["Y", "X"]})
    body = response.json()
    assert response.status_code == 200
    assert body["success"] is True
    assert body["data"]["result"] == "1"


def test_run_command_with_flags(client):
    response = client.post(
        "/api/commands/mass", json={"args": ["X + 2*X^2*Y^3 + X^3*Y^6"], "flags": {"square": True}}
    )
    assert response.json()["data"]["result"] == 5


def test_parse_error_is_a_bad_request(client):
    response = client.post("/api/commands/normalize", json={"args": ["X +"]})
    body = response.json()
    assert response.status_code == 400
    assert body["success"] is False
    assert body["error_code"] == "PARSE_ERROR"
    assert body["position"] == [3, 4]


def test_unknown_command(client):
    response = client.post("/api/commands/nosuch", json={"args": []})
    assert response.status_code == 400
    assert response.json()["error_code"] == "UNKNOWN_COMMAND"


def test_invariant_breach_is_a_server_error(client, monkeypatch):
    from shared.utils.errors import InvariantBreach

    def breach(P, max_iters):
        raise InvariantBreach("sigma did not decrease")

    monkeypatch.setattr("shared.services.command_service.reduce_upper_edge", breach)
    response = client.post("/api/commands/untwist", json={"args": ["Y^2 + X"]})
    assert response.status_code == 500
    assert response.json()["error_code"] == "INVARIANT_BREACH"


def test_screen(client):
    response = client.post("/api/screen", json={"P": "Y", "Q": "X"})
    body = response.json()
    assert response.status_code == 200
    assert body["message"] == "GENERATES_BY_COROLLARY"
    assert body["data"]["bracket_ok"] is True


def test_screen_reports_wrong_bracket(client):
    body = client.post("/api/screen", json={"P": "X", "Q": "Y"}).json()
    assert body["data"]["verdict"] == "BRACKET_NOT_ONE"
    assert body["data"]["bracket"] == "-1"


def test_screen_validation(client):
    response = client.post("/api/screen", json={"P": "Y"})
    assert response.status_code == 422
    assert response.json()["error_code"] == "VALIDATION_ERROR"


def test_selftest(client):
    response = client.post("/api/selftest", json={"seed": 0, "cases": 2})
    body = response.json()
    assert response.status_code == 200
    assert body["success"] is True
    assert body["data"]["seed"] == 0
