import json
import threading
import urllib.request

import pytest

from tubecat import api
from tubecat.service import make_server


@pytest.fixture(scope="module")
def server_url():
    server = make_server("127.0.0.1", 0)
    port = server.server_address[1]
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{port}"
    server.shutdown()
    server.server_close()


def _post(url: str, op: str, payload: dict):
    req = urllib.request.Request(
        f"{url}/api/{op}", data=json.dumps(payload).encode(),
        headers={"Content-Type": "application/json"}, method="POST")
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, json.loads(resp.read().decode())
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read().decode())


def test_health(server_url):
    with urllib.request.urlopen(f"{server_url}/api/health") as resp:
        assert resp.status == 200
        assert json.loads(resp.read().decode())["ok"] is True


def test_service_equals_cli_json_mode(server_url):
    cases = [
        ("verify", {"smc": {"p": 2, "objects": [{"j": 0, "t": 1, "k": 0},
                                                {"j": 1, "t": 1, "k": 0}]}}),
        ("classify", {"smc": {"p": 3, "objects": [{"j": 2, "t": 3, "k": 0},
                                                  {"j": 1, "t": 2, "k": 1},
                                                  {"j": 1, "t": 1, "k": 0}]}}),
        ("mutate", {"smc": {"p": 2, "objects": [{"j": 0, "t": 1, "k": 0},
                                                {"j": 1, "t": 1, "k": 0}]},
                    "at": 1, "dir": "left"}),
        ("extquiver", {"smc": {"p": 2, "objects": [{"j": 0, "t": 2, "k": 0},
                                                   {"j": 1, "t": 1, "k": 1}]},
                       "gentle": True}),
        ("explore", {"start": {"p": 2, "objects": [{"j": 0, "t": 1, "k": 0},
                                                   {"j": 1, "t": 1, "k": 0}]},
                     "radius": 1, "window": 2}),
    ]
    for op, payload in cases:
        status, body = _post(server_url, op, payload)
        assert status == 200, (op, body)
        assert body == api.dispatch(op, payload), op


def test_service_error_codes(server_url):
    status, body = _post(server_url, "verify", {"smc": {"p": 2, "objects": []}})
    assert status == 400
    assert body["error"]["type"] == "invalid-input"
    status, body = _post(server_url, "verify", {
        "smc": {"p": 2, "objects": [{"j": 0, "t": 1, "k": 0},
                                    {"j": 0, "t": 1, "k": 2}]}})
    assert status == 422
    assert body["error"]["type"] == "not-simple-minded"
    status, _ = _post(server_url, "nonsense", {})
    assert status == 404


def test_concurrent_requests(server_url):
    payload = {"smc": {"p": 3, "objects": [{"j": 0, "t": 1, "k": 0},
                                           {"j": 1, "t": 1, "k": 0},
                                           {"j": 2, "t": 1, "k": 0}]}}
    results = []

    def call():
        results.append(_post(server_url, "verify", payload))

    threads = [threading.Thread(target=call) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(status == 200 and body["ok"] for status, body in results)
