"""Local JSON service: the same handlers as the CLI, behind POST /api/<op>.

Stateless: every request is independent and all core calls are pure, so the
threading server needs no locks.  Local use only by default; CORS headers are
sent so the explorer UI can talk to it from another origin.
"""

from __future__ import annotations

import json
import logging
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .api import dispatch
from .mutation import InternalInvariantError as MutationInvariantError
from .oracle import InternalInvariantError as OracleInvariantError
from .smc import InternalInvariantError as SmcInvariantError, VerificationError
from .wire import SCHEMA, WireError

log = logging.getLogger("tubecat.service")

ENDPOINTS = {"verify", "classify", "mutate", "extquiver", "explore", "hom", "enumerate"}


class Handler(BaseHTTPRequestHandler):
    server_version = "tubecat/0.1"

    def _send(self, status: int, body: dict) -> None:
        data = json.dumps(body, sort_keys=True).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Access-Control-Allow-Methods", "POST, GET, OPTIONS")
        self.end_headers()
        self.wfile.write(data)

    def do_OPTIONS(self) -> None:  # CORS preflight
        self._send(204, {})

    def do_GET(self) -> None:
        if self.path == "/api/health":
            self._send(200, {"schema": SCHEMA, "ok": True})
        else:
            self._send(404, {"schema": SCHEMA, "error": {"type": "not-found",
                                                         "message": self.path}})

    def do_POST(self) -> None:
        if not self.path.startswith("/api/"):
            self._send(404, {"schema": SCHEMA, "error": {"type": "not-found",
                                                         "message": self.path}})
            return
        op = self.path[len("/api/"):]
        if op not in ENDPOINTS:
            self._send(404, {"schema": SCHEMA, "error": {"type": "not-found",
                                                         "message": op}})
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            raw = self.rfile.read(length) if length else b"{}"
            payload = json.loads(raw.decode() or "{}")
            if not isinstance(payload, dict):
                raise WireError("request body must be a JSON object")
            result = dispatch(op, payload)
            self._send(200, result)
        except (WireError, json.JSONDecodeError) as exc:
            self._send(400, {"schema": SCHEMA, "error": {"type": "invalid-input",
                                                         "message": str(exc)}})
        except VerificationError as exc:
            self._send(422, {"schema": SCHEMA, "error": {"type": "not-simple-minded",
                                                         "message": str(exc)}})
        except (MutationInvariantError, OracleInvariantError, SmcInvariantError) as exc:
            log.exception("internal invariant breach")
            self._send(500, {"schema": SCHEMA, "error": {"type": "internal-invariant",
                                                         "message": str(exc)}})

    def log_message(self, fmt: str, *args) -> None:
        log.info("%s " + fmt, self.address_string(), *args)


def make_server(host: str = "127.0.0.1", port: int = 8421) -> ThreadingHTTPServer:
    return ThreadingHTTPServer((host, port), Handler)


def serve(host: str = "127.0.0.1", port: int = 8421) -> None:
    server = make_server(host, port)
    log.warning("serving on http://%s:%d", host, port)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
