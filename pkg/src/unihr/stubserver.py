"""Bundled stub HTTP service for the Ministry and bibliography endpoints.

Speaks exactly the wire formats the HTTP clients expect, so the full
transport path can be exercised offline. Tests (and `unihr serve` in
demos) launch it in a background thread.

Failure injection: set ``fail_mode`` to "drop" (close the connection
unanswered), "malformed" (non-JSON body) or "error" (HTTP 500), either
directly on the instance or via POST /_control/mode.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Any


class _Handler(BaseHTTPRequestHandler):
    server: "ExternalServiceStub"

    def log_message(self, format: str, *args: Any) -> None:
        pass

    def _body(self) -> dict[str, Any]:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b"{}"
        try:
            parsed = json.loads(raw)
        except json.JSONDecodeError:
            parsed = {}
        return parsed if isinstance(parsed, dict) else {}

    def _reply(self, status: int, payload: dict[str, Any]) -> None:
        body = json.dumps(payload).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _inject_failure(self) -> bool:
        mode = self.server.fail_mode
        if mode == "drop":
            self.connection.close()
            return True
        if mode == "malformed":
            body = b"this is not json {"
            self.send_response(200)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)
            return True
        if mode == "error":
            self._reply(500, {"error": "injected failure"})
            return True
        return False

    def do_POST(self) -> None:
        if self.path == "/_control/mode":
            self.server.fail_mode = self._body().get("mode")
            self._reply(200, {"ok": True})
            return
        if self.path == "/_control/bibliography":
            body = self._body()
            self.server.bibliographies[body["author_key"]] = body.get("records", [])
            self._reply(200, {"ok": True})
            return
        if self._inject_failure():
            return
        if self.path == "/register":
            body = self._body()
            application_id = body.get("application_id")
            if not application_id:
                self._reply(400, {"error": "application_id required"})
                return
            with self.server.lock:
                ack = self.server.acks.get(application_id)
                if ack is None:
                    ack = f"ack-{len(self.server.acks) + 1:04d}"
                    self.server.acks[application_id] = ack
                    self.server.applications[application_id] = body
            self._reply(200, {"ack": ack})
            return
        self._reply(404, {"error": f"no such endpoint: {self.path}"})

    def do_GET(self) -> None:
        if self._inject_failure():
            return
        if self.path.startswith("/bibliography/"):
            author_key = self.path.removeprefix("/bibliography/")
            records = self.server.bibliographies.get(author_key, [])
            self._reply(200, {"records": records})
            return
        if self.path.startswith("/decisions/"):
            application_id = self.path.removeprefix("/decisions/")
            with self.server.lock:
                if application_id not in self.server.applications:
                    self._reply(404, {"error": "unknown application"})
                    return
                decision = self.server.decisions.get(application_id)
                if decision is None:
                    decision = {
                        "decision": "approved",
                        "scientist_id": f"sci-{len(self.server.decisions) + 1:05d}",
                    }
                    self.server.decisions[application_id] = decision
            self._reply(200, decision)
            return
        self._reply(404, {"error": f"no such endpoint: {self.path}"})


class ExternalServiceStub(ThreadingHTTPServer):
    """Threaded stub server; bind to port 0 for an ephemeral port."""

    daemon_threads = True

    def __init__(self, host: str = "127.0.0.1", port: int = 0):
        super().__init__((host, port), _Handler)
        self.fail_mode: str | None = None
        self.lock = threading.Lock()
        self.acks: dict[str, str] = {}
        self.applications: dict[str, dict[str, Any]] = {}
        self.decisions: dict[str, dict[str, Any]] = {}
        self.bibliographies: dict[str, list[dict[str, Any]]] = {}
        self._thread: threading.Thread | None = None

    @property
    def base_url(self) -> str:
        host, port = self.server_address[:2]
        return f"http://{host}:{port}"

    def start(self) -> "ExternalServiceStub":
        self._thread = threading.Thread(target=self.serve_forever, daemon=True)
        self._thread.start()
        return self

    def stop(self) -> None:
        self.shutdown()
        self.server_close()
        if self._thread is not None:
            self._thread.join(timeout=5)
