"""Newline-delimited JSON protocol over stdio or a local TCP socket.

Requests:
    {"method": "initialize_proof_search",
     "params": {"theorem_name": ..., "theorem_file_path": ...}}
    {"method": "run_tactic", "params": {"state_id": ..., "tactic": ...}}

Responses always carry state, state_id, proof_finished, and error. Proof
failures are reported as error states with fresh ids (they stay addressable);
malformed requests get an error response with a null id and leave the
connection open. Each connection has its own sessions, so concurrent TCP
clients are isolated.
"""

from __future__ import annotations

import json
import socketserver
import sys
from typing import IO

from ..corpus import Corpus
from ..errors import MiniLeanError
from .session import EnvState, Session

__all__ = ["handle_request", "serve_stdio", "make_tcp_server", "ProtocolHandler"]


def _state_response(state: EnvState) -> dict:
    return {
        "state": state.text,
        "state_id": state.id,
        "proof_finished": state.proof_finished,
        "error": f"{state.error_kind}: {state.error_message}" if state.is_error else None,
    }


def _protocol_error(message: str) -> dict:
    return {"state": None, "state_id": None, "proof_finished": False, "error": message}


class ProtocolHandler:
    """One client's view of the corpus: at most one live session at a time."""

    def __init__(self, corpus: Corpus, wall_seconds: float | None = None, step_budget: int | None = None):
        self.corpus = corpus
        self.wall_seconds = wall_seconds
        self.step_budget = step_budget
        self.session: Session | None = None

    def handle_line(self, line: str) -> dict:
        try:
            request = json.loads(line)
        except json.JSONDecodeError as exc:
            return _protocol_error(f"malformed request: {exc}")
        if not isinstance(request, dict):
            return _protocol_error("malformed request: expected a JSON object")
        method = request.get("method")
        params = request.get("params") or {}
        if not isinstance(params, dict):
            return _protocol_error("malformed request: params must be an object")
        if method == "initialize_proof_search":
            return self._initialize(params)
        if method == "run_tactic":
            return self._run_tactic(params)
        return _protocol_error(f"unknown method {method!r}")

    def _initialize(self, params: dict) -> dict:
        name = params.get("theorem_name")
        file_path = params.get("theorem_file_path")
        if not isinstance(name, str):
            return _protocol_error("initialize_proof_search needs a theorem_name string")
        try:
            decl = self.corpus.theorem(name)
            if file_path is not None and decl.path != file_path:
                return _protocol_error(
                    f"theorem {name!r} lives in {decl.path!r}, not {file_path!r}"
                )
            self.session = Session(
                self.corpus, name, wall_seconds=self.wall_seconds, step_budget=self.step_budget
            )
        except MiniLeanError as exc:
            return _protocol_error(str(exc))
        return _state_response(self.session.initial)

    def _run_tactic(self, params: dict) -> dict:
        if self.session is None:
            return _protocol_error("no proof search initialized")
        state_id = params.get("state_id")
        tactic = params.get("tactic")
        if not isinstance(state_id, int) or not isinstance(tactic, str):
            return _protocol_error("run_tactic needs an integer state_id and a tactic string")
        try:
            return _state_response(self.session.run_tac(state_id, tactic))
        except MiniLeanError as exc:
            return _protocol_error(str(exc))


def serve_stdio(
    corpus: Corpus,
    stdin: IO[str] | None = None,
    stdout: IO[str] | None = None,
    wall_seconds: float | None = None,
    step_budget: int | None = None,
) -> None:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    handler = ProtocolHandler(corpus, wall_seconds, step_budget)
    for line in stdin:
        if not line.strip():
            continue
        stdout.write(json.dumps(handler.handle_line(line), ensure_ascii=False) + "\n")
        stdout.flush()


def make_tcp_server(
    corpus: Corpus,
    host: str = "127.0.0.1",
    port: int = 0,
    wall_seconds: float | None = None,
    step_budget: int | None = None,
) -> socketserver.ThreadingTCPServer:
    """Build (but do not start) a threaded TCP server; each connection gets
    an isolated ProtocolHandler. The bound port is server.server_address[1]."""

    class Handler(socketserver.StreamRequestHandler):
        def handle(self) -> None:
            protocol = ProtocolHandler(corpus, wall_seconds, step_budget)
            for raw in self.rfile:
                line = raw.decode("utf-8", errors="replace")
                if not line.strip():
                    continue
                reply = json.dumps(protocol.handle_line(line), ensure_ascii=False) + "\n"
                self.wfile.write(reply.encode("utf-8"))
                self.wfile.flush()

    class Server(socketserver.ThreadingTCPServer):
        allow_reuse_address = True
        daemon_threads = True

    return Server((host, port), Handler)
