from __future__ import annotations

import io
import json
import socket
import threading

from minidojo.dojo import ProtocolHandler, make_tcp_server, serve_stdio

GCD_PROOF = ["cases n", "unfold gcd", "unfold gcd", "rw mod_self", "rw gcd_zero_left"]


def _init(name: str, file_path: str | None = None) -> str:
    params: dict = {"theorem_name": name}
    if file_path is not None:
        params["theorem_file_path"] = file_path
    return json.dumps({"method": "initialize_proof_search", "params": params})


def _run(state_id: int, tactic: str) -> str:
    return json.dumps({"method": "run_tactic", "params": {"state_id": state_id, "tactic": tactic}})


def test_handler_full_proof(bundled_corpus):
    handler = ProtocolHandler(bundled_corpus)
    reply = handler.handle_line(_init("nat.gcd_self", "nat/gcd.mlean"))
    assert reply["error"] is None
    assert reply["state"] == "⊢ gcd(n, n) = n"
    assert reply["state_id"] == 0
    state_id = reply["state_id"]
    for tactic in GCD_PROOF:
        reply = handler.handle_line(_run(state_id, tactic))
        assert reply["error"] is None
        state_id = reply["state_id"]
    assert reply["proof_finished"] is True
    assert reply["state"] == "no goals"


def test_handler_tactic_errors_are_responses(bundled_corpus):
    handler = ProtocolHandler(bundled_corpus)
    root = handler.handle_line(_init("nat.gcd_self"))
    reply = handler.handle_line(_run(root["state_id"], "rw nothing"))
    # Tactic-level failures come back as addressable error states.
    assert reply["state_id"] is not None
    assert reply["error"].startswith("UnknownName:")
    assert reply["proof_finished"] is False


def test_handler_protocol_errors(bundled_corpus):
    handler = ProtocolHandler(bundled_corpus)
    # run before initialize
    reply = handler.handle_line(_run(0, "rfl"))
    assert reply["state_id"] is None and "initialized" in reply["error"]
    # malformed JSON
    reply = handler.handle_line("{nope")
    assert reply["state_id"] is None and "malformed" in reply["error"]
    # non-object request
    reply = handler.handle_line(json.dumps(["initialize_proof_search"]))
    assert reply["state_id"] is None
    # unknown method
    reply = handler.handle_line(json.dumps({"method": "teleport", "params": {}}))
    assert "unknown method" in reply["error"]
    # wrong file path
    reply = handler.handle_line(_init("nat.gcd_self", "nat/basic.mlean"))
    assert reply["state"] is None and "lives in" in reply["error"]
    # unknown theorem
    reply = handler.handle_line(_init("nat.nonesuch"))
    assert reply["state"] is None
    # non-integer state id
    handler.handle_line(_init("nat.gcd_self"))
    reply = handler.handle_line(json.dumps({"method": "run_tactic", "params": {"state_id": "0", "tactic": "rfl"}}))
    assert reply["state_id"] is None and "integer" in reply["error"]


def test_serve_stdio_processes_lines(bundled_corpus):
    lines = [_init("nat.gcd_self")] + [_run(i, t) for i, t in enumerate(GCD_PROOF)]
    stdin = io.StringIO("\n".join(lines) + "\n")
    stdout = io.StringIO()
    serve_stdio(bundled_corpus, stdin=stdin, stdout=stdout)
    replies = [json.loads(line) for line in stdout.getvalue().splitlines()]
    assert len(replies) == len(lines)
    assert replies[-1]["proof_finished"] is True


def test_serve_stdio_skips_blank_lines(bundled_corpus):
    stdin = io.StringIO("\n\n" + _init("nat.gcd_self") + "\n")
    stdout = io.StringIO()
    serve_stdio(bundled_corpus, stdin=stdin, stdout=stdout)
    replies = stdout.getvalue().splitlines()
    assert len(replies) == 1


def _talk(port: int, lines: list[str]) -> list[dict]:
    with socket.create_connection(("127.0.0.1", port), timeout=5.0) as conn:
        reader = conn.makefile("r", encoding="utf-8")
        writer = conn.makefile("w", encoding="utf-8")
        replies = []
        for line in lines:
            writer.write(line + "\n")
            writer.flush()
            replies.append(json.loads(reader.readline()))
        return replies


def test_tcp_server_connections_are_isolated(bundled_corpus):
    server = make_tcp_server(bundled_corpus, port=0)
    port = server.server_address[1]
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        # Connection A initializes; connection B must not see A's session.
        a = _talk(port, [_init("nat.gcd_self"), _run(0, "cases n")])
        assert a[1]["error"] is None
        b = _talk(port, [_run(0, "cases n")])
        assert b[0]["state_id"] is None and "initialized" in b[0]["error"]
        # Two live connections interleave without sharing state ids.
        c = _talk(port, [_init("nat.gcd_zero_left"), _run(0, "rw gcd")])
        assert c[1]["proof_finished"] is True
    finally:
        server.shutdown()
        server.server_close()
        thread.join(timeout=5.0)
