from __future__ import annotations

import pytest

from minidojo.dojo import (
    AMBIGUOUS_NAME,
    BUDGET_EXCEEDED,
    ON_ERROR_STATE,
    PARSE_ERROR,
    TACTIC_FAILED,
    TIMEOUT,
    UNKNOWN_NAME,
    Session,
    initialize,
    step_budget_default,
    wall_seconds_default,
)
from minidojo.errors import DojoError, UnknownTheoremError

GCD_PROOF = ["cases n", "unfold gcd", "unfold gcd", "rw mod_self", "rw gcd_zero_left"]


def test_initialize_returns_root_state(bundled_corpus):
    session, state = initialize(bundled_corpus, "nat.gcd_self")
    assert state.id == 0
    assert state.text == "⊢ gcd(n, n) = n"
    assert not state.is_error and not state.proof_finished
    assert session.initial is state


def test_full_proof_drives_to_finished(bundled_corpus):
    session, state = initialize(bundled_corpus, "nat.gcd_self")
    for tactic in GCD_PROOF:
        state = session.run_tac(state.id, tactic)
        assert not state.is_error
    assert state.proof_finished
    assert state.text == "no goals"


def test_state_ids_are_fresh_and_addressable(bundled_corpus):
    session, root = initialize(bundled_corpus, "nat.gcd_self")
    a = session.run_tac(root.id, "cases n")
    b = session.run_tac(root.id, "cases n")
    # Re-running from the same state mints a new node; the tree keeps both.
    assert a.id != b.id
    assert a.text == b.text
    again = session.run_tac(a.id, "rw gcd")
    assert again.id not in (a.id, b.id)


def test_branching_explores_the_tree(bundled_corpus):
    session, root = initialize(bundled_corpus, "nat.gcd_self")
    trunk = session.run_tac(root.id, "cases n")
    wrong = session.run_tac(trunk.id, "rw mod_self")
    assert wrong.is_error
    # The trunk state remains usable after a failed branch.
    onward = session.run_tac(trunk.id, "rw gcd")
    assert not onward.is_error


def test_error_kinds(bundled_corpus, ambiguity_corpus):
    session, root = initialize(bundled_corpus, "nat.gcd_self")
    assert session.run_tac(root.id, "rfl").error_kind == TACTIC_FAILED
    assert session.run_tac(root.id, "rw nothing").error_kind == UNKNOWN_NAME
    assert session.run_tac(root.id, "frobnicate x").error_kind == PARSE_ERROR
    assert session.run_tac(root.id, "rw").error_kind == PARSE_ERROR

    first = ambiguity_corpus.theorems()[-1].full_name
    open_session, open_root = initialize(ambiguity_corpus, first, mode="open_only")
    got = open_session.run_tac(open_root.id, "rw read")
    assert got.error_kind == AMBIGUOUS_NAME


def test_error_states_absorb_tactics(bundled_corpus):
    session, root = initialize(bundled_corpus, "nat.gcd_self")
    err = session.run_tac(root.id, "rfl")
    assert err.is_error
    after = session.run_tac(err.id, "cases n")
    assert after.error_kind == ON_ERROR_STATE
    assert TACTIC_FAILED in (after.error_message or "")


def test_finished_states_absorb_tactics(bundled_corpus):
    session, state = initialize(bundled_corpus, "nat.gcd_self")
    for tactic in GCD_PROOF:
        state = session.run_tac(state.id, tactic)
    assert state.proof_finished
    after = session.run_tac(state.id, "rfl")
    assert after.error_kind == ON_ERROR_STATE


def test_timeout_via_injected_clock(bundled_corpus):
    ticks = iter([0.0, 100.0, 200.0])
    session, root = initialize(
        bundled_corpus, "nat.gcd_self", wall_seconds=50.0, clock=lambda: next(ticks)
    )
    got = session.run_tac(root.id, "cases n")
    assert got.error_kind == TIMEOUT


def test_rewrite_budget_exceeded(tmp_path, bundled_corpus):
    from minidojo.corpus import corpus_from_sources

    corpus = corpus_from_sources(
        {
            "loop.mlean": (
                "def spin : spin(x) = spin(x)\n"
                "lemma stuck : spin(zero) = zero := begin rfl end\n"
            )
        }
    )
    session, root = initialize(corpus, "stuck", step_budget=5)
    got = session.run_tac(root.id, "unfold spin")
    assert got.error_kind == BUDGET_EXCEEDED


def test_defaults_read_environment(monkeypatch):
    monkeypatch.setenv("MINIDOJO_WALL_S", "12.5")
    monkeypatch.setenv("MINIDOJO_STEPS", "42")
    assert wall_seconds_default() == 12.5
    assert step_budget_default() == 42
    monkeypatch.delenv("MINIDOJO_WALL_S")
    monkeypatch.delenv("MINIDOJO_STEPS")
    assert wall_seconds_default() > 0
    assert step_budget_default() > 0


def test_path_to_reconstructs_tactic_sequence(bundled_corpus):
    session, state = initialize(bundled_corpus, "nat.gcd_self")
    for tactic in GCD_PROOF:
        state = session.run_tac(state.id, tactic)
    assert session.path_to(state.id) == GCD_PROOF
    assert session.path_to(0) == []


def test_unknown_state_id_raises(bundled_corpus):
    session, _ = initialize(bundled_corpus, "nat.gcd_self")
    with pytest.raises(DojoError):
        session.run_tac(999, "rfl")
    with pytest.raises(DojoError):
        session.path_to(999)


def test_unknown_theorem_raises(bundled_corpus):
    with pytest.raises(UnknownTheoremError):
        Session(bundled_corpus, "nat.not_there")


def test_resolution_mode_changes_outcomes(ambiguity_corpus):
    # The same proof that replays in namespace mode fails in open_only mode
    # when a short name is defined in two namespaces.
    theorem = ambiguity_corpus.theorems()[-1].full_name
    ns_session, ns_root = initialize(ambiguity_corpus, theorem)
    proof = ambiguity_corpus.decls[theorem].proof
    from minidojo.kernel import format_tactic

    state = ns_root
    for tactic in proof:
        state = ns_session.run_tac(state.id, format_tactic(tactic))
    assert state.proof_finished
