from __future__ import annotations

import pytest

from minidojo.errors import ArityError, DuplicateNameError, ParseError
from minidojo.kernel import (
    App,
    Cases,
    DeclKind,
    Rfl,
    Rw,
    Unfold,
    Var,
    parse_file,
    parse_tactic,
    parse_term,
    slice_span,
    tokenize,
)


def test_tokenize_idents_comments_and_symbols():
    tokens = tokenize("def k' : -- comment\n  k'(zero) = x")
    texts = [t.text for t in tokens]
    assert texts == ["def", "k'", ":", "k'", "(", "zero", ")", "=", "x", ""]
    assert tokens[-1].kind == "eof"
    assert tokens[0].line == 1 and tokens[0].col == 1
    assert tokens[3].line == 2 and tokens[3].col == 3


def test_tokenize_arrow_spellings():
    assert [t.text for t in tokenize("rw <- a")][:-1] == ["rw", "<-", "a"]
    assert [t.text for t in tokenize("rw ← a")][:-1] == ["rw", "←", "a"]


def test_parse_term_shapes():
    assert parse_term("x") == Var("x")
    assert parse_term("zero") == App("zero")
    assert parse_term("succ(zero)") == App("succ", (App("zero"),))
    assert parse_term("f(x, g(y))") == App("f", (Var("x"), App("g", (Var("y"),))))


def test_parse_term_rejects_trailing_input():
    with pytest.raises(ParseError):
        parse_term("f(x) y")


def test_parse_tactic_forms():
    assert parse_tactic("rfl") == Rfl()
    assert parse_tactic("cases n") == Cases("n")
    assert parse_tactic("rw mod_self") == Rw("mod_self")
    assert parse_tactic("rw ← mod_self") == Rw("mod_self", reverse=True)
    assert parse_tactic("rw <- nat.mod_self") == Rw("nat.mod_self", reverse=True)
    assert parse_tactic("unfold nat.gcd") == Unfold("nat.gcd")


def test_parse_file_namespaces_and_positions():
    source = (
        "import lib/base\n"
        "\n"
        "namespace outer\n"
        "namespace inner\n"
        "\n"
        "def f : f(x) = x\n"
        "\n"
        "end inner\n"
        "\n"
        "lemma triv : zero = zero := begin rfl end\n"
        "\n"
        "end outer\n"
    )
    parsed = parse_file(source, "demo.mlean")
    assert parsed.imports == ["lib/base"]
    by_name = {d.full_name: d for d in parsed.decls}
    assert set(by_name) == {"outer.inner.f", "outer.triv"}
    f = by_name["outer.inner.f"]
    assert f.kind is DeclKind.DEFINITION
    assert f.namespace_path == ("outer", "inner")
    assert f.equations == ((App("f", (Var("x"),)), Var("x")),)
    assert slice_span(source, f.start, f.end) == "def f : f(x) = x"
    triv = by_name["outer.triv"]
    assert triv.proof == (Rfl(),)
    assert slice_span(source, triv.start, triv.end) == "lemma triv : zero = zero := begin rfl end"


def test_multi_equation_definition_and_semicolons():
    parsed = parse_file("def m : m(zero) = zero ; m(succ(x)) = x\n", "m.mlean")
    (decl,) = parsed.decls
    assert len(decl.equations) == 2


def test_imports_must_precede_declarations():
    with pytest.raises(ParseError):
        parse_file("namespace a\nend a\nimport late\n", "f.mlean")


def test_namespace_end_must_match():
    with pytest.raises(ParseError):
        parse_file("namespace a\nend b\n", "f.mlean")


def test_definition_lhs_head_must_be_its_name():
    with pytest.raises(ParseError):
        parse_file("def f : g(x) = x\n", "f.mlean")


def test_empty_proof_rejected():
    with pytest.raises(ParseError):
        parse_file("lemma t : zero = zero := begin end\n", "f.mlean")


def test_trailing_comma_in_proof_allowed():
    parsed = parse_file("lemma t : zero = zero := begin rfl, end\n", "f.mlean")
    assert parsed.decls[0].proof == (Rfl(),)


def test_reserved_constructor_names_rejected():
    with pytest.raises(ParseError):
        parse_file("def zero : zero(x) = x\n", "f.mlean")
    with pytest.raises(ParseError):
        parse_file("lemma succ : zero = zero := begin rfl end\n", "f.mlean")


def test_constructor_arities_enforced():
    with pytest.raises(ArityError):
        parse_term("succ(x, y)")
    with pytest.raises(ArityError):
        parse_term("zero(x)")


def test_user_arity_consistency_within_file():
    with pytest.raises(ArityError):
        parse_file("def f : f(x) = x\nlemma t : f(x, x) = x := begin rfl end\n", "f.mlean")


def test_duplicate_names_rejected():
    with pytest.raises(DuplicateNameError):
        parse_file("def f : f(x) = x\ndef f : f(x) = x\n", "f.mlean")


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as err:
        parse_file("def f :\n= x\n", "f.mlean")
    assert err.value.line == 2


def test_bare_nonzero_identifier_is_a_variable():
    lhs, rhs = parse_file("def f : f(n) = n\n", "f.mlean").decls[0].equations[0]
    assert rhs == Var("n")
