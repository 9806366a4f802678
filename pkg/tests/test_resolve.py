from __future__ import annotations

import pytest

from minidojo.errors import AmbiguousNameError, UnknownNameError
from minidojo.kernel import INSIDE_NAMESPACE, OPEN_ONLY, parse_file, resolve_name


def _decls(source: str) -> dict:
    parsed = parse_file(source, "f.mlean")
    return {d.full_name: d for d in parsed.decls}


NESTED = """\
def read : read(x) = x
namespace outer
def read : read(x) = x
namespace inner
def read : read(x) = x
def only_inner : only_inner(x) = x
end inner
end outer
"""


def test_innermost_namespace_wins():
    decls = _decls(NESTED)
    got = resolve_name("read", ("outer", "inner"), decls)
    assert got.full_name == "outer.inner.read"
    got = resolve_name("read", ("outer",), decls)
    assert got.full_name == "outer.read"


def test_fallback_walks_outward_then_root():
    decls = _decls(NESTED)
    # only_inner exists only at outer.inner; from there it resolves directly.
    assert resolve_name("only_inner", ("outer", "inner"), decls).full_name == "outer.inner.only_inner"
    # From the root, the bare name is unknown: no prefix matches and there is
    # no root-level declaration.
    with pytest.raises(UnknownNameError):
        resolve_name("only_inner", (), decls)
    # A name missing from every enclosing namespace falls back to the root.
    decls2 = _decls("def base : base(x) = x\nnamespace n\ndef local_one : local_one(x) = x\nend n\n")
    assert resolve_name("base", ("n",), decls2).full_name == "base"


def test_qualified_names_resolve_from_inside():
    decls = _decls(NESTED)
    # A dotted surface name is tried with the same prefixing rules, so a
    # partially qualified name works from an enclosing namespace.
    assert resolve_name("inner.read", ("outer",), decls).full_name == "outer.inner.read"
    assert resolve_name("outer.inner.read", (), decls).full_name == "outer.inner.read"


def test_open_only_bare_name_ambiguous():
    decls = _decls(NESTED)
    with pytest.raises(AmbiguousNameError) as err:
        resolve_name("read", ("outer", "inner"), decls, mode=OPEN_ONLY)
    # The error carries every candidate so the failure is diagnosable.
    assert "outer.inner.read" in str(err.value)
    assert "outer.read" in str(err.value)


def test_open_only_unique_short_name_resolves():
    decls = _decls(NESTED)
    got = resolve_name("only_inner", (), decls, mode=OPEN_ONLY)
    assert got.full_name == "outer.inner.only_inner"


def test_open_only_dotted_names_exact_match_only():
    decls = _decls(NESTED)
    assert resolve_name("outer.inner.read", (), decls, mode=OPEN_ONLY).full_name == "outer.inner.read"
    # A partial qualification is not expanded in open_only mode.
    with pytest.raises(UnknownNameError):
        resolve_name("inner.read", ("outer",), decls, mode=OPEN_ONLY)


def test_unknown_name_raises_in_both_modes():
    decls = _decls(NESTED)
    with pytest.raises(UnknownNameError):
        resolve_name("missing", ("outer",), decls)
    with pytest.raises(UnknownNameError):
        resolve_name("missing", ("outer",), decls, mode=OPEN_ONLY)


def test_unknown_mode_rejected():
    decls = _decls(NESTED)
    with pytest.raises(ValueError):
        resolve_name("read", (), decls, mode="open_everything")


def test_modes_agree_when_unambiguous():
    decls = _decls("namespace n\ndef f : f(x) = x\nend n\n")
    a = resolve_name("f", ("n",), decls, mode=INSIDE_NAMESPACE)
    b = resolve_name("f", ("n",), decls, mode=OPEN_ONLY)
    assert a is b
