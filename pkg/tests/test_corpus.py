from __future__ import annotations

import pytest

from minidojo.corpus import (
    accessible_premises,
    corpus_from_sources,
    import_closure,
    load_corpus,
    premise_usage,
    topo_order,
)
from minidojo.errors import (
    ArityError,
    ImportCycleError,
    MissingImportError,
    UnknownTheoremError,
)


def test_bundled_corpus_topology(bundled_corpus):
    assert bundled_corpus.topo == ["nat/basic.mlean", "nat/gcd.mlean"]
    assert "nat.gcd_self" in bundled_corpus.decls


def test_topo_order_resolves_diamond():
    imports = {
        "a.mlean": [],
        "b.mlean": ["a.mlean"],
        "c.mlean": ["a.mlean"],
        "d.mlean": ["b.mlean", "c.mlean"],
    }
    order = topo_order(imports)
    assert order.index("a.mlean") < order.index("b.mlean")
    assert order.index("a.mlean") < order.index("c.mlean")
    assert order.index("b.mlean") < order.index("d.mlean")
    assert order.index("c.mlean") < order.index("d.mlean")


def test_import_cycle_reported_with_path():
    imports = {"a.mlean": ["b.mlean"], "b.mlean": ["c.mlean"], "c.mlean": ["a.mlean"]}
    with pytest.raises(ImportCycleError) as err:
        topo_order(imports)
    assert "a.mlean" in str(err.value)


def test_missing_import_rejected():
    with pytest.raises(MissingImportError):
        corpus_from_sources({"a.mlean": "import ghost\ndef f : f(x) = x\n"})


def test_import_closure_is_transitive():
    # The closure is the set of reachable imports, excluding the file itself.
    imports = {"a.mlean": [], "b.mlean": ["a.mlean"], "c.mlean": ["b.mlean"]}
    assert import_closure(imports, "c.mlean") == {"a.mlean", "b.mlean"}
    assert import_closure(imports, "a.mlean") == set()


def test_arity_consistency_across_files():
    sources = {
        "a.mlean": "def f : f(x) = x\n",
        "b.mlean": "import a\nlemma t : f(zero, zero) = zero := begin rfl end\n",
    }
    with pytest.raises(ArityError):
        corpus_from_sources(sources)


def test_premise_code_is_verbatim_source(bundled_corpus):
    for premise in bundled_corpus.premises.values():
        decl = bundled_corpus.decls[premise.full_name]
        assert premise.path == decl.path
        source = bundled_corpus.files[premise.path].source
        assert premise.code in source
        assert premise.code.startswith(("def", "lemma", "theorem"))


def test_accessible_premises_order_and_cutoff(bundled_corpus):
    got = [p.full_name for p in accessible_premises(bundled_corpus, "nat.gcd_self")]
    assert got == ["nat.mod", "nat.mod_self", "nat.gcd", "nat.gcd_zero_left"]
    # A theorem never sees itself or later declarations in its own file.
    assert "nat.gcd_self" not in got


def test_accessible_premises_cross_file(bundled_corpus):
    # The first theorem of the importing file sees everything imported.
    first = bundled_corpus.files["nat/gcd.mlean"].decls[0]
    got = {p.full_name for p in accessible_premises(bundled_corpus, first.full_name)}
    basic = {d.full_name for d in bundled_corpus.files["nat/basic.mlean"].decls}
    assert basic <= got or first.full_name in basic


def test_unknown_theorem_raises(bundled_corpus):
    with pytest.raises(UnknownTheoremError):
        accessible_premises(bundled_corpus, "nat.zilch")
    with pytest.raises(UnknownTheoremError):
        bundled_corpus.theorem("nat.gcd")  # a definition, not provable


def test_premise_usage_maps_premise_to_users(bundled_corpus):
    usage = premise_usage(bundled_corpus)
    assert usage["nat.gcd"] == {"nat.gcd_zero_left", "nat.gcd_self"}
    assert usage["nat.gcd_zero_left"] == {"nat.gcd_self"}
    assert usage["nat.mod_self"] == {"nat.gcd_self"}


def test_corpus_loads_from_directory(tmp_path):
    (tmp_path / "one.mlean").write_text("def f : f(x) = x\n")
    (tmp_path / "two.mlean").write_text(
        "import one\nlemma t : f(zero) = zero := begin rw f end\n"
    )
    corpus = load_corpus(tmp_path)
    assert corpus.topo == ["one.mlean", "two.mlean"]
    assert set(corpus.decls) == {"f", "t"}


def test_env_for_scopes_resolution_to_accessible(bundled_corpus):
    env = bundled_corpus.env_for("nat.gcd_self")
    assert sorted(env.decls) == [
        "nat.gcd",
        "nat.gcd_zero_left",
        "nat.mod",
        "nat.mod_self",
    ]
    assert env.namespace_path == ("nat",)
