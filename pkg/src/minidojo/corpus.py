"""Corpus loading: files, import graph, premises, and accessibility.

A corpus is a directory tree of ``.mlean`` files. Files are keyed by their
POSIX-style relative path; an import line ``import nat/basic`` refers to the
file ``nat/basic.mlean``. The import graph must be acyclic. Declarations of
all kinds double as premises; a premise is accessible from a theorem when it
is defined in a transitively imported file, or earlier in the same file.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import (
    ArityError,
    DuplicateNameError,
    ImportCycleError,
    MissingImportError,
    UnknownTheoremError,
)
from .kernel import Decl, Env, ParsedFile, parse_file, slice_span
from .kernel.parser import CONSTRUCTOR_ARITY

__all__ = [
    "Premise",
    "CorpusFile",
    "Corpus",
    "load_corpus",
    "corpus_from_sources",
    "topo_order",
    "accessible_names",
    "accessible_premises",
    "premise_usage",
]

SOURCE_SUFFIX = ".mlean"


@dataclass(frozen=True)
class Premise:
    """A declaration viewed as retrievable training data: its name, where it
    lives, and its verbatim source text."""

    full_name: str
    path: str
    start: tuple[int, int]
    end: tuple[int, int]
    kind: str
    code: str


@dataclass
class CorpusFile:
    path: str
    source: str
    imports: list[str]  # resolved file keys, in written order
    raw_imports: list[str]  # literal import specs, in written order
    decls: list[Decl]


@dataclass
class Corpus:
    root: str
    files: dict[str, CorpusFile]
    topo: list[str]
    decls: dict[str, Decl]
    premises: dict[str, Premise]

    def premises_of(self, path: str) -> list[Premise]:
        return [self.premises[d.full_name] for d in self.files[path].decls]

    def theorem(self, full_name: str) -> Decl:
        decl = self.decls.get(full_name)
        if decl is None:
            raise UnknownTheoremError(f"no declaration named {full_name!r}")
        if not decl.provable:
            raise UnknownTheoremError(f"{full_name!r} is a {decl.kind.value}, not a provable statement")
        return decl

    def theorems(self) -> list[Decl]:
        """All provable declarations, in topological file order then span order."""
        out: list[Decl] = []
        for path in self.topo:
            out.extend(d for d in self.files[path].decls if d.provable)
        return out

    def env_for(self, full_name: str, mode: str = "inside_namespace", rewrite_budget: int = 100) -> Env:
        decl = self.theorem(full_name)
        table = {p.full_name: self.decls[p.full_name] for p in accessible_premises(self, full_name)}
        return Env(
            decls=table,
            namespace_path=decl.namespace_path,
            mode=mode,
            rewrite_budget=rewrite_budget,
        )


def _import_key(spec: str) -> str:
    return spec + SOURCE_SUFFIX


def topo_order(imports: Mapping[str, Sequence[str]]) -> list[str]:
    """Deterministic topological order: imported files first, ties broken by
    lexicographically smallest path."""

    remaining = {path: set(deps) for path, deps in imports.items()}
    order: list[str] = []
    placed: set[str] = set()
    while remaining:
        ready = sorted(p for p, deps in remaining.items() if deps <= placed)
        if not ready:
            cycle = sorted(remaining)
            raise ImportCycleError(f"import cycle among: {', '.join(cycle)}")
        nxt = ready[0]
        order.append(nxt)
        placed.add(nxt)
        del remaining[nxt]
    return order


def _check_cycles(imports: Mapping[str, Sequence[str]]) -> None:
    """DFS cycle check that reports one offending path explicitly."""

    WHITE, GRAY, BLACK = 0, 1, 2
    color = {p: WHITE for p in imports}
    stack: list[str] = []

    def visit(node: str) -> None:
        color[node] = GRAY
        stack.append(node)
        for dep in imports[node]:
            if color[dep] == GRAY:
                i = stack.index(dep)
                cycle = stack[i:] + [dep]
                raise ImportCycleError("import cycle: " + " -> ".join(cycle))
            if color[dep] == WHITE:
                visit(dep)
        stack.pop()
        color[node] = BLACK

    for path in sorted(imports):
        if color[path] == WHITE:
            visit(path)


def corpus_from_sources(sources: Mapping[str, str], root: str = "<memory>") -> Corpus:
    """Build a corpus from {relative path: source text}. Used by the loader
    and by tests that assemble corpora inline."""

    parsed: dict[str, ParsedFile] = {}
    for path in sorted(sources):
        parsed[path] = parse_file(sources[path], path)

    files: dict[str, CorpusFile] = {}
    for path, pf in parsed.items():
        resolved = []
        for spec in pf.imports:
            key = _import_key(spec)
            if key not in parsed:
                raise MissingImportError(f"{path}: import {spec!r} has no file {key!r}")
            resolved.append(key)
        files[path] = CorpusFile(
            path=path,
            source=sources[path],
            imports=resolved,
            raw_imports=list(pf.imports),
            decls=list(pf.decls),
        )

    graph = {path: f.imports for path, f in files.items()}
    _check_cycles(graph)
    topo = topo_order(graph)

    decls: dict[str, Decl] = {}
    arities: dict[str, int] = dict(CONSTRUCTOR_ARITY)
    for path in topo:
        for head, arity in parsed[path].arities.items():
            known = arities.setdefault(head, arity)
            if known != arity:
                raise ArityError(
                    f"symbol {head!r} used with arity {arity} in {path} but {known} elsewhere"
                )
        for decl in files[path].decls:
            if decl.full_name in decls:
                raise DuplicateNameError(
                    f"duplicate declaration {decl.full_name!r} in {path} and {decls[decl.full_name].path}"
                )
            decls[decl.full_name] = decl

    premises = {
        d.full_name: Premise(
            full_name=d.full_name,
            path=d.path,
            start=d.start,
            end=d.end,
            kind=d.kind.value,
            code=slice_span(files[d.path].source, d.start, d.end),
        )
        for f in files.values()
        for d in f.decls
    }
    return Corpus(root=root, files=files, topo=topo, decls=decls, premises=premises)


def load_corpus(root: str | Path) -> Corpus:
    root = Path(root)
    if not root.is_dir():
        raise MissingImportError(f"corpus root {str(root)!r} is not a directory")
    sources = {
        p.relative_to(root).as_posix(): p.read_text(encoding="utf-8")
        for p in sorted(root.rglob(f"*{SOURCE_SUFFIX}"))
    }
    if not sources:
        raise MissingImportError(f"no {SOURCE_SUFFIX} files under {str(root)!r}")
    return corpus_from_sources(sources, root=str(root))


def import_closure(imports: Mapping[str, Sequence[str]], path: str) -> set[str]:
    """All files transitively imported by ``path`` (not including it)."""

    closure: set[str] = set()
    stack = list(imports[path])
    while stack:
        dep = stack.pop()
        if dep not in closure:
            closure.add(dep)
            stack.extend(imports[dep])
    return closure


def accessible_names(
    imports: Mapping[str, Sequence[str]],
    premises_by_file: Mapping[str, Sequence[tuple[str, tuple[int, int], tuple[int, int]]]],
    topo: Sequence[str],
    theorem_name: str,
    theorem_path: str,
    theorem_start: tuple[int, int],
) -> list[str]:
    """Names accessible from a position: every premise of every transitively
    imported file, plus same-file premises ending before the position. Order
    is topological file order, then span order within a file."""

    closure = import_closure(imports, theorem_path)
    out: list[str] = []
    for path in topo:
        if path in closure:
            out.extend(name for name, _, _ in premises_by_file[path])
        elif path == theorem_path:
            out.extend(
                name
                for name, _, end in premises_by_file[path]
                if end < theorem_start and name != theorem_name
            )
    return out


def _premise_index(corpus: Corpus) -> dict[str, list[tuple[str, tuple[int, int], tuple[int, int]]]]:
    return {
        path: [(d.full_name, d.start, d.end) for d in f.decls]
        for path, f in corpus.files.items()
    }


def accessible_premises(corpus: Corpus, full_name: str) -> list[Premise]:
    decl = corpus.decls.get(full_name)
    if decl is None:
        raise UnknownTheoremError(f"no declaration named {full_name!r}")
    names = accessible_names(
        {p: f.imports for p, f in corpus.files.items()},
        _premise_index(corpus),
        corpus.topo,
        full_name,
        decl.path,
        decl.start,
    )
    return [corpus.premises[n] for n in names]


def premise_usage(corpus: Corpus, theorems: Iterable[Decl] | None = None) -> dict[str, set[str]]:
    """Map each premise to the provable declarations whose proofs reference
    it: a theorem uses a premise exactly when some tactic's target resolves
    to it."""

    usage: dict[str, set[str]] = {}
    for decl in theorems if theorems is not None else corpus.theorems():
        env = corpus.env_for(decl.full_name)
        for tactic in decl.proof:
            target = getattr(tactic, "target", None)
            if target is None:
                continue
            resolved = env.resolve(target)
            usage.setdefault(resolved.full_name, set()).add(decl.full_name)
    return usage
