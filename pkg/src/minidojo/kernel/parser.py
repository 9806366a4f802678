"""Surface-syntax parser.

A source file is a sequence of import lines followed by declarations, possibly
inside (nested) namespace blocks:

    import nat/basic

    namespace nat
    def gcd : gcd(zero, y) = y ; gcd(succ(x), y) = gcd(mod(y, succ(x)), succ(x))
    lemma gcd_zero_left : gcd(zero, x) = x := begin unfold gcd end
    end nat

Identifiers match [A-Za-z_][A-Za-z0-9_']*. Dots appear only in qualified
names (namespaced tactic targets), never inside term identifiers. ``zero``
and ``succ`` are reserved constructors; any other bare identifier in a term
is a variable, so only ``zero`` denotes a nullary constant at the surface.
``--`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..errors import ArityError, DuplicateNameError, ParseError
from .decls import Decl, DeclKind
from .tactics import Cases, Rfl, Rw, Split, Tactic, Unfold
from .terms import App, Term, Var

__all__ = ["Token", "Node", "ParsedFile", "tokenize", "parse_file", "parse_term", "parse_tactic", "slice_span"]

KEYWORDS = frozenset(
    ["import", "namespace", "end", "def", "lemma", "theorem", "begin", "rfl", "rw", "unfold", "cases", "split"]
)
CONSTRUCTOR_ARITY = {"zero": 0, "succ": 1}

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
# Longest symbols first so ':=' wins over ':' and '<-' over '<'.
_SYMBOLS = [":=", "<-", "(", ")", ",", ";", ":", ".", "/", "=", "←"]


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # "ident", "symbol", or "eof"
    text: str
    line: int
    col: int

    @property
    def end(self) -> tuple[int, int]:
        """Inclusive (line, col) of the token's last character."""
        return (self.line, self.col + max(len(self.text), 1) - 1)


@dataclass
class Node:
    """Positional syntax-tree node: file, import, namespace, or declaration."""

    kind: str
    start: tuple[int, int]
    end: tuple[int, int]
    value: str | None = None
    children: list["Node"] = field(default_factory=list)


@dataclass
class ParsedFile:
    path: str
    imports: list[str]
    decls: list[Decl]
    ast: Node
    arities: dict[str, int] = field(default_factory=dict)


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if text.startswith("--", i):
            while i < n and text[i] != "\n":
                i += 1
                col += 1
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            tokens.append(Token("ident", m.group(), line, col))
            col += len(m.group())
            i = m.end()
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(Token("symbol", sym, line, col))
                i += len(sym)
                col += len(sym)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("eof", "", line, col))
    return tokens


def slice_span(source: str, start: tuple[int, int], end: tuple[int, int]) -> str:
    """Extract the verbatim text between 1-based inclusive (line, col) spans."""

    lines = source.split("\n")
    (l1, c1), (l2, c2) = start, end
    if l1 == l2:
        return lines[l1 - 1][c1 - 1 : c2]
    parts = [lines[l1 - 1][c1 - 1 :]]
    parts.extend(lines[l1 : l2 - 1])
    parts.append(lines[l2 - 1][:c2])
    return "\n".join(parts)


class _Parser:
    def __init__(self, tokens: list[Token], path: str):
        self.tokens = tokens
        self.pos = 0
        self.path = path
        self.arities: dict[str, int] = dict(CONSTRUCTOR_ARITY)

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at_keyword(self, word: str) -> bool:
        tok = self.peek()
        return tok.kind == "ident" and tok.text == word

    def expect_symbol(self, sym: str) -> Token:
        tok = self.peek()
        if tok.kind != "symbol" or tok.text != sym:
            raise ParseError(f"expected {sym!r}, found {tok.text!r}", tok.line, tok.col)
        return self.advance()

    def expect_ident(self, what: str = "identifier") -> Token:
        tok = self.peek()
        if tok.kind != "ident":
            raise ParseError(f"expected {what}, found {tok.text!r}", tok.line, tok.col)
        if tok.text in KEYWORDS:
            raise ParseError(f"expected {what}, found keyword {tok.text!r}", tok.line, tok.col)
        return self.advance()

    def register_arity(self, head: str, arity: int, tok: Token) -> None:
        known = self.arities.setdefault(head, arity)
        if known != arity:
            raise ArityError(
                f"symbol {head!r} used with arity {arity} but previously {known}"
                f" ({self.path}, line {tok.line}, col {tok.col})"
            )

    # -- terms ------------------------------------------------------------

    def parse_term(self) -> Term:
        tok = self.expect_ident("term")
        if self.peek().kind == "symbol" and self.peek().text == "(":
            self.advance()
            args = [self.parse_term()]
            while self.peek().text == ",":
                self.advance()
                args.append(self.parse_term())
            self.expect_symbol(")")
            self.register_arity(tok.text, len(args), tok)
            return App(tok.text, tuple(args))
        if tok.text in CONSTRUCTOR_ARITY:
            self.register_arity(tok.text, 0, tok)
            return App(tok.text)
        return Var(tok.text)

    def parse_equation(self) -> tuple[tuple[Term, Term], Token]:
        lhs = self.parse_term()
        self.expect_symbol("=")
        rhs = self.parse_term()
        return (lhs, rhs), self.tokens[self.pos - 1]

    # -- tactics ----------------------------------------------------------

    def parse_qualified_name(self) -> str:
        parts = [self.expect_ident("name").text]
        while self.peek().kind == "symbol" and self.peek().text == ".":
            self.advance()
            parts.append(self.expect_ident("name").text)
        return ".".join(parts)

    def parse_tactic(self) -> Tactic:
        tok = self.peek()
        if tok.kind != "ident":
            raise ParseError(f"expected tactic, found {tok.text!r}", tok.line, tok.col)
        if tok.text == "rfl":
            self.advance()
            return Rfl()
        if tok.text == "split":
            self.advance()
            return Split()
        if tok.text == "cases":
            self.advance()
            return Cases(self.expect_ident("variable").text)
        if tok.text == "rw":
            self.advance()
            reverse = False
            nxt = self.peek()
            if nxt.kind == "symbol" and nxt.text in ("←", "<-"):
                self.advance()
                reverse = True
            return Rw(self.parse_qualified_name(), reverse)
        if tok.text == "unfold":
            self.advance()
            return Unfold(self.parse_qualified_name())
        raise ParseError(f"unknown tactic {tok.text!r}", tok.line, tok.col)

    # -- declarations -----------------------------------------------------

    def parse_decl(self, namespace_path: tuple[str, ...], seen: dict[str, str]) -> tuple[Decl, Node]:
        kw = self.advance()
        kind = {"def": DeclKind.DEFINITION, "lemma": DeclKind.LEMMA, "theorem": DeclKind.THEOREM}[kw.text]
        name_tok = self.expect_ident("declaration name")
        name = name_tok.text
        if name in CONSTRUCTOR_ARITY:
            raise ParseError(f"{name!r} is a reserved constructor", name_tok.line, name_tok.col)
        self.expect_symbol(":")

        equations: list[tuple[Term, Term]] = []
        proof: list[Tactic] = []
        if kind is DeclKind.DEFINITION:
            eqn, last = self.parse_equation()
            equations.append(eqn)
            while self.peek().kind == "symbol" and self.peek().text == ";":
                self.advance()
                eqn, last = self.parse_equation()
                equations.append(eqn)
            for lhs, _ in equations:
                if not isinstance(lhs, App) or lhs.head != name:
                    raise ParseError(
                        f"equation of {name!r} must have {name!r} as its left-hand head",
                        kw.line,
                        kw.col,
                    )
            end = last.end
        else:
            eqn, _ = self.parse_equation()
            equations.append(eqn)
            self.expect_symbol(":=")
            begin = self.peek()
            if not self.at_keyword("begin"):
                raise ParseError(f"expected 'begin', found {begin.text!r}", begin.line, begin.col)
            self.advance()
            while not self.at_keyword("end"):
                proof.append(self.parse_tactic())
                if self.peek().kind == "symbol" and self.peek().text == ",":
                    self.advance()
                elif not self.at_keyword("end"):
                    tok = self.peek()
                    raise ParseError(f"expected ',' or 'end', found {tok.text!r}", tok.line, tok.col)
            if not proof:
                raise ParseError("empty proof block", begin.line, begin.col)
            end = self.advance().end  # the 'end' keyword

        full_name = ".".join((*namespace_path, name))
        if full_name in seen:
            raise DuplicateNameError(f"duplicate declaration {full_name!r} in {self.path}")
        seen[full_name] = self.path
        decl = Decl(
            kind=kind,
            short_name=name,
            namespace_path=namespace_path,
            full_name=full_name,
            equations=tuple(equations),
            proof=tuple(proof),
            start=(kw.line, kw.col),
            end=end,
            path=self.path,
        )
        node = Node("declaration", decl.start, decl.end, value=full_name)
        return decl, node

    # -- files --------------------------------------------------------------

    def parse_file(self) -> ParsedFile:
        first = self.peek()
        root = Node("file", (first.line, first.col), first.end, value=self.path)
        imports: list[str] = []
        while self.at_keyword("import"):
            kw = self.advance()
            parts = [self.expect_ident("import path").text]
            while self.peek().kind == "symbol" and self.peek().text == "/":
                self.advance()
                parts.append(self.expect_ident("import path").text)
            spec = "/".join(parts)
            imports.append(spec)
            root.children.append(Node("import", (kw.line, kw.col), self.tokens[self.pos - 1].end, value=spec))

        decls: list[Decl] = []
        seen: dict[str, str] = {}
        namespace_path: list[str] = []
        namespace_nodes: list[Node] = []

        def container() -> Node:
            return namespace_nodes[-1] if namespace_nodes else root

        while True:
            tok = self.peek()
            if tok.kind == "eof":
                if namespace_path:
                    raise ParseError(f"missing 'end {namespace_path[-1]}'", tok.line, tok.col)
                break
            if self.at_keyword("import"):
                raise ParseError("imports must precede declarations", tok.line, tok.col)
            if self.at_keyword("namespace"):
                kw = self.advance()
                name = self.expect_ident("namespace name").text
                namespace_path.append(name)
                node = Node("namespace", (kw.line, kw.col), kw.end, value=name)
                container().children.append(node)
                namespace_nodes.append(node)
            elif self.at_keyword("end"):
                kw = self.advance()
                name_tok = self.expect_ident("namespace name")
                if not namespace_path:
                    raise ParseError(f"'end {name_tok.text}' without open namespace", kw.line, kw.col)
                if name_tok.text != namespace_path[-1]:
                    raise ParseError(
                        f"'end {name_tok.text}' does not close namespace {namespace_path[-1]!r}",
                        name_tok.line,
                        name_tok.col,
                    )
                namespace_path.pop()
                node = namespace_nodes.pop()
                node.end = name_tok.end
            elif tok.kind == "ident" and tok.text in ("def", "lemma", "theorem"):
                decl, node = self.parse_decl(tuple(namespace_path), seen)
                decls.append(decl)
                container().children.append(node)
            else:
                raise ParseError(f"expected declaration, found {tok.text!r}", tok.line, tok.col)

        last = self.tokens[-1]
        root.end = (last.line, max(last.col - 1, 1)) if not decls else decls[-1].end
        if root.children:
            root.end = max(root.end, root.children[-1].end)
        return ParsedFile(path=self.path, imports=imports, decls=decls, ast=root, arities=dict(self.arities))


def parse_file(text: str, path: str = "<input>") -> ParsedFile:
    """Parse one source file. Raises ParseError, DuplicateNameError, ArityError."""

    return _Parser(tokenize(text), path).parse_file()


def parse_term(text: str) -> Term:
    parser = _Parser(tokenize(text), "<term>")
    term = parser.parse_term()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.col)
    return term


def parse_tactic(text: str) -> Tactic:
    parser = _Parser(tokenize(text), "<tactic>")
    tactic = parser.parse_tactic()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.col)
    return tactic
