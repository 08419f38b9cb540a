"""Lexer, recursive-descent parser and printer for ``.smcdel`` scene files.

Grammar::

    scene    := "VARS" props "LAW" form "OBS" obsdecl+ "VALID?" form
    props    := int ("," int)*
    obsdecl  := ident ":" props?
    form     := iff
    iff      := imp ("<->" imp)*
    imp      := disj ("->" imp)?
    disj     := conj ("|" conj)*
    conj     := unary ("&" unary)*
    unary    := "~" unary | "[" "!" form "]" unary
              | ident "knows" ("whether" | "that") unary
              | "AND" "(" form ("," form)* ")" | "OR" "(" form ("," form)* ")"
              | "Top" | "Bot" | int | "(" form ")"

Line comments start with ``--``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List

from .errors import (
    DuplicateAgent,
    DuplicateProposition,
    MissingSection,
    ParseError,
    SourcePos,
)
from .formula import (
    BOT,
    KEYWORDS,
    TOP,
    Announce,
    Bot,
    Conj,
    Disj,
    Equiv,
    Formula,
    Impl,
    KnowsThat,
    KnowsWhether,
    Neg,
    Prop,
    Scene,
    Top,
    validate_scene,
)

SECTIONS = ("VARS", "LAW", "OBS", "VALID?")

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>--[^\n]*)
  | (?P<valid>VALID\?)
  | (?P<int>[0-9]+)
  | (?P<ident>[A-Za-z][A-Za-z0-9]*)
  | (?P<punct><->|->|[,:()\[\]!~&|])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "kw", "punct", "eof"
    text: str
    pos: SourcePos

    def describe(self) -> str:
        return "end of input" if self.kind == "eof" else repr(self.text)


def tokenize(text: str) -> List[Token]:
    tokens = []
    line, line_start, i = 1, 0, 0
    n = len(text)
    while i < n:
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ParseError(SourcePos(line, i - line_start + 1), "a token", repr(text[i]))
        kind = m.lastgroup
        pos = SourcePos(line, i - line_start + 1)
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "valid":
            tokens.append(Token("kw", "VALID?", pos))
        elif kind == "ident":
            word = m.group()
            tokens.append(Token("kw" if word in KEYWORDS else "ident", word, pos))
        elif kind in ("int", "punct"):
            tokens.append(Token(kind, m.group(), pos))
        i = m.end()
    tokens.append(Token("eof", "", SourcePos(line, n - line_start + 1)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("kw", "punct") and t.text == text

    def fail(self, expected: str):
        raise ParseError(self.tok.pos, expected, self.tok.describe())

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(repr(text))
        t = self.tok
        self.i += 1
        return t

    def expect_eof(self):
        if self.tok.kind != "eof":
            self.fail("end of input")

    def section(self, name: str):
        t = self.tok
        if self.at(name):
            self.i += 1
        elif t.kind == "eof" or (t.kind == "kw" and t.text in SECTIONS):
            raise MissingSection(t.pos, name, t.describe())
        else:
            self.fail(f"section {name}")

    def prop_id(self) -> int:
        t = self.tok
        if t.kind != "int" or int(t.text) < 1:
            self.fail("a positive proposition number")
        self.i += 1
        return int(t.text)

    # ------------------------------------------------------------ scene

    def scene(self) -> Scene:
        self.section("VARS")
        vocab = []
        seen = set()
        while True:
            pos = self.tok.pos
            p = self.prop_id()
            if p in seen:
                raise DuplicateProposition(pos, p)
            seen.add(p)
            vocab.append(p)
            if not self.at(","):
                break
            self.i += 1
        self.section("LAW")
        law = self.form()
        self.section("OBS")
        observations = []
        agents = set()
        if self.tok.kind != "ident":
            self.fail("an agent observation 'name:props'")
        while self.tok.kind == "ident":
            t = self.tok
            self.i += 1
            if t.text in agents:
                raise DuplicateAgent(t.pos, t.text)
            agents.add(t.text)
            self.expect(":")
            props = []
            if self.tok.kind == "int":
                props.append(self.prop_id())
                while self.at(","):
                    self.i += 1
                    props.append(self.prop_id())
            observations.append((t.text, frozenset(props)))
        self.section("VALID?")
        query = self.form()
        self.expect_eof()
        return Scene(tuple(vocab), law, tuple(observations), query)

    # ---------------------------------------------------------- formula

    def form(self) -> Formula:
        left = self.imp()
        while self.at("<->"):
            self.i += 1
            left = Equiv(left, self.imp())
        return left

    def imp(self) -> Formula:
        left = self.disj()
        if self.at("->"):
            self.i += 1
            return Impl(left, self.imp())
        return left

    def disj(self) -> Formula:
        args = [self.conj()]
        while self.at("|"):
            self.i += 1
            args.append(self.conj())
        return args[0] if len(args) == 1 else Disj(tuple(args))

    def conj(self) -> Formula:
        args = [self.unary()]
        while self.at("&"):
            self.i += 1
            args.append(self.unary())
        return args[0] if len(args) == 1 else Conj(tuple(args))

    def unary(self) -> Formula:
        t = self.tok
        if t.kind == "int":
            return Prop(self.prop_id())
        if t.kind == "ident":
            self.i += 1
            self.expect("knows")
            if self.at("whether"):
                self.i += 1
                return KnowsWhether(t.text, self.unary())
            if self.at("that"):
                self.i += 1
                return KnowsThat(t.text, self.unary())
            self.fail("'whether' or 'that'")
        if t.kind == "punct":
            if t.text == "~":
                self.i += 1
                return Neg(self.unary())
            if t.text == "[":
                self.i += 1
                self.expect("!")
                announced = self.form()
                self.expect("]")
                return Announce(announced, self.unary())
            if t.text == "(":
                self.i += 1
                f = self.form()
                self.expect(")")
                return f
        if t.kind == "kw":
            if t.text == "Top":
                self.i += 1
                return TOP
            if t.text == "Bot":
                self.i += 1
                return BOT
            if t.text in ("AND", "OR"):
                self.i += 1
                self.expect("(")
                args = [self.form()]
                while self.at(","):
                    self.i += 1
                    args.append(self.form())
                self.expect(")")
                if len(args) == 1:
                    return args[0]
                return Conj(tuple(args)) if t.text == "AND" else Disj(tuple(args))
        self.fail("a formula")


def _guarded(text: str, rule: str):
    p = _Parser(text)
    try:
        return p, getattr(p, rule)()
    except RecursionError:
        raise ParseError(p.tok.pos, "a less deeply nested formula", p.tok.describe()) from None


def parse_formula(text: str) -> Formula:
    p, f = _guarded(text, "form")
    p.expect_eof()
    return f


def parse_scene_unchecked(text: str) -> Scene:
    return _guarded(text, "scene")[1]


def parse_scene(text: str) -> Scene:
    return validate_scene(parse_scene_unchecked(text))


# ---------------------------------------------------------------- printing


def print_formula(f: Formula) -> str:
    if isinstance(f, Top):
        return "Top"
    if isinstance(f, Bot):
        return "Bot"
    if isinstance(f, Prop):
        return str(f.id)
    if isinstance(f, Neg):
        return "~" + print_formula(f.arg)
    if isinstance(f, Conj):
        return "(" + " & ".join(print_formula(g) for g in f.args) + ")"
    if isinstance(f, Disj):
        return "(" + " | ".join(print_formula(g) for g in f.args) + ")"
    if isinstance(f, Impl):
        return f"({print_formula(f.left)} -> {print_formula(f.right)})"
    if isinstance(f, Equiv):
        return f"({print_formula(f.left)} <-> {print_formula(f.right)})"
    if isinstance(f, KnowsThat):
        return f"{f.agent} knows that {print_formula(f.arg)}"
    if isinstance(f, KnowsWhether):
        return f"{f.agent} knows whether {print_formula(f.arg)}"
    if isinstance(f, Announce):
        return f"[! {print_formula(f.announced)}] {print_formula(f.continuation)}"
    raise TypeError(f"not a formula: {f!r}")


def _props(ps) -> str:
    return ",".join(str(p) for p in sorted(ps))


def print_scene(s: Scene) -> str:
    lines = [
        "VARS " + ",".join(str(p) for p in s.vocabulary),
        "LAW " + print_formula(s.law),
    ]
    for k, (agent, ps) in enumerate(s.observations):
        lines.append(("OBS " if k == 0 else "    ") + f"{agent}:{_props(ps)}")
    lines.append("VALID? " + print_formula(s.query))
    return "\n".join(lines) + "\n"
