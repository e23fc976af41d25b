"""Line-oriented recursive-descent parser for Mixer Script.

Each non-blank line holds one track: an asset reference followed by a
chain of ``.Method(args)`` calls. Errors are collected per line so a
single pass reports every broken line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .ast import (
    METHODS,
    PARAM_ALIASES,
    REQUIRED_ARGS,
    Arg,
    Diagnostic,
    EffectOp,
    ScriptAST,
    ScriptSyntaxError,
    Span,
    Track,
)

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
# Anything that starts like a number is consumed whole, then checked strictly.
_NUMBER_LIKE = re.compile(r"[+-]?[0-9.][0-9A-Za-z_.]*(?:[eE][+-][0-9]+)?")
_NUMBER = re.compile(r"[+-]?[0-9]+(?:\.[0-9]+)?")
_DIGITS = frozenset("0123456789")
_PUNCT = {".": "DOT", "(": "LPAREN", ")": "RPAREN", ",": "COMMA", "=": "EQ", ";": "SEMI"}


@dataclass(frozen=True)
class Token:
    kind: str  # STRING IDENT NUMBER DOT LPAREN RPAREN COMMA EQ SEMI EOL
    text: str
    column: int


class _LineError(Exception):
    def __init__(self, message: str, column: int):
        super().__init__(message)
        self.message = message
        self.column = column


def _tokenize_line(line: str) -> list[Token]:
    tokens: list[Token] = []
    i, n = 0, len(line)
    while i < n:
        ch = line[i]
        if ch in " \t\r﻿":
            i += 1
        elif ch == "#":
            break
        elif ch == '"':
            end = line.find('"', i + 1)
            if end < 0:
                raise _LineError("unterminated string", i + 1)
            tokens.append(Token("STRING", line[i + 1 : end], i + 1))
            i = end + 1
        elif ch in _PUNCT:
            # A sign or dot directly followed by a digit starts a number,
            # except a dot that chains a method after an identifier/paren.
            if ch == "." and i + 1 < n and line[i + 1] in _DIGITS and not _chains(tokens):
                m = _NUMBER_LIKE.match(line, i)
                tokens.append(Token("NUMBER", m.group(), i + 1))
                i = m.end()
                continue
            tokens.append(Token(_PUNCT[ch], ch, i + 1))
            i += 1
        elif ch in _DIGITS or (ch in "+-" and i + 1 < n and line[i + 1] in _DIGITS | {"."}):
            m = _NUMBER_LIKE.match(line, i)
            tokens.append(Token("NUMBER", m.group(), i + 1))
            i = m.end()
        elif ch in "+-":
            raise _LineError(f"malformed number {ch!r}", i + 1)
        else:
            m = _IDENT.match(line, i)
            if m is None:
                raise _LineError(f"unexpected character {ch!r}", i + 1)
            tokens.append(Token("IDENT", m.group(), i + 1))
            i = m.end()
    tokens.append(Token("EOL", "", len(line.rstrip("\r")) + 1))
    return tokens


def _chains(tokens: list[Token]) -> bool:
    return bool(tokens) and tokens[-1].kind in ("IDENT", "STRING", "RPAREN")


class _LineParser:
    def __init__(self, tokens: list[Token], lineno: int):
        self.tokens = tokens
        self.pos = 0
        self.lineno = lineno

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOL":
            self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise _LineError(f"expected {what}, found {_describe(tok)}", tok.column)
        return self.advance()

    def span(self, tok: Token) -> Span:
        return Span(self.lineno, tok.column)

    def track(self) -> Track:
        tok = self.peek()
        if tok.kind not in ("STRING", "IDENT"):
            raise _LineError(f"expected asset name, found {_describe(tok)}", tok.column)
        self.advance()
        if tok.kind == "STRING" and not tok.text.strip():
            raise _LineError("empty asset name", tok.column)
        chain = []
        while self.peek().kind == "DOT":
            self.advance()
            chain.append(self.call())
        if self.peek().kind == "SEMI":
            self.advance()
        end = self.peek()
        if end.kind != "EOL":
            raise _LineError(f"unexpected {_describe(end)}", end.column)
        return Track(tok.text, tuple(chain), self.span(tok))

    def call(self) -> EffectOp:
        name_tok = self.expect("IDENT", "method name")
        method = name_tok.text
        if method not in METHODS:
            raise _LineError(f"unknown method {method!r}", name_tok.column)
        self.expect("LPAREN", "'('")
        raw: list[tuple[Token | None, Token]] = []
        if self.peek().kind != "RPAREN":
            raw.append(self.arg())
            while self.peek().kind == "COMMA":
                self.advance()
                raw.append(self.arg())
        self.expect("RPAREN", "')' or ','")
        return EffectOp(method, self.bind(method, name_tok, raw), self.span(name_tok))

    def arg(self) -> tuple[Token | None, Token]:
        name = None
        if self.peek().kind == "IDENT":
            name = self.advance()
            self.expect("EQ", "'='")
        tok = self.peek()
        if tok.kind != "NUMBER":
            raise _LineError(f"expected number, found {_describe(tok)}", tok.column)
        if not _NUMBER.fullmatch(tok.text):
            raise _LineError(f"malformed number {tok.text!r}", tok.column)
        self.advance()
        return name, tok

    def bind(self, method: str, at: Token, raw: list[tuple[Token | None, Token]]) -> tuple[Arg, ...]:
        params = METHODS[method]
        slots: list[Arg | None] = [None] * len(params)
        seen_named = False
        for i, (name_tok, num) in enumerate(raw):
            value = float(num.text)
            if name_tok is None:
                if seen_named:
                    raise _LineError("positional argument after named argument", num.column)
                if i >= len(params):
                    raise _LineError(_arity_message(method, len(raw)), at.column)
                slots[i] = Arg(value, None, self.span(num))
                continue
            seen_named = True
            pname = PARAM_ALIASES.get(name_tok.text, name_tok.text)
            if pname not in params:
                raise _LineError(
                    f"{method} has no parameter {name_tok.text!r} (expected one of {', '.join(params)})",
                    name_tok.column,
                )
            j = params.index(pname)
            if slots[j] is not None:
                raise _LineError(f"parameter {pname!r} given more than once", name_tok.column)
            slots[j] = Arg(value, pname, self.span(num))
        filled = len(slots)
        while filled and slots[filled - 1] is None:
            filled -= 1
        if filled < REQUIRED_ARGS[method] or any(s is None for s in slots[:filled]):
            raise _LineError(_arity_message(method, len(raw)), at.column)
        return tuple(slots[:filled])


def _arity_message(method: str, got: int) -> str:
    lo, hi = REQUIRED_ARGS[method], len(METHODS[method])
    expected = str(lo) if lo == hi else f"{lo} to {hi}"
    return f"wrong number of arguments: {method} expects {expected} ({', '.join(METHODS[method])}), got {got}"


def _describe(tok: Token) -> str:
    return "end of line" if tok.kind == "EOL" else repr(tok.text)


def parse_script(text: str) -> ScriptAST:
    """Parse Mixer Script source.

    Raises ScriptSyntaxError holding one positioned diagnostic per broken line.
    """
    tracks: list[Track] = []
    diagnostics: list[Diagnostic] = []
    lines = text.split("\n")
    for lineno, line in enumerate(lines, start=1):
        try:
            tokens = _tokenize_line(line)
            if tokens[0].kind == "EOL":
                continue
            tracks.append(_LineParser(tokens, lineno).track())
        except _LineError as exc:
            column = max(1, min(exc.column, len(line) + 1))
            diagnostics.append(Diagnostic("error", exc.message, lineno, column))
    if not tracks and not diagnostics:
        diagnostics.append(Diagnostic("error", "script contains no tracks", 1, 1))
    if diagnostics:
        raise ScriptSyntaxError(diagnostics)
    return ScriptAST(tuple(tracks))
