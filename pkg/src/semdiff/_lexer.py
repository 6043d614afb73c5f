"""Tokenizer shared by the class-diagram and object-diagram parsers."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable


class DiagramSyntaxError(SyntaxError):
    """Malformed diagram text.

    Carries the 1-based line/column of the offending token and the tokens
    the parser would have accepted there.
    """

    def __init__(self, message: str, line: int, column: int,
                 expected: Iterable[str] = ()):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        detail = f"{line}:{column}: {message}"
        if self.expected:
            detail += f" (expected {', '.join(self.expected)})"
        super().__init__(detail)


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, INT, PUNCT, EOF
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<line_comment>//[^\n]*)
  | (?P<block_comment>/\*.*?\*/)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<int>[0-9]+)
  | (?P<punct><->|->|\.\.|::|[{}();,\[\]*:=<>])
""", re.VERBOSE | re.DOTALL)


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text.startswith("/*", pos):
                raise DiagramSyntaxError("unterminated comment", line,
                                         pos - line_start + 1)
            raise DiagramSyntaxError(f"unexpected character {text[pos]!r}",
                                     line, pos - line_start + 1)
        kind = m.lastgroup
        value = m.group()
        col = pos - line_start + 1
        if kind == "ident":
            tokens.append(Token("IDENT", value, line, col))
        elif kind == "int":
            tokens.append(Token("INT", value, line, col))
        elif kind == "punct":
            tokens.append(Token("PUNCT", value, line, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


class TokenStream:
    """Cursor over a token list with expectation helpers."""

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        idx = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[idx]

    def at(self, text: str) -> bool:
        tok = self.current
        return tok.kind in ("PUNCT", "IDENT") and tok.text == text

    def advance(self) -> Token:
        tok = self.current
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.advance()
            return True
        return False

    def error(self, expected: Iterable[str]) -> DiagramSyntaxError:
        tok = self.current
        found = "end of input" if tok.kind == "EOF" else repr(tok.text)
        return DiagramSyntaxError(f"unexpected {found}", tok.line, tok.column,
                                  expected)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error([repr(text)])
        return self.advance()

    def expect_ident(self, what: str = "identifier",
                     reserved: frozenset[str] = frozenset()) -> str:
        tok = self.current
        if tok.kind != "IDENT" or tok.text in reserved:
            raise self.error([what])
        self.advance()
        return tok.text

    def expect_int(self) -> int:
        tok = self.current
        if tok.kind != "INT":
            raise self.error(["integer"])
        self.advance()
        return int(tok.text)

    def expect_eof(self) -> None:
        if self.current.kind != "EOF":
            raise self.error(["end of input"])
