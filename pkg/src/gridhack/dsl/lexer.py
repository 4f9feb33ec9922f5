"""Tokenizer for des-file source.

The grammar is line-oriented, so the stream carries NEWLINE markers, and the
rows of MAP...ENDMAP blocks are captured verbatim as MAPROW tokens (leading
and trailing spaces in a map row are meaningful terrain).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..errors import DesSyntaxError
from .ast import SourceSpan


class TokType(Enum):
    WORD = "word"
    INT = "int"
    DICE = "dice"
    STRING = "string"
    CHARSTR = "charstr"  # single-quoted literal
    VAR = "var"
    PUNCT = "punct"
    MAPROW = "maprow"
    NEWLINE = "newline"


@dataclass(frozen=True)
class Token:
    type: TokType
    value: object
    line: int
    column: int
    length: int

    @property
    def span(self) -> SourceSpan:
        return SourceSpan(self.line, self.column, self.length)


_TWO_CHAR = ("<=", ">=", "==", "!=")
_ONE_CHAR = ":,(){}[]=%<>+-*/"


def _is_word_start(c: str) -> bool:
    return c.isalpha() or c == "_"


def _lex_line(text: str, lineno: int, out: list[Token]) -> None:
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c in " \t\r":
            i += 1
            continue
        col = i + 1
        if c == "#":
            if not text[:i].strip():
                return  # comment line
            raise DesSyntaxError("illegal character '#'", lineno, col)
        if c == "$":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            if j == i + 1:
                raise DesSyntaxError("'$' must start a variable name", lineno, col)
            out.append(Token(TokType.VAR, text[i + 1:j], lineno, col, j - i))
            i = j
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "d" and j + 1 < n and text[j + 1].isdigit():
                k = j + 1
                while k < n and text[k].isdigit():
                    k += 1
                out.append(Token(TokType.DICE, (int(text[i:j]), int(text[j + 1:k])),
                                 lineno, col, k - i))
                i = k
            else:
                out.append(Token(TokType.INT, int(text[i:j]), lineno, col, j - i))
                i = j
            continue
        if _is_word_start(c):
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(Token(TokType.WORD, text[i:j], lineno, col, j - i))
            i = j
            continue
        if c == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise DesSyntaxError("unterminated string literal", lineno, col)
            out.append(Token(TokType.STRING, text[i + 1:j], lineno, col, j - i + 1))
            i = j + 1
            continue
        if c == "'":
            j = text.find("'", i + 1)
            if j < 0 or j == i + 1:
                raise DesSyntaxError("unterminated or empty quoted literal", lineno, col)
            out.append(Token(TokType.CHARSTR, text[i + 1:j], lineno, col, j - i + 1))
            i = j + 1
            continue
        if text[i:i + 2] in _TWO_CHAR:
            out.append(Token(TokType.PUNCT, text[i:i + 2], lineno, col, 2))
            i += 2
            continue
        if c in _ONE_CHAR:
            out.append(Token(TokType.PUNCT, c, lineno, col, 1))
            i += 1
            continue
        raise DesSyntaxError(f"illegal character {c!r}", lineno, col)


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    lines = source.split("\n")
    in_map = False
    map_start_line = 0
    for lineno, line in enumerate(lines, start=1):
        if in_map:
            if line.strip() == "ENDMAP":
                tokens.append(Token(TokType.WORD, "ENDMAP", lineno, 1, 6))
                tokens.append(Token(TokType.NEWLINE, "\n", lineno, len(line) + 1, 1))
                in_map = False
            else:
                tokens.append(Token(TokType.MAPROW, line.rstrip("\r"), lineno, 1,
                                    max(len(line), 1)))
            continue
        start = len(tokens)
        _lex_line(line, lineno, tokens)
        if len(tokens) > start:
            first = tokens[start]
            if (first.type is TokType.WORD and first.value == "MAP"
                    and len(tokens) == start + 1):
                in_map = True
                map_start_line = lineno
            tokens.append(Token(TokType.NEWLINE, "\n", lineno, len(line) + 1, 1))
    if in_map:
        raise DesSyntaxError("MAP block not terminated by ENDMAP", map_start_line, 1)
    return tokens
