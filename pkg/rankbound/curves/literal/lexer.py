import re
import typing as t
from dataclasses import dataclass

from ...base import ParseError

__all__ = "Token", "CurveLiteralLexer"


@dataclass(frozen=True)
class Token:
    __slots__ = "kind", "text", "offset"

    kind: str
    text: str
    offset: int

    def __bool__(self):
        return self.kind != CurveLiteralLexer.EOF


class CurveLiteralLexer(t.Iterator[Token]):
    """Tokenizer for curve literals and whitespace-separated table rows.

    Yields ``Token`` objects carrying their character offset. Pushed-back
    tokens are returned before the input is scanned again.
    """

    EOF = "eof"
    OPEN, CLOSE, SEP = "[", "]", ","
    PUNCT, INT, WORD = "punct", "int", "word"

    _PATTERN = re.compile(
        r"\s*(?:(?P<punct>[\[\],])|(?P<int>[+-]?\d+)(?![A-Za-z_])|(?P<word>[A-Za-z_][A-Za-z0-9_]*)|(?P<bad>\S))"
    )

    def __init__(self, text: str):
        self._text = text
        self._pos = 0
        self._pushed: t.List[Token] = []

    def __iter__(self):
        return self

    def __next__(self) -> Token:
        token = self.get_token()
        if not token:
            raise StopIteration
        return token

    def get_token(self) -> Token:
        if self._pushed:
            return self._pushed.pop()
        return self._extract_token()

    def peek_token(self) -> Token:
        token = self.get_token()
        self.push_token(token)
        return token

    def push_token(self, token: Token):
        self._pushed.append(token)

    def _extract_token(self) -> Token:
        match = self._PATTERN.match(self._text, self._pos)
        if match is None:
            self._pos = len(self._text)
            return Token(self.EOF, "", self._pos)

        self._pos = match.end()
        kind = match.lastgroup
        if kind == "bad":
            raise ParseError(f"Unexpected character {match.group(kind)!r}", offset=match.start(kind))

        return Token(kind, match.group(kind), match.start(kind))
