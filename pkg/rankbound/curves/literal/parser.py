import typing as t

from ...base import ParseError
from ..weierstrass import WeierstrassCurve, curve_from_ainvs
from .lexer import CurveLiteralLexer, Token

__all__ = "CurveLiteralParser", "parse_curve_literal"

TableRowT = t.Tuple[int, str, int, t.Tuple[int, int, int, int, int], int, int]


class CurveLiteralParser:
    """Recursive-descent parser over ``CurveLiteralLexer`` tokens.

    Grammar::

        literal := "[" int ("," int){4} "]"
        row     := int word int literal int int
    """

    AINVS_COUNT = 5

    def __init__(self, text: str):
        self.lexer = CurveLiteralLexer(text)

    def __call__(self) -> WeierstrassCurve:
        ainvs = self.literal()
        self.end()
        return curve_from_ainvs(*ainvs)

    def table_row(self) -> TableRowT:
        conductor = self.integer()
        label = self.word()
        number = self.integer()
        ainvs = self.literal()
        rank = self.integer()
        torsion = self.integer()
        self.end()
        return conductor, label, number, ainvs, rank, torsion

    def literal(self) -> t.Tuple[int, int, int, int, int]:
        self.expect(CurveLiteralLexer.OPEN)
        values = [self.integer()]

        token = self.lexer.get_token()
        while token.text == CurveLiteralLexer.SEP:
            values.append(self.integer())
            token = self.lexer.get_token()

        if token.text != CurveLiteralLexer.CLOSE:
            raise self._unexpected(token, f"'{CurveLiteralLexer.CLOSE}' or '{CurveLiteralLexer.SEP}'")
        if len(values) != self.AINVS_COUNT:
            raise ParseError(
                f"Expected {self.AINVS_COUNT} a-invariants, got {len(values)}",
                offset=token.offset,
            )
        return tuple(values)  # type: ignore

    def integer(self) -> int:
        token = self.lexer.get_token()
        if token.kind != CurveLiteralLexer.INT:
            raise self._unexpected(token, "an integer")
        return int(token.text)

    def word(self) -> str:
        token = self.lexer.get_token()
        if token.kind != CurveLiteralLexer.WORD:
            raise self._unexpected(token, "a class label")
        return token.text

    def expect(self, text: str) -> Token:
        token = self.lexer.get_token()
        if token.text != text:
            raise self._unexpected(token, f"'{text}'")
        return token

    def end(self):
        token = self.lexer.get_token()
        if token:
            raise self._unexpected(token, "end of input")

    @staticmethod
    def _unexpected(token: Token, expected: str) -> ParseError:
        found = repr(token.text) if token else "end of input"
        return ParseError(f"Expected {expected}, found {found}", offset=token.offset)


def parse_curve_literal(text: str) -> WeierstrassCurve:
    return CurveLiteralParser(text)()
