from .lexer import CurveLiteralLexer, Token
from .parser import CurveLiteralParser, parse_curve_literal
