from .weierstrass import *
from .reduction import *
from .literal import CurveLiteralParser, parse_curve_literal
