from __future__ import annotations

import math
import os
import typing as t
from dataclasses import dataclass

from ..base import ParseError
from ..curves import CurveLiteralParser, WeierstrassCurve, curve_from_ainvs

__all__ = "CurveTableRow", "parse_curve_table_line", "read_curve_table"


@dataclass(frozen=True)
class CurveTableRow:
    """ One ``N class num [a1,a2,a3,a4,a6] rank torsion`` line of a curve table """

    conductor: int
    class_label: str
    curve_number: int
    ainvs: t.Tuple[int, int, int, int, int]
    rank: int
    torsion: int

    def __post_init__(self):
        if self.conductor < 1:
            raise ValueError("Conductor should be a positive integer")
        if self.rank < 0:
            raise ValueError("Rank should be nonnegative")

    @property
    def class_id(self) -> str:
        return f"{self.conductor}{self.class_label}"

    @property
    def label(self) -> str:
        return f"{self.class_id}{self.curve_number}"

    @property
    def log_conductor(self) -> float:
        return math.log(self.conductor)

    @property
    def curve(self) -> WeierstrassCurve:
        return curve_from_ainvs(*self.ainvs)


def parse_curve_table_line(line: str) -> CurveTableRow:
    conductor, label, number, ainvs, rank, torsion = CurveLiteralParser(line).table_row()
    try:
        return CurveTableRow(conductor, label, number, ainvs, rank, torsion)
    except ValueError as e:
        raise ParseError(str(e), offset=0) from e


def read_curve_table(
    path: t.Union[str, os.PathLike],
    max_conductor: t.Optional[int] = None,
    first_only: bool = True,
) -> t.Iterator[CurveTableRow]:
    """Stream the rows of an allcurves-style table.

    Only the first curve of every isogeny class is kept unless ``first_only``
    is off; the L-function, and so every bound, is shared across the class.
    Rows are assumed sorted by conductor, as the tables ship.
    """
    with open(path, encoding="utf-8") as lines:
        for number, line in enumerate(lines, start=1):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            try:
                row = parse_curve_table_line(line)
            except ParseError as e:
                raise ParseError(e.message, offset=e.offset, line=number) from e

            if max_conductor is not None and row.conductor > max_conductor:
                break
            if first_only and row.curve_number != 1:
                continue
            yield row
