"""Literal catalog of the published general forms.

Each row lists its generators as ``(a, b, c)`` strings, one triple per
coefficient function ``p_i``.  ``A1``..``A9`` are the footer multipliers and
are materialized for the instantiated ``n`` (``m = n/2``).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .algebra import ComplexPoly, RealPoly, complex_to_real
from .errors import RowNotInTable
from .groups import SymmetryGroup
from .parsing import parse_group, parse_poly

_ROT_SO2 = [("1", "0", "1"), ("y^2-x^2", "2*x*y", "x^2-y^2"), ("2*x*y", "x^2-y^2", "-2*x*y")]


@dataclass(frozen=True)
class TableRow:
    key: str
    group: str  # template, formatted with n and m
    ker_lambda: str
    generators: Tuple[Tuple[str, str, str], ...]
    min_n: Optional[int] = None  # None: the row has no parameter
    even: bool = False

    def admits(self, n: int) -> bool:
        if self.min_n is None:
            return True
        return n >= self.min_n and (not self.even or n % 2 == 0)

    def symmetry_group(self, n: Optional[int] = None) -> SymmetryGroup:
        if self.min_n is None:
            return parse_group(self.group)
        if not self.admits(n):
            raise RowNotInTable(f"row {self.key} needs n >= {self.min_n}{' even' if self.even else ''}")
        return parse_group(self.group.format(n=n, m=n // 2))

    def triples(self, n: Optional[int] = None) -> List[Tuple[RealPoly, RealPoly, RealPoly]]:
        env = multipliers(n) if self.min_n is not None else {}
        return [tuple(parse_poly(s, env) for s in row) for row in self.generators]


TABLE: Tuple[TableRow, ...] = (
    TableRow("SO2", "SO2", "SO2", tuple(_ROT_SO2)),
    TableRow("O2", "O2", "SO2", tuple(_ROT_SO2[:2])),
    TableRow("O2[SO2]", "O2[SO2]", "O2", (_ROT_SO2[2],)),
    TableRow(
        "Zn", "Z{n}", "Zn",
        tuple(_ROT_SO2) + (("-A1", "-A2", "A1"), ("-A2", "A1", "A2")),
        min_n=3,
    ),
    TableRow(
        "Zn[Zn/2]", "Z{n}[Z{m}]", "Zn/2",
        (
            ("-A3", "-A4", "A3"),
            ("-A4", "A3", "A4"),
            ("A5", "0", "A5"),
            ("-A7", "A8", "A7"),
            ("A8", "A7", "-A8"),
            ("A6", "0", "A6"),
        ),
        min_n=4, even=True,
    ),
    TableRow("Dn", "D{n}", "Zn", tuple(_ROT_SO2[:2]) + (("-A1", "-A2", "A1"),), min_n=3),
    TableRow(
        "Dn[Zn]", "D{n}[Z{n}]", "Dn",
        (_ROT_SO2[2], ("-A2", "A1", "A2"), ("A9", "0", "A9")),
        min_n=3,
    ),
    TableRow(
        "Dn[Dn/2(kx)]", "D{n}[D{m}(kx)]", "Dn/2(ky)",
        (("-A3", "-A4", "A3"), ("A5", "0", "A5"), ("-A7", "A8", "A7")),
        min_n=4, even=True,
    ),
    TableRow("Z2", "Z2", "1", (("1", "0", "0"), ("0", "y", "0"), ("0", "0", "1"))),
    TableRow("Z2[1]", "Z2[1]", "Z2", (("y", "0", "0"), ("0", "1", "0"), ("0", "0", "y"))),
    TableRow("Z2xZ2", "Z2xZ2", "Z2(-I)", (("1", "0", "0"), ("0", "x*y", "0"), ("0", "0", "1"))),
    TableRow(
        "Z2xZ2[Z2(-I)]", "Z2xZ2[Z2(-I)]", "Z2xZ2",
        (("x*y", "0", "0"), ("0", "1", "0"), ("0", "0", "x*y")),
    ),
    TableRow(
        "Z2xZ2[Z2(kx)]", "Z2xZ2[Z2(kx)]", "Z2(ky)",
        (("x", "0", "0"), ("0", "y", "0"), ("0", "0", "x")),
    ),
)

ROWS: Dict[str, TableRow] = {r.key: r for r in TABLE}


def _re_im(k: int) -> Tuple[RealPoly, RealPoly]:
    p = ComplexPoly.z() ** k
    return complex_to_real(p.real_part()), complex_to_real(p.imag_part())


def multipliers(n: int) -> Dict[str, RealPoly]:
    """``A1``..``A9``; the ``n/2`` ones only when n is even."""
    env = {}
    env["A1"], env["A2"] = _re_im(n - 2)
    env["A9"] = _re_im(n)[1]
    if n % 2 == 0 and n >= 4:
        m = n // 2
        env["A3"], env["A4"] = _re_im(m - 2)
        env["A5"], env["A6"] = _re_im(m)
        env["A7"], env["A8"] = _re_im(m + 2)
    return env


def find_row(sg: SymmetryGroup) -> Tuple[TableRow, Optional[int]]:
    """The table row (and its ``n``) describing ``sg``."""
    for row in TABLE:
        if row.min_n is None:
            if row.symmetry_group() == sg:
                return row, None
            continue
        n = sg.group.n
        if row.admits(n) and row.symmetry_group(n) == sg:
            return row, n
    raise RowNotInTable(f"{sg} is not a row of the table")
